"""Independence polynomials with exact integer coefficients."""

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest

from ._config import UpperTailError, check_guard, size_guard
from .graph import canonical_form, connected_components, induced_subgraph, labeled_form


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial; coeffs[k] is the coefficient of x^k."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c or (0,))

    @classmethod
    def one(cls):
        return cls((1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        return IntPolynomial(tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * a for a in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k):
        out = IntPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k=1):
        """Multiply by x^k."""
        return IntPolynomial((0,) * k + self.coeffs)

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self):
        return IntPolynomial(tuple(k * a for k, a in enumerate(self.coeffs))[1:] or (0,))

    def to_json(self):
        return json.dumps([str(a) for a in self.coeffs])

    @classmethod
    def from_json(cls, text):
        return cls(tuple(int(a) for a in json.loads(text)))

    def __str__(self):
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0 and len(self.coeffs) > 1:
                continue
            terms.append(str(a) if k == 0 else f"{a}x" if k == 1 else f"{a}x^{k}")
        return " + ".join(terms)


def evaluate(P, x):
    """Horner evaluation for x >= 0; exact for int/Fraction input, float otherwise."""
    if x < 0:
        raise UpperTailError("independence polynomials are evaluated on [0, inf) only")
    if isinstance(x, (int, Fraction)):
        acc = Fraction(0)
    else:
        acc = 0.0
        x = float(x)
    for a in reversed(P.coeffs):
        acc = acc * x + a
    return acc


_MEMO = {}


def clear_cache():
    _MEMO.clear()


def independence_polynomial(G, guard=None):
    """P_G(x) = sum_k i_G(k) x^k by vertex-deletion recursion, memoized per component."""
    check_guard("indpoly", G.n, guard)
    canon_limit = size_guard("canonical")
    return _poly(G, canon_limit)


def _poly(G, canon_limit):
    out = IntPolynomial.one()
    for comp in connected_components(G):
        out = out * _connected_poly(comp.graph, canon_limit)
    return out


def _connected_poly(G, canon_limit):
    if not G.edges:
        return IntPolynomial(tuple(math.comb(G.n, k) for k in range(G.n + 1)))
    key = canonical_form(G) if G.n <= canon_limit else labeled_form(G)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    # branch on a max-degree vertex, smallest label first
    d = max(G.degrees)
    v = G.degrees.index(d)
    rest = [u for u in range(G.n) if u != v]
    far = [u for u in rest if u not in G.adjacency[v]]
    res = _poly(induced_subgraph(G, rest), canon_limit) + _poly(induced_subgraph(G, far), canon_limit).shift()
    _MEMO[key] = res
    return res


def independence_polynomial_bruteforce(G):
    """Oracle: count independent sets of every size by scanning all vertex subsets."""
    n = G.n
    masks = G.masks
    counts = [0] * (n + 1)
    indep = bytearray(1 << n)
    indep[0] = 1
    counts[0] = 1
    for S in range(1, 1 << n):
        low = (S & -S).bit_length() - 1
        rest = S & (S - 1)
        if indep[rest] and not (masks[low] & rest):
            indep[S] = 1
            counts[S.bit_count()] += 1
    return IntPolynomial(tuple(counts))


def solve_threshold(P, delta, max_iter=200):
    """Unique theta > 0 with P(theta) = 1 + delta.

    P has nonnegative coefficients and P(0) = 1, so it increases on [0, inf).
    Safeguarded Newton inside a bisection bracket; stops once
    |P(theta) - (1 + delta)| <= 1e-12 * (1 + delta).
    """
    if not delta > 0:
        raise UpperTailError("delta must be positive")
    if P.degree < 1:
        raise UpperTailError("constant polynomial: P(x) = 1 + delta has no solution (empty core)")
    if P[0] != 1 or any(a < 0 for a in P.coeffs):
        raise UpperTailError("threshold solving needs nonnegative coefficients and P(0) = 1")
    target = 1.0 + delta
    atol = 1e-12 * target
    dP = P.derivative()
    f = lambda x: evaluate(P, x) - target

    lo, hi = 0.0, max(1.0, float(delta))
    while f(hi) < 0:
        lo, hi = hi, 2 * hi
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) <= atol:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        slope = evaluate(dP, x)
        step = x - fx / slope if slope > 0 else None
        x = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * math.ulp(hi):
            return x
    return x
