"""The discrete variational problem: minimize I_p(G) subject to t(H, G) >= (1 + delta) p^|E(H)|.

Weighted graphs are dense symmetric matrices with zero diagonal. The two
explicit constructions (a planted clique and a planted hub set) have only two
distinct weight classes, so they are kept in block form and their densities
are evaluated exactly without materializing an n x n matrix.
"""

import csv
import hashlib
import io
import json
import math
import string
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import rel_entr

from ._config import DomainError, SizeGuardError, UpperTailError, fmt12, sig12
from .graph import (
    format_edge_list,
    independent_partitions,
    max_degree,
    quotient_edges,
    structural_predicates,
)
from .rate import anticlique_theta

BRUTE_LIMIT = 10**8
PARTITION_LIMIT = 20000
_LETTERS = string.ascii_letters


# ---------------------------------------------------------------------------
# relative entropy


def relative_entropy_point(x, p):
    """I_p(x) = x log(x/p) + (1-x) log((1-x)/(1-p)), with 0 log 0 = 0. Vectorized over x."""
    if not 0 < p < 1:
        raise UpperTailError("p must lie in (0, 1)")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > 1) or np.any(np.isnan(x)):
        raise UpperTailError("relative entropy needs x in [0, 1]")
    out = rel_entr(x, p) + rel_entr(1.0 - x, 1.0 - p)
    return float(out) if out.ndim == 0 else out


def _entropy_slope(x, p):
    """dI_p/dx, with x kept away from 1 where the slope diverges."""
    x = np.clip(x, p, 1.0 - 1e-12)
    return np.log(x / p) - np.log((1.0 - x) / (1.0 - p))


# ---------------------------------------------------------------------------
# weighted graphs


def _h_hash(H):
    if H is None:
        return "-"
    return hashlib.sha256(format_edge_list(H).encode()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Symmetric weight matrix in [0, 1] with zero diagonal."""

    weights: np.ndarray

    def __post_init__(self):
        A = np.array(self.weights, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
            raise UpperTailError("weights must be a square matrix")
        if not np.array_equal(A, A.T):
            raise UpperTailError("weights must be symmetric")
        if np.any(np.diag(A) != 0):
            raise UpperTailError("weights must have a zero diagonal")
        if np.any(A < 0) or np.any(A > 1) or np.any(np.isnan(A)):
            raise UpperTailError("weights must lie in [0, 1]")
        A.setflags(write=False)
        object.__setattr__(self, "weights", A)

    @property
    def n(self):
        return self.weights.shape[0]

    @classmethod
    def constant(cls, n, p):
        A = np.full((n, n), float(p))
        np.fill_diagonal(A, 0.0)
        return cls(A)

    @classmethod
    def from_upper(cls, n, values):
        A = np.zeros((n, n))
        A[np.triu_indices(n, 1)] = values
        return cls(A + A.T)

    def upper(self):
        return self.weights[np.triu_indices(self.n, 1)]

    def to_text(self, p=None, H=None):
        """Header lines (n, p, H hash) then the upper triangle, one row per line."""
        lines = ["# uppertail weighted graph: row i lists a[i, i+1..n-1]", f"n {self.n}",
                 f"p {'-' if p is None else repr(float(p))}", f"h {_h_hash(H)}"]
        for i in range(self.n - 1):
            lines.append(" ".join(repr(float(a)) for a in self.weights[i, i + 1:]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        """Inverse of to_text; returns (graph, header dict)."""
        header = {}
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            if key in ("n", "p", "h") and not rows:
                header[key] = rest.strip()
                continue
            rows.append([float(a) for a in line.split()])
        if "n" not in header:
            raise UpperTailError("weighted graph text lacks an 'n' header")
        n = int(header["n"])
        if len(rows) != n - 1 or any(len(r) != n - 1 - i for i, r in enumerate(rows)):
            raise UpperTailError("weighted graph body does not match n")
        vals = [a for r in rows for a in r]
        return cls.from_upper(n, vals), header


@dataclass(frozen=True, eq=False)
class BlockGraph:
    """A weighted graph on n = sum(sizes) vertices whose weight depends only on the blocks.

    values[b, c] is the weight between distinct vertices of blocks b and c;
    the diagonal of the expanded matrix is zero.
    """

    sizes: tuple
    values: np.ndarray

    def __post_init__(self):
        M = np.array(self.values, dtype=float)
        sizes = tuple(int(s) for s in self.sizes)
        if M.shape != (len(sizes), len(sizes)) or not np.array_equal(M, M.T):
            raise UpperTailError("block values must be a symmetric matrix matching the block count")
        if any(s < 1 for s in sizes):
            raise UpperTailError("block sizes must be positive")
        if np.any(M < 0) or np.any(M > 1):
            raise UpperTailError("block values must lie in [0, 1]")
        M.setflags(write=False)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "values", M)

    @property
    def n(self):
        return sum(self.sizes)

    def to_weighted(self):
        labels = np.repeat(np.arange(len(self.sizes)), self.sizes)
        A = self.values[np.ix_(labels, labels)].copy()
        np.fill_diagonal(A, 0.0)
        return WeightedGraph(A)

    def entropy(self, p):
        out = 0.0
        for b, nb in enumerate(self.sizes):
            out += math.comb(nb, 2) * relative_entropy_point(self.values[b, b], p)
            for c in range(b + 1, len(self.sizes)):
                out += nb * self.sizes[c] * relative_entropy_point(self.values[b, c], p)
        return out

    def hom_density(self, H):
        """Exact t(H, G): sum over partitions of V(H) into independent classes (the collapse pattern of a map).

        A partition with q classes contributes sum over block assignments c of
        prod_edges values[c_i, c_j] * prod_b (size_b)_(#classes sent to b).
        All terms are nonnegative, so there is no cancellation.
        """
        k = H.n
        n = self.n
        K = len(self.sizes)
        parts = independent_partitions(H, limit=PARTITION_LIMIT)
        ff = np.array([[float(math.perm(s, m)) for m in range(k + 1)] for s in self.sizes])
        by_q = {}
        total = 0.0
        for labels in parts:
            q = max(labels) + 1
            if q not in by_q:
                by_q[q] = np.indices((K,) * q).reshape(q, -1).T
            assign = by_q[q]
            w = np.ones(len(assign))
            for i, j in quotient_edges(H, labels):
                w = w * self.values[assign[:, i], assign[:, j]]
            for b in range(K):
                w = w * ff[b][(assign == b).sum(axis=1)]
            total += w.sum()
        return total / float(n) ** k


def graph_entropy(G, p):
    """I_p(G) = sum over pairs i < j of I_p(a_ij)."""
    if isinstance(G, BlockGraph):
        return G.entropy(p)
    return float(np.sum(relative_entropy_point(G.upper(), p)))


# ---------------------------------------------------------------------------
# step graphons


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """Piecewise-constant symmetric kernel on [0,1]^2."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float)
        M = np.asarray(self.values, dtype=float)
        if b[0] != 0 or b[-1] != 1 or np.any(np.diff(b) <= 0):
            raise UpperTailError("breakpoints must increase strictly from 0 to 1")
        if M.shape != (len(b) - 1,) * 2 or not np.array_equal(M, M.T):
            raise UpperTailError("block values must be symmetric with one row per interval")
        if np.any(M < 0) or np.any(M > 1):
            raise UpperTailError("graphon values must lie in [0, 1]")
        object.__setattr__(self, "breakpoints", b)
        object.__setattr__(self, "values", M)

    @property
    def widths(self):
        return np.diff(self.breakpoints)

    def __call__(self, x, y):
        i = np.clip(np.searchsorted(self.breakpoints, x, side="right") - 1, 0, len(self.widths) - 1)
        j = np.clip(np.searchsorted(self.breakpoints, y, side="right") - 1, 0, len(self.widths) - 1)
        return self.values[i, j]

    def expected_entropy(self, p):
        """E[I_p(W(X, Y))] for X, Y uniform; exact for step kernels."""
        w = self.widths
        return float(w @ relative_entropy_point(self.values, p) @ w)

    def hom_density(self, H):
        return _eliminate(H, self.values, self.widths)


def _two_step(a, fill_inner, p, hub):
    if not 0 <= a <= 1:
        raise DomainError(f"block width {a} outside [0, 1]")
    if a == 0:
        return StepGraphon([0.0, 1.0], [[p]])
    if a == 1:
        return StepGraphon([0.0, 1.0], [[1.0]])
    off = 1.0 if hub else p
    return StepGraphon([0.0, a, 1.0], [[fill_inner, off], [off, p]])


def clique_graphon(a, p):
    """1 on [0,a]^2, p elsewhere."""
    return _two_step(a, 1.0, p, hub=False)


def anticlique_graphon(b, p):
    """1 whenever x <= b or y <= b, p elsewhere."""
    return _two_step(b, 1.0, p, hub=True)


# ---------------------------------------------------------------------------
# homomorphism densities by variable elimination


def _einsum(factors, out_vars):
    subs = ",".join("".join(_LETTERS[v] for v in vs) for vs, _ in factors)
    subs += "->" + "".join(_LETTERS[v] for v in out_vars)
    return np.einsum(subs, *(a for _, a in factors), optimize=True)


def _contract(k, factors, keep=()):
    """Sum the product of factors over every variable not in `keep` (min-degree order)."""
    factors = list(factors)
    todo = [v for v in range(k) if v not in keep]
    while todo:
        def fill(v):
            nb = set()
            for vs, _ in factors:
                if v in vs:
                    nb.update(vs)
            return len(nb) - 1, v

        v = min(todo, key=fill)
        todo.remove(v)
        hit = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        out = tuple(sorted(set().union(*(f[0] for f in hit)) - {v}))
        factors.append((out, _einsum(hit, out)))
    return _einsum(factors, tuple(keep))


def _edge_factors(H, A, w, skip=None):
    if H.n > len(_LETTERS):
        raise SizeGuardError(f"pattern graphs are limited to {len(_LETTERS)} vertices")
    fs = [((u, v), A) for u, v in H.sorted_edges() if (u, v) != skip]
    fs += [((v,), w) for v in range(H.n)]
    return fs


def _eliminate(H, A, w):
    return float(_contract(H.n, _edge_factors(H, A, w)))


def _as_matrix(G):
    if isinstance(G, WeightedGraph):
        return G.weights
    if isinstance(G, BlockGraph):
        return G.to_weighted().weights
    return np.asarray(G, dtype=float)


def hom_density(H, G, method="auto"):
    """t(H, G) = n^-k sum over all maps V(H) -> [n] of prod_edges a_{phi(x) phi(y)}.

    method: "auto" (block formula for BlockGraph, elimination otherwise),
    "elimination", "block" or "brute".
    """
    if H.n < 1:
        raise UpperTailError("pattern graph needs at least one vertex")
    if method == "auto":
        method = "block" if isinstance(G, BlockGraph) else "elimination"
    if method == "block":
        if not isinstance(G, BlockGraph):
            raise UpperTailError("block method needs a BlockGraph")
        return G.hom_density(H)
    A = _as_matrix(G)
    if method == "brute":
        return hom_density_bruteforce(H, A)
    if method != "elimination":
        raise UpperTailError(f"unknown method {method!r}")
    n = A.shape[0]
    return _eliminate(H, A, np.full(n, 1.0 / n))


def hom_density_bruteforce(H, G):
    """Oracle: explicit sum over all n^k maps (chunked over the image of vertex 0)."""
    A = _as_matrix(G)
    n, k = A.shape[0], H.n
    if n**k > BRUTE_LIMIT:
        raise SizeGuardError(f"brute-force density needs n^k <= {BRUTE_LIMIT}")
    edges = H.sorted_edges()
    total = 0.0
    for i0 in range(n):
        T = np.ones((n,) * (k - 1))
        for u, v in edges:
            shape = [1] * (k - 1)
            if u == 0:
                shape[v - 1] = n
                T = T * A[i0].reshape(shape)
            else:
                shape[u - 1] = n
                shape[v - 1] = n
                T = T * A.reshape(shape)
        total += T.sum()
    return total / float(n) ** k


def hom_density_gradient(H, G):
    """Symmetric matrix of dt/da_uv, with a_uv = a_vu treated as one variable; zero diagonal."""
    A = _as_matrix(G)
    n = A.shape[0]
    w = np.full(n, 1.0 / n)
    out = np.zeros((n, n))
    for e in H.sorted_edges():
        M = _contract(H.n, _edge_factors(H, A, w, skip=e), keep=e)
        out += M + M.T
    np.fill_diagonal(out, 0.0)
    return out


# ---------------------------------------------------------------------------
# explicit candidates


def _check_params(n, p, delta):
    if int(n) != n or n < 2:
        raise UpperTailError("n must be an integer >= 2")
    if not 0 < p < 1:
        raise UpperTailError("p must lie in (0, 1)")
    if not (delta > 0 and math.isfinite(delta)):
        raise UpperTailError("delta must be positive and finite")


def _entropy_scale(H, n, p):
    return n * n * p ** max_degree(H) * math.log(1 / p)


@dataclass(frozen=True)
class CandidateResult:
    kind: str
    G: BlockGraph
    s: int
    seed: float
    entropy: float
    normalized: float
    feasible: bool
    density: float
    target: float
    warnings: tuple = field(default=())

    def to_dict(self):
        return {
            "kind": self.kind,
            "s": self.s,
            "seed": sig12(self.seed),
            "entropy": sig12(self.entropy),
            "normalized": sig12(self.normalized),
            "feasible": self.feasible,
            "density": sig12(self.density),
            "target": sig12(self.target),
            "warnings": list(self.warnings),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _clique_blocks(n, s, p):
    if s >= n:
        return BlockGraph((n,), [[1.0]])
    return BlockGraph((s, n - s), [[1.0, p], [p, p]])


def _hub_blocks(n, s, p):
    if s >= n:
        return BlockGraph((n,), [[1.0]])
    return BlockGraph((s, n - s), [[1.0, 1.0], [1.0, p]])


def _search(kind, H, n, p, delta, seed, build, notes):
    target = (1 + delta) * p**H.num_edges
    s0 = min(n, max(1, math.ceil(seed)))
    cap = min(n, max(s0, math.ceil(2 * seed)))
    for s in range(s0, cap + 1):
        G = build(n, s, p)
        t = G.hom_density(H)
        if t >= target:
            break
    ent = G.entropy(p)
    return CandidateResult(kind, G, s, seed, ent, ent / _entropy_scale(H, n, p), bool(t >= target), t, target,
                           tuple(notes))


def clique_candidate(H, n, p, delta):
    """All-ones block on the first s vertices, p elsewhere; s >= delta^{1/k} p^{D/2} n, smallest feasible."""
    _check_params(n, p, delta)
    info = structural_predicates(H)
    if not (info.is_regular and info.is_connected):
        raise DomainError("the clique construction needs a connected regular H")
    D = max_degree(H)
    seed = delta ** (1 / H.n) * p ** (D / 2) * n
    return _search("clique", H, n, p, delta, seed, _clique_blocks, [])


def anticlique_candidate(H, n, p, delta):
    """Rows and columns of the first s vertices set to 1; s >= theta p^D n, smallest feasible."""
    _check_params(n, p, delta)
    D = max_degree(H)
    theta = anticlique_theta(H, delta)
    seed = theta * p**D * n
    notes = []
    if seed < 1:
        msg = (f"theta p^D n = {seed:.6g} < 1: below the scale where a hub set of size theta p^D n exists "
               "(p should be well above n^(-1/D))")
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    return _search("anticlique", H, n, p, delta, seed, _hub_blocks, notes)


@dataclass(frozen=True)
class GraphonDensity:
    density: float
    ratio: float
    parameter: float  # a (clique) or b (anticlique)

    def to_dict(self):
        return {"density": sig12(self.density), "ratio": sig12(self.ratio), "parameter": sig12(self.parameter)}


def _induced_edge_counts(H):
    """|E(H_S)| for every vertex subset S (bitmask index)."""
    k = H.n
    counts = np.zeros(1 << k, dtype=np.int64)
    for u, v in H.edges:
        m = (1 << u) | (1 << v)
        idx = np.arange(1 << k)
        counts += (idx & m) == m
    return counts


def graphon_candidate_density(H, which, p, delta):
    """t(H, W) for the clique or anticlique step graphon, by the exact sum over vertex subsets."""
    if not 0 < p < 1:
        raise UpperTailError("p must lie in (0, 1)")
    k, E, D = H.n, H.num_edges, max_degree(H)
    if which == "clique":
        info = structural_predicates(H)
        if not (info.is_regular and info.is_connected):
            raise DomainError("the clique construction needs a connected regular H")
        a = delta ** (1 / k) * p ** (D / 2)
    elif which == "anticlique":
        a = anticlique_theta(H, delta) * p**D
    else:
        raise UpperTailError("which must be 'clique' or 'anticlique'")
    if a > 1:
        raise DomainError(f"block width {a:.6g} exceeds 1")
    sizes = np.array([bin(S).count("1") for S in range(1 << k)])
    eS = _induced_edge_counts(H)
    weight = a**sizes * (1 - a) ** (k - sizes)
    if which == "clique":
        dens = float(np.sum(weight * p ** (E - eS).astype(float)))
    else:
        comp = (1 << k) - 1 - np.arange(1 << k)
        dens = float(np.sum(weight * p ** eS[comp].astype(float)))
    return GraphonDensity(dens, dens / p**E, a)


# ---------------------------------------------------------------------------
# numerical minimizer


@dataclass(frozen=True)
class SolveConfig:
    mu0: float = 1.0
    mu_growth: float = 10.0
    rounds: int = 8
    max_iter: int = 400
    step0: float = 1.0
    armijo: float = 1e-4
    tol_rel: float = 1e-10  # feasibility tolerance in units of p^|E(H)|
    restarts: int = 2
    perturb: float = 0.1
    seed: int = 0

    def __post_init__(self):
        for name in ("mu0", "mu_growth", "step0", "armijo", "tol_rel", "perturb"):
            if not getattr(self, name) > 0:
                raise UpperTailError(f"SolveConfig.{name} must be positive")
        if self.rounds < 1 or self.max_iter < 1 or self.restarts < 0:
            raise UpperTailError("SolveConfig rounds and max_iter must be >= 1, restarts >= 0")


@dataclass(frozen=True)
class VarSolveResult:
    G: WeightedGraph
    entropy: float
    normalized: float
    feasible: bool
    iterations: int
    density: float
    target: float
    residual: float
    start: str
    regime_indicator: float  # theta p^D n, or None when H* is empty
    trace: tuple = field(default=(), repr=False)

    def to_dict(self):
        return {
            "entropy": sig12(self.entropy),
            "normalized": sig12(self.normalized),
            "feasible": self.feasible,
            "iterations": self.iterations,
            "density": sig12(self.density),
            "target": sig12(self.target),
            "residual": sig12(self.residual),
            "start": self.start,
            "theta_p_delta_n": sig12(self.regime_indicator),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


TRACE_COLUMNS = ("iteration", "objective", "residual")


def trace_to_csv(trace):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for it, obj, res, *_ in trace:
        w.writerow([it, fmt12(obj), fmt12(res)])
    return buf.getvalue()


class _Problem:
    def __init__(self, H, n, p, delta):
        self.H, self.n, self.p = H, n, p
        self.iu = np.triu_indices(n, 1)
        self.target = (1 + delta) * p**H.num_edges
        self.scale = _entropy_scale(H, n, p)

    def matrix(self, x):
        A = np.zeros((self.n, self.n))
        A[self.iu] = x
        return A + A.T

    def density(self, x):
        return _eliminate(self.H, self.matrix(x), np.full(self.n, 1.0 / self.n))

    def grad_density(self, x):
        return hom_density_gradient(self.H, self.matrix(x))[self.iu]

    def entropy(self, x):
        return float(np.sum(relative_entropy_point(x, self.p)))

    def shortfall(self, t):
        return max(0.0, (self.target - t) / self.target)

    def objective(self, x, t, mu):
        # penalty in entropy units so that mu is scale-free
        return self.entropy(x) + mu * self.scale * self.shortfall(t) ** 2


def _descend(prob, x, mu, cfg, trace, it0):
    p = prob.p
    t = prob.density(x)
    F = prob.objective(x, t, mu)
    eta = cfg.step0
    it = it0
    for _ in range(cfg.max_iter):
        r = prob.shortfall(t)
        g = _entropy_slope(x, p)
        if r > 0:
            g = g - 2 * mu * prob.scale * r / prob.target * prob.grad_density(x)
        while True:
            xn = np.clip(x - eta * g, p, 1.0)
            d = xn - x
            if not d.any():
                return x, t, it
            tn = prob.density(xn)
            Fn = prob.objective(xn, tn, mu)
            if Fn <= F + cfg.armijo * float(g @ d):
                break
            eta *= 0.5
            if eta < 1e-30:
                return x, t, it
        it += 1
        gain = F - Fn
        x, t, F = xn, tn, Fn
        trace.append((it, F, max(0.0, prob.target - t), mu))
        if np.max(np.abs(d)) <= 1e-13 or gain <= 1e-15 * max(1.0, abs(F)):
            break
        eta *= 2.0
    return x, t, it


def _restore(prob, x):
    """Smallest lambda in [0,1] (by bisection) with t(x + lambda (1 - x)) >= target."""
    t = prob.density(x)
    if t >= prob.target:
        return x, t
    top = np.ones_like(x)
    if prob.density(top) < prob.target:
        return x, t
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if prob.density(x + mid * (top - x)) >= prob.target:
            hi = mid
        else:
            lo = mid
    x = x + hi * (top - x)
    return x, prob.density(x)


def _run_start(prob, x, cfg):
    trace = []
    it = 0
    tol = cfg.tol_rel * prob.p**prob.H.num_edges
    for j in range(cfg.rounds):
        mu = cfg.mu0 * cfg.mu_growth**j
        x, t, it = _descend(prob, x, mu, cfg, trace, it)
        if prob.target - t <= tol:
            break
    x, t = _restore(prob, x)
    return x, t, it, trace


def solve_variational(H, n, p, delta, cfg=None):
    """Penalized projected gradient on the box [p, 1], multi-started; returns the best feasible point found."""
    cfg = cfg or SolveConfig()
    _check_params(n, p, delta)
    if max_degree(H) < 2:
        raise DomainError("the variational problem is set up for maximum degree >= 2")
    if cfg.tol_rel >= delta:
        raise UpperTailError("feasibility tolerance must be below delta p^|E(H)|")
    prob = _Problem(H, n, p, delta)
    m = len(prob.iu[0])
    rng = np.random.default_rng(cfg.seed)

    starts = [("constant", np.full(m, float(p)))]
    indicator = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for kind, fn in (("clique", clique_candidate), ("anticlique", anticlique_candidate)):
            try:
                cand = fn(H, n, p, delta)
            except DomainError:
                continue
            starts.append((kind, cand.G.to_weighted().upper()))
        try:
            indicator = anticlique_theta(H, delta) * p ** max_degree(H) * n
        except UpperTailError:
            pass
    for i in range(cfg.restarts):
        starts.append((f"random{i}", p + (1 - p) * rng.uniform(0, cfg.perturb, m)))

    tol = cfg.tol_rel * p**H.num_edges
    results = []
    for label, x0 in starts:
        t0 = prob.density(x0)
        if t0 >= prob.target - tol:
            results.append((prob.entropy(x0), label + ":start", x0, t0, 0, []))
        x, t, it, trace = _run_start(prob, x0.copy(), cfg)
        results.append((prob.entropy(x), label, x, t, it, trace))

    feasible = [r for r in results if r[3] >= prob.target - tol]
    pool = feasible or results
    if feasible:
        best = min(pool, key=lambda r: (r[0], tuple(r[2])))
    else:
        best = min(pool, key=lambda r: (prob.target - r[3], r[0]))
    ent, label, x, t, it, trace = best
    return VarSolveResult(
        G=WeightedGraph(prob.matrix(x)),
        entropy=ent,
        normalized=ent / prob.scale,
        feasible=bool(feasible),
        iterations=it,
        density=t,
        target=prob.target,
        residual=max(0.0, prob.target - t),
        start=label,
        regime_indicator=indicator,
        trace=tuple(trace),
    )
