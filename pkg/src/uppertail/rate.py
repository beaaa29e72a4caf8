"""Leading-order constant of the upper-tail rate function.

For a connected H with maximum degree D >= 2 the constant is the root theta of
P_{H*}(theta) = 1 + delta, capped by the clique value delta^{2/|V(H)|} / 2 when
H is regular. A disconnected H mixes the two constructions; that case is a
two-variable program solved numerically here.
"""

import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._config import DomainError, UpperTailError, fmt12, sig12
from .graph import max_degree, max_degree_core, structural_predicates
from .indpoly import evaluate, independence_polynomial, solve_threshold

REGIMES = ("anticlique", "clique", "tie", "mixture")

_GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class RateResult:
    theta: float
    clique_value: float
    constant: float
    regime: str
    theta_prime: float = None
    delta0: float = None
    anticlique_value: float = None
    warnings: tuple = field(default=())

    def to_dict(self):
        d = asdict(self)
        for k in ("theta", "clique_value", "constant", "theta_prime", "delta0", "anticlique_value"):
            d[k] = sig12(d[k])
        d["warnings"] = list(self.warnings)
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_inputs(H, delta):
    if not (isinstance(delta, (int, float)) and delta > 0 and math.isfinite(delta)):
        raise UpperTailError("delta must be a positive finite number")
    D = max_degree(H)
    if D <= 1:
        raise DomainError(
            f"maximum degree {D} <= 1: the count of such H is a binomial edge count "
            "and lies outside this rate function's regime (needs maximum degree >= 2)"
        )
    return D


def core_polynomial(H):
    """P_{H*}: independence polynomial of the max-degree core."""
    return independence_polynomial(max_degree_core(H, max_degree(H)))


def anticlique_theta(H, delta):
    """Root of P_{H*}(theta) = 1 + delta for the global core of H."""
    _check_inputs(H, delta)
    return solve_threshold(core_polynomial(H), delta)


def _regime(theta, clique, rtol):
    const = min(theta, clique)
    if abs(theta - clique) <= rtol * const:
        return "tie"
    return "anticlique" if theta < clique else "clique"


def rate_constant(H, delta, rtol=1e-9):
    """c_H(delta) with the branch that attains it."""
    D = _check_inputs(H, delta)
    delta = float(delta)
    info = structural_predicates(H)
    if not info.is_connected:
        return mixture_rate(H, delta, rtol=rtol)
    theta = solve_threshold(core_polynomial(H), delta)
    if not info.is_regular:
        return RateResult(theta=theta, clique_value=None, constant=theta, regime="anticlique",
                          anticlique_value=theta)
    clique = 0.5 * delta ** (2.0 / H.n)
    d0 = transition_delta0(H) if H.n >= 3 else None
    return RateResult(
        theta=theta,
        clique_value=clique,
        constant=min(theta, clique),
        regime=_regime(theta, clique, rtol),
        delta0=d0,
        anticlique_value=theta,
    )


def transition_delta0(H, rtol=1e-10):
    """delta_0 at which the clique value meets theta, for connected regular H."""
    D = max_degree(H)
    info = structural_predicates(H)
    if not (info.is_connected and info.is_regular) or D < 2 or H.n < 3:
        raise DomainError("delta0 is defined for connected regular graphs with degree >= 2 and >= 3 vertices")
    P = independence_polynomial(H)
    k = H.n
    # excess > 0 iff theta(delta) < clique value, i.e. delta < delta0
    excess = lambda d: evaluate(P, 0.5 * d ** (2.0 / k)) - 1.0 - d
    lo = hi = 1.0
    while excess(lo) <= 0:
        lo /= 2
    while excess(hi) > 0:
        hi *= 2
    hi = max(hi, lo)
    while hi - lo > 0.25 * rtol * lo:
        mid = math.sqrt(lo * hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


# ---------------------------------------------------------------------------
# disconnected graphs


@dataclass(frozen=True)
class _Factor:
    poly: object
    regular: bool
    exponent: float  # |E(H_i)| / D


def component_factors(H):
    """Per-component data with the global maximum degree, plus warnings."""
    D = max_degree(H)
    notes = []
    factors = []
    for comp in structural_predicates(H).components:
        g = comp.graph
        Di = max_degree(g)
        if Di < D:
            notes.append(
                f"component on vertices {list(comp.vertices)} has maximum degree {Di} < {D}; "
                "its core uses the global maximum degree and is empty"
            )
        regular = g.num_edges > 0 and all(d == D for d in g.degrees)
        factors.append(_Factor(independence_polynomial(max_degree_core(g, D)), regular, g.num_edges / D))
    return factors, notes


def _constraint(factors, theta, theta_p):
    out = 1.0
    for f in factors:
        out *= evaluate(f.poly, theta) + (theta_p**f.exponent if f.regular else 0.0)
    return out


def _increasing_root(g, target, hi=1.0):
    """Root of an increasing g on [0, inf) with g(0) <= target."""
    if g(0.0) >= target:
        return 0.0
    while g(hi) < target:
        hi *= 2
    return brentq(lambda x: g(x) - target, 0.0, hi, xtol=1e-300, rtol=4 * sys.float_info.epsilon, maxiter=500)


def _golden(f, a, b, tol=1e-14, max_iter=300):
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def mixture_rate(H, delta, rtol=1e-9, scan_points=256):
    """Minimize theta + theta'/2 subject to prod_i (P_i(theta) + [H_i regular] theta'^{e_i/D}) = 1 + delta.

    Works for any H (a connected H is one factor). theta' is scanned on a grid
    over [0, theta'_max], the best cell is refined by golden section, and the
    two pure endpoints are always compared.
    """
    _check_inputs(H, delta)
    delta = float(delta)
    target = 1.0 + delta
    factors, notes = component_factors(H)
    for msg in notes:
        warnings.warn(msg, stacklevel=2)

    theta_a = _increasing_root(lambda t: _constraint(factors, t, 0.0), target)
    if not any(f.regular for f in factors):
        return RateResult(theta=theta_a, clique_value=None, constant=theta_a, regime="anticlique",
                          theta_prime=0.0, anticlique_value=theta_a, warnings=tuple(notes))

    tp_max = _increasing_root(lambda s: _constraint(factors, 0.0, s), target)
    clique = 0.5 * tp_max

    def theta_of(tp):
        return _increasing_root(lambda t: _constraint(factors, t, tp), target, hi=max(theta_a, 1e-300))

    obj = lambda tp: theta_of(tp) + 0.5 * tp

    grid = [tp_max * i / scan_points for i in range(scan_points + 1)]
    vals = [theta_a] + [obj(tp) for tp in grid[1:-1]] + [clique]
    i = min(range(len(vals)), key=vals.__getitem__)
    best_tp, best_val = grid[i], vals[i]
    if 0 < i < scan_points:
        tp, val = _golden(obj, grid[i - 1], grid[i + 1])
        if val < best_val:
            best_tp, best_val = tp, val
    best_theta = theta_of(best_tp) if 0 < best_tp < tp_max else (theta_a if best_tp == 0 else 0.0)

    endpoint = min(theta_a, clique)
    if best_val < endpoint * (1 - rtol):
        regime = "mixture"
    else:
        regime = _regime(theta_a, clique, rtol)
        best_val = endpoint
        best_tp, best_theta = (0.0, theta_a) if theta_a <= clique else (tp_max, 0.0)
    return RateResult(
        theta=best_theta,
        clique_value=clique,
        constant=best_val,
        regime=regime,
        theta_prime=best_tp,
        anticlique_value=theta_a,
        warnings=tuple(notes),
    )


def triangle_star_lambda(z2, delta):
    """Closed-form theta for K_3 + K_{1,2}: root of (1 + 3 z1 + z2^3)(1 + z1) = 1 + delta. Vectorized over z2."""
    return (-4 - z2**3 + np.sqrt(12 * delta + z2**6 - 4 * z2**3 + 16)) / 6


# ---------------------------------------------------------------------------
# curves


def rate_curve(H, delta_grid):
    grid = [float(d) for d in delta_grid]
    if any(d <= 0 for d in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise UpperTailError("delta grid must be positive and strictly increasing")
    return [(d, rate_constant(H, d)) for d in grid]


CURVE_COLUMNS = ("delta", "theta", "clique_value", "constant", "regime")


def curve_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_COLUMNS)
    for d, r in rows:
        w.writerow([fmt12(d), fmt12(r.theta), fmt12(r.clique_value), fmt12(r.constant), r.regime])
    return buf.getvalue()


def curve_to_json(rows):
    return json.dumps([{"delta": sig12(d), **r.to_dict()} for d, r in rows], sort_keys=True)
