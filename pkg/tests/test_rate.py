import csv
import io
import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uppertail import graph as g
from uppertail._config import DomainError, UpperTailError
from uppertail.indpoly import evaluate
from uppertail.rate import (
    core_polynomial,
    curve_to_csv,
    curve_to_json,
    mixture_rate,
    rate_constant,
    rate_curve,
    transition_delta0,
    triangle_star_lambda,
)

DELTAS = (0.1, 1, 10, 100)

CLOSED = {
    "C4": (g.cycle(4), lambda d: -1 + math.sqrt(1 + d / 2), "theta"),
    "C5": (g.cycle(5), lambda d: -0.5 + 0.5 * math.sqrt(1 + 4 * d / 5), "theta"),
    "T4": (g.binary_tree(4), lambda d: -1.5 + 0.5 * math.sqrt(5 + 4 * math.sqrt(1 + d)), "constant"),
    "K2,3": (g.complete_bipartite(2, 3), lambda d: math.sqrt(1 + d) - 1, "constant"),
    "K3,3": (g.complete_bipartite(3, 3), lambda d: min((1 + d / 2) ** (1 / 3) - 1, 0.5 * d ** (1 / 3)), "constant"),
    "K3": (g.clique(3), lambda d: min(0.5 * d ** (2 / 3), d / 3), "constant"),
}


@pytest.mark.parametrize("name", sorted(CLOSED))
@pytest.mark.parametrize("delta", DELTAS)
def test_closed_forms(name, delta):
    H, f, field = CLOSED[name]
    got = getattr(rate_constant(H, delta), field)
    assert got == pytest.approx(f(delta), rel=1e-9)


def test_examples():
    r = rate_constant(g.cycle(4), 16)
    assert r.constant == pytest.approx(2) and r.regime == "tie"
    r = rate_constant(g.clique(3), 1)
    assert r.constant == pytest.approx(1 / 3) and r.regime == "anticlique"
    r = rate_constant(g.clique(3), 27 / 8)
    assert r.constant == pytest.approx(1.125) and r.regime == "tie"
    r = rate_constant(g.complete_bipartite(2, 3), 0.21)
    assert r.constant == pytest.approx(0.1) and r.regime == "anticlique" and r.clique_value is None


def test_c4_at_delta_4_is_theta():
    # min(theta, sqrt(delta)/2) with theta = sqrt(3) - 1 < 1
    r = rate_constant(g.cycle(4), 4)
    assert r.constant == pytest.approx(math.sqrt(3) - 1) and r.regime == "anticlique"


def test_petersen_core_polynomial():
    r = rate_constant(g.petersen(), 1.0)
    assert evaluate(core_polynomial(g.petersen()), r.theta) == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("G", [g.path(2), g.path(1), g.edgeless(3), g.parse_graph("path:2+path:2")])
def test_degree_one_rejected(G):
    with pytest.raises(DomainError, match="maximum degree"):
        rate_constant(G, 1.0)


@pytest.mark.parametrize("delta", [0, -1, float("inf"), float("nan")])
def test_bad_delta(delta):
    with pytest.raises(UpperTailError):
        rate_constant(g.cycle(4), delta)


# --- transition points ------------------------------------------------------


def test_delta0_triangle():
    assert transition_delta0(g.clique(3)) == pytest.approx(27 / 8, rel=1e-10)


@pytest.mark.parametrize("k", [4, 6, 8])
def test_delta0_even_cycles(k):
    assert transition_delta0(g.cycle(k)) == pytest.approx(2**k, rel=1e-8)


def test_delta0_k33_closed_form():
    d0 = transition_delta0(g.complete_bipartite(3, 3))
    assert (1 + d0 / 2) ** (1 / 3) - 1 == pytest.approx(0.5 * d0 ** (1 / 3), rel=1e-9)


@pytest.mark.parametrize("G", [g.complete_bipartite(2, 3), g.parse_graph("cycle:4+cycle:4")])
def test_delta0_rejects(G):
    with pytest.raises(DomainError):
        transition_delta0(G)


@pytest.mark.parametrize("G", [g.clique(3), g.cycle(4), g.cycle(5), g.cycle(6), g.petersen(), g.clique(5)])
def test_single_switch_at_delta0(G):
    d0 = transition_delta0(G)
    grid = np.geomspace(d0 / 100, d0 * 100, 81)
    pts = [(d, rate_constant(G, d).regime) for d in grid]
    ties = [d for d, r in pts if r == "tie"]
    assert all(abs(d - d0) <= 1e-9 * d0 for d in ties)
    pts = [(d, r) for d, r in pts if r != "tie"]
    switches = [i for i in range(1, len(pts)) if pts[i][1] != pts[i - 1][1]]
    assert pts[0][1] == "anticlique" and pts[-1][1] == "clique"
    assert len(switches) == 1
    i = switches[0]
    assert pts[i - 1][0] <= d0 <= pts[i][0]


# --- expansions -------------------------------------------------------------


@pytest.mark.parametrize("G", [g.clique(3), g.cycle(5), g.petersen(), g.complete_bipartite(3, 3)])
def test_small_delta_slope(G):
    d = 1e-6
    assert rate_constant(G, d).theta / d == pytest.approx(1 / G.n, rel=1e-3)


@pytest.mark.parametrize("k", range(4, 11))
def test_cycle_second_order(k):
    d = 1e-3
    theta = rate_constant(g.cycle(k), d).theta
    assert abs(theta - (d / k + (3 - k) / (2 * k * k) * d * d)) <= 1e-8


# --- curves -----------------------------------------------------------------


def test_c5_curve():
    rows = rate_curve(g.cycle(5), [1, 2, 3])
    for d, r in rows:
        assert r.theta == pytest.approx(-0.5 + 0.5 * math.sqrt(1 + 0.8 * d), rel=1e-12)


def test_curve_csv_and_properties():
    grid = np.geomspace(0.5, 200, 40)
    rows = rate_curve(g.cycle(4), grid)
    table = list(csv.DictReader(io.StringIO(curve_to_csv(rows))))
    assert list(table[0]) == ["delta", "theta", "clique_value", "constant", "regime"]
    deltas = [float(t["delta"]) for t in table]
    consts = [float(t["constant"]) for t in table]
    assert deltas == sorted(deltas) and consts == sorted(consts)
    regimes = [t["regime"] for t in table]
    assert sum(a != b for a, b in zip(regimes, regimes[1:])) == 1
    P = core_polynomial(g.cycle(4))
    for t in table:
        if t["regime"] == "anticlique":
            assert evaluate(P, float(t["constant"])) == pytest.approx(1 + float(t["delta"]), rel=1e-10)
    parsed = json.loads(curve_to_json(rows))
    assert len(parsed) == len(grid) and parsed[0]["regime"] == "anticlique"


@pytest.mark.parametrize("grid", [[1, 1], [2, 1], [0, 1], [-1, 2]])
def test_curve_grid_validation(grid):
    with pytest.raises(UpperTailError):
        rate_curve(g.cycle(4), grid)


@given(st.floats(0.01, 1000), st.floats(0.01, 1000))
def test_constant_monotone(a, b):
    a, b = sorted((a, b))
    for H in (g.clique(3), g.binary_tree(3)):
        assert rate_constant(H, a).constant <= rate_constant(H, b).constant * (1 + 1e-12)


# --- disconnected graphs ----------------------------------------------------


@pytest.mark.parametrize("G", [g.clique(3), g.cycle(4), g.cycle(5), g.complete_bipartite(2, 3), g.petersen()])
@pytest.mark.parametrize("delta", [0.3, 3, 30, 300])
def test_mixture_reproduces_connected(G, delta):
    assert mixture_rate(G, delta).constant == pytest.approx(rate_constant(G, delta).constant, rel=1e-9)


def grid_oracle(delta, points=10**4):
    z2 = np.linspace(0, (1 + delta) ** (1 / 3), points + 1)
    lam = (-4 - z2**3 + np.sqrt(12 * delta + z2**6 - 4 * z2**3 + 16)) / 6
    lam = np.maximum(lam, 0)
    # beyond z2 = delta^{1/3} the triangle block alone suffices
    ok = z2**3 <= delta
    return float(np.min((lam + 0.5 * z2**2)[ok]))


@pytest.mark.parametrize("delta", [0.5, 5, 100, 1e4])
def test_triangle_star_oracle(delta):
    H = g.parse_graph("clique:3+star:2")
    assert rate_constant(H, delta).constant == pytest.approx(grid_oracle(delta), rel=1e-6)


def test_triangle_star_mixture_beats_both():
    r = rate_constant(g.parse_graph("clique:3+star:2"), 1e4)
    assert r.regime == "mixture"
    assert r.constant < 0.99 * r.anticlique_value and r.constant < 0.99 * r.clique_value


def test_triangle_star_lambda_root():
    for z2 in (0.0, 1.0, 3.0):
        lam = triangle_star_lambda(z2, 100.0)
        assert (1 + 3 * lam + z2**3) * (1 + lam) == pytest.approx(101.0)


def test_lower_degree_component_warns():
    H = g.parse_graph("clique:3+path:2")
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r = rate_constant(H, 1.0)
    assert r.warnings and any("maximum degree" in str(x.message) for x in w)


def test_result_json_roundtrip():
    r = rate_constant(g.cycle(4), 16)
    d = json.loads(r.to_json())
    assert d["regime"] == "tie" and d["constant"] == 2.0
