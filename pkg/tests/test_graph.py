import itertools
import random
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import CORPUS, atlas
from uppertail import graph as g
from uppertail._config import SizeGuardError, UpperTailError


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return g.Graph.from_edges([e for e, k in zip(pairs, keep) if k], n)


def relabel(G, perm):
    return g.Graph.from_edges(((perm[u], perm[v]) for u, v in G.edges), G.n)


# --- construction -----------------------------------------------------------


def test_preset_sizes():
    assert (g.cycle(5).n, g.cycle(5).num_edges) == (5, 5)
    assert g.clique(4).num_edges == 6
    assert g.complete_bipartite(2, 3).num_edges == 6
    assert (g.path(4).n, g.path(4).num_edges) == (4, 3)
    assert g.star(3).degrees == (3, 1, 1, 1)
    assert g.binary_tree(4).n == 15 and g.binary_tree(4).num_edges == 14
    assert g.petersen().degrees == (3,) * 10


def test_complete_bipartite_left_block_first():
    G = g.complete_bipartite(2, 3)
    assert G.adjacency[0] == {2, 3, 4}
    assert G.adjacency[4] == {0, 1}


def test_binary_tree_breadth_first():
    T = g.binary_tree(3)
    assert T.sorted_edges() == [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]


def test_parse_graph_union():
    G = g.parse_graph("clique:3+star:2")
    assert G.n == 6 and G.num_edges == 5
    assert len(g.connected_components(G)) == 2


@pytest.mark.parametrize("text", ["cyc:4", "cycle", "cycle:x", "cycle:2", "clique:3+", "complete_bipartite:3"])
def test_parse_graph_errors(text):
    with pytest.raises(UpperTailError):
        g.parse_graph(text)


def test_edge_list_isolated_and_comments():
    G = g.parse_edge_list("# a comment\nn 5\n0 1\n1 2\n")
    assert G.n == 5 and G.num_edges == 2


@pytest.mark.parametrize("text", ["0 0\n", "0 1 2\n", "a b\n", "n 2\n0 3\n"])
def test_edge_list_errors(text):
    with pytest.raises(UpperTailError):
        g.parse_edge_list(text)


@given(graphs())
def test_edge_list_roundtrip(G):
    assert g.parse_edge_list(g.format_edge_list(G)) == G


def test_read_edge_list(tmp_path):
    f = tmp_path / "c4.txt"
    f.write_text(g.format_edge_list(g.cycle(4)))
    assert g.read_edge_list(f) == g.cycle(4)


# --- structure --------------------------------------------------------------


def test_predicates():
    s = g.structural_predicates(g.cycle(4))
    assert s.is_regular and s.is_connected and s.is_bipartite
    s = g.structural_predicates(g.cycle(5))
    assert not s.is_bipartite
    assert not g.structural_predicates(g.parse_graph("clique:3+star:2")).is_connected


def test_max_degree_core():
    core = g.max_degree_core(g.complete_bipartite(2, 3), 3)
    assert core.n == 2 and core.num_edges == 0
    core = g.max_degree_core(g.binary_tree(4), 3)
    assert core.n == 6 and core.num_edges == 4


@given(graphs())
def test_components_match_networkx(G):
    ours = sorted(sorted(c.vertices) for c in g.connected_components(G))
    theirs = sorted(sorted(c) for c in nx.connected_components(g.to_networkx(G)))
    assert ours == theirs


# --- covers and matchings ---------------------------------------------------


def tau_brute(G):
    for k in range(G.n + 1):
        for S in itertools.combinations(range(G.n), k):
            s = set(S)
            if all(u in s or v in s for u, v in G.edges):
                return k


def nu_brute(G):
    E = G.sorted_edges()
    for k in range(len(E), 0, -1):
        for M in itertools.combinations(E, k):
            if len({v for e in M for v in e}) == 2 * k:
                return k
    return 0


def half_integral_opt(G):
    """Exhaustive max of sum_e w_e over w_e in {0, 1/2, 1} with vertex sums <= 1."""
    E = G.sorted_edges()

    @lru_cache(maxsize=None)
    def best(i, cap):
        if i == len(E):
            return 0
        u, v = E[i]
        out = 0
        for units in range(min(cap[u], cap[v], 2) + 1):
            c = list(cap)
            c[u] -= units
            c[v] -= units
            out = max(out, units + best(i + 1, tuple(c)))
        return out

    return Fraction(best(0, (2,) * G.n), 2)


def test_small_values():
    assert g.vertex_cover_number(g.cycle(5)) == 3
    assert g.matching_number(g.complete_bipartite(2, 3)) == 2
    assert g.fractional_matching_number(g.cycle(5)) == Fraction(5, 2)
    assert g.fractional_matching_number(g.clique(3)) == Fraction(3, 2)
    assert g.fractional_matching_number(g.cycle(4)) == 2


@settings(max_examples=60)
@given(graphs(max_n=8))
def test_matching_chain(G):
    nu, nus, tau = g.matching_number(G), g.fractional_matching_number(G), g.vertex_cover_number(G)
    assert nu == nu_brute(G)
    assert tau == tau_brute(G)
    assert nu <= nus <= tau
    if G.edges:
        assert tau * g.max_degree(G) >= G.num_edges


def test_konig_on_bipartite_corpus():
    for name, G in CORPUS.items():
        if g.is_bipartite(G):
            assert g.matching_number(G) == g.vertex_cover_number(G), name


def test_konig_random_bipartite():
    rng = random.Random(7)
    for _ in range(100):
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < 0.5]
        G = g.Graph.from_edges(edges, a + b)
        assert g.matching_number(G) == g.vertex_cover_number(G)


def test_fractional_matching_vs_half_integral_and_lp():
    for G in atlas(7):
        nus = g.fractional_matching_number(G)
        assert nus == half_integral_opt(G)
        if G.edges:
            E = G.sorted_edges()
            A = np.zeros((G.n, len(E)))
            for j, (u, v) in enumerate(E):
                A[u, j] = A[v, j] = 1
            lp = linprog(-np.ones(len(E)), A_ub=A, b_ub=np.ones(G.n), bounds=(0, 1), method="highs")
            assert abs(-lp.fun - float(nus)) < 1e-9


def test_irregular_strict_fractional_matching():
    # connected, irregular, max degree >= 2, tau > |E|/D  =>  nu* > |E|/D
    checked = 0
    for G in atlas(7, connected=True):
        D = g.max_degree(G)
        if D < 2 or g.is_regular(G):
            continue
        if g.vertex_cover_number(G) * D > G.num_edges:
            checked += 1
            assert g.fractional_matching_number(G) > Fraction(G.num_edges, D)
    assert checked > 900


def test_vertex_cover_guard():
    with pytest.raises(SizeGuardError):
        g.vertex_cover_number(g.cycle(30))
    assert g.vertex_cover_number(g.cycle(30), guard=30) == 15


def test_guard_env(monkeypatch):
    monkeypatch.setenv("UPPERTAIL_SIZE_GUARD", "4")
    with pytest.raises(SizeGuardError):
        g.vertex_cover_number(g.cycle(5))


# --- automorphisms, copies, canonical forms ---------------------------------


@pytest.mark.parametrize("G,aut", [(g.cycle(4), 8), (g.clique(4), 24), (g.star(2), 2), (g.petersen(), 120),
                                   (g.complete_bipartite(2, 3), 12)])
def test_automorphisms(G, aut):
    assert g.automorphism_count(G) == aut


@pytest.mark.parametrize("F,H,c", [
    (g.star(2), g.clique(3), 3),
    (g.star(2), g.cycle(4), 4),
    (g.path(4), g.cycle(4), 4),
    (g.clique(3), g.cycle(4), 0),
    (g.clique(3), g.clique(4), 4),
    (g.cycle(4), g.clique(4), 3),
])
def test_copies(F, H, c):
    assert g.count_copies(F, H) == c


def inj_brute(F, H):
    return sum(
        all(phi[v] in H.adjacency[phi[u]] for u, v in F.edges)
        for phi in itertools.permutations(range(H.n), F.n)
    )


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=4), graphs(max_n=7))
def test_copies_vs_bruteforce(F, H):
    if F.n > H.n:
        return
    inj = inj_brute(F, H)
    assert g.injective_hom_count(F, H) == inj
    assert g.count_copies(F, H) * g.automorphism_count(F) == inj


def test_copies_vs_networkx_monomorphisms():
    rng = random.Random(3)
    for _ in range(20):
        H = g.Graph.from_edges([e for e in itertools.combinations(range(7), 2) if rng.random() < 0.5], 7)
        for F in (g.clique(3), g.cycle(4), g.path(4), g.star(3)):
            mono = nx.algorithms.isomorphism.GraphMatcher(g.to_networkx(H), g.to_networkx(F))
            count = sum(1 for _ in mono.subgraph_monomorphisms_iter())
            assert g.count_copies(F, H) * g.automorphism_count(F) == count


@settings(max_examples=80)
@given(graphs(max_n=9), st.randoms())
def test_canonical_form_invariant(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert g.canonical_form(G) == g.canonical_form(relabel(G, perm))


def test_canonical_form_separates_atlas():
    seen = {}
    for G in atlas(7):
        key = g.canonical_form(G)
        assert key not in seen, "two non-isomorphic atlas graphs share a canonical form"
        seen[key] = G


def test_canonical_form_examples():
    c4 = g.Graph.from_edges([(0, 2), (2, 1), (1, 3), (3, 0)], 4)
    assert g.canonical_form(c4) == g.canonical_form(g.cycle(4))
    assert g.canonical_form(g.clique(3)) != g.canonical_form(g.path(3))
    assert g.canonical_form(g.edgeless(3)) == g.canonical_form(g.edgeless(3))


def test_independent_partitions_count():
    # partitions of C4 into independent blocks: {02}{13}, {02}{1}{3}, {0}{2}{13}, singletons
    assert len(g.independent_partitions(g.cycle(4))) == 4
    assert len(g.independent_partitions(g.clique(4))) == 1
    assert len(g.independent_partitions(g.edgeless(4))) == 15


def test_graph_summary():
    s = g.graph_summary(g.petersen())
    assert s["automorphisms"] == 120 and s["matching_number"] == 5 and s["vertex_cover_number"] == 6
