"""The subgraphs F of H with max degree D and vertex cover number |E(F)|/D.

These are the only subgraphs whose centered densities survive at leading
order; counting them by number of edges reproduces the independence
polynomial of the max-degree core of H.
"""

import json
from dataclasses import dataclass
from itertools import combinations

from ._config import DomainError, UpperTailError, check_guard
from .graph import (
    Graph,
    canonical_form,
    is_bipartite,
    max_degree,
    max_degree_core,
    structural_predicates,
    vertex_cover_number,
)
from .indpoly import IntPolynomial, independence_polynomial

BRUTEFORCE_MAX_EDGES = 14


@dataclass(frozen=True)
class FamilyEntry:
    subgraph: Graph  # representative, on the vertex labels of H
    core_set: frozenset
    multiplicity: int
    edges: int

    def to_dict(self):
        return {
            "edge_list": [list(e) for e in self.subgraph.sorted_edges()],
            "core_size": len(self.core_set),
            "multiplicity": self.multiplicity,
            "edges": self.edges,
        }


@dataclass(frozen=True)
class Family:
    """Isomorphism classes of F != H in the family, plus the status of H itself."""

    entries: tuple
    contains_h: bool
    max_degree: int

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def signature(self):
        """Comparable summary: {class key: (multiplicity, edges)} and whether H is a member."""
        return {_class_key(e.subgraph): (e.multiplicity, e.edges) for e in self.entries}, self.contains_h

    def to_dict(self):
        return {
            "max_degree": self.max_degree,
            "contains_h": self.contains_h,
            "classes": [e.to_dict() for e in self.entries],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _covered(F):
    """F restricted to the vertices it covers, relabeled."""
    vs = sorted({v for e in F.edges for v in e})
    index = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(((index[u], index[v]) for u, v in F.edges), len(vs))


def _class_key(F):
    return canonical_form(_covered(F))


def _check_connected(H, guard):
    check_guard("family", H.n, guard)
    D = max_degree(H)
    if D < 2:
        raise DomainError("family enumeration needs maximum degree >= 2")
    if not structural_predicates(H).is_connected:
        raise DomainError("family enumeration needs a connected graph; enumerate each component separately")
    return D


def in_family(F, D):
    """Membership test straight from the definition: max degree D and tau(F) = |E(F)|/D."""
    return F.num_edges > 0 and max_degree(F) == D and vertex_cover_number(_covered(F)) * D == F.num_edges


def _independent_subsets(vertices, masks):
    """Nonempty independent subsets of `vertices` (ascending), as tuples."""
    out = []

    def rec(i, chosen, blocked):
        for j in range(i, len(vertices)):
            v = vertices[j]
            if blocked >> v & 1:
                continue
            nxt = chosen + (v,)
            out.append(nxt)
            rec(j + 1, nxt, blocked | masks[v] | (1 << v))

    rec(0, (), 0)
    return out


def _group(items, H, D):
    """items: (edge frozenset, core set) -> sorted FamilyEntry tuple."""
    classes = {}
    for edges, core in items:
        F = Graph(H.n, edges)
        key = _class_key(F)
        if key in classes:
            rep, rep_core, m = classes[key]
            classes[key] = (rep, rep_core, m + 1)
        else:
            classes[key] = (F, core, 1)
    entries = [FamilyEntry(F, frozenset(core), m, F.num_edges) for F, core, m in classes.values()]
    entries.sort(key=lambda e: (e.edges, e.subgraph.sorted_edges()))
    return tuple(entries)


def enumerate_family(H, guard=None):
    """Family classes generated from independent sets A of the core: F_A = edges of H at A."""
    D = _check_connected(H, guard)
    core = [v for v in range(H.n) if H.degrees[v] == D]
    all_edges = H.edges
    items = []
    h_sets = 0
    for A in _independent_subsets(core, H.masks):
        Aset = set(A)
        edges = frozenset(e for e in all_edges if e[0] in Aset or e[1] in Aset)
        if edges == all_edges:
            h_sets += 1
            continue
        items.append((edges, A))
    return Family(_group(items, H, D), contains_h=h_sets > 0, max_degree=D)


def _find_core(F, D):
    deg = F.degrees
    cands = [v for v in range(F.n) if deg[v] == D]
    k = F.num_edges // D
    for A in combinations(cands, k):
        s = set(A)
        if all(u in s or v in s for u, v in F.edges):
            return A
    raise AssertionError("family member without a degree-D independent cover")


def enumerate_family_bruteforce(H, guard=None, max_edges=BRUTEFORCE_MAX_EDGES):
    """Oracle: scan every edge subset of H and keep those satisfying the definition."""
    D = _check_connected(H, guard)
    if H.num_edges > max_edges:
        raise UpperTailError(f"brute-force family scan limited to {max_edges} edges")
    E = H.sorted_edges()
    items = []
    contains_h = False
    for mask in range(1, 1 << len(E)):
        edges = frozenset(E[i] for i in range(len(E)) if mask >> i & 1)
        F = Graph(H.n, edges)
        if not in_family(F, D):
            continue
        if len(edges) == len(E):
            contains_h = True
            continue
        items.append((edges, _find_core(F, D)))
    return Family(_group(items, H, D), contains_h=contains_h, max_degree=D)


@dataclass(frozen=True)
class IdentityCheck:
    lhs: IntPolynomial
    rhs: IntPolynomial
    holds: bool

    def to_dict(self):
        return {
            "lhs": [str(a) for a in self.lhs.coeffs],
            "rhs": [str(a) for a in self.rhs.coeffs],
            "holds": self.holds,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_identity(H, guard=None):
    """Compare P_{H*} with 1 + sum_F N(F,H) x^{|E(F)|/D} + (extra term for regular bipartite H).

    The sum runs over all family members including H itself when it belongs;
    a regular bipartite H has two core sets (its two sides), hence the extra
    x^{|E(H)|/D}.
    """
    fam = enumerate_family(H, guard)
    D = fam.max_degree
    lhs = independence_polynomial(max_degree_core(H, D))
    coeffs = [1] + [0] * (H.num_edges // D)
    for e in fam.entries:
        coeffs[e.edges // D] += e.multiplicity
    h_member = in_family(H, D)
    top = H.num_edges // D
    if h_member:
        coeffs[top] += 1
    if h_member and structural_predicates(H).is_regular and is_bipartite(H):
        coeffs[top] += 1
    rhs = IntPolynomial(tuple(coeffs))
    return IdentityCheck(lhs, rhs, lhs == rhs)
