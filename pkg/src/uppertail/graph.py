"""Small simple graphs and the exact combinatorics run on them.

Everything here is exact and exponential-time in the worst case; routines that
can blow up check a size guard (see `uppertail._config`) and raise
`SizeGuardError` instead of approximating.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

import networkx as nx

from ._config import SizeGuardError, UpperTailError, check_guard, size_guard

PRESETS = (
    "cycle",
    "clique",
    "complete_bipartite",
    "path",
    "star",
    "binary_tree",
    "b_ary_tree",
    "petersen",
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    `edges` holds pairs (u, v) with u < v. Vertices not covered by any edge
    are still part of the graph.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise UpperTailError("vertex count must be nonnegative")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise UpperTailError(f"invalid edge {e} for a graph on {self.n} vertices")

    @classmethod
    def from_edges(cls, edges, n=None):
        """Build from any iterable of pairs; orientation and duplicates are normalized."""
        norm = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise UpperTailError(f"self-loop at vertex {u}")
            if u < 0 or v < 0:
                raise UpperTailError(f"negative vertex in edge {e}")
            norm.add((min(u, v), max(u, v)))
        covered = 1 + max((v for _, v in norm), default=-1)
        if n is None:
            n = covered
        elif n < covered:
            raise UpperTailError(f"declared {n} vertices but an edge uses vertex {covered - 1}")
        return cls(int(n), frozenset(norm))

    @property
    def num_edges(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    @cached_property
    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def masks(self):
        """Neighborhoods as integer bitmasks."""
        return tuple(sum(1 << u for u in a) for a in self.adjacency)

    @cached_property
    def degrees(self):
        return tuple(len(a) for a in self.adjacency)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# ---------------------------------------------------------------------------
# construction


def edgeless(n):
    return Graph(n, frozenset())


def cycle(k):
    if k < 3:
        raise UpperTailError("cycle needs k >= 3")
    return Graph.from_edges(((i, (i + 1) % k) for i in range(k)), k)


def clique(k):
    if k < 1:
        raise UpperTailError("clique needs k >= 1")
    return Graph.from_edges(combinations(range(k), 2), k)


def complete_bipartite(k, l):
    """Left block 0..k-1, right block k..k+l-1."""
    if k < 1 or l < 1:
        raise UpperTailError("complete_bipartite needs both sides >= 1")
    return Graph.from_edges(((i, k + j) for i in range(k) for j in range(l)), k + l)


def path(k):
    """Path on k vertices (k-1 edges)."""
    if k < 1:
        raise UpperTailError("path needs k >= 1")
    return Graph.from_edges(((i, i + 1) for i in range(k - 1)), k)


def star(k):
    """K_{1,k}: center 0, leaves 1..k."""
    if k < 1:
        raise UpperTailError("star needs k >= 1")
    return Graph.from_edges(((0, i) for i in range(1, k + 1)), k + 1)


def b_ary_tree(b, h):
    """Complete b-ary tree of height h, labeled breadth-first (children of i: b*i+1..b*i+b)."""
    if b < 1 or h < 1:
        raise UpperTailError("b_ary_tree needs b >= 1 and h >= 1")
    n = h if b == 1 else (b**h - 1) // (b - 1)
    return Graph.from_edges(((i, b * i + c) for i in range(n) for c in range(1, b + 1) if b * i + c < n), n)


def binary_tree(h):
    """T_h with 2^h - 1 vertices; T_1 is a single vertex, T_2 a 3-vertex path."""
    return b_ary_tree(2, h)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner, 10)


_PRESET_BUILDERS = {
    "cycle": (cycle, 1),
    "clique": (clique, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "path": (path, 1),
    "star": (star, 1),
    "binary_tree": (binary_tree, 1),
    "b_ary_tree": (b_ary_tree, 2),
    "petersen": (petersen, 0),
}


@dataclass(frozen=True)
class GraphSpec:
    """Either a preset (name + integer params) or an explicit edge list."""

    preset: str = None
    params: tuple = ()
    edges: tuple = None
    n: int = None


def build_graph(spec):
    """Build a graph from a GraphSpec, a preset string like "cycle:5", or a "+"-joined union."""
    if isinstance(spec, str):
        return parse_graph(spec)
    if spec.edges is not None:
        return Graph.from_edges(spec.edges, spec.n)
    if spec.preset not in _PRESET_BUILDERS:
        raise UpperTailError(f"unknown preset {spec.preset!r}; choose from {', '.join(PRESETS)}")
    fn, arity = _PRESET_BUILDERS[spec.preset]
    if len(spec.params) != arity:
        raise UpperTailError(f"preset {spec.preset} takes {arity} integer parameter(s)")
    if any(int(x) < 1 for x in spec.params):
        raise UpperTailError("preset parameters must be positive")
    return fn(*(int(x) for x in spec.params))


def parse_graph(text):
    """Parse "name:p1,p2" presets joined by "+" into their disjoint union."""
    parts = [s.strip() for s in text.split("+")]
    graphs = []
    for part in parts:
        if not part:
            raise UpperTailError(f"empty term in graph expression {text!r}")
        name, _, args = part.partition(":")
        try:
            params = tuple(int(a) for a in args.split(",")) if args else ()
        except ValueError:
            raise UpperTailError(f"non-integer preset parameter in {part!r}") from None
        graphs.append(build_graph(GraphSpec(preset=name.strip(), params=params)))
    return disjoint_union(*graphs)


def parse_edge_list(text):
    """Edge-list text: "u v" per line, optional leading "n <count>", '#' comments."""
    n = None
    edges = []
    seen_data = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "n" and not seen_data:
            if len(tok) != 2:
                raise UpperTailError(f"line {lineno}: expected 'n <count>'")
            n = _parse_int(tok[1], lineno)
            seen_data = True
            continue
        seen_data = True
        if len(tok) != 2:
            raise UpperTailError(f"line {lineno}: expected two vertex ids, got {line!r}")
        edges.append((_parse_int(tok[0], lineno), _parse_int(tok[1], lineno)))
    return Graph.from_edges(edges, n)


def _parse_int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise UpperTailError(f"line {lineno}: {tok!r} is not an integer") from None


def read_edge_list(path_):
    with open(path_) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(G):
    lines = [f"n {G.n}"] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def disjoint_union(*graphs):
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(edges, offset)


def induced_subgraph(G, vertices):
    """Subgraph induced on `vertices`, relabeled 0.. in sorted vertex order."""
    vs = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(
        ((index[u], index[v]) for u, v in G.edges if u in index and v in index), len(vs)
    )


def complement(G):
    return Graph.from_edges((e for e in combinations(range(G.n), 2) if e not in G.edges), G.n)


def to_networkx(G):
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges)
    return g


# ---------------------------------------------------------------------------
# structure


def max_degree(G):
    return max(G.degrees, default=0)


@dataclass(frozen=True)
class Component:
    graph: Graph
    vertices: tuple  # vertices[i] is the original label of graph vertex i


@dataclass(frozen=True)
class Structure:
    is_regular: bool
    is_connected: bool
    is_bipartite: bool
    components: tuple


def connected_components(G):
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        out.append(Component(induced_subgraph(G, comp), tuple(comp)))
    return out


def is_bipartite(G):
    return two_coloring(G) is not None


def two_coloring(G):
    """A proper 2-coloring as a list of 0/1, or None if G has an odd cycle."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_regular(G):
    return len(set(G.degrees)) <= 1


def structural_predicates(G):
    comps = connected_components(G)
    return Structure(
        is_regular=is_regular(G),
        is_connected=len(comps) <= 1,
        is_bipartite=is_bipartite(G),
        components=tuple(comps),
    )


def max_degree_core(G, delta_ref):
    """Induced subgraph on the vertices whose degree equals `delta_ref`."""
    return induced_subgraph(G, [v for v in range(G.n) if G.degrees[v] == delta_ref])


# ---------------------------------------------------------------------------
# covers and matchings


def vertex_cover_number(G, guard=None):
    """Exact minimum vertex cover size by branching on a max-degree vertex."""
    check_guard("vertex_cover", G.n, guard)
    masks = G.masks

    @lru_cache(maxsize=None)
    def tau(alive):
        best_v, best_d = -1, 0
        m = alive
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (masks[v] & alive).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            return 0
        nbrs = masks[best_v] & alive
        without_v = best_d + tau(alive & ~nbrs & ~(1 << best_v))
        if best_d == 1:
            return without_v
        return min(1 + tau(alive & ~(1 << best_v)), without_v)

    return tau((1 << G.n) - 1)


def matching_number(G):
    """Maximum matching size (Edmonds' blossom algorithm via networkx)."""
    if not G.edges:
        return 0
    return len(nx.max_weight_matching(to_networkx(G), maxcardinality=True))


def bipartite_matching_size(left_adj, n_right):
    """Maximum matching in a bipartite graph given left-vertex adjacency lists (Kuhn)."""
    match_right = [-1] * n_right

    def augment(u, visited):
        for w in left_adj[u]:
            if visited[w]:
                continue
            visited[w] = True
            if match_right[w] < 0 or augment(match_right[w], visited):
                match_right[w] = u
                return True
        return False

    size = 0
    for u in range(len(left_adj)):
        if augment(u, [False] * n_right):
            size += 1
    return size


def fractional_matching_number(G):
    """nu*(G) as a Fraction, equal to half the matching number of the bipartite double cover."""
    left_adj = [sorted(G.adjacency[v]) for v in range(G.n)]
    return Fraction(bipartite_matching_size(left_adj, G.n), 2)


# ---------------------------------------------------------------------------
# homomorphisms, automorphisms, copies


def _search_order(F):
    """Vertex order for backtracking: each next vertex has the most placed neighbors."""
    placed = []
    rest = set(range(F.n))
    while rest:
        v = max(rest, key=lambda u: (sum(w in F.adjacency[u] for w in placed), F.degrees[u], -u))
        placed.append(v)
        rest.remove(v)
    return placed


def injective_hom_count(F, H, same_degree=False):
    """Number of injective maps V(F) -> V(H) sending edges to edges."""
    core = [v for v in range(F.n) if F.degrees[v] > 0]
    n_isolated = F.n - len(core)
    if n_isolated and not same_degree:
        total = injective_hom_count(induced_subgraph(F, core), H)
        free = H.n - len(core)
        for i in range(n_isolated):
            total *= max(free - i, 0)
        return total

    order = _search_order(F)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in F.adjacency[v] if pos[w] < i] for i, v in enumerate(order)]
    need = [F.degrees[v] for v in order]
    hmask = H.masks
    hdeg = H.degrees
    allmask = (1 << H.n) - 1
    ok_deg = [
        sum(1 << c for c in range(H.n) if (hdeg[c] == d if same_degree else hdeg[c] >= d)) for d in need
    ]
    assign = [0] * F.n

    def rec(i, used):
        if i == len(order):
            return 1
        cand = allmask
        for j in back[i]:
            cand &= hmask[assign[j]]
        cand &= ok_deg[i] & ~used
        total = 0
        while cand:
            low = cand & -cand
            cand ^= low
            assign[i] = low.bit_length() - 1
            total += rec(i + 1, used | low)
        return total

    return rec(0, 0)


def automorphism_count(G, guard=None):
    check_guard("automorphism", G.n, guard)
    return injective_hom_count(G, G, same_degree=True)


def count_copies(F, H, guard=None, host_guard=None):
    """Subgraphs of H isomorphic to F: injective homomorphisms divided by |Aut(F)|."""
    check_guard("host", H.n, host_guard)
    if F.n > H.n:
        return 0
    inj = injective_hom_count(F, H)
    aut = automorphism_count(F, guard)
    q, r = divmod(inj, aut)
    assert r == 0, "injective homomorphism count not divisible by |Aut(F)|"
    return q


# ---------------------------------------------------------------------------
# canonical form


def _refine_colors(G):
    """Color refinement from degrees; labels are canonical (ordered by signature)."""
    colors = list(G.degrees)
    n_classes = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in G.adjacency[v]))) for v in range(G.n)]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == n_classes:
            return colors
        n_classes = len(table)


def _twin_classes(G):
    cls = list(range(G.n))
    for u in range(G.n):
        if cls[u] != u:
            continue
        for v in range(u + 1, G.n):
            if cls[v] == v and G.adjacency[u] - {v} == G.adjacency[v] - {u}:
                cls[v] = u
    return cls


def _connected_code(G):
    """Lexicographically largest adjacency code over color-respecting orderings."""
    n = G.n
    colors = _refine_colors(G)
    twins = _twin_classes(G)
    slots = sorted(colors)
    adj = G.adjacency
    best = []
    order = []
    rows = []
    used = [False] * n

    def rec(i):
        nonlocal best
        if i == n:
            if rows > best:
                best = list(rows)
            return
        target = slots[i]
        cands = []
        seen_twin = set()
        for v in range(n):
            if used[v] or colors[v] != target or twins[v] in seen_twin:
                continue
            seen_twin.add(twins[v])
            cands.append((tuple(1 if order[j] in adj[v] else 0 for j in range(i)), v))
        cands.sort(reverse=True)
        for row, v in cands:
            rows.append(row)
            if not best or rows >= best[: i + 1]:
                used[v] = True
                order.append(v)
                rec(i + 1)
                order.pop()
                used[v] = False
            rows.pop()

    rec(0)
    bits = [b for row in best for b in row]
    packed = bytearray()
    for k in range(0, len(bits), 8):
        chunk = bits[k : k + 8]
        packed.append(sum(b << (7 - j) for j, b in enumerate(chunk)))
    return n.to_bytes(2, "big") + bytes(packed)


def canonical_form(G, guard=None):
    """Byte string equal for isomorphic graphs whose components fit the guard.

    Components are canonized separately and sorted. If any component exceeds
    the guard, a labeled (non-canonical) encoding prefixed with b"L" is
    returned instead; it is still a valid cache key, just not shared across
    relabelings.
    """
    limit = size_guard("canonical", guard)
    comps = connected_components(G)
    if any(c.graph.n > limit for c in comps):
        return labeled_form(G)
    codes = sorted(_connected_code(c.graph) for c in comps)
    return b"C" + b"".join(len(c).to_bytes(2, "big") + c for c in codes)


def labeled_form(G):
    out = bytearray(b"L")
    out += G.n.to_bytes(2, "big")
    for u, v in G.sorted_edges():
        out += u.to_bytes(2, "big") + v.to_bytes(2, "big")
    return bytes(out)


# ---------------------------------------------------------------------------
# vertex partitions


def independent_partitions(G, limit=None):
    """Set partitions of V(G) whose blocks are independent sets, as block-index lists.

    Entry i of each returned list is the block of vertex i (restricted growth
    form). Raises if more than `limit` partitions exist.
    """
    n = G.n
    masks = G.masks
    out = []
    label = [0] * n
    blocks = []  # bitmask per block

    def rec(v):
        if v == n:
            out.append(tuple(label))
            if limit is not None and len(out) > limit:
                raise SizeGuardError(f"more than {limit} independent partitions")
            return
        for b, m in enumerate(blocks):
            if not masks[v] & m:
                blocks[b] = m | (1 << v)
                label[v] = b
                rec(v + 1)
                blocks[b] = m
        blocks.append(1 << v)
        label[v] = len(blocks) - 1
        rec(v + 1)
        blocks.pop()

    rec(0)
    return out


def partition_mobius(labels):
    """Mobius function mu(0, pi) of the partition lattice: prod over blocks of (-1)^(b-1) (b-1)!."""
    sizes = {}
    for b in labels:
        sizes[b] = sizes.get(b, 0) + 1
    out = 1
    for s in sizes.values():
        out *= (-1) ** (s - 1) * math.factorial(s - 1)
    return out


def quotient_edges(G, labels):
    """Edges of G mapped through the partition, kept with multiplicity."""
    return [(min(labels[u], labels[v]), max(labels[u], labels[v])) for u, v in G.sorted_edges()]


def graph_summary(G):
    """Structural facts about a small graph, as a JSON-ready dict."""
    info = structural_predicates(G)
    D = max_degree(G)
    core = [v for v in range(G.n) if G.degrees[v] == D]
    out = {
        "vertices": G.n,
        "edges": G.num_edges,
        "max_degree": D,
        "regular": info.is_regular,
        "connected": info.is_connected,
        "bipartite": info.is_bipartite,
        "components": len(info.components),
        "core_vertices": core,
        "matching_number": matching_number(G),
        "fractional_matching_number": str(fractional_matching_number(G)),
        "vertex_cover_number": vertex_cover_number(G),
    }
    if G.n <= size_guard("automorphism"):
        out["automorphisms"] = automorphism_count(G)
    return out
