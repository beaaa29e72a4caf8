"""The subgraphs that drive the leading order, and how they add up to P_{H*}."""

from uppertail import graph as g
from uppertail.family import enumerate_family, verify_identity

for name in ["clique:3", "cycle:4", "cycle:5", "complete_bipartite:2,3", "binary_tree:3"]:
    H = g.parse_graph(name)
    fam = enumerate_family(H)
    print(f"{name}: max degree {fam.max_degree}, H itself in family: {fam.contains_h}")
    for e in fam:
        print(f"   {e.edges} edges, core size {len(e.core_set)}, {e.multiplicity} copies: {e.subgraph.sorted_edges()}")
    chk = verify_identity(H)
    print(f"   P_core = {chk.lhs}   family sum = {chk.rhs}   equal: {chk.holds}")
