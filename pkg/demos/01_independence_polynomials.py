"""Independence polynomials of small graphs, and the threshold theta where P(theta) = 1 + delta."""

from uppertail import graph as g
from uppertail.indpoly import independence_polynomial, independence_polynomial_bruteforce, solve_threshold

for name in ["cycle:4", "cycle:5", "complete_bipartite:3,3", "petersen", "binary_tree:4"]:
    G = g.parse_graph(name)
    P = independence_polynomial(G)
    # the subset scan is exponential but makes an independent check
    assert P == independence_polynomial_bruteforce(G)
    print(f"{name:24s} P(x) = {P}")

# Thresholds grow with delta; for C4 the root is -1 + sqrt(1 + delta/2).
P = independence_polynomial(g.cycle(4))
for delta in (0.1, 1, 10, 100):
    print(f"delta={delta:<6} theta={solve_threshold(P, delta):.12g}")
