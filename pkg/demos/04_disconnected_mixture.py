"""A triangle plus a 2-star: mixing both constructions beats either one at large delta."""

import numpy as np

from uppertail import graph as g
from uppertail.rate import rate_constant, triangle_star_lambda

H = g.parse_graph("clique:3+star:2")
for delta in (0.5, 5, 100, 1e4):
    r = rate_constant(H, delta)
    # brute grid over the clique share z2, for comparison
    z2 = np.linspace(0, delta ** (1 / 3), 20001)
    grid = np.min(np.maximum(triangle_star_lambda(z2, delta), 0) + 0.5 * z2**2)
    print(f"delta={delta:<7g} {r.regime:10s} value={r.constant:.9g} grid={grid:.9g} "
          f"hub-only={r.anticlique_value:.6g} clique-only={r.clique_value:.6g}")
