"""Rate constants for cycles: the hub regime at small delta, the planted clique beyond delta0."""

import numpy as np

from uppertail import graph as g
from uppertail.rate import curve_to_csv, rate_constant, rate_curve, transition_delta0

for k in (3, 4, 5, 6):
    H = g.clique(3) if k == 3 else g.cycle(k)
    print(f"k={k}: delta0 = {transition_delta0(H):.10g}")

# Even cycles switch at 2^k. Around the switch the regime label flips once.
H = g.cycle(4)
for delta in (4, 15, 16, 17, 64):
    r = rate_constant(H, delta)
    print(f"C4 delta={delta:<3} theta={r.theta:.6f} clique={r.clique_value:.6f} -> {r.regime}")

# A CSV curve for external plotting.
print(curve_to_csv(rate_curve(g.cycle(5), np.geomspace(0.1, 1000, 7))))
