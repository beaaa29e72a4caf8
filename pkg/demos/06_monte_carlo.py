"""Copy counts in G(n, p): the empirical mean against the exact expectation."""

from uppertail import graph as g
from uppertail.mc import estimate_upper_tail

for name, n in (("clique:3", 20), ("cycle:4", 15)):
    s = estimate_upper_tail(g.parse_graph(name), n, 0.3, 0.5, 20000, seed=1)
    print(f"{name}: mean {s.mean_count:.3f} +- {s.ci_halfwidth:.3f}, exact {s.expected_count:.3f}, "
          f"P(X >= 1.5 E X) ~ {s.tail_estimate:.4f} +- {s.tail_ci_halfwidth:.4f}")
