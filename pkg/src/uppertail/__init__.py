"""Leading-order constants for upper tails of subgraph counts in G(n, p), with the supporting exact combinatorics."""

from ._config import DomainError, SizeGuardError, UpperTailError
from .family import enumerate_family, enumerate_family_bruteforce, verify_identity
from .graph import (
    Graph,
    build_graph,
    canonical_form,
    count_copies,
    fractional_matching_number,
    matching_number,
    max_degree_core,
    parse_graph,
    structural_predicates,
    vertex_cover_number,
)
from .indpoly import IntPolynomial, independence_polynomial, solve_threshold
from .mc import SampleStats, estimate_upper_tail, sample_gnp
from .rate import RateResult, mixture_rate, rate_constant, rate_curve, transition_delta0
from .varprob import (
    SolveConfig,
    StepGraphon,
    WeightedGraph,
    anticlique_candidate,
    clique_candidate,
    graph_entropy,
    graphon_candidate_density,
    hom_density,
    hom_density_gradient,
    relative_entropy_point,
    solve_variational,
)

__version__ = "0.1.0"
