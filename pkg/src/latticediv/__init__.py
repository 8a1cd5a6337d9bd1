"""Diverse and disjoint solution collections over distributive solution lattices.

Feasible solutions (minimum s-t cuts, stable matchings) are rank vectors
over a chain decomposition of the ground set; diversity maximisation
reduces to submodular minimisation over ideals of a compact product
poset, and maximum disjoint families come from a three-oracle greedy.
"""
from .disjoint import DisjointOracles, MaxDisjointResult, max_disjoint
from .diversity import (
    Measure,
    DiverseOutcome,
    d_abs,
    d_cov,
    d_sum,
    dhat_cov,
    dhat_sum,
    evaluate_measure,
    maximize_diversity,
    multiplicity,
)
from .errors import (
    ConfigurationError,
    ContractViolationError,
    InfeasibleError,
    InputError,
    LatticeDivError,
    ResourceLimitError,
    SolverError,
)
from .lattice import (
    ChainDecomposition,
    CompactLattice,
    ProductLattice,
    build_product_irreducibles,
    is_left_right_ordered,
    join,
    leq,
    lro,
    meet,
)
from .matching import (
    PreferenceProfile,
    diverse_stable_matchings,
    gale_shapley,
    matching_oracles,
)
from .mincut import FlowNetwork, diverse_min_cuts, max_flow, mincut_oracles
from .poset import Poset
from .sfm import (
    PenalizedObjective,
    SubmodularObjective,
    minimize,
    minimize_exhaustive,
    minimize_mnp,
    verify_submodular_sample,
)

__version__ = "0.1.0"

__all__ = [
    "ChainDecomposition",
    "CompactLattice",
    "ConfigurationError",
    "ContractViolationError",
    "DisjointOracles",
    "DiverseOutcome",
    "FlowNetwork",
    "InfeasibleError",
    "InputError",
    "LatticeDivError",
    "MaxDisjointResult",
    "Measure",
    "PenalizedObjective",
    "Poset",
    "PreferenceProfile",
    "ProductLattice",
    "ResourceLimitError",
    "SolverError",
    "SubmodularObjective",
    "build_product_irreducibles",
    "d_abs",
    "d_cov",
    "d_sum",
    "dhat_cov",
    "dhat_sum",
    "diverse_min_cuts",
    "diverse_stable_matchings",
    "evaluate_measure",
    "gale_shapley",
    "is_left_right_ordered",
    "join",
    "leq",
    "lro",
    "matching_oracles",
    "max_disjoint",
    "max_flow",
    "maximize_diversity",
    "meet",
    "mincut_oracles",
    "minimize",
    "minimize_exhaustive",
    "minimize_mnp",
    "multiplicity",
    "verify_submodular_sample",
]
