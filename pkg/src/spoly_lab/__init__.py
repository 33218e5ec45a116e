"""Weighted polynomial approximation with exponents restricted to convex sets."""

from __future__ import annotations

__version__ = "0.1.0"

from .approx import (
    ApproxResult,
    best_weighted_approx_lawson,
    best_weighted_approx_lp,
    decay_rate,
    hull_approx_comparison,
)
from .cones import FullSpace, HalfspaceIntersection, IceCream, OrthantComplement, cone_hull_membership
from .errors import (
    ConfigError,
    DegenerateSampleError,
    DomainError,
    InadmissibleWeightError,
    SolverError,
    SpolyError,
    UnsupportedExactnessError,
)
from .exponent_geometry import (
    ConcaveHypograph,
    ExponentSet,
    QuarterDisc,
    RationalPolytope,
    lattice_points,
    log_support,
    membership,
    minkowski_decompose,
    standard_simplex,
    support_function,
)
from .lattice_gap import (
    disc_gap_exact,
    gap_distance,
    gap_rate_report,
    hypograph_gap_bound,
    polytope_delta,
)
from .samples import WeightedSampleSet, circle, disc_grid, segment, torus, validate_weight
from .siciak import SiciakField, siciak_phi, sublevel_classify, v_approx
from .spoly import SPolynomial, build_basis, evaluate, growth_check, product

__all__ = [
    "ApproxResult",
    "ConcaveHypograph",
    "ConfigError",
    "DegenerateSampleError",
    "DomainError",
    "ExponentSet",
    "FullSpace",
    "HalfspaceIntersection",
    "IceCream",
    "InadmissibleWeightError",
    "OrthantComplement",
    "QuarterDisc",
    "RationalPolytope",
    "SPolynomial",
    "SiciakField",
    "SolverError",
    "SpolyError",
    "UnsupportedExactnessError",
    "WeightedSampleSet",
    "best_weighted_approx_lawson",
    "best_weighted_approx_lp",
    "build_basis",
    "circle",
    "cone_hull_membership",
    "decay_rate",
    "disc_gap_exact",
    "disc_grid",
    "evaluate",
    "gap_distance",
    "gap_rate_report",
    "growth_check",
    "hull_approx_comparison",
    "hypograph_gap_bound",
    "lattice_points",
    "log_support",
    "membership",
    "minkowski_decompose",
    "polytope_delta",
    "product",
    "segment",
    "siciak_phi",
    "standard_simplex",
    "sublevel_classify",
    "support_function",
    "torus",
    "v_approx",
    "validate_weight",
]
