"""Multiple fixed points of operators on partially ordered distance spaces:
product distances, twisted orders, contraction/Meir-Keeler condition
checkers, monotone Picard iteration, and a brute-force uniqueness oracle."""

from .conditions import (
    ConditionReport,
    MeirKeelerModulus,
    check_bounds_exist,
    check_lattice,
    check_mk,
    check_mk_operator,
    check_mk_space,
    check_omega,
    check_order_distance_compat,
    sample_comparable_pairs,
)
from .errors import (
    CapacityError,
    CarrierError,
    EvaluationError,
    MultifixError,
    ParseError,
    UnsupportedInstanceError,
)
from .game import GameConfig, Trajectory, is_optimal_selection, simulate, step
from .operators import (
    FixedPointCertificate,
    LambdaFamily,
    MultiOperator,
    apply_lambda_f,
    coupled_preset,
    is_multiple_fixed_point,
    surjectivity_report,
    tripled_preset,
)
from .orders import LSet, OrderRelation, chain_order, compare_L
from .product import (
    ProductKind,
    check_monotone_complete_surrogate,
    check_uniform_equivalence,
    product_space,
    sum_distance,
    sup_distance,
)
from .solver import (
    SolveConfig,
    SolveReport,
    UniquenessReport,
    enumerate_fixed_points,
    find_monotone_start,
    picard_solve,
    verify_uniqueness,
)
from .spaces import (
    Box,
    DistanceClass,
    DistanceSpace,
    ball_contains,
    classify_finite,
    converges_to,
    is_cauchy_prefix,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "CapacityError",
    "CarrierError",
    "ConditionReport",
    "DistanceClass",
    "DistanceSpace",
    "EvaluationError",
    "FixedPointCertificate",
    "GameConfig",
    "LSet",
    "LambdaFamily",
    "MeirKeelerModulus",
    "MultiOperator",
    "MultifixError",
    "OrderRelation",
    "ParseError",
    "ProductKind",
    "SolveConfig",
    "SolveReport",
    "Trajectory",
    "UniquenessReport",
    "UnsupportedInstanceError",
    "apply_lambda_f",
    "ball_contains",
    "chain_order",
    "check_bounds_exist",
    "check_lattice",
    "check_mk",
    "check_mk_operator",
    "check_mk_space",
    "check_monotone_complete_surrogate",
    "check_omega",
    "check_order_distance_compat",
    "check_uniform_equivalence",
    "classify_finite",
    "compare_L",
    "converges_to",
    "coupled_preset",
    "enumerate_fixed_points",
    "find_monotone_start",
    "is_cauchy_prefix",
    "is_multiple_fixed_point",
    "is_optimal_selection",
    "picard_solve",
    "product_space",
    "sample_comparable_pairs",
    "simulate",
    "step",
    "sum_distance",
    "sup_distance",
    "surjectivity_report",
    "tripled_preset",
    "verify_uniqueness",
]
