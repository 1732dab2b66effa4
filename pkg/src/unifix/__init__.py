"""Fixed points of set-valued maps on finite spaces with pseudometric families."""

from .contraction import (
    ConditionReport,
    ConditionViolation,
    ContractionParams,
    IndexCoefficients,
    MultiMap,
    SingleValuedTerms,
    check_condition,
    check_condition_sampled,
    check_single_valued_condition,
    condition_sides,
    condition_sides_linear,
    lift_single_valued,
    single_valued_condition_terms,
    uniqueness_applicable,
)
from .hyperspace import (
    HausdorffValue,
    hausdorff,
    hausdorff_profile,
    hausdorff_via_envelope,
)
from .oracle import (
    CONSTANT,
    LIFTED_SINGLE_VALUED,
    MAP_KINDS,
    RANDOM_MULTIVALUED,
    GeneratedInstance,
    GenerationError,
    InstanceProfile,
    UniquenessVerdict,
    certify_uniqueness,
    enumerate_fixed_points,
    generate_instance,
    random_family,
    random_map,
    random_params,
)
from .orbit import (
    AGGREGATE,
    CONVERGED_STATIONARY,
    FIXED_POINT_FOUND,
    MAX_STEPS_REACHED,
    FixedPointResult,
    OrbitRecord,
    generate_orbit,
    is_fixed_point,
    nearest_point,
    nearest_point_aggregate,
    residuals,
    solve,
    step_contraction_check,
    tail_bound,
)
from .space import (
    DEFAULT_TOL,
    AxiomViolation,
    CompactSet,
    PointId,
    PseudometricFamily,
    ValidationReport,
    augmented_diameter,
    point_to_set_distance,
    validate_family,
)

__version__ = "0.1.0"

__all__ = [
    "AGGREGATE",
    "AxiomViolation",
    "CONSTANT",
    "CONVERGED_STATIONARY",
    "CompactSet",
    "ConditionReport",
    "ConditionViolation",
    "ContractionParams",
    "DEFAULT_TOL",
    "FIXED_POINT_FOUND",
    "FixedPointResult",
    "GeneratedInstance",
    "GenerationError",
    "HausdorffValue",
    "IndexCoefficients",
    "InstanceProfile",
    "LIFTED_SINGLE_VALUED",
    "MAP_KINDS",
    "MAX_STEPS_REACHED",
    "MultiMap",
    "OrbitRecord",
    "PointId",
    "PseudometricFamily",
    "RANDOM_MULTIVALUED",
    "SingleValuedTerms",
    "UniquenessVerdict",
    "ValidationReport",
    "augmented_diameter",
    "certify_uniqueness",
    "check_condition",
    "check_condition_sampled",
    "check_single_valued_condition",
    "condition_sides",
    "condition_sides_linear",
    "enumerate_fixed_points",
    "generate_instance",
    "generate_orbit",
    "hausdorff",
    "hausdorff_profile",
    "hausdorff_via_envelope",
    "is_fixed_point",
    "lift_single_valued",
    "nearest_point",
    "nearest_point_aggregate",
    "point_to_set_distance",
    "random_family",
    "random_map",
    "random_params",
    "residuals",
    "single_valued_condition_terms",
    "solve",
    "step_contraction_check",
    "tail_bound",
    "uniqueness_applicable",
    "validate_family",
]
