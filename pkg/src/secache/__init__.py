"""Secrecy capacity-memory tradeoffs of cache-aided wiretap erasure
broadcast channels: bounds, corner points, hulls, coding-scheme plans and
finite-blocklength simulation."""

from .bounds import (
    BoundFamily,
    UpperBoundReport,
    alpha_sequence,
    ub_best,
    ub_cache_sharing,
    ub_global,
    ub_split,
    ub_weak_only,
)
from .corners import (
    points_all_cached,
    points_separate,
    points_symmetric,
    points_weak_only,
    weak_only_max_slope,
)
from .errors import (
    BelowDomain,
    ConfigError,
    EmptyInput,
    IndexOutOfRange,
    Infeasible,
    InvalidParameter,
    InvalidScenario,
    NotApplicable,
    RangeError,
    SecacheError,
)
from .hull import Curve1D, eval_hull_1d, eval_hull_2d, upper_hull_1d
from .model import (
    CacheSizes,
    ChannelScenario,
    Provenance,
    RateMemoryPoint,
    validate_scenario,
    zero_cache_capacity,
)
from .schemes import (
    BUILDERS,
    Atom,
    DeliverySegment,
    DeliveryUnit,
    SchemePlan,
    VerificationReport,
    build_cached_keys_all,
    build_piggyback_allkeys,
    build_piggyback_one,
    build_piggyback_two,
    build_superposition_jamming,
    build_symmetric_piggyback,
    build_wiretap_cached_keys,
    cache_usage,
    cache_usage_by_class,
    verify_plan,
)
from .simulate import SimConfig, SimReport, otp_decrypt, otp_encrypt, run_monte_carlo
from .tradeoff import (
    exact_regimes,
    global_curve,
    lower_curve_weak_only,
    lower_global,
    lower_surface_all,
    lower_uniform,
    separate_curve,
    uniform_curve,
    weak_only_curve,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "BelowDomain",
    "BoundFamily",
    "BUILDERS",
    "CacheSizes",
    "ChannelScenario",
    "ConfigError",
    "Curve1D",
    "DeliverySegment",
    "DeliveryUnit",
    "EmptyInput",
    "IndexOutOfRange",
    "Infeasible",
    "InvalidParameter",
    "InvalidScenario",
    "NotApplicable",
    "Provenance",
    "RangeError",
    "RateMemoryPoint",
    "SchemePlan",
    "SecacheError",
    "SimConfig",
    "SimReport",
    "UpperBoundReport",
    "VerificationReport",
    "alpha_sequence",
    "build_cached_keys_all",
    "build_piggyback_allkeys",
    "build_piggyback_one",
    "build_piggyback_two",
    "build_superposition_jamming",
    "build_symmetric_piggyback",
    "build_wiretap_cached_keys",
    "cache_usage",
    "cache_usage_by_class",
    "eval_hull_1d",
    "eval_hull_2d",
    "exact_regimes",
    "global_curve",
    "lower_curve_weak_only",
    "lower_global",
    "lower_surface_all",
    "lower_uniform",
    "otp_decrypt",
    "otp_encrypt",
    "points_all_cached",
    "points_separate",
    "points_symmetric",
    "points_weak_only",
    "run_monte_carlo",
    "separate_curve",
    "ub_best",
    "ub_cache_sharing",
    "ub_global",
    "ub_split",
    "ub_weak_only",
    "uniform_curve",
    "upper_hull_1d",
    "validate_scenario",
    "weak_only_curve",
    "verify_plan",
    "weak_only_max_slope",
    "zero_cache_capacity",
]
