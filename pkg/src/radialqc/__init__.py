"""Piecewise power-law radial maps in log2 space: construction and inversion,
zoom rescalings with their closed-form limits, the conjugated halving dynamics
whose iterates share one distortion bound, and distortion reports with a
finite-difference oracle.
"""

from .distortion import (
    SUPREMUM,
    DistortionReport,
    finite_difference_distortion,
    iterate_max_distortion,
    linear_distortion_radial,
    max_distortion,
    pointwise_distortion,
    radial_power_distortion,
)
from .powermap import (
    RADIUS_ZERO_LOG2,
    NotDifferentiableError,
    PiecewisePowerMap,
    breakpoint_log2,
    build_standard_map,
)
from .uqrmap import ConjugatedMap, build_conjugated_map, h_via_conjugacy
from .verify import run_verification
from .zoom import (
    EVEN_BREAKPOINTS,
    LIMIT_KINDS,
    ODD_BREAKPOINTS,
    BracketError,
    LimitFunction,
    example_1d_mean_radius,
    example_1d_rescaled,
    homogeneity_defect,
    ivt_sample,
    limit_function,
    rescaled_eval,
    scale_at,
    zoom_limit_deviation,
)

__version__ = "0.1.0"

__all__ = [
    "RADIUS_ZERO_LOG2",
    "SUPREMUM",
    "EVEN_BREAKPOINTS",
    "ODD_BREAKPOINTS",
    "LIMIT_KINDS",
    "NotDifferentiableError",
    "BracketError",
    "PiecewisePowerMap",
    "ConjugatedMap",
    "LimitFunction",
    "DistortionReport",
    "build_standard_map",
    "build_conjugated_map",
    "breakpoint_log2",
    "h_via_conjugacy",
    "limit_function",
    "rescaled_eval",
    "scale_at",
    "zoom_limit_deviation",
    "ivt_sample",
    "homogeneity_defect",
    "example_1d_rescaled",
    "example_1d_mean_radius",
    "radial_power_distortion",
    "pointwise_distortion",
    "finite_difference_distortion",
    "max_distortion",
    "iterate_max_distortion",
    "linear_distortion_radial",
    "run_verification",
    "__version__",
]
