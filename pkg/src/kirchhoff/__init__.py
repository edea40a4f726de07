"""Kirchhoff-type equations -(a + b∫|∇u|²)Δu = g(u) via scalar-field profiles."""
__version__ = "0.1.0"

from .errors import KirchhoffError  # noqa: E402
from .functional import (  # noqa: E402
    ActionReport, ScaledProfile, action_definition, build_kirchhoff_solution,
    kirchhoff_pohozaev_residual, nonnegativity_sample, pde_residual, recover_scalar_profile,
)
from .kernels import BACKEND  # noqa: E402
from .nonlinearity import PowerNonlinearity, eval_G, eval_g, validate_hypotheses  # noqa: E402
from .scaling import (  # noqa: E402
    KirchhoffProblem, ScalingRoots, action_from_scaling, compare_solutions,
    existence_report, solve_scaling, threshold_a_max,
)
from .shooting import (  # noqa: E402
    RadialProfile, check_pohozaev_scalar, gradient_norm_sq, integrate_profile, shoot_state,
)

__all__ = [
    "ActionReport",
    "BACKEND",
    "KirchhoffError",
    "KirchhoffProblem",
    "PowerNonlinearity",
    "RadialProfile",
    "ScaledProfile",
    "ScalingRoots",
    "__version__",
    "action_definition",
    "action_from_scaling",
    "build_kirchhoff_solution",
    "check_pohozaev_scalar",
    "compare_solutions",
    "eval_G",
    "eval_g",
    "existence_report",
    "gradient_norm_sq",
    "integrate_profile",
    "kirchhoff_pohozaev_residual",
    "nonnegativity_sample",
    "pde_residual",
    "recover_scalar_profile",
    "shoot_state",
    "solve_scaling",
    "threshold_a_max",
    "validate_hypotheses",
]
