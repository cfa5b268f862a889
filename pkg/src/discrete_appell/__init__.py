"""Discrete analogues of the Appell function F2: evaluation and identity checks."""
from __future__ import annotations

from .appell import (
    DiscreteParams,
    EvalPoint,
    HumbertKind,
    ParameterSet,
    check_humbert_limit,
    eval_discrete_f2,
    eval_f2,
    eval_humbert,
    is_terminating,
    kdf_reduction,
)
from .errors import (
    ConfigError,
    ConstraintError,
    DiscreteAppellError,
    DivergenceError,
    DomainError,
    PoleError,
    PreconditionError,
)
from .gamma import (
    discrete_factor,
    gamma,
    log_gamma,
    pochhammer,
    pochhammer_split,
    rgamma,
)
from .identities import (
    GridPoint,
    SuiteReport,
    check_diff_formula,
    check_ladder,
    check_recursion,
    check_reduction,
    check_summation,
    default_grid,
    generate_ladder_relations,
    run_suite,
)
from .operators import apply, appell_function, residual_difference_equation
from .quadrature import IntegralRepId, eval_integral_rep, verify_integral_rep
from .results import Family, IdentityCheckResult, IdentityId, Variant
from .series import KdFSpec, SeriesStatus, SeriesValue, SummationConfig, eval_kdf

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConstraintError",
    "DiscreteAppellError",
    "DiscreteParams",
    "DivergenceError",
    "DomainError",
    "EvalPoint",
    "Family",
    "GridPoint",
    "HumbertKind",
    "IdentityCheckResult",
    "IdentityId",
    "IntegralRepId",
    "KdFSpec",
    "ParameterSet",
    "PoleError",
    "PreconditionError",
    "SeriesStatus",
    "SeriesValue",
    "SuiteReport",
    "SummationConfig",
    "Variant",
    "apply",
    "appell_function",
    "check_diff_formula",
    "check_humbert_limit",
    "check_ladder",
    "check_recursion",
    "check_reduction",
    "check_summation",
    "default_grid",
    "discrete_factor",
    "eval_discrete_f2",
    "eval_f2",
    "eval_humbert",
    "eval_integral_rep",
    "eval_kdf",
    "gamma",
    "generate_ladder_relations",
    "is_terminating",
    "kdf_reduction",
    "log_gamma",
    "pochhammer",
    "pochhammer_split",
    "residual_difference_equation",
    "rgamma",
    "run_suite",
    "verify_integral_rep",
]
