"""elemental estimates the tail parameter of extreme value samples from order-statistic spacings."""

from __future__ import annotations

# Coefficients
from elemental.coefficients import (
    BetaSum,
    BetaTable,
    CoefficientMethod,
    CoefficientTable,
    a_coefficient,
    approx_b,
    b_coefficient,
    beta_direct,
    beta_recursion_table,
    build_coefficient_table,
    gpd_coefficients,
    interpolation_residual,
    limit_curve,
    weibull_coefficients,
)
from elemental.config import Config, LogLevel, default_config

# Distributions
from elemental.distributions import (
    GevParams,
    RngSpec,
    WeibullRelParams,
    gev_cdf,
    gev_quantile,
    idealized_sample,
    sample_gev,
    sample_weibullrel,
    weibullrel_cdf,
    weibullrel_quantile,
)

# Error classes
from elemental.errors import (
    DegenerateSpacingError,
    DomainError,
    ElementalBaseError,
    InputDataError,
    InvalidConfigError,
    NumericError,
)

# Estimators
from elemental.estimator import (
    ElementalIndex,
    Family,
    OrderedSample,
    WeightKind,
    WeightScheme,
    combination_weights,
    combined_estimate,
    elemental_estimate,
    enumerate_elementals,
    order_sample,
    per_elemental_table,
)

# Monte Carlo harness
from elemental.harness.studies import compare_mle, run_idealized_study, run_midpoint_study
from elemental.harness.sweep import (
    SweepConfig,
    SweepResult,
    relative_efficiency,
    run_consistency,
    run_sweep,
)

# Logging
from elemental.logger import logger

# Likelihood baseline
from elemental.mle_baseline import MleOptions, MleResult, MleStatus, fit_mle, gev_negloglik

# Define explicitly what should be available when using "from elemental import *"
__all__ = [
    "BetaSum",
    "BetaTable",
    "CoefficientMethod",
    "CoefficientTable",
    "Config",
    "DegenerateSpacingError",
    "DomainError",
    "ElementalBaseError",
    "ElementalIndex",
    "Family",
    "GevParams",
    "InputDataError",
    "InvalidConfigError",
    "LogLevel",
    "MleOptions",
    "MleResult",
    "MleStatus",
    "NumericError",
    "OrderedSample",
    "RngSpec",
    "SweepConfig",
    "SweepResult",
    "WeibullRelParams",
    "WeightKind",
    "WeightScheme",
    "a_coefficient",
    "approx_b",
    "b_coefficient",
    "beta_direct",
    "beta_recursion_table",
    "build_coefficient_table",
    "combination_weights",
    "combined_estimate",
    "compare_mle",
    "default_config",
    "elemental_estimate",
    "enumerate_elementals",
    "fit_mle",
    "gev_cdf",
    "gev_negloglik",
    "gev_quantile",
    "gpd_coefficients",
    "idealized_sample",
    "interpolation_residual",
    "limit_curve",
    "logger",
    "order_sample",
    "per_elemental_table",
    "relative_efficiency",
    "run_consistency",
    "run_idealized_study",
    "run_midpoint_study",
    "run_sweep",
    "sample_gev",
    "sample_weibullrel",
    "weibull_coefficients",
    "weibullrel_cdf",
    "weibullrel_quantile",
]
