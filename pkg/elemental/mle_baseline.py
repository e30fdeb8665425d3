"""A plain maximum-likelihood baseline for the GEV.

The negative log-likelihood is minimised over (mu, log sigma, xi) with scipy's derivative-free
Nelder-Mead search. No regularity region is enforced: the likelihood is unbounded on the surface
1 + xi (x_max - mu) / sigma = 0, and fits that run towards it are reported as boundary suspects
rather than as converged.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.optimize import minimize

from elemental.common import ElementalEnum, parse_str_to_enum
from elemental.config import DEFAULT_GUMBEL_THRESHOLD
from elemental.distributions import GevParams
from elemental.errors import DegenerateSpacingError, DomainError, InputDataError, InvalidConfigError
from elemental.estimator import MIN_SAMPLE_SIZE, OrderedSample, combined_estimate
from elemental.logger import logger

EULER_GAMMA = 0.5772156649015329
# Interquartile range of the standard Gumbel distribution.
GUMBEL_IQR = math.log(-math.log(0.25)) - math.log(-math.log(0.75))
SIGMA_BOUNDARY_FACTOR = 1e-8
SUPPORT_BOUNDARY_MARGIN = 1e-10


class MleStatus(ElementalEnum):
    """Outcome of a likelihood fit.

    Attributes:
        CONVERGED: The simplex met its tolerances away from the support boundary.
        MAX_ITER: The iteration or evaluation budget ran out.
        BOUNDARY_SUSPECT: The fit approached sigma -> 0 or the support boundary, where the
            likelihood is unbounded.
        FAILED: No finite likelihood was found.

    """

    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    BOUNDARY_SUSPECT = "boundary_suspect"
    FAILED = "failed"


class MleInit(ElementalEnum):
    """Where the simplex search starts.

    Attributes:
        ELEMENTAL: Equal-weight elemental estimate of xi, sample median for mu and a
            Gumbel-scaled interquartile range for sigma.
        MOMENTS: Gumbel method of moments, with xi = 0.
        EXPLICIT: A caller-supplied starting point.

    """

    ELEMENTAL = "elemental"
    MOMENTS = "moments"
    EXPLICIT = "explicit"


class MleOptions(BaseModel):
    """Options of `fit_mle`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_iter: int = Field(default=5000, description="Maximum simplex iterations.")
    tol: float = Field(default=1e-8, description="Absolute tolerance on parameters and value.")
    init: MleInit = Field(default=MleInit.ELEMENTAL, description="Starting point rule.")
    start: GevParams | None = Field(default=None, description="Start for the explicit rule.")

    @field_validator("init", mode="before")
    @classmethod
    def parse_init(cls, value: str | MleInit) -> MleInit:
        """Parse init to enum if string provided."""
        return parse_str_to_enum(value, MleInit)

    @model_validator(mode="after")
    def check_options(self) -> MleOptions:
        """Validate the budget, tolerance and start."""
        if self.max_iter < 1:
            raise InvalidConfigError("max_iter", "must be at least 1")
        if not self.tol > 0:
            raise InvalidConfigError("tol", "must be positive")
        if self.init is MleInit.EXPLICIT and self.start is None:
            raise InvalidConfigError("start", "explicit initialisation needs a start point")
        return self


class MleResult(BaseModel):
    """Best point found by `fit_mle`, with an honest status."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    params: GevParams = Field(description="Best parameters found.")
    negloglik: float = Field(description="Negative log-likelihood at params.")
    status: MleStatus = Field(description="Outcome of the search.")
    iterations: int = Field(description="Simplex iterations used.")
    initial: GevParams = Field(description="Starting point of the search.")
    initial_negloglik: float = Field(description="Negative log-likelihood at the start.")


def _as_array(s: OrderedSample | Sequence[float] | np.ndarray) -> np.ndarray:
    if isinstance(s, OrderedSample):
        return s.as_array()
    return np.asarray(s, dtype=float)


def _negloglik(x: np.ndarray, mu: float, sigma: float, xi: float) -> float:
    if not sigma > 0:
        return math.inf
    z = (x - mu) / sigma
    if abs(xi) < DEFAULT_GUMBEL_THRESHOLD:
        return float(x.size * math.log(sigma) + z.sum() + np.exp(-z).sum())
    shifted = xi * z
    if np.any(shifted <= -1):
        return math.inf
    log_base = np.log1p(shifted)
    with np.errstate(over="ignore"):
        tail = np.exp(-log_base / xi).sum()
    value = x.size * math.log(sigma) + (1 + 1 / xi) * log_base.sum() + tail
    return float(value) if math.isfinite(value) else math.inf


def gev_negloglik(p: GevParams, s: OrderedSample | Sequence[float] | np.ndarray) -> float:
    """GEV negative log-likelihood of a sample; +inf when any point lies outside the support.

    Raises:
        DomainError: If sigma is not positive.

    """
    if not p.sigma > 0:
        raise DomainError("sigma", p.sigma, "scale must be positive")
    return _negloglik(_as_array(s), p.mu, p.sigma, p.xi)


def _initial_point(x: np.ndarray, s: OrderedSample, options: MleOptions) -> GevParams:
    data_range = float(x.max() - x.min())
    match options.init:
        case MleInit.EXPLICIT:
            return options.start  # type: ignore[return-value]
        case MleInit.MOMENTS:
            sigma = float(np.std(x, ddof=1)) * math.sqrt(6) / math.pi
            mu, xi = float(np.mean(x)) - EULER_GAMMA * sigma, 0.0
        case _:
            try:
                xi = combined_estimate(s, skip_degenerate=True)
            except DegenerateSpacingError:
                xi = 0.0
            q25, mu, q75 = np.quantile(x, [0.25, 0.5, 0.75])
            sigma = float(q75 - q25) / GUMBEL_IQR
            mu = float(mu)
    if not sigma > 0:
        sigma = data_range
    # every point must satisfy 1 + xi (x - mu) / sigma > 0
    sigma = max(sigma, 2 * float(np.max(-xi * (x - mu))))
    return GevParams(mu=mu, sigma=sigma, xi=xi)


def _boundary_suspect(x: np.ndarray, p: GevParams) -> bool:
    if p.sigma < SIGMA_BOUNDARY_FACTOR * float(x.max() - x.min()):
        return True
    if abs(p.xi) < DEFAULT_GUMBEL_THRESHOLD:
        return False
    return float(np.min(1 + p.xi * (x - p.mu) / p.sigma)) < SUPPORT_BOUNDARY_MARGIN


def fit_mle(s: OrderedSample, options: MleOptions | None = None) -> MleResult:
    """Fit (mu, sigma, xi) by maximum likelihood with a Nelder-Mead simplex.

    Args:
        s (OrderedSample): The sample, N >= 3 with a nonzero range.
        options (MleOptions | None): Budget, tolerance and initialisation.

    Raises:
        DomainError: If N < 3.
        InputDataError: If every value in the sample is equal.

    Returns:
        MleResult: The best point found. Runs that end near the support boundary or with sigma
        collapsing are reported as boundary_suspect even when the simplex converged.

    """
    options = options or MleOptions()
    if s.n < MIN_SAMPLE_SIZE:
        raise DomainError("n", s.n, f"need N >= {MIN_SAMPLE_SIZE}")
    x = s.as_array()
    if not x.max() > x.min():
        raise InputDataError("sample has zero range")

    start = _initial_point(x, s, options)
    start_value = _negloglik(x, start.mu, start.sigma, start.xi)

    def objective(theta: np.ndarray) -> float:
        return _negloglik(x, float(theta[0]), math.exp(theta[1]), float(theta[2]))

    x0 = np.array([start.mu, math.log(start.sigma), start.xi])
    simplex = np.vstack([x0, x0 + np.diag([0.1 * start.sigma, 0.1, 0.1])])
    with np.errstate(invalid="ignore", over="ignore"):
        result = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": options.max_iter,
                "maxfev": 2 * options.max_iter,
                "xatol": options.tol,
                "fatol": options.tol,
                "initial_simplex": simplex,
            },
        )

    best = GevParams(mu=float(result.x[0]), sigma=math.exp(result.x[1]), xi=float(result.x[2]))
    best_value = float(result.fun)
    if not best_value <= start_value:
        best, best_value = start, start_value

    if not math.isfinite(best_value):
        status = MleStatus.FAILED
    elif _boundary_suspect(x, best):
        status = MleStatus.BOUNDARY_SUSPECT
    elif result.success:
        status = MleStatus.CONVERGED
    else:
        status = MleStatus.MAX_ITER

    if status is MleStatus.CONVERGED:
        logger().debug(f"MLE fit converged after {result.nit} iterations at xi={best.xi:.6g}")
    else:
        logger().info(f"MLE fit ended with status {status.value}: {result.message}")
    return MleResult(
        params=best,
        negloglik=best_value,
        status=status,
        iterations=int(result.nit),
        initial=start,
        initial_negloglik=start_value,
    )
