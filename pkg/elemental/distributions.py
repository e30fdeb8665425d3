"""GEV and Weibull-related distribution functions, quantiles and seeded sampling.

The GEV distribution function is F(x) = exp(-(1 + xi z)^(-1/xi)) with z = (x - mu) / sigma, and
the Weibull-related law is its reflection, F(x) = 1 - exp(-(1 - zeta z)^(-1/zeta)). Both take
their Gumbel branch when the shape is below a small threshold in magnitude; elsewhere they are
evaluated through log1p and expm1.

Random draws are made by inverting the distribution function at uniforms on the open interval
(0, 1). Every draw takes an explicit `RngSpec`, which keys a counter-based Philox generator, so
that any (seed, stream) reproduces the same numbers on any platform.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from elemental.config import DEFAULT_GUMBEL_THRESHOLD
from elemental.errors import DomainError
from elemental.estimator import MIN_SAMPLE_SIZE, OrderedSample

GENERATOR_NAME = "numpy Philox"
UINT64_MAX = 2**64 - 1
_UNIFORM_STEPS = 2**52

ArrayLike = float | np.ndarray


class GevParams(BaseModel):
    """Location, scale and tail parameter of a GEV distribution."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mu: float = Field(default=0.0, description="Location.")
    sigma: float = Field(default=1.0, description="Scale, strictly positive.")
    xi: float = Field(default=0.0, description="Tail (shape) parameter.")

    @model_validator(mode="after")
    def check_sigma(self) -> GevParams:
        """Validate sigma > 0."""
        if not self.sigma > 0:
            raise DomainError("sigma", self.sigma, "scale must be positive")
        return self


class WeibullRelParams(BaseModel):
    """Location, scale and shape of the Weibull-related (reflected GEV) distribution."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mu: float = Field(default=0.0, description="Location.")
    sigma: float = Field(default=1.0, description="Scale, strictly positive.")
    zeta: float = Field(default=0.0, description="Shape parameter.")

    @model_validator(mode="after")
    def check_sigma(self) -> WeibullRelParams:
        """Validate sigma > 0."""
        if not self.sigma > 0:
            raise DomainError("sigma", self.sigma, "scale must be positive")
        return self


class RngSpec(BaseModel):
    """Identifies one independent random stream.

    The stream is numpy's Philox generator keyed by `SeedSequence(seed, spawn_key=(stream_id,
    *keys))`. `child` derives sub-streams, e.g. one per grid cell and replicate chunk.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(default=0, description="Root seed, a 64-bit unsigned integer.")
    stream_id: int = Field(default=0, description="Stream number, a 64-bit unsigned integer.")
    keys: tuple[int, ...] = Field(default=(), description="Sub-stream path below stream_id.")

    @model_validator(mode="after")
    def check_range(self) -> RngSpec:
        """Validate every component fits an unsigned 64-bit integer."""
        for name, value in (("seed", self.seed), ("stream_id", self.stream_id)):
            if not 0 <= value <= UINT64_MAX:
                raise DomainError(name, value, "must be an unsigned 64-bit integer")
        if any(not 0 <= key <= UINT64_MAX for key in self.keys):
            raise DomainError("keys", self.keys, "must be unsigned 64-bit integers")
        return self

    def generator(self) -> np.random.Generator:
        """Return a fresh generator positioned at the start of this stream."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self.keys))
        return np.random.Generator(np.random.Philox(sequence))

    def child(self, *keys: int) -> RngSpec:
        """Return the sub-stream at `keys` below this one."""
        return RngSpec(seed=self.seed, stream_id=self.stream_id, keys=(*self.keys, *keys))


def open_uniform(generator: np.random.Generator, size: int | tuple[int, ...]) -> np.ndarray:
    """Draw uniforms on the open interval (0, 1), on a grid of 2^52 cell midpoints."""
    steps = generator.integers(0, _UNIFORM_STEPS, size=size, dtype=np.int64)
    return (steps.astype(float) + 0.5) / _UNIFORM_STEPS


def _as_output(values: np.ndarray) -> ArrayLike:
    return float(values) if values.ndim == 0 else values


def _check_probability(prob: ArrayLike) -> np.ndarray:
    probs = np.asarray(prob, dtype=float)
    if not np.all((probs > 0) & (probs < 1)):
        raise DomainError("prob", prob, "probability must lie in the open interval (0, 1)")
    return probs


def gev_cdf(
    x: ArrayLike,
    p: GevParams,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> ArrayLike:
    """GEV distribution function; 0 below a lower endpoint, 1 above an upper one."""
    z = (np.asarray(x, dtype=float) - p.mu) / p.sigma
    if abs(p.xi) < gumbel_threshold:
        return _as_output(np.exp(-np.exp(-z)))
    shifted = p.xi * z
    inside = shifted > -1
    with np.errstate(divide="ignore", over="ignore"):
        tail = np.exp(-np.log1p(np.where(inside, shifted, 0.0)) / p.xi)
        cdf = np.where(inside, np.exp(-tail), 0.0 if p.xi > 0 else 1.0)
    return _as_output(cdf)


def gev_quantile(
    prob: ArrayLike,
    p: GevParams,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> ArrayLike:
    """Inverse GEV distribution function, mu + (sigma / xi) [(-log F)^(-xi) - 1].

    Raises:
        DomainError: If any probability lies outside (0, 1).

    """
    log_l = np.log(-np.log(_check_probability(prob)))
    if abs(p.xi) < gumbel_threshold:
        return _as_output(p.mu - p.sigma * log_l)
    return _as_output(p.mu + p.sigma / p.xi * np.expm1(-p.xi * log_l))


def gev_support(
    p: GevParams,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> tuple[float, float]:
    """Return the (lower, upper) endpoints of the support, infinite where unbounded."""
    if abs(p.xi) < gumbel_threshold:
        return -np.inf, np.inf
    endpoint = p.mu - p.sigma / p.xi
    return (endpoint, np.inf) if p.xi > 0 else (-np.inf, endpoint)


def sample_gev(
    p: GevParams,
    count: int,
    rng: RngSpec,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> np.ndarray:
    """Draw count independent GEV variates by inverting the distribution function."""
    if count < 1:
        raise DomainError("count", count, "must be at least 1")
    return np.asarray(gev_quantile(open_uniform(rng.generator(), count), p, gumbel_threshold))


def anchored_quantile(
    prob: ArrayLike,
    xi: float,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> ArrayLike:
    """Quantile of GEV(xi) in the frame anchored at its finite endpoint.

    Returns sign(xi) (-log F)^(-xi), or the standard Gumbel quantile -log(-log F) near xi = 0.
    This is a positive affine image of every GEV(mu, sigma, xi) quantile, so spacing ratios are
    unchanged, while values near a finite endpoint keep full relative precision.
    """
    log_l = np.log(-np.log(_check_probability(prob)))
    if abs(xi) < gumbel_threshold:
        return _as_output(-log_l)
    return _as_output(np.sign(xi) * np.exp(-xi * log_l))


def idealized_sample(
    p: GevParams,
    n: int,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> OrderedSample:
    """Deterministic sample of quantiles at the midpoints (k - 1/2) / n, ordered descending.

    Raises:
        DomainError: If n < 3.

    """
    if n < MIN_SAMPLE_SIZE:
        raise DomainError("n", n, f"need N >= {MIN_SAMPLE_SIZE}")
    probs = (np.arange(n, 0, -1) - 0.5) / n
    values = np.asarray(gev_quantile(probs, p, gumbel_threshold))
    return OrderedSample(values=tuple(values.tolist()))


def weibullrel_cdf(
    x: ArrayLike,
    p: WeibullRelParams,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> ArrayLike:
    """Weibull-related distribution function 1 - exp(-(1 - zeta z)^(-1/zeta))."""
    z = (np.asarray(x, dtype=float) - p.mu) / p.sigma
    if abs(p.zeta) < gumbel_threshold:
        return _as_output(-np.expm1(-np.exp(z)))
    shifted = -p.zeta * z
    inside = shifted > -1
    with np.errstate(divide="ignore", over="ignore"):
        tail = np.exp(-np.log1p(np.where(inside, shifted, 0.0)) / p.zeta)
        cdf = np.where(inside, -np.expm1(-tail), 1.0 if p.zeta > 0 else 0.0)
    return _as_output(cdf)


def weibullrel_quantile(
    prob: ArrayLike,
    p: WeibullRelParams,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> ArrayLike:
    """Inverse of `weibullrel_cdf`.

    Raises:
        DomainError: If any probability lies outside (0, 1).

    """
    log_l = np.log(-np.log1p(-_check_probability(prob)))
    if abs(p.zeta) < gumbel_threshold:
        return _as_output(p.mu + p.sigma * log_l)
    return _as_output(p.mu - p.sigma / p.zeta * np.expm1(-p.zeta * log_l))


def sample_weibullrel(
    p: WeibullRelParams,
    count: int,
    rng: RngSpec,
    gumbel_threshold: float = DEFAULT_GUMBEL_THRESHOLD,
) -> np.ndarray:
    """Draw count independent Weibull-related variates."""
    if count < 1:
        raise DomainError("count", count, "must be at least 1")
    uniforms = open_uniform(rng.generator(), count)
    return np.asarray(weibullrel_quantile(uniforms, p, gumbel_threshold))


def reflect_sample(s: OrderedSample) -> OrderedSample:
    """Negate a sample and reverse it, so the result is again ordered descending."""
    return OrderedSample(values=tuple(-v for v in reversed(s.values)))
