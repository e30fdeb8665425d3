"""Elemental and linear-combination estimators of the tail parameter.

An elemental estimator uses four order statistics X_I >= X_{J-1} and X_{I+1} >= X_J of a sample
ordered descending (X_1 is the maximum), through the spacing ratios

    tau = (X_I - X_{J-1}) / (X_I - X_J)        t = (X_{I+1} - X_J) / (X_I - X_J)

and returns a log(tau) - b log(t), where (a, b) come from the selected family's coefficients.
Every pair 1 <= I, I + 2 <= J <= N gives one elemental, and unit-sum linear combinations of all
elementals of a sample give the combined estimators.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from functools import lru_cache

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import sparse

from elemental.coefficients import (
    CoefficientMethod,
    a_coefficient,
    b_coefficient,
    b_vector,
    gpd_coefficients,
    resolve_method,
    weibull_coefficients,
)
from elemental.common import ElementalEnum, parse_str_to_enum
from elemental.errors import DegenerateSpacingError, DomainError, InputDataError, InvalidConfigError
from elemental.logger import logger

MIN_SAMPLE_SIZE = 3
COMPONENT_NAMES = ("log_tau", "neg_log_t", "a_log_tau", "neg_b_log_t")


class Family(ElementalEnum):
    """Which coefficient set feeds the elemental form.

    Attributes:
        GEV: Generalized extreme value weights a_N(J), b_N(I).
        GPD: Generalized Pareto weights (J - 1, I).
        WEIBULL: Reflected weights for the Weibull-related law.

    """

    GEV = "gev"
    GPD = "gpd"
    WEIBULL = "weibull"


class WeightKind(ElementalEnum):
    """Weighting used to combine all elementals of a sample.

    Non-equal kinds weight (I, J) proportionally to N - J + 1, J - 1 - I, I, or a sum of two of
    them.
    """

    EQUAL = "equal"
    W_NJ1 = "nj1"
    W_JMI = "jmi"
    W_I = "i"
    W_NJ1_PLUS_JMI = "nj1+jmi"
    W_JMI_PLUS_I = "jmi+i"
    W_NJ1_PLUS_I = "nj1+i"
    CUSTOM = "custom"


class OrderedSample(BaseModel):
    """A sample ordered descending: values[0] is X_1, the maximum."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...] = Field(description="Order statistics, largest first.")

    @model_validator(mode="after")
    def check_values(self) -> OrderedSample:
        """Validate the values are finite and descending."""
        data = np.asarray(self.values, dtype=float)
        if data.size == 0:
            raise InputDataError("sample is empty")
        if not np.all(np.isfinite(data)):
            raise InputDataError("sample contains non-finite values")
        if np.any(np.diff(data) > 0):
            raise InputDataError("sample values are not ordered descending")
        return self

    @property
    def n(self) -> int:
        """Sample size."""
        return len(self.values)

    def x(self, k: int) -> float:
        """Return the k-th order statistic X_k, 1-based."""
        return self.values[k - 1]

    def as_array(self) -> np.ndarray:
        """Return the values as a float array."""
        return np.asarray(self.values, dtype=float)


class ElementalIndex(BaseModel):
    """The pair (I, J) selecting one elemental of a sample of size N."""

    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    n: int

    @model_validator(mode="after")
    def check_pair(self) -> ElementalIndex:
        """Validate 1 <= i and i + 2 <= j <= n."""
        if self.i < 1:
            raise DomainError("i", self.i, "must be at least 1")
        if self.j < self.i + 2:
            raise DomainError("j", self.j, f"must be at least i + 2 = {self.i + 2}")
        if self.j > self.n:
            raise DomainError("j", self.j, f"must not exceed n = {self.n}")
        return self

    @property
    def pair(self) -> tuple[int, int]:
        """The (i, j) pair."""
        return self.i, self.j


class SpacingRatios(BaseModel):
    """The two spacing ratios of one elemental, both in (0, 1]."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tau: float = Field(gt=0, le=1)
    t: float = Field(gt=0, le=1)


class WeightScheme(BaseModel):
    """A weighting of elementals; weights are normalised to unit sum when realised.

    Attributes:
        kind: The weighting rule.
        custom_weights: For `custom`, the nonnegative weight of each (i, j) pair. Pairs not
            listed get weight 0.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: WeightKind = Field(default=WeightKind.EQUAL, description="The weighting rule.")
    custom_weights: dict[tuple[int, int], float] | None = Field(
        default=None,
        description="Weights keyed by (i, j) when kind is custom.",
    )

    @field_validator("kind", mode="before")
    @classmethod
    def parse_kind(cls, value: str | WeightKind) -> WeightKind:
        """Parse kind to enum if string provided."""
        return parse_str_to_enum(value, WeightKind)

    @model_validator(mode="after")
    def check_custom(self) -> WeightScheme:
        """Validate custom weights are present, nonnegative and not all zero."""
        if self.kind is not WeightKind.CUSTOM:
            if self.custom_weights is not None:
                raise InvalidConfigError("custom_weights", "only allowed when kind is custom")
            return self
        if not self.custom_weights:
            raise InvalidConfigError("custom_weights", "custom scheme needs weights")
        if any(not (w >= 0 and math.isfinite(w)) for w in self.custom_weights.values()):
            raise InvalidConfigError("custom_weights", "weights must be finite and nonnegative")
        if not any(w > 0 for w in self.custom_weights.values()):
            raise InvalidConfigError("custom_weights", "at least one weight must be positive")
        return self

    @property
    def label(self) -> str:
        """Short identifier used in result tables."""
        return self.kind.value

    @classmethod
    def of(cls, kind: str | WeightKind) -> WeightScheme:
        """Build a non-custom scheme from its name or value."""
        return cls(kind=parse_str_to_enum(kind, WeightKind))

    @classmethod
    def custom(cls, weights: Mapping[tuple[int, int], float]) -> WeightScheme:
        """Build a custom scheme from (i, j) -> weight."""
        return cls(kind=WeightKind.CUSTOM, custom_weights=dict(weights))


def all_schemes() -> list[WeightScheme]:
    """Return the seven built-in schemes, equal weights first."""
    return [WeightScheme(kind=kind) for kind in WeightKind if kind is not WeightKind.CUSTOM]


def order_sample(raw: Iterable[float]) -> OrderedSample:
    """Sort raw values descending into an OrderedSample.

    The sort is stable, so duplicates are kept.

    Raises:
        InputDataError: If the input is empty or holds NaN or infinite values.

    """
    data = np.asarray(list(raw), dtype=float)
    if data.size == 0:
        raise InputDataError("sample is empty")
    if np.any(np.isnan(data)):
        raise InputDataError("sample contains NaN")
    if not np.all(np.isfinite(data)):
        raise InputDataError("sample contains infinite values")
    ordered = -np.sort(-data, kind="stable")
    return OrderedSample(values=tuple(float(v) for v in ordered))


def _require_size(n: int) -> None:
    if n < MIN_SAMPLE_SIZE:
        raise DomainError("n", n, f"need N >= {MIN_SAMPLE_SIZE}")


def enumerate_elementals(n: int) -> list[ElementalIndex]:
    """List every elemental of a sample of size n in lexicographic (i, j) order.

    Raises:
        DomainError: If n < 3.

    """
    _require_size(n)
    return [ElementalIndex(i=i, j=j, n=n) for i in range(1, n - 1) for j in range(i + 2, n + 1)]


@lru_cache(maxsize=64)
def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = zip(*((i, j) for i in range(1, n - 1) for j in range(i + 2, n + 1)), strict=True)
    pairs = (np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
    for array in pairs:
        array.setflags(write=False)
    return pairs


def _raw_weight(kind: WeightKind, i: np.ndarray, j: np.ndarray, n: int) -> np.ndarray:
    nj1 = (n - j + 1).astype(float)
    jmi = (j - 1 - i).astype(float)
    ii = i.astype(float)
    match kind:
        case WeightKind.EQUAL:
            return np.ones_like(ii)
        case WeightKind.W_NJ1:
            return nj1
        case WeightKind.W_JMI:
            return jmi
        case WeightKind.W_I:
            return ii
        case WeightKind.W_NJ1_PLUS_JMI:
            return nj1 + jmi
        case WeightKind.W_JMI_PLUS_I:
            return jmi + ii
        case WeightKind.W_NJ1_PLUS_I:
            return nj1 + ii
    raise InvalidConfigError(kind.value, "not a built-in weighting")


def _weight_array(scheme: WeightScheme, n: int) -> np.ndarray:
    _require_size(n)
    i, j = _pair_arrays(n)
    if scheme.kind is WeightKind.CUSTOM:
        positions = {pair: k for k, pair in enumerate(zip(i.tolist(), j.tolist(), strict=True))}
        raw = np.zeros(len(i))
        for pair, weight in (scheme.custom_weights or {}).items():
            if tuple(pair) not in positions:
                raise InvalidConfigError(str(pair), f"not an elemental (i, j) of a sample of {n}")
            raw[positions[tuple(pair)]] = weight
    else:
        raw = _raw_weight(scheme.kind, i, j, n)
    total = raw.sum()
    if not total > 0:
        raise InvalidConfigError(scheme.label, f"no positive weight for N = {n}")
    return raw / total


def combination_weights(scheme: WeightScheme, n: int) -> dict[ElementalIndex, float]:
    """Return the normalised weight of every elemental of size n under a scheme.

    Raises:
        DomainError: If n < 3.
        InvalidConfigError: If custom weights name an invalid pair or are all zero for n.

    """
    weights = _weight_array(scheme, n)
    return dict(zip(enumerate_elementals(n), weights.tolist(), strict=True))


def elemental_coefficients(
    n: int,
    i: int,
    j: int,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> tuple[float, float]:
    """Return the (a, b) pair of elemental (i, j) for the given family."""
    family = parse_str_to_enum(family, Family)
    ElementalIndex(i=i, j=j, n=n)
    match family:
        case Family.GEV:
            return (
                a_coefficient(n, j, method, threshold),
                b_coefficient(n, i, method, threshold),
            )
        case Family.GPD:
            return gpd_coefficients(i, j)
        case Family.WEIBULL:
            return weibull_coefficients(n, i, j, method, threshold)
    raise InvalidConfigError(str(family), "unknown family")


@lru_cache(maxsize=256)
def _coefficient_arrays(
    n: int,
    family: Family,
    method: CoefficientMethod,
    threshold: int | None,
) -> tuple[np.ndarray, np.ndarray]:
    i, j = _pair_arrays(n)
    if family is Family.GPD:
        a, b = (j - 1).astype(float), i.astype(float)
    else:
        weights = b_vector(n, method, threshold)
        if family is Family.GEV:
            a, b = weights[j - 1], weights[i]
        else:
            a, b = -weights[n + 1 - j], -weights[n - i]
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b


def _coefficients_for(
    n: int,
    family: Family | str,
    method: CoefficientMethod | str,
    threshold: int | None,
) -> tuple[np.ndarray, np.ndarray]:
    family = parse_str_to_enum(family, Family)
    resolved = resolve_method(n, method, threshold)
    return _coefficient_arrays(n, family, resolved, threshold)


def spacing_ratios(s: OrderedSample, e: ElementalIndex) -> SpacingRatios:
    """Return (tau, t) for elemental e of sample s.

    Raises:
        DomainError: If e belongs to another sample size.
        DegenerateSpacingError: If the outer spacing or either inner spacing is zero.

    """
    if e.n != s.n:
        raise DomainError("n", e.n, f"elemental is for N = {e.n}, sample has N = {s.n}")
    outer = s.x(e.i) - s.x(e.j)
    if not outer > 0:
        raise DegenerateSpacingError(e.i, e.j, "zero outer spacing X_I - X_J")
    tau = (s.x(e.i) - s.x(e.j - 1)) / outer
    t = (s.x(e.i + 1) - s.x(e.j)) / outer
    if not tau > 0:
        raise DegenerateSpacingError(e.i, e.j, "tied X_I and X_{J-1}, tau = 0")
    if not t > 0:
        raise DegenerateSpacingError(e.i, e.j, "tied X_{I+1} and X_J, t = 0")
    return SpacingRatios(tau=tau, t=t)


def elemental_estimate(
    s: OrderedSample,
    e: ElementalIndex,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> float:
    """Return a log(tau) - b log(t) for one elemental.

    Raises:
        DegenerateSpacingError: If a spacing of the elemental is zero.
        DomainError: If e does not fit the sample.

    """
    ratios = spacing_ratios(s, e)
    a, b = elemental_coefficients(s.n, e.i, e.j, family, method, threshold)
    return a * math.log(ratios.tau) - b * math.log(ratios.t)


def _elemental_arrays(
    s: OrderedSample,
    family: Family | str,
    method: CoefficientMethod | str,
    threshold: int | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    _require_size(s.n)
    x = s.as_array()
    i, j = _pair_arrays(s.n)
    a, b = _coefficients_for(s.n, family, method, threshold)
    outer = x[i - 1] - x[j - 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        tau = (x[i - 1] - x[j - 2]) / outer
        t = (x[i] - x[j - 1]) / outer
        estimates = a * np.log(tau) - b * np.log(t)
    evaluable = (outer > 0) & (tau > 0) & (t > 0)
    return tau, t, estimates, evaluable, np.stack([i, j])


def _degenerate_error(pairs: np.ndarray, evaluable: np.ndarray) -> DegenerateSpacingError:
    k = int(np.flatnonzero(~evaluable)[0])
    return DegenerateSpacingError(int(pairs[0, k]), int(pairs[1, k]), "zero spacing")


def per_elemental_table(
    s: OrderedSample,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
    *,
    skip_degenerate: bool = False,
) -> pd.DataFrame:
    """Tabulate every elemental of s as columns i, j, tau, t, estimate.

    With skip_degenerate, elementals with a zero spacing are kept with NaN ratios and estimate.

    Raises:
        DegenerateSpacingError: On a zero spacing, unless skip_degenerate.

    """
    tau, t, estimates, evaluable, pairs = _elemental_arrays(s, family, method, threshold)
    if not evaluable.all():
        if not skip_degenerate:
            raise _degenerate_error(pairs, evaluable)
        tau, t, estimates = (np.where(evaluable, v, np.nan) for v in (tau, t, estimates))
    return pd.DataFrame({"i": pairs[0], "j": pairs[1], "tau": tau, "t": t, "estimate": estimates})


def combined_estimate(
    s: OrderedSample,
    scheme: WeightScheme | None = None,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
    *,
    skip_degenerate: bool = False,
) -> float:
    """Return the unit-sum weighted combination of all elemental estimates of s.

    Args:
        s (OrderedSample): The sample, N >= 3.
        scheme (WeightScheme | None): The weighting; equal weights when None.
        family (Family | str): Coefficient family.
        method (CoefficientMethod | str): Coefficient method.
        threshold (int | None): Method threshold under `auto`.
        skip_degenerate (bool): Renormalise over evaluable elementals instead of failing.

    Raises:
        DegenerateSpacingError: If a nonzero-weight elemental has a zero spacing, or if none is
            evaluable under skip_degenerate.

    """
    scheme = scheme or WeightScheme()
    weights = _weight_array(scheme, s.n)
    _, _, estimates, evaluable, pairs = _elemental_arrays(s, family, method, threshold)
    active = weights > 0
    broken = active & ~evaluable
    if broken.any():
        if not skip_degenerate:
            raise _degenerate_error(pairs, ~broken)
        logger().warning(
            f"Skipping {int(broken.sum())} degenerate elementals of {int(active.sum())}",
        )
        weights = np.where(evaluable, weights, 0.0)
        total = weights.sum()
        if not total > 0:
            raise _degenerate_error(pairs, ~broken)
        weights = weights / total
    used = weights > 0
    return float(np.dot(weights[used], estimates[used]))


@lru_cache(maxsize=64)
def _pair_index(n: int) -> np.ndarray:
    index = np.full((n + 1, n + 1), -1, dtype=np.int64)
    p, q = np.triu_indices(n, k=1)
    index[p + 1, q + 1] = np.arange(p.size)
    index.setflags(write=False)
    return index


def spacing_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return 1-based (p, q), p < q, in the column order used by `log_spacing_design`."""
    p, q = np.triu_indices(n, k=1)
    return p + 1, q + 1


def log_spacing_design(
    n: int,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> sparse.csc_matrix:
    """Sparse map from log-spacings to elemental estimates.

    Row k of the result corresponds to pair k of `spacing_pairs(n)`, column e to elemental e of
    `enumerate_elementals(n)`. With L[r, k] = log(X_p - X_q) for replicate r, `L @ D` holds every
    elemental estimate: each elemental puts a on (I, J-1), b - a on (I, J) and -b on (I+1, J).
    """
    _require_size(n)
    i, j = _pair_arrays(n)
    a, b = _coefficients_for(n, family, method, threshold)
    index = _pair_index(n)
    columns = np.arange(i.size)
    rows = np.concatenate([index[i, j - 1], index[i, j], index[i + 1, j]])
    values = np.concatenate([a, b - a, -b])
    return sparse.csc_matrix(
        (values, (rows, np.tile(columns, 3))),
        shape=(n * (n - 1) // 2, i.size),
    )


def log_spacing_components(
    n: int,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> sparse.csc_matrix:
    """Sparse map from log-spacings to the two terms of every elemental, raw and scaled.

    Column 4e + k holds component `COMPONENT_NAMES[k]` of elemental e of
    `enumerate_elementals(n)`: log(tau), -log(t), a log(tau) and -b log(t). The last two sum to
    the elemental estimate.
    """
    _require_size(n)
    i, j = _pair_arrays(n)
    a, b = _coefficients_for(n, family, method, threshold)
    index = _pair_index(n)
    outer, near, far = index[i, j], index[i, j - 1], index[i + 1, j]
    ones = np.ones(i.size)
    base = 4 * np.arange(i.size)
    rows = np.concatenate([near, outer, far, outer, near, outer, far, outer])
    columns = np.concatenate([base + k for k in (0, 0, 1, 1, 2, 2, 3, 3)])
    values = np.concatenate([ones, -ones, -ones, ones, a, -a, -b, b])
    return sparse.csc_matrix(
        (values, (rows, columns)),
        shape=(n * (n - 1) // 2, len(COMPONENT_NAMES) * i.size),
    )


def log_spacing_weights(
    scheme: WeightScheme,
    n: int,
    family: Family | str = Family.GEV,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> np.ndarray:
    """Collapse a combination into one weight per log-spacing, ordered as `spacing_pairs(n)`.

    The combined estimate of a sample equals `log_spacings @ weights`.
    """
    design = log_spacing_design(n, family, method, threshold)
    return np.asarray(design @ _weight_array(scheme, n)).ravel()
