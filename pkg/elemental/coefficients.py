"""Elemental coefficients for the GEV tail estimators.

The weights of an elemental estimator are built from the bracketed binomial-log sum

    beta_N(I) = binomial(N, I) * sum_{m=0}^{I} binomial(I, m) (-1)^m log(N - I + m)

which is negative for every valid (N, I). The GEV weights are

    b_N(I) = -1 / beta_N(I)        and        a_N(J) = b_N(J - 1).

The sum cancels catastrophically as N grows, so three evaluation methods are offered:

- `direct`: the sum itself, for oracle checks at small N.
- `recursion`: a Pascal-triangle recursion seeded by beta_N(1) = N log(1 - 1/N).
- `approximation`: the asymptotic form
  b_N(I) / N ~ -(1 - x) log(1 - x) - x / (12 N) log(1 - x), with x = I / N.

`auto` uses the recursion up to a configurable N and the approximation above it. GPD and
Weibull-reflected coefficient sets are provided alongside.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from functools import lru_cache

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from elemental.common import ElementalEnum, parse_str_to_enum
from elemental.config import DEFAULT_METHOD_THRESHOLD
from elemental.errors import DomainError, NumericError
from elemental.logger import logger

# Largest N at which the direct sum keeps the recursion's accuracy.
DIRECT_MAX_N = 15


class CoefficientMethod(ElementalEnum):
    """How b_N(I) is evaluated.

    Attributes:
        AUTO: Recursion up to the method threshold, approximation above it.
        DIRECT: The binomial-log sum, evaluated term by term.
        RECURSION: The Pascal-triangle recursion.
        APPROXIMATION: The asymptotic closed form.

    """

    AUTO = "auto"
    DIRECT = "direct"
    RECURSION = "recursion"
    APPROXIMATION = "approximation"

    @classmethod
    def _missing_(cls, value: object) -> CoefficientMethod | None:
        if isinstance(value, str) and value.lower() == "approx":
            return cls.APPROXIMATION
        return None


class BetaSum(BaseModel):
    """One bracketed weighted sum beta_N(I), with the method that produced it."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=2, description="Sample size N.")
    i: int = Field(ge=1, description="Index I, 1 <= I <= N - 1.")
    value: float = Field(description="The bracketed weighted sum; always negative.")
    method: CoefficientMethod = Field(description="How the value was computed.")

    @model_validator(mode="after")
    def check_index(self) -> BetaSum:
        """Validate 1 <= i <= n - 1."""
        _check_index(self.n, self.i)
        return self


def _check_index(n: int, i: int, name: str = "i") -> None:
    if n < 2:  # noqa: PLR2004
        raise DomainError("n", n, "sample size must be at least 2")
    if not 1 <= i <= n - 1:
        raise DomainError(name, i, f"index must satisfy 1 <= {name} <= n - 1 = {n - 1}")


def _check_pair(n: int, i: int, j: int) -> None:
    if i < 1:
        raise DomainError("i", i, "must be at least 1")
    if j < i + 2:
        raise DomainError("j", j, f"must be at least i + 2 = {i + 2}")
    if j > n:
        raise DomainError("j", j, f"must not exceed n = {n}")


def resolve_method(
    n: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> CoefficientMethod:
    """Resolve `auto` to the concrete method used for sample size n."""
    method = parse_str_to_enum(method, CoefficientMethod)
    if method is not CoefficientMethod.AUTO:
        return method
    limit = DEFAULT_METHOD_THRESHOLD if threshold is None else threshold
    return CoefficientMethod.RECURSION if n <= limit else CoefficientMethod.APPROXIMATION


def beta_direct(n: int, i: int) -> float:
    """Evaluate beta_N(I) by direct summation.

    Binomial coefficients are built by ratio updates, never factorials. The constant log(N - I)
    is removed from every term (the alternating binomial weights sum to zero), leaving
    log1p(m / (N - I)) terms, and the sum is accumulated in numpy's extended precision. Even so
    the sum loses roughly log10(2^I) digits, so it is only offered up to N = DIRECT_MAX_N.

    Raises:
        DomainError: If the index is out of range.
        NumericError: If N exceeds DIRECT_MAX_N, or the result is not finite and negative.

    """
    _check_index(n, i)
    if n > DIRECT_MAX_N:
        raise NumericError(
            CoefficientMethod.DIRECT.value,
            f"N={n} exceeds {DIRECT_MAX_N}, beyond which direct summation loses its accuracy",
        )
    offset = n - i
    prefactor = np.longdouble(1)
    for k in range(1, i + 1):
        prefactor = prefactor * (offset + k) / k
    total = np.longdouble(0)
    weight = np.longdouble(1)
    for m in range(1, i + 1):
        weight = weight * (i - m + 1) / m
        term = weight * np.log1p(np.longdouble(m) / offset)
        total = total + term if m % 2 == 0 else total - term
    value = float(prefactor * total)
    if not math.isfinite(value) or value >= 0:
        raise NumericError(
            CoefficientMethod.DIRECT.value,
            f"beta_{n}({i}) evaluated to {value}; direct summation is unstable at this size",
        )
    return value


@lru_cache(maxsize=16)
def _beta_triangle(n_max: int) -> np.ndarray:
    table = np.full((n_max + 1, n_max), np.nan, dtype=np.longdouble)
    sizes = np.arange(2, n_max + 1).astype(np.longdouble)
    table[2:, 1] = sizes * np.log1p(-1 / sizes)
    for i in range(1, n_max - 1):
        rows = np.arange(i + 2, n_max + 1)
        sizes = rows.astype(np.longdouble)
        table[rows, i + 1] = (
            sizes / (i + 1) * table[rows - 1, i] - (sizes - i) / (i + 1) * table[rows, i]
        )
    table.setflags(write=False)
    logger().debug(f"Built beta recursion triangle up to N={n_max}")
    return table


class BetaTable:
    """Read-only triangular table of beta_N(I) for 2 <= N <= n_max, 1 <= I <= N - 1.

    Row I = 1 is the seed; each later entry comes from two entries of the previous row.
    """

    def __init__(self, values: np.ndarray) -> None:
        """Wrap a triangle produced by the recursion."""
        self._values = values

    @property
    def n_max(self) -> int:
        """Largest sample size held."""
        return self._values.shape[0] - 1

    def value(self, n: int, i: int) -> float:
        """Return beta_N(I).

        Raises:
            DomainError: If (n, i) lies outside the table.
            NumericError: If the recursion has lost all accuracy at this entry.

        """
        _check_index(n, i)
        if n > self.n_max:
            raise DomainError("n", n, f"table only reaches N = {self.n_max}")
        value = float(self._values[n, i])
        if not math.isfinite(value) or value >= 0:
            raise NumericError(
                CoefficientMethod.RECURSION.value,
                f"beta_{n}({i}) evaluated to {value}; the recursion is unstable at this size",
            )
        return value

    def entry(self, n: int, i: int) -> BetaSum:
        """Return beta_N(I) as a BetaSum."""
        return BetaSum(n=n, i=i, value=self.value(n, i), method=CoefficientMethod.RECURSION)

    def row(self, n: int) -> np.ndarray:
        """Return beta_N(1..N-1) in extended precision (entry 0 is beta_N(1))."""
        return self._values[n, 1:n]

    def __iter__(self) -> Iterator[BetaSum]:
        """Iterate entries in (N, I) order."""
        for n in range(2, self.n_max + 1):
            for i in range(1, n):
                yield self.entry(n, i)

    def __len__(self) -> int:
        """Number of entries, n_max (n_max - 1) / 2."""
        return self.n_max * (self.n_max - 1) // 2


def beta_recursion_table(n_max: int) -> BetaTable:
    """Build (or fetch from cache) the recursion triangle up to n_max.

    Raises:
        DomainError: If n_max < 2.

    """
    if n_max < 2:  # noqa: PLR2004
        raise DomainError("n_max", n_max, "must be at least 2")
    return BetaTable(_beta_triangle(n_max))


def approx_b(n: int, i: int) -> float:
    """Asymptotic approximation N [ -(1-x) log(1-x) - x/(12N) log(1-x) ], x = i/n."""
    _check_index(n, i)
    x = i / n
    log_complement = math.log1p(-x)
    return n * (-(1 - x) * log_complement - x / (12 * n) * log_complement)


def b_coefficient(
    n: int,
    i: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> float:
    """Return the GEV weight b_N(I).

    I = N - 1 is accepted so that a_N(N) = b_N(N - 1) exists.

    Args:
        n (int): Sample size N >= 2.
        i (int): Index, 1 <= i <= n - 1.
        method (CoefficientMethod | str): Evaluation method.
        threshold (int | None): Largest N computed by recursion under `auto`.

    Raises:
        DomainError: If the index is out of range.
        NumericError: If the chosen method produced a non-finite value.

    """
    _check_index(n, i)
    resolved = resolve_method(n, method, threshold)
    if resolved is CoefficientMethod.APPROXIMATION:
        return approx_b(n, i)
    if resolved is CoefficientMethod.DIRECT:
        return -1.0 / beta_direct(n, i)
    return -1.0 / beta_recursion_table(n).value(n, i)


def a_coefficient(
    n: int,
    j: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> float:
    """Return the GEV weight a_N(J) = b_N(J - 1), for 2 <= j <= n."""
    if not 2 <= j <= n:  # noqa: PLR2004
        raise DomainError("j", j, f"must satisfy 2 <= j <= n = {n}")
    return b_coefficient(n, j - 1, method, threshold)


@lru_cache(maxsize=256)
def b_vector(
    n: int,
    method: CoefficientMethod = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> np.ndarray:
    """Return b_N(I) for I = 0..N-1 as a read-only array, with entry 0 set to NaN.

    Indexing by I directly keeps vectorised estimator code free of off-by-one shifts.
    """
    values = np.full(n, np.nan)
    resolved = resolve_method(n, method, threshold)
    if resolved is CoefficientMethod.RECURSION:
        table = beta_recursion_table(n)
        row = np.asarray(table.row(n), dtype=float)
        if not np.all(np.isfinite(row)) or np.any(row >= 0):
            raise NumericError(resolved.value, f"recursion row N={n} is not finite and negative")
        values[1:] = -1.0 / row
    else:
        values[1:] = [b_coefficient(n, i, resolved, threshold) for i in range(1, n)]
    values.setflags(write=False)
    return values


def gpd_coefficients(i: int, j: int) -> tuple[float, float]:
    """Return the GPD weights (a, b) = (J - 1, I); they do not depend on N."""
    if i < 1:
        raise DomainError("i", i, "must be at least 1")
    if j < i + 2:
        raise DomainError("j", j, f"must be at least i + 2 = {i + 2}")
    return float(j - 1), float(i)


def weibull_coefficients(
    n: int,
    i: int,
    j: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> tuple[float, float]:
    """Return the reflected weights (a^W(J), b^W(I)) = (-b_N(N+1-J), -a_N(N+1-I))."""
    _check_pair(n, i, j)
    return (
        -b_coefficient(n, n + 1 - j, method, threshold),
        -a_coefficient(n, n + 1 - i, method, threshold),
    )


def weibull_limit_b(n: int, i: int) -> float:
    """Large-N form of the reflected weight, b^W_N(I) ~ I log(I / N)."""
    _check_index(n, i)
    return i * math.log(i / n)


def limit_curve(x: float | np.ndarray) -> float | np.ndarray:
    """Limit f(x) = -(1 - x) log(1 - x) of b_N(I) / N at fixed x = I / N; f(1) = 0."""
    values = np.asarray(x, dtype=float)
    inside = np.where(values < 1, values, 0.0)
    curve = np.where(values < 1, -(1 - values) * np.log1p(-inside), 0.0)
    return float(curve) if curve.ndim == 0 else curve


def interpolation_residual(
    n: int,
    i: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> float:
    """Residual of the first-order linear interpolation of beta between N and N - 1.

    Returns |beta_{N-1}(I) - [(1 - x) beta_N(I) + x beta_N(I + 1)]| with x = I / N, which
    shrinks like 1/N^2 at fixed x.
    """
    if not 1 <= i <= n - 2:
        raise DomainError("i", i, f"must satisfy 1 <= i <= n - 2 = {n - 2}")
    x = i / n

    def beta(size: int, index: int) -> float:
        return -1.0 / b_coefficient(size, index, method, threshold)

    return abs(beta(n - 1, i) - ((1 - x) * beta(n, i) + x * beta(n, i + 1)))


class CoefficientTable(BaseModel):
    """The weights b_N(I) for one sample size, with per-entry provenance.

    Attributes:
        n: Sample size.
        b: Map I -> b_N(I) for I = 1..N-1.
        method_threshold: Largest N computed by recursion under `auto`.
        provenance: Map I -> the method that produced b_N(I).

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=2, description="Sample size N.")
    b: dict[int, float] = Field(description="b_N(I) keyed by I = 1..N-1.")
    method_threshold: int = Field(
        default=DEFAULT_METHOD_THRESHOLD,
        description="Largest N computed by recursion under auto.",
    )
    provenance: dict[int, CoefficientMethod] = Field(
        default_factory=dict,
        description="The method that produced each entry.",
    )

    @model_validator(mode="after")
    def check_weights(self) -> CoefficientTable:
        """Validate the index set and positivity of the weights."""
        if sorted(self.b) != list(range(1, self.n)):
            raise DomainError("b", sorted(self.b), f"must hold exactly I = 1..{self.n - 1}")
        bad = [i for i, value in self.b.items() if not value > 0]
        if bad:
            raise NumericError("table", f"non-positive weights at I = {bad}")
        return self

    def a(self, j: int) -> float:
        """Return a_N(J) = b_N(J - 1)."""
        if not 2 <= j <= self.n:  # noqa: PLR2004
            raise DomainError("j", j, f"must satisfy 2 <= j <= n = {self.n}")
        return self.b[j - 1]

    def beta(self, i: int) -> float:
        """Return beta_N(I) = -1 / b_N(I)."""
        _check_index(self.n, i)
        return -1.0 / self.b[i]


def build_coefficient_table(
    n: int,
    method: CoefficientMethod | str = CoefficientMethod.AUTO,
    threshold: int | None = None,
) -> CoefficientTable:
    """Compute b_N(I) for every I of one sample size.

    Raises:
        DomainError: If n < 2.
        NumericError: If the chosen method breaks down at this size.

    """
    if n < 2:  # noqa: PLR2004
        raise DomainError("n", n, "sample size must be at least 2")
    limit = DEFAULT_METHOD_THRESHOLD if threshold is None else threshold
    resolved = resolve_method(n, method, limit)
    logger().debug(f"Computing coefficients for N={n} with {resolved.value}")
    return CoefficientTable(
        n=n,
        b={i: b_coefficient(n, i, resolved, limit) for i in range(1, n)},
        method_threshold=limit,
        provenance=dict.fromkeys(range(1, n), resolved),
    )


def coefficient_table_frame(table: CoefficientTable) -> pd.DataFrame:
    """Tabulate a CoefficientTable as columns n, i, beta, b, a_index, method.

    `a_index` is the J for which the row's weight is also a_N(J), i.e. I + 1.
    """
    return pd.DataFrame(
        {
            "n": [table.n] * (table.n - 1),
            "i": list(range(1, table.n)),
            "beta": [table.beta(i) for i in range(1, table.n)],
            "b": [table.b[i] for i in range(1, table.n)],
            "a_index": list(range(2, table.n + 1)),
            "method": [table.provenance[i].value for i in range(1, table.n)],
        }
    )
