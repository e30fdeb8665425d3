"""Mergeable running moments for Monte Carlo cells.

Each work unit reduces its replicate estimates with a two-pass mean and sum of squared deviations,
and units are merged pairwise with Chan's update. Merging always happens in work-unit order, so a
cell's statistics do not depend on which thread finished first.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class CellStats(BaseModel):
    """Summary of one estimator in one cell."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mean: float
    bias: float
    std: float = Field(description="Sample standard deviation, ddof = 1.")
    rmse: float = Field(description="Root mean square error about the true value.")
    mean_se: float = Field(description="Standard error of the mean, std / sqrt(count).")
    count: int


class MomentAccumulator(BaseModel):
    """Count, mean and sum of squared deviations (m2) of a set of values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def from_values(cls, values: Iterable[float] | np.ndarray) -> MomentAccumulator:
        """Reduce a batch with a two-pass mean and m2."""
        data = np.asarray(values, dtype=float).ravel()
        if data.size == 0:
            return cls()
        mean = float(data.mean())
        return cls(count=int(data.size), mean=mean, m2=float(np.sum((data - mean) ** 2)))

    def push(self, value: float) -> MomentAccumulator:
        """Add one value with Welford's update."""
        count = self.count + 1
        delta = value - self.mean
        mean = self.mean + delta / count
        return MomentAccumulator(count=count, mean=mean, m2=self.m2 + delta * (value - mean))

    def merge(self, other: MomentAccumulator) -> MomentAccumulator:
        """Combine with another accumulator (Chan et al. pairwise update)."""
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        count = self.count + other.count
        delta = other.mean - self.mean
        return MomentAccumulator(
            count=count,
            mean=self.mean + delta * other.count / count,
            m2=self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        )

    @property
    def variance(self) -> float:
        """Sample variance (ddof = 1); NaN below two values."""
        return self.m2 / (self.count - 1) if self.count > 1 else math.nan

    def stats(self, true_value: float) -> CellStats:
        """Summarise against the true parameter.

        rmse is sqrt(bias^2 + m2 / count), so rmse^2 = bias^2 + std^2 (count - 1) / count.
        """
        if self.count == 0:
            return CellStats(
                mean=math.nan,
                bias=math.nan,
                std=math.nan,
                rmse=math.nan,
                mean_se=math.nan,
                count=0,
            )
        bias = self.mean - true_value
        std = math.sqrt(self.variance) if self.count > 1 else math.nan
        return CellStats(
            mean=self.mean,
            bias=bias,
            std=std,
            rmse=math.sqrt(bias * bias + self.m2 / self.count),
            mean_se=std / math.sqrt(self.count),
            count=self.count,
        )


def merge_ordered(accumulators: Sequence[MomentAccumulator]) -> MomentAccumulator:
    """Fold accumulators left to right in the given order."""
    merged = MomentAccumulator()
    for accumulator in accumulators:
        merged = merged.merge(accumulator)
    return merged
