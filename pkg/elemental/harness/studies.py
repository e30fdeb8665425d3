"""Deterministic and per-replicate studies of the estimators.

- `run_midpoint_study`: the three-point sample [1, x_mid, -1] as x_mid moves through (-1, 1).
- `run_idealized_study`: samples placed at quantiles of evenly spaced probabilities.
- `compare_mle`: elemental and likelihood estimates on the same random samples, with the true
  xi drawn uniformly per replicate.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import pandas as pd

from elemental.config import Config
from elemental.distributions import anchored_quantile, open_uniform
from elemental.errors import DegenerateSpacingError, DomainError, InvalidConfigError
from elemental.estimator import (
    MIN_SAMPLE_SIZE,
    ElementalIndex,
    Family,
    OrderedSample,
    WeightScheme,
    combined_estimate,
    elemental_estimate,
    order_sample,
)
from elemental.harness.sweep import SweepConfig, anchored_draws, chunk_sizes_for, map_ordered
from elemental.logger import logger
from elemental.mle_baseline import MleOptions, MleStatus, fit_mle

DEFAULT_MIDPOINT_GRID = tuple(float(x) for x in np.linspace(-0.99, 0.99, 199))
DEFAULT_XI_RANGE = (-10.0, 10.0)


def midpoint_sample(x_mid: float) -> OrderedSample:
    """The sample [1, x_mid, -1].

    Raises:
        DomainError: If |x_mid| > 1.

    """
    if abs(x_mid) > 1:
        raise DomainError("x_mid", x_mid, "must lie in [-1, 1]")
    return order_sample([1.0, x_mid, -1.0])


def run_midpoint_study(
    grid: Sequence[float] = DEFAULT_MIDPOINT_GRID,
    *,
    with_mle: bool = False,
    mle_options: MleOptions | None = None,
) -> pd.DataFrame:
    """Elemental estimate, and optionally a likelihood fit, for each x_mid of the grid.

    The elemental estimate of [1, x_mid, -1] is smooth and strictly decreasing in x_mid.

    Raises:
        DegenerateSpacingError: If x_mid is -1 or 1.
        DomainError: If |x_mid| > 1.

    """
    element = ElementalIndex(i=1, j=3, n=3)
    rows = []
    for x_mid in grid:
        sample = midpoint_sample(x_mid)
        row: dict[str, float | str] = {
            "x_mid": float(x_mid),
            "estimate": elemental_estimate(sample, element),
        }
        if with_mle:
            fit = fit_mle(sample, mle_options)
            row.update({"mle_xi": fit.params.xi, "mle_status": fit.status.value})
        rows.append(row)
    return pd.DataFrame(rows)


def run_idealized_study(
    n_list: Sequence[int],
    xi_grid: Sequence[float],
    scheme: WeightScheme | None = None,
    config: Config | None = None,
) -> pd.DataFrame:
    """Combined estimate of each idealised sample, per (N, nominal xi).

    Each sample is the quantile set at probabilities (k - 1/2) / N, built in the
    endpoint-anchored frame so that the estimate is exact to rounding even for large |xi|.

    Raises:
        DomainError: If any N < 3.

    """
    config = config or Config.from_default()
    scheme = scheme or WeightScheme()
    rows = []
    for n in n_list:
        if n < MIN_SAMPLE_SIZE:
            raise DomainError("n", n, f"need N >= {MIN_SAMPLE_SIZE}")
        probs = (np.arange(n, 0, -1) - 0.5) / n
        for xi in xi_grid:
            values = np.asarray(anchored_quantile(probs, xi, config.gumbel_threshold))
            sample = OrderedSample(values=tuple(values.tolist()))
            rows.append(
                {
                    "n": n,
                    "xi_nominal": float(xi),
                    "estimate": combined_estimate(
                        sample,
                        scheme,
                        threshold=config.method_threshold,
                        skip_degenerate=config.skip_degenerate,
                    ),
                }
            )
    return pd.DataFrame(rows)


def compare_mle(
    cfg: SweepConfig,
    xi_range: tuple[float, float] = DEFAULT_XI_RANGE,
    mle_options: MleOptions | None = None,
    config: Config | None = None,
) -> pd.DataFrame:
    """Per-replicate elemental and likelihood estimates, with xi uniform over xi_range.

    The combination is `cfg.schemes[0]`; `cfg.xi_grid` is not used. Degenerate samples get a NaN
    elemental estimate and fits that fail are recorded in their row, never raised.

    Returns:
        pd.DataFrame: Columns replicate, xi_true, elemental_estimate, mle_estimate, mle_status.

    Raises:
        InvalidConfigError: If the xi range is empty, no scheme is given or the family is not
            GEV.

    """
    config = config or Config.from_default()
    low, high = xi_range
    if not low < high:
        raise InvalidConfigError("xi_range", f"empty range [{low}, {high}]")
    if not cfg.schemes:
        raise InvalidConfigError("schemes", "compare_mle needs a combination")
    if cfg.family is not Family.GEV:
        raise InvalidConfigError("family", "likelihood fits are for the GEV family only")
    scheme = cfg.schemes[0]
    chunk_sizes = chunk_sizes_for(cfg.replicates, config.chunk_size)

    def run_chunk(chunk_index: int) -> list[dict[str, float | int | str]]:
        generator = cfg.seed.child(0, chunk_index).generator()
        count = chunk_sizes[chunk_index]
        xis = low + (high - low) * open_uniform(generator, count)
        uniforms = open_uniform(generator, (count, cfg.n))
        rows: list[dict[str, float | int | str]] = []
        for k, xi in enumerate(xis):
            draws = anchored_draws(uniforms[k], float(xi), Family.GEV, config.gumbel_threshold)
            sample = order_sample(draws)
            try:
                estimate = combined_estimate(
                    sample,
                    scheme,
                    cfg.family,
                    cfg.method,
                    config.method_threshold,
                    skip_degenerate=config.skip_degenerate,
                )
            except DegenerateSpacingError:
                estimate = math.nan
            try:
                fit = fit_mle(sample, mle_options)
                mle_xi, status = fit.params.xi, fit.status.value
            except Exception as e:  # noqa: BLE001
                logger().warning(f"MLE fit raised on replicate {k}: {e}")
                mle_xi, status = math.nan, MleStatus.FAILED.value
            rows.append(
                {
                    "replicate": chunk_index * config.chunk_size + k,
                    "xi_true": float(xi),
                    "elemental_estimate": estimate,
                    "mle_estimate": mle_xi,
                    "mle_status": status,
                }
            )
        return rows

    chunks = map_ordered(run_chunk, list(range(len(chunk_sizes))), config.threads)
    table = pd.DataFrame([row for chunk in chunks for row in chunk])
    counts = table["mle_status"].value_counts().to_dict()
    logger().info(f"MLE comparison finished: status counts {counts}")
    return table
