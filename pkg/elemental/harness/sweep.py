"""Monte Carlo sweeps of estimator bias, spread and error over a grid of tail parameters.

Work is split into units of (grid cell, replicate chunk). Each unit owns the random stream
`seed.child(cell, chunk)`, draws its samples, evaluates every requested estimator at once through
the log-spacing design matrix and reduces the estimates to moment accumulators. Units may run on
a thread pool; their accumulators are merged in chunk order, so results are bit-identical for any
thread count.

Samples are drawn in the endpoint-anchored frame (see `distributions.anchored_quantile`), which
leaves every estimate unchanged and keeps draws near a finite endpoint free of rounding ties.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from elemental.coefficients import CoefficientMethod
from elemental.common import parse_str_to_enum
from elemental.config import Config
from elemental.distributions import RngSpec, anchored_quantile, open_uniform
from elemental.errors import InvalidConfigError
from elemental.estimator import (
    COMPONENT_NAMES,
    MIN_SAMPLE_SIZE,
    Family,
    WeightScheme,
    enumerate_elementals,
    log_spacing_components,
    log_spacing_design,
    log_spacing_weights,
    spacing_pairs,
)
from elemental.harness.accumulator import MomentAccumulator, merge_ordered
from elemental.logger import logger
from elemental.serialization import build_metadata

T = TypeVar("T")
U = TypeVar("U")

# Upper bound on log-spacing entries held at once per work unit.
BLOCK_ELEMENTS = 2_000_000
DEFAULT_XI_GRID = tuple(float(x) for x in np.arange(-12.0, 12.5, 1.0))
RESULT_COLUMNS = [
    "xi_true",
    "n",
    "estimator_id",
    "mean",
    "bias",
    "std",
    "rmse",
    "mean_se",
    "replicates",
    "rejected_count",
    "seed",
]


class SweepConfig(BaseModel):
    """One Monte Carlo sweep.

    Attributes:
        n: Sample size.
        xi_grid: True tail parameters, one cell each.
        replicates: Samples drawn per cell.
        schemes: Combinations to evaluate.
        family: Distribution family sampled and estimated.
        seed: Root random stream.
        per_elemental: Whether to also report every single elemental.
        components: Whether to also report the two log-spacing terms of every elemental.
        method: Coefficient method.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(description="Sample size.")
    xi_grid: tuple[float, ...] = Field(default=DEFAULT_XI_GRID, description="True xi values.")
    replicates: int = Field(default=10_000, description="Samples per cell.")
    schemes: tuple[WeightScheme, ...] = Field(
        default=(WeightScheme(),),
        description="Combinations to evaluate.",
    )
    family: Family = Field(default=Family.GEV, description="Family sampled and estimated.")
    seed: RngSpec = Field(default_factory=RngSpec, description="Root random stream.")
    per_elemental: bool = Field(default=False, description="Report every elemental too.")
    components: bool = Field(
        default=False,
        description="Report log(tau), -log(t) and their scaled forms per elemental.",
    )
    method: CoefficientMethod = Field(
        default=CoefficientMethod.AUTO,
        description="Coefficient method.",
    )

    @field_validator("family", mode="before")
    @classmethod
    def parse_family(cls, value: str | Family) -> Family:
        """Parse family to enum if string provided."""
        return parse_str_to_enum(value, Family)

    @field_validator("method", mode="before")
    @classmethod
    def parse_method(cls, value: str | CoefficientMethod) -> CoefficientMethod:
        """Parse method to enum if string provided."""
        return parse_str_to_enum(value, CoefficientMethod)

    @model_validator(mode="after")
    def check_sweep(self) -> SweepConfig:
        """Validate sizes, grid and estimator selection."""
        if self.n < MIN_SAMPLE_SIZE:
            raise InvalidConfigError("n", f"need N >= {MIN_SAMPLE_SIZE}")
        if self.replicates < 1:
            raise InvalidConfigError("replicates", "must be at least 1")
        if not self.xi_grid:
            raise InvalidConfigError("xi_grid", "must not be empty")
        if not all(math.isfinite(xi) for xi in self.xi_grid):
            raise InvalidConfigError("xi_grid", "values must be finite")
        if not (self.schemes or self.per_elemental or self.components):
            raise InvalidConfigError("schemes", "no estimator selected")
        return self

    def estimator_ids(self) -> list[str]:
        """Identifiers of the evaluated estimators, in output order."""
        ids = [scheme.label for scheme in self.schemes]
        if self.per_elemental:
            ids += [elemental_id(e.i, e.j) for e in enumerate_elementals(self.n)]
        if self.components:
            ids += [
                component_id(name, e.i, e.j)
                for e in enumerate_elementals(self.n)
                for name in COMPONENT_NAMES
            ]
        return ids


class SweepResult(BaseModel):
    """Rows of per-cell statistics plus run metadata."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    table: pd.DataFrame = Field(description="One row per (xi, estimator).")
    metadata: dict[str, Any] = Field(default_factory=dict, description="Run metadata.")

    def cell(self, xi: float, estimator_id: str) -> pd.Series:
        """Return the row of one (xi, estimator) cell."""
        rows = self.table[
            (self.table["xi_true"] == xi) & (self.table["estimator_id"] == estimator_id)
        ]
        if rows.empty:
            raise InvalidConfigError(f"{estimator_id}@{xi}", "no such cell in the sweep result")
        return rows.iloc[0]


class _UnitResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    accumulators: tuple[MomentAccumulator, ...]
    rejected: int


def elemental_id(i: int, j: int) -> str:
    """Estimator identifier of elemental (i, j)."""
    return f"elemental_{i}_{j}"


def component_id(name: str, i: int, j: int) -> str:
    """Estimator identifier of one log-spacing term of elemental (i, j), e.g. `log_tau_1_3`."""
    return f"{name}_{i}_{j}"


def consistency_abscissa(n: int) -> float:
    """Plotting abscissa 1 - sqrt(2 / N), on which 1/sqrt(N) convergence is linear."""
    return 1 - math.sqrt(2 / n)


def anchored_draws(
    uniforms: np.ndarray,
    xi: float,
    family: Family,
    gumbel_threshold: float,
) -> np.ndarray:
    """Map uniforms to draws of the family in its endpoint-anchored frame."""
    if family is Family.GPD:
        log_tail = -np.log1p(-uniforms)
        if abs(xi) < gumbel_threshold:
            return log_tail
        return np.sign(xi) * np.exp(xi * log_tail)
    draws = np.asarray(anchored_quantile(uniforms, xi, gumbel_threshold))
    return -draws if family is Family.WEIBULL else draws


def chunk_sizes_for(replicates: int, chunk_size: int) -> list[int]:
    """Split replicates into work units of at most chunk_size."""
    full, rest = divmod(replicates, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def draw_samples(
    cfg: SweepConfig,
    xi_index: int,
    chunk_index: int,
    count: int,
    config: Config | None = None,
) -> np.ndarray:
    """Draw the ordered samples of one work unit, one row per replicate, largest first."""
    config = config or Config.from_default()
    generator = cfg.seed.child(xi_index, chunk_index).generator()
    uniforms = open_uniform(generator, (count, cfg.n))
    draws = anchored_draws(uniforms, cfg.xi_grid[xi_index], cfg.family, config.gumbel_threshold)
    return -np.sort(-draws, axis=1)


class _Evaluator:
    """Maps ordered samples to every requested estimate through log-spacings."""

    def __init__(self, cfg: SweepConfig, config: Config) -> None:
        threshold = config.method_threshold
        columns: list[np.ndarray] = [
            log_spacing_weights(scheme, cfg.n, cfg.family, cfg.method, threshold)
            for scheme in cfg.schemes
        ]
        self.weights = np.column_stack(columns) if columns else None
        designs = []
        if cfg.per_elemental:
            designs.append(log_spacing_design(cfg.n, cfg.family, cfg.method, threshold))
        if cfg.components:
            designs.append(log_spacing_components(cfg.n, cfg.family, cfg.method, threshold))
        used = np.zeros(cfg.n * (cfg.n - 1) // 2, dtype=bool)
        if self.weights is not None:
            used |= np.any(self.weights != 0, axis=1)
        for design in designs:
            used |= np.asarray(abs(design).sum(axis=1)).ravel() > 0
        p, q = spacing_pairs(cfg.n)
        self.used = np.flatnonzero(used)
        self.p = p[self.used] - 1
        self.q = q[self.used] - 1
        if self.weights is not None:
            self.weights = self.weights[self.used]
        # rows are estimates, columns the used log-spacings
        self.designs = [design.tocsr()[self.used].T.tocsr() for design in designs]
        self.block_rows = max(1, BLOCK_ELEMENTS // max(1, self.used.size))

    def evaluate(self, samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (estimates, accepted) for a batch of ordered samples.

        A replicate with a zero spacing among the used log-spacings is rejected.
        """
        blocks: list[np.ndarray] = []
        accepted: list[np.ndarray] = []
        for start in range(0, samples.shape[0], self.block_rows):
            block = samples[start : start + self.block_rows]
            with np.errstate(divide="ignore", invalid="ignore"):
                logs = np.log(block[:, self.p] - block[:, self.q])
            ok = np.all(np.isfinite(logs), axis=1)
            logs = logs[ok]
            parts = []
            if self.weights is not None:
                parts.append(logs @ self.weights)
            parts.extend(np.asarray(design @ logs.T).T for design in self.designs)
            blocks.append(np.hstack(parts))
            accepted.append(ok)
        return np.vstack(blocks), np.concatenate(accepted)


def map_ordered(function: Callable[[T], U], items: Sequence[T], threads: int) -> list[U]:
    """Apply function to items on up to `threads` threads, keeping item order."""
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))


def run_sweep(cfg: SweepConfig, config: Config | None = None) -> SweepResult:
    """Run a sweep: per xi cell, draw samples, evaluate estimators and summarise.

    Args:
        cfg (SweepConfig): What to run.
        config (Config | None): Chunk size, threads and numeric thresholds.

    Returns:
        SweepResult: Rows with columns xi_true, n, estimator_id, mean, bias, std, rmse,
        mean_se (Monte Carlo standard error of the mean), replicates (accepted draws),
        rejected_count and seed. A cell whose every draw was rejected is kept with NaN
        statistics.

    """
    config = config or Config.from_default()
    evaluator = _Evaluator(cfg, config)
    estimator_ids = cfg.estimator_ids()
    chunk_sizes = chunk_sizes_for(cfg.replicates, config.chunk_size)
    units = [(x, c) for x in range(len(cfg.xi_grid)) for c in range(len(chunk_sizes))]
    logger().info(
        f"Starting sweep: N={cfg.n}, {len(cfg.xi_grid)} cells, {cfg.replicates} replicates, "
        f"{len(estimator_ids)} estimators",
    )

    def run_unit(unit: tuple[int, int]) -> _UnitResult:
        xi_index, chunk_index = unit
        samples = draw_samples(cfg, xi_index, chunk_index, chunk_sizes[chunk_index], config)
        estimates, accepted = evaluator.evaluate(samples)
        return _UnitResult(
            accumulators=tuple(
                MomentAccumulator.from_values(estimates[:, k]) for k in range(len(estimator_ids))
            ),
            rejected=int((~accepted).sum()),
        )

    results = dict(zip(units, map_ordered(run_unit, units, config.threads), strict=True))

    rows: list[dict[str, Any]] = []
    total_rejected = 0
    for xi_index, xi in enumerate(cfg.xi_grid):
        cell_units = [results[(xi_index, c)] for c in range(len(chunk_sizes))]
        rejected = sum(unit.rejected for unit in cell_units)
        total_rejected += rejected
        if rejected:
            logger().warning(f"Sweep cell xi={xi}: rejected {rejected} degenerate draws")
        if rejected == cfg.replicates:
            logger().warning(f"Sweep cell xi={xi}: every draw rejected, statistics are NaN")
        for k, estimator_id in enumerate(estimator_ids):
            merged = merge_ordered([unit.accumulators[k] for unit in cell_units])
            stats = merged.stats(xi)
            rows.append(
                {
                    "xi_true": xi,
                    "n": cfg.n,
                    "estimator_id": estimator_id,
                    "mean": stats.mean,
                    "bias": stats.bias,
                    "std": stats.std,
                    "rmse": stats.rmse,
                    "mean_se": stats.mean_se,
                    "replicates": stats.count,
                    "rejected_count": rejected,
                    "seed": cfg.seed.seed,
                }
            )
        logger().info(f"Finished sweep cell xi={xi}")

    metadata = build_metadata(
        config,
        cfg.seed,
        operation="sweep",
        n=cfg.n,
        family=cfg.family.value,
        method=cfg.method.value,
        replicates=cfg.replicates,
        xi_grid=list(cfg.xi_grid),
        estimators=estimator_ids,
        rejected_total=total_rejected,
    )
    return SweepResult(table=pd.DataFrame(rows, columns=RESULT_COLUMNS), metadata=metadata)


def relative_efficiency(
    a: SweepResult,
    b: SweepResult,
    reference_id: str | None = None,
) -> pd.DataFrame:
    """Per-cell ratio of root mean square errors, a over b.

    Cells are matched on (xi_true, n, estimator_id). With reference_id, every estimator of a is
    instead compared with that one estimator of b at the same (xi_true, n).

    Raises:
        InvalidConfigError: If the two grids do not match.

    """
    keys = ["xi_true", "n"] if reference_id is not None else ["xi_true", "n", "estimator_id"]
    left = a.table[["xi_true", "n", "estimator_id", "rmse"]]
    right = b.table
    if reference_id is not None:
        right = right[right["estimator_id"] == reference_id]
        if right.empty:
            raise InvalidConfigError(reference_id, "reference estimator not in the result")
    right = right[[*keys, "rmse"]]
    left_keys = set(map(tuple, left[keys].to_numpy().tolist()))
    right_keys = set(map(tuple, right[keys].to_numpy().tolist()))
    if left_keys != right_keys:
        raise InvalidConfigError("grid", "sweep results do not share the same cells")
    table = left.merge(right, on=keys, suffixes=("_a", "_b"), validate="many_to_one")
    table["ratio"] = table["rmse_a"] / table["rmse_b"]
    return table.reset_index(drop=True)


def run_consistency(
    n_list: Sequence[int],
    xi_list: Sequence[float],
    replicates: int,
    scheme: WeightScheme | None = None,
    seed: RngSpec | None = None,
    family: Family | str = Family.GEV,
    config: Config | None = None,
) -> pd.DataFrame:
    """RMSE per (N, xi) for one combination, with the abscissa 1 - sqrt(2 / N).

    Each N uses its own sub-stream `seed.child(N)`.

    Raises:
        InvalidConfigError: If any N < 3 or the lists are empty.

    """
    if not n_list:
        raise InvalidConfigError("n_list", "must not be empty")
    seed = seed or RngSpec()
    scheme = scheme or WeightScheme()
    frames = []
    for n in n_list:
        cfg = SweepConfig(
            n=n,
            xi_grid=tuple(xi_list),
            replicates=replicates,
            schemes=(scheme,),
            family=family,
            seed=seed.child(n),
        )
        frame = run_sweep(cfg, config).table
        frame["abscissa"] = consistency_abscissa(n)
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)
