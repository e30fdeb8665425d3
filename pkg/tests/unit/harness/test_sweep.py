"""Tests for the Monte Carlo sweep."""

import math

import numpy as np
import pandas as pd
import pytest

from elemental.coefficients import b_coefficient
from elemental.config import Config
from elemental.distributions import RngSpec
from elemental.errors import InvalidConfigError
from elemental.estimator import (
    Family,
    OrderedSample,
    WeightScheme,
    all_schemes,
    combined_estimate,
    order_sample,
)
from elemental.harness.sweep import (
    RESULT_COLUMNS,
    SweepConfig,
    anchored_draws,
    chunk_sizes_for,
    component_id,
    consistency_abscissa,
    draw_samples,
    elemental_id,
    map_ordered,
    relative_efficiency,
    run_consistency,
    run_sweep,
)


def test_sweep_config_validation() -> None:
    """Test the sweep config checks."""
    assert SweepConfig(n=3, family="weibull").family is Family.WEIBULL
    with pytest.raises(InvalidConfigError):
        SweepConfig(n=2)
    with pytest.raises(InvalidConfigError):
        SweepConfig(n=5, replicates=0)
    with pytest.raises(InvalidConfigError):
        SweepConfig(n=5, xi_grid=())
    with pytest.raises(InvalidConfigError):
        SweepConfig(n=5, xi_grid=(0.0, math.inf))
    with pytest.raises(InvalidConfigError):
        SweepConfig(n=5, schemes=())
    assert SweepConfig(n=5, schemes=(), components=True).components


def test_estimator_ids() -> None:
    """Test combinations come first, then every elemental."""
    cfg = SweepConfig(n=4, schemes=(WeightScheme.of("nj1"),), per_elemental=True)
    assert cfg.estimator_ids() == ["nj1", "elemental_1_3", "elemental_1_4", "elemental_2_4"]
    assert elemental_id(2, 5) == "elemental_2_5"
    components = SweepConfig(n=3, schemes=(), components=True)
    assert components.estimator_ids() == [
        "log_tau_1_3",
        "neg_log_t_1_3",
        "a_log_tau_1_3",
        "neg_b_log_t_1_3",
    ]
    assert component_id("neg_log_t", 2, 5) == "neg_log_t_2_5"


def test_chunk_sizes_for() -> None:
    """Test replicates are split into bounded work units."""
    assert chunk_sizes_for(25, 10) == [10, 10, 5]
    assert chunk_sizes_for(20, 10) == [10, 10]
    assert chunk_sizes_for(3, 10) == [3]


def test_consistency_abscissa() -> None:
    """Test the plotting abscissa 1 - sqrt(2 / N)."""
    assert consistency_abscissa(2) == 0.0
    assert consistency_abscissa(8) == pytest.approx(0.5)
    assert consistency_abscissa(200) == pytest.approx(0.9)


def test_map_ordered_keeps_order() -> None:
    """Test threaded mapping returns results in item order."""
    items = list(range(50))
    assert map_ordered(lambda x: x * x, items, 4) == [x * x for x in items]
    assert map_ordered(lambda x: -x, items, 1) == [-x for x in items]


def test_draw_samples_are_ordered() -> None:
    """Test each drawn replicate is sorted largest first."""
    cfg = SweepConfig(n=6, xi_grid=(-2.0, 0.0, 3.0), replicates=50, seed=RngSpec(seed=4))
    for xi_index in range(3):
        samples = draw_samples(cfg, xi_index, 0, 50)
        assert samples.shape == (50, 6)
        assert np.all(np.diff(samples, axis=1) < 0)


def test_anchored_draws_families() -> None:
    """Test the family sign conventions of anchored draws."""
    uniforms = np.array([0.1, 0.5, 0.9])
    gev = anchored_draws(uniforms, 0.5, Family.GEV, 1e-9)
    weibull = anchored_draws(uniforms, 0.5, Family.WEIBULL, 1e-9)
    assert np.array_equal(weibull, -gev)
    gpd = anchored_draws(uniforms, 0.0, Family.GPD, 1e-9)
    assert gpd == pytest.approx(-np.log1p(-uniforms))
    assert np.all(anchored_draws(uniforms, -1.0, Family.GPD, 1e-9) < 0)


def test_run_sweep_table() -> None:
    """Test the table layout and the per-cell identities."""
    cfg = SweepConfig(
        n=5,
        xi_grid=(-1.0, 0.0, 2.0),
        replicates=500,
        schemes=(WeightScheme(), WeightScheme.of("nj1")),
        seed=RngSpec(seed=1),
    )
    result = run_sweep(cfg)
    table = result.table
    assert list(table.columns) == RESULT_COLUMNS
    assert len(table) == 6
    assert (table["replicates"] + table["rejected_count"] == 500).all()
    assert (table["rejected_count"] == 0).all()
    assert (table["seed"] == 1).all()
    identity = table["bias"] ** 2 + table["std"] ** 2 * (table["replicates"] - 1) / table[
        "replicates"
    ]
    assert np.allclose(table["rmse"] ** 2, identity, rtol=1e-10)
    assert (table["rmse"] >= table["bias"].abs()).all()
    assert np.allclose(table["bias"], table["mean"] - table["xi_true"])
    assert np.allclose(table["mean_se"], table["std"] / np.sqrt(table["replicates"]), rtol=1e-12)
    assert result.metadata["operation"] == "sweep"
    assert result.metadata["rejected_total"] == 0
    assert result.metadata["estimators"] == ["equal", "nj1"]


def test_run_sweep_cell_lookup() -> None:
    """Test cells are addressed by (xi, estimator id)."""
    cfg = SweepConfig(n=4, xi_grid=(0.0,), replicates=20)
    result = run_sweep(cfg)
    assert result.cell(0.0, "equal")["n"] == 4
    with pytest.raises(InvalidConfigError):
        result.cell(1.0, "equal")


def test_run_sweep_is_reproducible_across_threads() -> None:
    """Test any thread count gives bit-identical tables for a fixed chunk size."""
    cfg = SweepConfig(n=6, xi_grid=(-0.5, 0.5), replicates=2500, seed=RngSpec(seed=99))
    single = run_sweep(cfg, Config.from_default(chunk_size=300, threads=1)).table
    threaded = run_sweep(cfg, Config.from_default(chunk_size=300, threads=4)).table
    pd.testing.assert_frame_equal(single, threaded)
    other_seed = cfg.model_copy(update={"seed": RngSpec(seed=100)})
    assert not run_sweep(other_seed, Config.from_default(chunk_size=300)).table.equals(single)


def test_single_replicate_matches_estimate() -> None:
    """Test a one-replicate sweep reproduces the estimate of the drawn sample."""
    cfg = SweepConfig(n=7, xi_grid=(0.3,), replicates=1, seed=RngSpec(seed=5))
    drawn = draw_samples(cfg, 0, 0, 1)[0]
    expected = combined_estimate(order_sample(drawn))
    assert run_sweep(cfg).cell(0.3, "equal")["mean"] == pytest.approx(expected, abs=1e-10)


def test_sweep_mean_matches_direct_evaluation() -> None:
    """Test the log-spacing evaluation agrees with per-sample estimates."""
    cfg = SweepConfig(
        n=6,
        xi_grid=(1.0,),
        replicates=200,
        schemes=(WeightScheme.of("jmi+i"),),
        seed=RngSpec(seed=6),
        per_elemental=True,
    )
    samples = draw_samples(cfg, 0, 0, 200)
    direct = [
        combined_estimate(OrderedSample(values=tuple(row.tolist())), WeightScheme.of("jmi+i"))
        for row in samples
    ]
    result = run_sweep(cfg)
    assert result.cell(1.0, "jmi+i")["mean"] == pytest.approx(np.mean(direct), abs=1e-10)
    assert len(result.table) == 1 + 10


def test_weibull_sweep_mirrors_gev_sweep() -> None:
    """Test equal weights give the same statistics on reflected samples."""
    gev = SweepConfig(n=5, xi_grid=(-1.0, 0.5), replicates=300, seed=RngSpec(seed=21))
    weibull = gev.model_copy(update={"family": Family.WEIBULL})
    gev_table = run_sweep(gev).table
    weibull_table = run_sweep(weibull).table
    assert np.allclose(weibull_table["mean"], gev_table["mean"], rtol=1e-9, atol=1e-12)
    assert np.allclose(weibull_table["rmse"], gev_table["rmse"], rtol=1e-9, atol=1e-12)


def test_gpd_sweep_runs() -> None:
    """Test the GPD family sweeps without rejected draws."""
    cfg = SweepConfig(n=5, xi_grid=(-0.5, 0.0, 0.5), replicates=300, family="gpd")
    table = run_sweep(cfg).table
    assert (table["rejected_count"] == 0).all()
    assert np.isfinite(table["rmse"]).all()


def test_single_elemental_is_nearly_unbiased() -> None:
    """Test the N = 3 elemental's Gumbel bias is small against its spread."""
    cfg = SweepConfig(n=3, xi_grid=(0.0,), replicates=20_000, seed=RngSpec(seed=3))
    row = run_sweep(cfg).cell(0.0, "equal")
    assert abs(row["bias"]) <= row["std"] / 10 + 3 * row["mean_se"]


def test_combination_beats_elementals() -> None:
    """Test the equal-weight rmse at N = 7 is below the median elemental rmse."""
    cfg = SweepConfig(
        n=7,
        xi_grid=(0.0,),
        replicates=20_000,
        per_elemental=True,
        seed=RngSpec(seed=8),
    )
    table = run_sweep(cfg).table
    elementals = table[table["estimator_id"].str.startswith("elemental_")]
    assert len(elementals) == 15
    combined = table[table["estimator_id"] == "equal"].iloc[0]
    assert combined["rmse"] < elementals["rmse"].median()


def test_relative_efficiency_of_identical_results() -> None:
    """Test a result against itself gives ratios of one."""
    cfg = SweepConfig(n=5, xi_grid=(0.0, 1.0), replicates=200, schemes=tuple(all_schemes()))
    result = run_sweep(cfg)
    ratios = relative_efficiency(result, result)
    assert list(ratios.columns) == ["xi_true", "n", "estimator_id", "rmse_a", "rmse_b", "ratio"]
    assert len(ratios) == 14
    assert np.allclose(ratios["ratio"], 1.0)


def test_relative_efficiency_against_reference() -> None:
    """Test every estimator is compared with the reference at the same xi."""
    cfg = SweepConfig(
        n=6,
        xi_grid=(-1.0, 1.0),
        replicates=300,
        schemes=(WeightScheme(), WeightScheme.of("i")),
    )
    result = run_sweep(cfg)
    ratios = relative_efficiency(result, result, reference_id="equal")
    equal = ratios[ratios["estimator_id"] == "equal"]
    assert np.allclose(equal["ratio"], 1.0)
    other = ratios[ratios["estimator_id"] == "i"].set_index("xi_true")
    for xi in (-1.0, 1.0):
        expected = result.cell(xi, "i")["rmse"] / result.cell(xi, "equal")["rmse"]
        assert other.loc[xi, "ratio"] == pytest.approx(expected)
    with pytest.raises(InvalidConfigError):
        relative_efficiency(result, result, reference_id="nj1")


def test_relative_efficiency_disjoint_seeds() -> None:
    """Test equal against equal on independent streams stays within MC noise."""
    a = SweepConfig(n=7, xi_grid=(0.0,), replicates=100_000, seed=RngSpec(seed=1))
    b = a.model_copy(update={"seed": RngSpec(seed=2)})
    ratios = relative_efficiency(run_sweep(a), run_sweep(b))
    assert ratios["ratio"].between(0.95, 1.05).all()


def test_relative_efficiency_grid_mismatch() -> None:
    """Test results on different grids are rejected."""
    a = run_sweep(SweepConfig(n=5, xi_grid=(0.0,), replicates=50))
    b = run_sweep(SweepConfig(n=5, xi_grid=(1.0,), replicates=50))
    with pytest.raises(InvalidConfigError):
        relative_efficiency(a, b)


def test_run_consistency() -> None:
    """Test rmse falls with N and the abscissa is attached."""
    table = run_consistency(
        (10, 40, 160),
        (-1.0, 0.0, 1.0),
        2000,
        WeightScheme.of("nj1"),
        RngSpec(seed=17),
    )
    assert len(table) == 9
    assert set(table["abscissa"]) == {consistency_abscissa(n) for n in (10, 40, 160)}
    for _, cell in table.groupby("xi_true"):
        rmse = cell.sort_values("n")["rmse"].to_numpy()
        assert np.all(np.diff(rmse) < 0)
    with pytest.raises(InvalidConfigError):
        run_consistency((), (0.0,), 10)


@pytest.mark.parametrize("xi", [-1.0, 1.0])
def test_consistency_rate(xi: float) -> None:
    """Test rmse roughly halves when N grows fourfold."""
    table = run_consistency((40, 160), (xi,), 2000, WeightScheme.of("nj1"), RngSpec(seed=23))
    rmse = table.set_index("n")["rmse"]
    assert 1.6 <= rmse[40] / rmse[160] <= 2.4


def test_components_scale_and_sum() -> None:
    """Test the scaled log-spacing terms sum to the elemental and each tracks xi in its tail."""
    a, b = b_coefficient(3, 2), b_coefficient(3, 1)
    cfg = SweepConfig(
        n=3,
        xi_grid=(-10.0, 10.0),
        replicates=20_000,
        components=True,
        seed=RngSpec(seed=14),
    )
    result = run_sweep(cfg)
    for xi in cfg.xi_grid:
        log_tau = result.cell(xi, "log_tau_1_3")["mean"]
        neg_log_t = result.cell(xi, "neg_log_t_1_3")["mean"]
        assert log_tau < 0 < neg_log_t
        scaled_tau = result.cell(xi, "a_log_tau_1_3")["mean"]
        scaled_t = result.cell(xi, "neg_b_log_t_1_3")["mean"]
        assert scaled_tau == pytest.approx(a * log_tau, rel=1e-9)
        assert scaled_t == pytest.approx(b * neg_log_t, rel=1e-9)
        combined = result.cell(xi, "equal")["mean"]
        assert scaled_tau + scaled_t == pytest.approx(combined, rel=1e-9, abs=1e-9)

    # a log(tau) carries the lower tail and -b log(t) the upper
    assert result.cell(-10.0, "a_log_tau_1_3")["mean"] == pytest.approx(-10.0, abs=0.75)
    assert result.cell(10.0, "neg_b_log_t_1_3")["mean"] == pytest.approx(10.0, abs=0.75)
