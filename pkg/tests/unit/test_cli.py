"""Tests for the CLI."""

import json
import re
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner, Result

from elemental.cli import cli, parse_and_dispatch, parse_scheme
from elemental.errors import InputDataError
from elemental.estimator import WeightKind


def _invoke(*args: str) -> Result:
    return CliRunner().invoke(cli, list(args))


def _rows(result: Result) -> list[dict[str, Any]]:
    assert result.exit_code == 0, result.output
    return json.loads(result.output)["rows"]


@pytest.fixture
def sample_file(tmp_path: Path) -> Path:
    """A three point sample."""
    path = tmp_path / "sample.txt"
    path.write_text("1\n0\n-1\n", encoding="utf-8")
    return path


def test_cli_version() -> None:
    """Test the CLI version command."""
    result = _invoke("version")
    assert result.exit_code == 0
    assert re.match(r"\d+\.\d+\.\d+-?\w*", result.output)


@pytest.mark.parametrize(
    "command",
    [
        "version",
        "coeffs",
        "estimate",
        "sample",
        "idealized",
        "mle",
        "sweep",
        "consistency",
        "midpoint",
        "idealized-study",
        "mle-compare",
    ],
)
def test_cli_help(command: str) -> None:
    """Test every command prints its help."""
    result = _invoke(command, "--help")
    assert result.exit_code == 0
    assert "Usage:" in result.output


def test_cli_coeffs_json() -> None:
    """Test the N = 3 weights through the coeffs command."""
    rows = _rows(_invoke("coeffs", "--n", "3", "--format", "json"))
    assert [row["i"] for row in rows] == [1, 2]
    assert rows[0]["b"] == pytest.approx(0.8221, abs=5e-5)
    assert rows[1]["b"] == pytest.approx(1.1587, abs=5e-5)


def test_cli_coeffs_csv_has_metadata() -> None:
    """Test CSV output starts with the metadata block."""
    result = _invoke("coeffs", "--n", "4", "--method", "approx")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("# version: ")
    assert "n,i,beta,b,a_index,method" in lines
    assert lines[-1].endswith("approximation")


def test_cli_coeffs_direct_too_large() -> None:
    """Test direct summation past its range is a numeric failure."""
    result = _invoke("coeffs", "--n", "20", "--method", "direct")
    assert result.exit_code == 3


def test_cli_estimate(sample_file: Path) -> None:
    """Test the worked estimate for [1, 0, -1]."""
    rows = _rows(_invoke("estimate", "--input", str(sample_file), "--format", "json"))
    assert len(rows) == 1
    assert rows[0]["n"] == 3
    assert rows[0]["estimate"] == pytest.approx(-0.2333, abs=1e-4)


def test_cli_estimate_gpd(tmp_path: Path) -> None:
    """Test the GPD family on [3, 1, 0]."""
    path = tmp_path / "gpd.txt"
    path.write_text("0\n3\n1\n", encoding="utf-8")
    rows = _rows(
        _invoke("estimate", "--input", str(path), "--family", "gpd", "--format", "json"),
    )
    assert rows[0]["estimate"] == pytest.approx(0.287682, abs=1e-6)


def test_cli_estimate_per_elemental(tmp_path: Path) -> None:
    """Test --per-elemental lists every evaluable pair."""
    path = tmp_path / "sample.txt"
    path.write_text("\n".join(["5", "3", "2", "1.5", "1"]), encoding="utf-8")
    rows = _rows(
        _invoke("estimate", "--input", str(path), "--per-elemental", "--format", "json"),
    )
    assert len(rows) == 6


def test_cli_estimate_too_few_values(tmp_path: Path) -> None:
    """Test a two point sample exits with the input data code."""
    path = tmp_path / "short.txt"
    path.write_text("1\n0\n", encoding="utf-8")
    result = _invoke("estimate", "--input", str(path))
    assert result.exit_code == 2
    assert "need N ≥ 3" in result.output


def test_cli_estimate_missing_file(tmp_path: Path) -> None:
    """Test a missing input file exits with the input data code."""
    result = _invoke("estimate", "--input", str(tmp_path / "missing.txt"))
    assert result.exit_code == 2


def test_cli_estimate_degenerate_spacing(tmp_path: Path) -> None:
    """Test a zero spacing exits with the input data code."""
    path = tmp_path / "tied.txt"
    path.write_text("1\n1\n0\n", encoding="utf-8")
    result = _invoke("estimate", "--input", str(path))
    assert result.exit_code == 2
    assert "Error:" in result.output


def test_cli_unknown_flag() -> None:
    """Test usage errors exit with code 1."""
    result = _invoke("coeffs", "--n", "3", "--bogus")
    assert result.exit_code == 1


def test_cli_invalid_config_value() -> None:
    """Test a rejected config value exits with code 1."""
    result = _invoke("coeffs", "--n", "3", "--threads", "0")
    assert result.exit_code == 1
    assert "threads" in result.output.lower()


def test_cli_sample_is_reproducible() -> None:
    """Test the same seed gives the same output."""
    args = ("sample", "--count", "20", "--xi", "0.3", "--seed", "7")
    first = _invoke(*args)
    second = _invoke(*args)
    other = _invoke("sample", "--count", "20", "--xi", "0.3", "--seed", "8")
    assert first.exit_code == 0
    assert first.output == second.output
    assert first.output != other.output
    values = [line for line in first.output.splitlines() if not line.startswith("#")]
    assert len(values) == 20
    assert "# seed: 7" in first.output


def test_cli_sample_weibull_json() -> None:
    """Test the reflected family stays below its upper endpoint."""
    rows = _rows(
        _invoke(
            "sample",
            "--count",
            "50",
            "--family",
            "weibull",
            "--xi",
            "0.5",
            "--format",
            "json",
        ),
    )
    assert len(rows) == 50
    assert all(row["value"] < 2.0 for row in rows)


def test_cli_sample_to_file(tmp_path: Path) -> None:
    """Test --out writes the output to a file."""
    out = tmp_path / "draws.csv"
    result = _invoke("sample", "--count", "5", "--out", str(out))
    assert result.exit_code == 0
    assert result.output == ""
    text = out.read_text(encoding="utf-8")
    assert text.startswith("# version: ")
    assert len([line for line in text.splitlines() if not line.startswith("#")]) == 5


def test_cli_idealized() -> None:
    """Test the idealised Gumbel sample for N = 3."""
    rows = _rows(_invoke("idealized", "--n", "3", "--format", "json"))
    assert [row["value"] for row in rows] == pytest.approx([1.7020, 0.3665, -0.5832], abs=1e-4)


def test_cli_mle(tmp_path: Path) -> None:
    """Test the likelihood fit reports a status and a finite optimum."""
    path = tmp_path / "sample.txt"
    path.write_text("\n".join(["2.3", "1.1", "0.4", "-0.2", "0.9", "3.7", "-0.8", "1.6"]))
    rows = _rows(_invoke("mle", "--input", str(path), "--format", "json"))
    assert rows[0]["status"] in {"converged", "max_iter", "boundary_suspect", "failed"}
    assert rows[0]["negloglik"] <= rows[0]["initial_negloglik"]


def test_cli_config_file(tmp_path: Path) -> None:
    """Test a config file is read and flags override it."""
    config_file = tmp_path / "elemental.conf"
    config_file.write_text("METHOD_THRESHOLD=40\nFLOAT_DIGITS=6\n", encoding="utf-8")
    result = _invoke("coeffs", "--n", "30", "--config-file", str(config_file), "--format", "json")
    assert result.exit_code == 0
    document = json.loads(result.output)
    assert document["metadata"]["config"]["method_threshold"] == 40
    assert document["metadata"]["config"]["float_digits"] == 6
    assert {row["method"] for row in document["rows"]} == {"recursion"}

    result = _invoke(
        "coeffs",
        "--n",
        "30",
        "--config-file",
        str(config_file),
        "--method-threshold",
        "10",
        "--format",
        "json",
    )
    document = json.loads(result.output)
    assert document["metadata"]["config"]["method_threshold"] == 10
    assert {row["method"] for row in document["rows"]} == {"approximation"}


def test_cli_config_file_unknown_key(tmp_path: Path) -> None:
    """Test an unknown config file key is rejected."""
    config_file = tmp_path / "elemental.conf"
    config_file.write_text("NOT_A_SETTING=1\n", encoding="utf-8")
    result = _invoke("coeffs", "--n", "3", "--config-file", str(config_file))
    assert result.exit_code == 1


def test_cli_environment_variable(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test ELEMENTAL_* variables feed the config."""
    monkeypatch.setenv("ELEMENTAL_METHOD_THRESHOLD", "3")
    document = json.loads(_invoke("coeffs", "--n", "5", "--format", "json").output)
    assert document["metadata"]["config"]["method_threshold"] == 3


def test_cli_sweep() -> None:
    """Test a small sweep produces one row per cell."""
    rows = _rows(
        _invoke(
            "sweep",
            "--n",
            "5",
            "--xi-grid",
            "0,0.5",
            "--weights",
            "equal",
            "--weights",
            "nj1",
            "--replicates",
            "200",
            "--seed",
            "3",
            "--format",
            "json",
        ),
    )
    assert len(rows) == 4
    assert {row["estimator_id"] for row in rows} == {"equal", "nj1"}
    assert all(row["replicates"] + row["rejected_count"] == 200 for row in rows)


def test_cli_sweep_relative_to() -> None:
    """Test --relative-to reports RMSE ratios against one estimator."""
    rows = _rows(
        _invoke(
            "sweep",
            "--n",
            "5",
            "--xi-grid",
            "0",
            "--weights",
            "equal",
            "--weights",
            "nj1",
            "--replicates",
            "100",
            "--relative-to",
            "equal",
            "--format",
            "json",
        ),
    )
    ratios = {row["estimator_id"]: row["ratio"] for row in rows}
    assert ratios["equal"] == pytest.approx(1.0)
    assert ratios["nj1"] > 0


def test_cli_sweep_components_and_method() -> None:
    """Test --components adds the log-spacing terms and --method reaches the metadata."""
    result = _invoke(
        "sweep",
        "--n",
        "3",
        "--xi-grid",
        "0.5",
        "--components",
        "--method",
        "approx",
        "--replicates",
        "50",
        "--format",
        "json",
    )
    rows = _rows(result)
    assert [row["estimator_id"] for row in rows] == [
        "equal",
        "log_tau_1_3",
        "neg_log_t_1_3",
        "a_log_tau_1_3",
        "neg_b_log_t_1_3",
    ]
    assert all(row["mean_se"] > 0 for row in rows)
    assert json.loads(result.output)["metadata"]["method"] == "approximation"


def test_cli_sweep_bad_grid() -> None:
    """Test a malformed xi grid is a usage error."""
    result = _invoke("sweep", "--n", "5", "--xi-grid", "zero", "--replicates", "10")
    assert result.exit_code == 1


def test_cli_consistency() -> None:
    """Test the consistency table carries the abscissa."""
    rows = _rows(
        _invoke(
            "consistency",
            "--n-list",
            "8,32",
            "--xi-list",
            "0",
            "--replicates",
            "100",
            "--format",
            "json",
        ),
    )
    assert [row["n"] for row in rows] == [8, 32]
    assert rows[0]["abscissa"] == pytest.approx(0.5)
    assert rows[1]["abscissa"] == pytest.approx(0.75)


def test_cli_midpoint() -> None:
    """Test the midpoint grid includes the worked point at zero."""
    rows = _rows(_invoke("midpoint", "--points", "3", "--limit", "0.5", "--format", "json"))
    assert [row["x_mid"] for row in rows] == pytest.approx([-0.5, 0.0, 0.5])
    assert rows[1]["estimate"] == pytest.approx(-0.2333, abs=1e-4)


def test_cli_idealized_study() -> None:
    """Test the idealised study over a short grid."""
    rows = _rows(
        _invoke(
            "idealized-study",
            "--n-list",
            "3,7",
            "--xi-grid",
            "-1,0,1",
            "--format",
            "json",
        ),
    )
    assert len(rows) == 6


def test_cli_mle_compare(tmp_path: Path) -> None:
    """Test the comparison writes one row per replicate."""
    out = tmp_path / "compare.json"
    result = _invoke(
        "mle-compare", "--replicates", "5", "--seed", "2", "--format", "json", "--out", str(out)
    )
    assert result.exit_code == 0
    rows = json.loads(out.read_text(encoding="utf-8"))["rows"]
    assert [row["replicate"] for row in rows] == [0, 1, 2, 3, 4]
    assert all(-10 <= row["xi_true"] <= 10 for row in rows)


def test_parse_scheme(tmp_path: Path) -> None:
    """Test named and custom weight schemes."""
    assert parse_scheme("nj1+jmi").kind is WeightKind.W_NJ1_PLUS_JMI
    weights = tmp_path / "weights.txt"
    weights.write_text("1,3,2\n2,4,1\n", encoding="utf-8")
    scheme = parse_scheme(f"custom:{weights}")
    assert scheme.kind is WeightKind.CUSTOM
    assert scheme.custom_weights == {(1, 3): 2.0, (2, 4): 1.0}
    with pytest.raises(InputDataError):
        parse_scheme(f"custom:{tmp_path / 'missing.txt'}")


def test_parse_and_dispatch(sample_file: Path, tmp_path: Path) -> None:
    """Test the dispatcher returns the exit code instead of exiting."""
    assert parse_and_dispatch(["coeffs", "--n", "3", "--out", str(tmp_path / "b.csv")]) == 0
    assert parse_and_dispatch(["estimate", "--input", str(tmp_path / "missing.txt")]) == 2
    assert parse_and_dispatch(["coeffs", "--n", "1"]) == 1
    assert parse_and_dispatch(["no-such-command"]) == 1
    out = tmp_path / "estimate.csv"
    assert parse_and_dispatch(["estimate", "--input", str(sample_file), "--out", str(out)]) == 0
    assert "-0.2333" in out.read_text(encoding="utf-8")
