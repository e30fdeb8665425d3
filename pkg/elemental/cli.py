"""CLI Implementation.

Usage:

elemental-cli coeffs --n 20 - tabulate the weights b_N(I)
elemental-cli estimate --input data.txt - estimate xi from one value per line
elemental-cli sweep --n 7 --weights all - Monte Carlo bias and error of the combinations
elemental-cli midpoint - estimates for the sample [1, x_mid, -1]

Every command writes a table to stdout or `--out`, as CSV with a `#` metadata block or as JSON.
Errors go to stderr with exit code 1 for usage and config errors, 2 for unusable input data and
3 for numeric failures.
"""

from __future__ import annotations

import builtins
import sys
from collections.abc import Sequence
from enum import Enum
from functools import wraps
from pathlib import Path
from types import UnionType
from typing import TYPE_CHECKING, Any, get_args, get_origin

import click
import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from elemental.coefficients import (
    CoefficientMethod,
    build_coefficient_table,
    coefficient_table_frame,
)
from elemental.common import format_float, parse_str_to_enum
from elemental.config import Config
from elemental.distributions import (
    GevParams,
    RngSpec,
    WeibullRelParams,
    idealized_sample,
    sample_gev,
    sample_weibullrel,
)
from elemental.errors import EXIT_USAGE, ElementalBaseError, InputDataError, InvalidConfigError
from elemental.estimator import (
    MIN_SAMPLE_SIZE,
    Family,
    WeightScheme,
    all_schemes,
    combined_estimate,
    order_sample,
    per_elemental_table,
)
from elemental.harness.studies import compare_mle, run_idealized_study, run_midpoint_study
from elemental.harness.sweep import SweepConfig, relative_efficiency, run_consistency, run_sweep
from elemental.logger import logger, logger_manager
from elemental.mle_baseline import MleInit, MleOptions, fit_mle
from elemental.serialization import (
    OutputFormat,
    build_metadata,
    metadata_header,
    read_custom_weights,
    read_values,
    render,
)
from elemental.version import get_version

if TYPE_CHECKING:
    from collections.abc import Callable

    from pydantic.fields import FieldInfo

QUICK_REPLICATES = 10_000
FULL_REPLICATES = 500_000
DEFAULT_CONSISTENCY_XI = "-5,-2,-1,0,1,2,5"
OPTION_ALIASES = {"default_log_level": "log-level"}


class CLIConfig(BaseModel):
    """Config for the CLI."""

    model_config = ConfigDict(extra="ignore")

    config_file: str | None = Field(
        default=None,
        description="Flat KEY=value config file; flags override its values.",
    )
    out: str | None = Field(
        default=None,
        description="Write output to this file instead of stdout.",
    )
    format: OutputFormat = Field(
        default=OutputFormat.CSV,
        description="Output format.",
    )


def generate_cli_option_from_pydantic_field(
    f: Callable[..., Any],
    field: str,
    info: FieldInfo,
    *,
    with_default: bool,
) -> Callable[..., Any]:
    """Generate a click option from a pydantic field.

    Config fields get no click default, so unset flags fall through to the config file and
    environment.
    """
    option_names = [f"--{field.replace('_', '-')}"]
    if field in OPTION_ALIASES:
        option_names.insert(0, f"--{OPTION_ALIASES[field]}")

    field_type = _annotation_to_click_type(info.annotation)
    if field_type is None:
        return f

    optional_kwargs = {}
    if with_default and info.default is not None:
        default = info.default
        optional_kwargs["default"] = default.value if isinstance(default, Enum) else default

    return click.option(
        *option_names,
        field,
        type=field_type,
        help=info.description or f"Set the value for {field}",
        **optional_kwargs,
    )(f)


def _annotation_to_click_type(  # noqa: PLR0911
    annotation: type[Any] | None,
) -> click.ParamType | None:
    """Convert a type annotation to a click type."""
    match annotation:
        case builtins.int:
            return click.INT
        case builtins.float:
            return click.FLOAT
        case builtins.bool:
            return click.BOOL
        case builtins.str:
            return click.STRING
        case _ if isinstance(annotation, type) and issubclass(annotation, Enum):
            return click.Choice(
                [e.value for e in annotation],
                case_sensitive=False,
            )
        case _ if get_origin(annotation) is UnionType:
            args = get_args(annotation)
            for arg in args:
                if (click_type := _annotation_to_click_type(arg)) is not None:
                    return click_type
            return None
        case _:
            return None


def common_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Define common options for CLI commands."""
    for field, info in Config.model_fields.items():
        generate_cli_option_from_pydantic_field(f, field, info, with_default=False)
    for field, info in CLIConfig.model_fields.items():
        generate_cli_option_from_pydantic_field(f, field, info, with_default=True)

    @wraps(f)
    def wrapper(*args: Any, **kwargs: Any) -> Any:  # noqa: ANN401
        return f(*args, **kwargs)

    return wrapper


def random_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Define the seed option for commands that draw random numbers."""
    return click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, help="Root seed.")(
        f
    )


def harness_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Define the options shared by Monte Carlo commands."""
    f = click.option(
        "--full",
        is_flag=True,
        help=f"Use {FULL_REPLICATES} replicates unless --replicates is given.",
    )(f)
    f = click.option("--replicates", type=click.IntRange(min=1), help="Replicates per cell.")(f)
    return random_options(f)


class ElementalGroup(click.Group):
    """Command group mapping package errors and usage errors to exit codes."""

    def invoke(self, ctx: click.Context) -> Any:  # noqa: ANN401
        """Invoke the subcommand, turning package errors into exit codes."""
        try:
            return super().invoke(ctx)
        except ElementalBaseError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(e.exit_code)

    def main(  # type: ignore[override]
        self,
        args: Sequence[str] | None = None,
        prog_name: str | None = None,
        complete_var: str | None = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> int:
        """Run the CLI; usage errors exit with code 1."""
        try:
            result = super().main(
                args,
                prog_name,
                complete_var,
                standalone_mode=False,
                **extra,
            )
        except click.UsageError as e:
            e.show()
            code = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            code = e.exit_code
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = EXIT_USAGE
        else:
            code = result if isinstance(result, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=ElementalGroup, context_settings={"max_content_width": 240})
def cli() -> None:
    """Elemental tail estimator CLI."""


def parse_and_dispatch(argv: Sequence[str]) -> int:
    """Run the CLI on argv and return its exit code."""
    try:
        return cli.main(args=list(argv), prog_name="elemental-cli", standalone_mode=False)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE


@click.command()
def version() -> None:
    """Print the CLI tool version."""
    click.echo(get_version())


def _get_config(
    **kwargs,  # noqa: ANN003
) -> tuple[CLIConfig, Config]:
    """Init config from the config file, environment and flags."""
    cli_config = CLIConfig(**kwargs)
    overrides = {
        k: v for k, v in kwargs.items() if k in Config.model_fields and v is not None
    }
    if cli_config.config_file:
        config = Config.from_file(cli_config.config_file, **overrides)
    else:
        config = Config.from_default(**overrides)
    logger_manager.configure_from_config(config)
    return cli_config, config


def _emit(text: str, cli_config: CLIConfig) -> None:
    """Write a fully rendered output in one go."""
    if cli_config.out:
        Path(cli_config.out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _emit_table(
    table: pd.DataFrame,
    metadata: dict[str, Any],
    cli_config: CLIConfig,
    config: Config,
) -> None:
    _emit(render(table, metadata, cli_config.format, config.float_digits), cli_config)


def _emit_values(
    values: np.ndarray,
    metadata: dict[str, Any],
    cli_config: CLIConfig,
    config: Config,
) -> None:
    """Emit a vector one value per line after the metadata block, or as JSON rows."""
    if cli_config.format is OutputFormat.JSON:
        _emit_table(pd.DataFrame({"value": values}), metadata, cli_config, config)
        return
    lines = [metadata_header(metadata)]
    lines += [format_float(v, config.float_digits) + "\n" for v in values]
    _emit("".join(lines), cli_config)


def _parse_floats(text: str, name: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise InvalidConfigError(name, f"expected comma-separated numbers, got {text!r}") from e
    if not values:
        raise InvalidConfigError(name, "must not be empty")
    return values


def _parse_ints(text: str, name: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise InvalidConfigError(name, f"expected comma-separated integers, got {text!r}") from e
    if not values:
        raise InvalidConfigError(name, "must not be empty")
    return values


def _xi_grid(
    xi_grid: str | None,
    xi_min: float,
    xi_max: float,
    xi_step: float,
) -> tuple[float, ...]:
    if xi_grid:
        return _parse_floats(xi_grid, "xi_grid")
    if not xi_step > 0 or xi_max < xi_min:
        raise InvalidConfigError("xi_step", "need xi_step > 0 and xi_max >= xi_min")
    count = int(np.floor((xi_max - xi_min) / xi_step + 1e-9)) + 1
    return tuple(float(x) for x in np.round(xi_min + xi_step * np.arange(count), 12))


def parse_scheme(text: str) -> WeightScheme:
    """Parse a --weights value: a scheme name, or custom:<file> of i,j,weight lines."""
    if text.startswith("custom:"):
        path = Path(text.removeprefix("custom:"))
        if not path.is_file():
            raise InputDataError(f"custom weights file {path} does not exist")
        return WeightScheme.custom(read_custom_weights(path.read_text(encoding="utf-8")))
    return WeightScheme.of(text)


def _parse_schemes(texts: Sequence[str]) -> tuple[WeightScheme, ...]:
    if not texts:
        return (WeightScheme(),)
    schemes: list[WeightScheme] = []
    for text in texts:
        schemes.extend(all_schemes() if text == "all" else [parse_scheme(text)])
    return tuple(schemes)


def _replicates(replicates: int | None, full: bool, quick: int = QUICK_REPLICATES) -> int:
    if replicates is not None:
        return replicates
    return FULL_REPLICATES if full else quick


def _read_sample_file(path: str) -> list[float]:
    return read_values(Path(path).read_text(encoding="utf-8"))


FAMILY_CHOICE = click.Choice(Family.values(), case_sensitive=False)
WEIGHTS_HELP = "equal|nj1|jmi|i|nj1+jmi|jmi+i|nj1+i|custom:<file>"


def method_option(f: Callable[..., Any]) -> Callable[..., Any]:
    """Define the coefficient method option."""
    return click.option(
        "--method",
        type=click.Choice([*CoefficientMethod.values(), "approx"], case_sensitive=False),
        default=CoefficientMethod.AUTO.value,
        help="Coefficient method.",
    )(f)


@click.command()
@common_options
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="Sample size N.")
@method_option
def coeffs(n: int, method: str, **kwargs: Any) -> None:
    """Tabulate beta_N(I), b_N(I) and the a_N index they supply."""
    cli_config, config = _get_config(**kwargs)
    resolved = parse_str_to_enum(method, CoefficientMethod)
    table = build_coefficient_table(n, resolved, config.method_threshold)
    metadata = build_metadata(config, operation="coeffs", n=n, method=resolved.value)
    _emit_table(coefficient_table_frame(table), metadata, cli_config, config)


@click.command()
@common_options
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True)
@click.option("--family", type=FAMILY_CHOICE, default=Family.GEV.value, help="Coefficient family.")
@click.option("--weights", default=WeightScheme().label, help=WEIGHTS_HELP)
@click.option("--per-elemental", is_flag=True, help="List every elemental estimate instead.")
@method_option
def estimate(
    input_path: str,
    family: str,
    weights: str,
    per_elemental: bool,
    method: str,
    **kwargs: Any,
) -> None:
    """Estimate the tail parameter from one value per line."""
    cli_config, config = _get_config(**kwargs)
    if not Path(input_path).is_file():
        raise InputDataError(f"input file {input_path} does not exist")
    raw = _read_sample_file(input_path)
    if len(raw) < MIN_SAMPLE_SIZE:
        raise InputDataError(f"need N ≥ {MIN_SAMPLE_SIZE}, got N = {len(raw)}")
    sample = order_sample(raw)
    family_kind = parse_str_to_enum(family, Family)
    scheme = parse_scheme(weights)
    metadata = build_metadata(
        config,
        operation="estimate",
        input=input_path,
        n=sample.n,
        family=family_kind.value,
        weights=scheme.label,
    )
    if per_elemental:
        table = per_elemental_table(
            sample,
            family_kind,
            method,
            config.method_threshold,
            skip_degenerate=config.skip_degenerate,
        )
    else:
        value = combined_estimate(
            sample,
            scheme,
            family_kind,
            method,
            config.method_threshold,
            skip_degenerate=config.skip_degenerate,
        )
        row = {
            "n": sample.n,
            "family": family_kind.value,
            "weights": scheme.label,
            "estimate": value,
        }
        table = pd.DataFrame([row])
    _emit_table(table, metadata, cli_config, config)


@click.command()
@common_options
@random_options
@click.option("--mu", type=float, default=0.0, help="Location.")
@click.option("--sigma", type=float, default=1.0, help="Scale.")
@click.option("--xi", type=float, default=0.0, help="Tail parameter (zeta for weibull).")
@click.option("--count", type=click.IntRange(min=1), required=True, help="Number of draws.")
@click.option(
    "--family",
    type=click.Choice([Family.GEV.value, Family.WEIBULL.value], case_sensitive=False),
    default=Family.GEV.value,
)
def sample(
    mu: float,
    sigma: float,
    xi: float,
    count: int,
    family: str,
    seed: int,
    **kwargs: Any,
) -> None:
    """Draw a seeded random sample, one value per line."""
    cli_config, config = _get_config(**kwargs)
    rng = RngSpec(seed=seed)
    if parse_str_to_enum(family, Family) is Family.WEIBULL:
        weibull = WeibullRelParams(mu=mu, sigma=sigma, zeta=xi)
        values = sample_weibullrel(weibull, count, rng, config.gumbel_threshold)
        params = weibull.model_dump()
    else:
        gev = GevParams(mu=mu, sigma=sigma, xi=xi)
        values = sample_gev(gev, count, rng, config.gumbel_threshold)
        params = gev.model_dump()
    metadata = build_metadata(
        config,
        rng,
        operation="sample",
        family=family,
        params=params,
        count=count,
    )
    _emit_values(values, metadata, cli_config, config)


@click.command()
@common_options
@click.option("--n", "n", type=click.IntRange(min=MIN_SAMPLE_SIZE), required=True)
@click.option("--mu", type=float, default=0.0, help="Location.")
@click.option("--sigma", type=float, default=1.0, help="Scale.")
@click.option("--xi", type=float, default=0.0, help="Tail parameter.")
def idealized(n: int, mu: float, sigma: float, xi: float, **kwargs: Any) -> None:
    """Quantiles at probabilities (k - 1/2) / N, largest first."""
    cli_config, config = _get_config(**kwargs)
    params = GevParams(mu=mu, sigma=sigma, xi=xi)
    values = idealized_sample(params, n, config.gumbel_threshold).as_array()
    metadata = build_metadata(config, operation="idealized", n=n, params=params.model_dump())
    _emit_values(values, metadata, cli_config, config)


@click.command()
@common_options
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--init",
    type=click.Choice([MleInit.ELEMENTAL.value, MleInit.MOMENTS.value], case_sensitive=False),
    default=MleInit.ELEMENTAL.value,
)
@click.option("--max-iter", type=click.IntRange(min=1), default=MleOptions().max_iter)
@click.option("--tol", type=float, default=MleOptions().tol)
def mle(input_path: str, init: str, max_iter: int, tol: float, **kwargs: Any) -> None:
    """Fit (mu, sigma, xi) by maximum likelihood."""
    cli_config, config = _get_config(**kwargs)
    if not Path(input_path).is_file():
        raise InputDataError(f"input file {input_path} does not exist")
    raw = _read_sample_file(input_path)
    if len(raw) < MIN_SAMPLE_SIZE:
        raise InputDataError(f"need N ≥ {MIN_SAMPLE_SIZE}, got N = {len(raw)}")
    options = MleOptions(init=init, max_iter=max_iter, tol=tol)
    result = fit_mle(order_sample(raw), options)
    row = {
        "mu": result.params.mu,
        "sigma": result.params.sigma,
        "xi": result.params.xi,
        "negloglik": result.negloglik,
        "status": result.status.value,
        "iterations": result.iterations,
        "initial_mu": result.initial.mu,
        "initial_sigma": result.initial.sigma,
        "initial_xi": result.initial.xi,
        "initial_negloglik": result.initial_negloglik,
    }
    metadata = build_metadata(config, operation="mle", input=input_path, **options.model_dump())
    _emit_table(pd.DataFrame([row]), metadata, cli_config, config)


def xi_grid_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Define the xi grid options: an explicit list, or a min/max/step range."""
    f = click.option("--xi-step", type=float, default=1.0, help="Grid step.")(f)
    f = click.option("--xi-max", type=float, default=12.0, help="Largest grid value.")(f)
    f = click.option("--xi-min", type=float, default=-12.0, help="Smallest grid value.")(f)
    return click.option("--xi-grid", default=None, help="Comma-separated xi values.")(f)


@click.command()
@common_options
@harness_options
@xi_grid_options
@click.option("--n", "n", type=click.IntRange(min=MIN_SAMPLE_SIZE), required=True)
@click.option("--weights", multiple=True, help=f"{WEIGHTS_HELP}|all; repeatable.")
@click.option("--family", type=FAMILY_CHOICE, default=Family.GEV.value)
@click.option("--per-elemental", is_flag=True, help="Also report every elemental.")
@click.option(
    "--components",
    is_flag=True,
    help="Also report log(tau), -log(t) and their scaled forms per elemental.",
)
@method_option
@click.option(
    "--relative-to",
    default=None,
    help="Report RMSE ratios against this estimator id instead of the statistics.",
)
def sweep(  # noqa: PLR0913
    n: int,
    weights: tuple[str, ...],
    family: str,
    per_elemental: bool,
    components: bool,
    method: str,
    relative_to: str | None,
    xi_grid: str | None,
    xi_min: float,
    xi_max: float,
    xi_step: float,
    replicates: int | None,
    full: bool,
    seed: int,
    **kwargs: Any,
) -> None:
    """Monte Carlo mean, bias, std and RMSE per xi and estimator."""
    cli_config, config = _get_config(**kwargs)
    cfg = SweepConfig(
        n=n,
        xi_grid=_xi_grid(xi_grid, xi_min, xi_max, xi_step),
        replicates=_replicates(replicates, full),
        schemes=_parse_schemes(weights),
        family=family,
        seed=RngSpec(seed=seed),
        per_elemental=per_elemental,
        components=components,
        method=method,
    )
    result = run_sweep(cfg, config)
    table = result.table
    metadata = dict(result.metadata)
    if relative_to is not None:
        table = relative_efficiency(result, result, reference_id=relative_to)
        metadata["relative_to"] = relative_to
    _emit_table(table, metadata, cli_config, config)


@click.command()
@common_options
@harness_options
@click.option("--n-list", default="10,40,160", help="Comma-separated sample sizes.")
@click.option("--xi-list", default=DEFAULT_CONSISTENCY_XI, help="Comma-separated xi values.")
@click.option("--weights", default=WeightScheme.of("nj1").label, help=WEIGHTS_HELP)
@click.option("--family", type=FAMILY_CHOICE, default=Family.GEV.value)
def consistency(  # noqa: PLR0913
    n_list: str,
    xi_list: str,
    weights: str,
    family: str,
    replicates: int | None,
    full: bool,
    seed: int,
    **kwargs: Any,
) -> None:
    """RMSE against sample size, with the abscissa 1 - sqrt(2/N)."""
    cli_config, config = _get_config(**kwargs)
    sizes = _parse_ints(n_list, "n_list")
    xis = _parse_floats(xi_list, "xi_list")
    count = _replicates(replicates, full)
    scheme = parse_scheme(weights)
    rng = RngSpec(seed=seed)
    table = run_consistency(sizes, xis, count, scheme, rng, family, config)
    metadata = build_metadata(
        config,
        rng,
        operation="consistency",
        n_list=list(sizes),
        xi_list=list(xis),
        replicates=count,
        weights=scheme.label,
        family=family,
    )
    _emit_table(table, metadata, cli_config, config)


@click.command()
@common_options
@click.option("--points", type=click.IntRange(min=2), default=199, help="Grid points in (-1, 1).")
@click.option("--limit", type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.99)
@click.option("--with-mle", is_flag=True, help="Also fit the likelihood at each point.")
def midpoint(points: int, limit: float, with_mle: bool, **kwargs: Any) -> None:
    """Estimates for the sample [1, x_mid, -1] with x_mid on a grid over [-limit, limit]."""
    cli_config, config = _get_config(**kwargs)
    grid = tuple(float(x) for x in np.linspace(-limit, limit, points))
    table = run_midpoint_study(grid, with_mle=with_mle)
    metadata = build_metadata(config, operation="midpoint", points=points, limit=limit)
    _emit_table(table, metadata, cli_config, config)


@click.command(name="idealized-study")
@common_options
@xi_grid_options
@click.option("--n-list", default="3,7,31", help="Comma-separated sample sizes.")
@click.option("--weights", default=WeightScheme().label, help=WEIGHTS_HELP)
def idealized_study(  # noqa: PLR0913
    n_list: str,
    weights: str,
    xi_grid: str | None,
    xi_min: float,
    xi_max: float,
    xi_step: float,
    **kwargs: Any,
) -> None:
    """Combined estimates of idealised samples against the nominal xi."""
    cli_config, config = _get_config(**kwargs)
    sizes = _parse_ints(n_list, "n_list")
    grid = _xi_grid(xi_grid, xi_min, xi_max, xi_step)
    scheme = parse_scheme(weights)
    table = run_idealized_study(sizes, grid, scheme, config)
    metadata = build_metadata(
        config,
        operation="idealized-study",
        n_list=list(sizes),
        xi_grid=list(grid),
        weights=scheme.label,
    )
    _emit_table(table, metadata, cli_config, config)


@click.command(name="mle-compare")
@common_options
@harness_options
@click.option("--n", "n", type=click.IntRange(min=MIN_SAMPLE_SIZE), default=7)
@click.option("--xi-min", type=float, default=-10.0, help="Lower end of the uniform xi range.")
@click.option("--xi-max", type=float, default=10.0, help="Upper end of the uniform xi range.")
@click.option("--weights", default=WeightScheme().label, help=WEIGHTS_HELP)
@click.option(
    "--init",
    type=click.Choice([MleInit.ELEMENTAL.value, MleInit.MOMENTS.value], case_sensitive=False),
    default=MleInit.ELEMENTAL.value,
)
def mle_compare(  # noqa: PLR0913
    n: int,
    xi_min: float,
    xi_max: float,
    weights: str,
    init: str,
    replicates: int | None,
    full: bool,
    seed: int,
    **kwargs: Any,
) -> None:
    """Per-replicate elemental and likelihood estimates with xi drawn uniformly."""
    cli_config, config = _get_config(**kwargs)
    count = _replicates(replicates, full, quick=1_000)
    rng = RngSpec(seed=seed)
    scheme = parse_scheme(weights)
    cfg = SweepConfig(n=n, replicates=count, schemes=(scheme,), seed=rng)
    table = compare_mle(cfg, (xi_min, xi_max), MleOptions(init=init), config)
    metadata = build_metadata(
        config,
        rng,
        operation="mle-compare",
        n=n,
        replicates=count,
        xi_range=[xi_min, xi_max],
        weights=scheme.label,
        init=init,
    )
    logger().info(f"mle-compare wrote {len(table)} rows")
    _emit_table(table, metadata, cli_config, config)


cli.add_command(version)
cli.add_command(coeffs)
cli.add_command(estimate)
cli.add_command(sample)
cli.add_command(idealized)
cli.add_command(mle)
cli.add_command(sweep)
cli.add_command(consistency)
cli.add_command(midpoint)
cli.add_command(idealized_study)
cli.add_command(mle_compare)

if __name__ == "__main__":
    cli(obj={})
