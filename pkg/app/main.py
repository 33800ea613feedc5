"""The main entrypoint to the command-line analyzer."""

import logging
from contextlib import contextmanager
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

import orjson
import typer
from pydantic import ValidationError

from app.catalog.instances import CATALOG, IFD_CATALOG, build_example
from app.cli.analysis import (
    AnalysisOptions,
    analyze_instance,
    ifd_report,
    report_bytes,
)
from app.cli.loader import (
    build_instance,
    dump_instance_file,
    ifd_specs,
    instance_to_file,
    read_instance_file,
    sampling_plan,
)
from app.cli.render import render_text
from app.cli.schemas import Report
from app.config import TOOL_VERSION, analyzer_config
from app.dktype.grading import AmbientGroup, GradingElement, build_dk_pvs
from app.utils.errors import AnalyzerError, InvariantViolation
from app.utils.types import to_fraction

lgr = logging.getLogger(__name__)

app = typer.Typer(
    add_completion=False,
    no_args_is_help=True,
    help="Special subspaces of prehomogeneous vector spaces.",
)

LOG_FORMAT = (
    "%(lineno)d | %(asctime)s | %(name)s | %(levelname)s | %(message)s"
)


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


def _setup_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else analyzer_config.LOG_LEVEL
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def _version(value: bool) -> None:
    if value:
        typer.echo(TOOL_VERSION)
        raise typer.Exit()


@app.callback()
def main(
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Debug logging."
    ),
    version: bool = typer.Option(
        False,
        "--version",
        callback=_version,
        is_eager=True,
        help="Print the version and exit.",
    ),
) -> None:
    _setup_logging(verbose)


@contextmanager
def guarded() -> Iterator[None]:
    """Turn analyzer failures into messages and exit codes."""
    try:
        yield
    except ValidationError as e:
        for err in e.errors():
            loc = ".".join(str(p) for p in err["loc"]) or "file"
            typer.echo(f"error: {loc}: {err['msg']}", err=True)
        raise typer.Exit(2) from e
    except orjson.JSONDecodeError as e:
        typer.echo(f"error: malformed json: {e}", err=True)
        raise typer.Exit(2) from e
    except InvariantViolation as e:
        lgr.exception("Internal identity failed")
        typer.echo(f"internal error: {e}", err=True)
        raise typer.Exit(e.exit_code) from e
    except AnalyzerError as e:
        typer.echo(f"error: {type(e).__name__}: {e}", err=True)
        raise typer.Exit(e.exit_code) from e


def _ints(raw: str, option: str) -> list[int]:
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError as e:
        raise typer.BadParameter(
            f"integers expected: {raw}", param_hint=option
        ) from e


def _rationals(raw: str) -> list[Fraction]:
    try:
        return [to_fraction(x.strip()) for x in raw.split(",")]
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--mu") from e


def _emit(data: str, out: Path | None) -> None:
    if out is None:
        typer.echo(data, nl=False)
    else:
        out.write_text(data, encoding="utf-8")
        lgr.info(f"Written {out}")


def _render(report: Report, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.TEXT:
        return render_text(report)
    return report_bytes(report).decode()


@app.command()
def analyze(
    path: Path = typer.Argument(..., exists=True, dir_okay=False),
    seed: Optional[int] = typer.Option(None, help="Sampling seed."),
    trials: Optional[int] = typer.Option(
        None, min=1, help="Regularity trials per subspace."
    ),
    heights: Optional[str] = typer.Option(
        None, help="Growing sample heights, e.g. 10,100,1000."
    ),
    mu: list[str] = typer.Option(
        [],
        help="Coefficients of mu over Sigma; repeatable. "
        "One value multiplies the sum of Sigma.",
    ),
    max_weights: Optional[int] = typer.Option(
        None, min=0, help="Refuse instances with more weights."
    ),
    jobs: Optional[int] = typer.Option(None, min=1, help="Worker processes."),
    out: Optional[Path] = typer.Option(None, help="Write the report here."),
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Report format."
    ),
    timings: bool = typer.Option(False, help="Add phase timings."),
) -> None:
    """Enumerate Spcl(V) and analyze every special subspace."""
    plan_heights = _ints(heights, "--heights") if heights else None
    coefficients = [_rationals(raw) for raw in mu]
    with guarded():
        spec = read_instance_file(path)
        inst = build_instance(spec)
        try:
            plan = sampling_plan(spec, seed, trials, plan_heights)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--heights") from e
        options = AnalysisOptions(
            plan=plan,
            mu=coefficients,
            max_weights=(
                max_weights
                if max_weights is not None
                else spec.caps.max_weights
            ),
            jobs=jobs,
            timings=timings,
        )
        report = analyze_instance(
            inst, options, ifd_specs(spec, inst.datum.rank)
        )
    _emit(_render(report, fmt), out)


@app.command()
def dk(
    ambient: str = typer.Argument(..., help="Root datum of G', e.g. F4."),
    labels: str = typer.Argument(..., help="Weighted diagram, e.g. 0,2,0,0."),
    name: str = typer.Option("", help="Instance name."),
    out: Optional[Path] = typer.Option(None, help="Write the file here."),
) -> None:
    """Write the DK-type instance of a weighted Dynkin diagram."""
    values = _ints(labels, "LABELS")
    with guarded():
        group = AmbientGroup.of(ambient)
        grading = GradingElement.from_labels(group.datum, values)
        inst = build_dk_pvs(group, grading, name or f"{ambient} {labels}")
        data = dump_instance_file(instance_to_file(inst))
    _emit(data.decode(), out)


@app.command()
def ifd(
    path: Path = typer.Argument(..., exists=True, dir_okay=False),
    seed: Optional[int] = typer.Option(None, help="Sampling seed."),
    out: Optional[Path] = typer.Option(None, help="Write the report here."),
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Report format."
    ),
) -> None:
    """Standardize the induced filtration data of an instance file."""
    with guarded():
        spec = read_instance_file(path)
        inst = build_instance(spec)
        specs = ifd_specs(spec, inst.datum.rank)
        if not specs:
            lgr.warning(f"{path}: no filtration data")
        report = ifd_report(inst, specs, sampling_plan(spec, seed))
    _emit(_render(report, fmt), out)


@app.command()
def example(
    name: str = typer.Argument(..., help=f"One of: {', '.join(CATALOG)}."),
    out: Optional[Path] = typer.Option(None, help="Write the file here."),
) -> None:
    """Write a catalog instance with its filtration data."""
    with guarded():
        inst = build_example(name)
        ifds = IFD_CATALOG[name]() if name in IFD_CATALOG else []
        data = dump_instance_file(instance_to_file(inst, ifds))
    _emit(data.decode(), out)


if __name__ == "__main__":
    app()
