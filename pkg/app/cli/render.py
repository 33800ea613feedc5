"""Plain-text rendering of reports."""

from io import StringIO
from typing import Sequence

from rich.console import Console
from rich.table import Table

from app.cli.schemas import Report
from app.utils.types import Rational


def _vec(v: Sequence[Rational] | None) -> str:
    if v is None:
        return "-"
    return "(" + ", ".join(str(x) for x in v) + ")"


def _ids(v: Sequence[int] | None) -> str:
    if v is None:
        return "?"
    return "{" + ",".join(str(i) for i in v) + "}"


def _flag(value: bool | None) -> str:
    return {True: "yes", False: "no", None: "?"}[value]


def _instance_table(report: Report) -> Table:
    inst = report.instance
    table = Table(title=f"Instance {inst.name}", show_header=False)
    table.add_column("key")
    table.add_column("value")
    table.add_row("root datum", inst.root_datum)
    table.add_row("G simple roots", _ids(inst.g_simple))
    if inst.grading is not None:
        table.add_row("labels", _vec(inst.grading))
    table.add_row("dim V", str(sum(inst.multiplicities)))
    table.add_row("weights", str(len(inst.psi_v)))
    table.add_row("oracle", inst.oracle.value if inst.oracle else "-")
    table.add_row("seed", str(report.seed))
    table.add_row("independent chars", _flag(report.characters_independent))
    table.add_row("simple case", _flag(report.simple_case))
    for k, comp in enumerate(report.components, start=1):
        table.add_row(
            f"component {k}",
            f"{_ids(comp.members)} omega={_vec(comp.central_character)}",
        )
    return table


def _spcl_table(report: Report) -> Table:
    table = Table(title="Spcl(V)")
    for name in ("#", "members", "codim", "Stab", "Env", "Env*U", "lambda"):
        table.add_column(name)
    for k, e in enumerate(report.spcl, start=1):
        mark = "" if e.special else " ?"
        table.add_row(
            f"{k}{mark}",
            _ids(e.members),
            str(e.codim),
            e.stab_pattern,
            e.env_pattern,
            _ids(e.env_star) if e.env_star is not None else "-",
            _vec(e.lam),
        )
    return table


def _hasse_table(report: Report) -> Table:
    table = Table(title="Hasse diagram")
    table.add_column("covered")
    table.add_column("covering")
    for lo, hi in report.hasse:
        table.add_row(str(lo), str(hi))
    return table


def _exceptional_table(report: Report) -> Table:
    table = Table(title="Exceptional pairs")
    for name in ("#", "status", "partner", "kernel"):
        table.add_column(name)
    for e in report.exceptional:
        table.add_row(
            str(e.subspace),
            e.status,
            _ids(e.partner) if e.partner is not None else "-",
            _vec(e.kernel_vector),
        )
    return table


def _convergence_table(report: Report) -> Table:
    table = Table(title="Convergence")
    for name in ("#", "mu", "functional", "positive", "witness"):
        table.add_column(name)
    for e in report.convergence:
        table.add_row(
            str(e.subspace),
            _vec(e.mu),
            _vec(e.functional),
            _flag(e.positive),
            _vec(e.witness),
        )
    return table


def _ifd_table(report: Report) -> Table:
    table = Table(title="Induced filtration data")
    for name in ("label", "Q", "levi", "verdict", "w", "U"):
        table.add_column(name)
    for e in report.ifd:
        table.add_row(
            e.label or "-",
            _ids(e.q),
            _vec(e.levi_labels),
            e.verdict,
            _vec(e.w),
            _ids(e.subspace) if e.subspace is not None else e.message,
        )
    return table


def render_text(report: Report) -> str:
    """
    Report as boxed text tables.

    Sections without rows are skipped; the instance table is always there.
    """
    console = Console(file=StringIO(), record=True, width=120)
    console.print(_instance_table(report))
    sections = [
        (report.spcl, _spcl_table),
        (report.hasse, _hasse_table),
        (report.exceptional, _exceptional_table),
        (report.convergence, _convergence_table),
        (report.ifd, _ifd_table),
    ]
    for rows, build in sections:
        if rows:
            console.print(build(report))
    if report.timings:
        timings = ", ".join(f"{k}={v}s" for k, v in report.timings.items())
        console.print(f"timings: {timings}", highlight=False)
    return console.export_text()
