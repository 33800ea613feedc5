"""Analysis pipeline behind the command-line front end."""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from app.cli.schemas import (
    ComponentEntry,
    ConvergenceEntry,
    ExceptionalEntry,
    IfdEntry,
    InstanceEcho,
    Report,
    SubspaceEntry,
)
from app.config import TOOL_VERSION
from app.dktype.grading import IfdSpec
from app.dktype.standardize import ifd_special
from app.pvscore.cfdecomp import cf_decompose
from app.pvscore.convergence import (
    convergence_certificate,
    mu_from_coefficients,
)
from app.pvscore.exceptional import is_exceptional
from app.pvscore.gauge import env_star, lambda_of
from app.pvscore.instance import PvsInstance
from app.pvscore.regularity import SamplingPlan
from app.pvscore.special import SpecialReport, enumerate_spcl, hasse_edges
from app.utils.errors import ExceptionalStatusUnknown, NotFound
from app.utils.serialization import serialize
from app.utils.types import Vector

lgr = logging.getLogger(__name__)


@dataclass
class AnalysisOptions:
    """
    Knobs of one analysis run.

    Attributes:
        plan (SamplingPlan): Regularity sampling.
        mu (list[list[Fraction]]): Coefficient lists over Sigma, one per
            mu; a single coefficient multiplies the sum of Sigma.
        max_weights (int | None): Weight cap, config default when None.
        jobs (int | None): Worker processes, config default when None.
        timings (bool): Put phase timings into the report.
    """

    plan: SamplingPlan
    mu: list[list[Fraction]] = field(default_factory=list)
    max_weights: int | None = None
    jobs: int | None = None
    timings: bool = False


class Stopwatch:
    """Wall-clock seconds per named phase."""

    def __init__(self) -> None:
        self.laps: dict[str, float] = {}

    @contextmanager
    def lap(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.laps[name] = round(time.perf_counter() - start, 4)


def resolve_mu(
    inst: PvsInstance, coefficients: Sequence[Sequence[Fraction]]
) -> list[Vector]:
    """
    Characters mu from coefficient lists over Sigma.

    Raises:
        InvalidMu: If a list has the wrong length or a nonpositive entry.
    """
    if not coefficients:
        return [mu_from_coefficients(inst)]
    out = []
    for coeffs in coefficients:
        if len(coeffs) == 1 and len(inst.fund_chars) > 1:
            coeffs = [coeffs[0]] * len(inst.fund_chars)
        out.append(mu_from_coefficients(inst, coeffs))
    return out


def echo_instance(inst: PvsInstance) -> InstanceEcho:
    return InstanceEcho(
        name=inst.name,
        root_datum=inst.datum.type_label,
        g_simple=inst.g_simple.one_based(),
        grading=list(inst.grading) if inst.grading is not None else None,
        psi_v=[list(beta) for beta in inst.psi_v],
        multiplicities=list(inst.multiplicities),
        fund_chars=[list(chi) for chi in inst.fund_chars],
        oracle=inst.oracle.kind if inst.oracle is not None else None,
    )


def subspace_entry(report: SpecialReport) -> SubspaceEntry:
    """Report line of one subspace with Env(U) * U when Env is known."""
    subspace = report.subspace
    inst = subspace.instance
    hull = None
    if report.env is not None:
        hull = env_star(subspace, report.env).one_based()
    matching = []
    if report.matching is not None:
        matching = [(j + 1, list(a)) for j, a in report.matching.pairs]
    return SubspaceEntry(
        members=subspace.one_based(),
        codim=subspace.codim,
        special=report.special,
        minset=report.minset_status.value if report.minset_status else None,
        stab=report.stab.one_based() if report.stab is not None else None,
        stab_pattern=inst.g_pattern(report.stab),
        env=report.env.one_based() if report.env is not None else None,
        env_pattern=inst.g_pattern(report.env),
        env_star=hull,
        lam=list(lambda_of(subspace)),
        matching=matching,
        lambda_identity=report.lambda_identity_checked,
        reason=report.reason,
    )


def exceptional_entry(
    position: int, report: SpecialReport, plan: SamplingPlan
) -> ExceptionalEntry:
    """Exceptional status of one special subspace, never raising."""
    try:
        witness = is_exceptional(report.subspace, plan)
    except ExceptionalStatusUnknown as e:
        lgr.warning(str(e))
        return ExceptionalEntry(subspace=position, status="unknown")
    if witness is None:
        return ExceptionalEntry(subspace=position, status="not exceptional")
    return ExceptionalEntry(
        subspace=position,
        status="exceptional",
        partner=witness.one_based(),
        kernel_vector=list(witness.kernel_vector),
    )


def ifd_entry(
    inst: PvsInstance, ifd: IfdSpec, plan: SamplingPlan
) -> IfdEntry:
    """Standardization of one filtration datum; NotFound is a verdict."""
    entry = IfdEntry(
        label=ifd.label,
        q=ifd.q_subset.one_based(),
        levi_labels=list(ifd.levi_labels),
        verdict="not found",
    )
    try:
        result = ifd_special(inst, ifd, plan)
    except NotFound as e:
        lgr.info(f"{ifd.label or entry.q}: {e}")
        return entry.model_copy(update={"message": str(e)})
    stab = result.report.stab
    return entry.model_copy(
        update={
            "verdict": "found",
            "w": result.w.one_based_word(),
            "point": list(result.point),
            "subspace": result.subspace.one_based(),
            "stab": stab.one_based() if stab is not None else None,
        }
    )


def convergence_entries(
    inst: PvsInstance,
    special: list[tuple[int, SpecialReport]],
    coefficients: Sequence[Sequence[Fraction]],
) -> list[ConvergenceEntry]:
    """Certificates for every special subspace and every mu."""
    if not inst.fund_chars:
        lgr.warning(f"{inst.name}: no fundamental characters, no mu")
        return []
    out = []
    for mu in resolve_mu(inst, coefficients):
        for k, r in special:
            cert = convergence_certificate(r.subspace, mu)
            witness = cert.witness
            out.append(
                ConvergenceEntry(
                    subspace=k,
                    mu=list(cert.mu),
                    functional=list(cert.functional),
                    positive=cert.positive,
                    witness=list(witness) if witness is not None else None,
                    ell=[list(v) for v in cert.ell],
                )
            )
    return out


def analyze_instance(
    inst: PvsInstance,
    options: AnalysisOptions,
    ifds: Sequence[IfdSpec] = (),
) -> Report:
    """
    Run the whole analysis of an instance.

    Covers components, Spcl(V) with its Hasse diagram, exceptional pairs,
    convergence certificates and the filtration data of the file.

    Args:
        inst (PvsInstance): Instance.
        options (AnalysisOptions): Run knobs.
        ifds (Sequence[IfdSpec]): Filtration data to standardize.

    Returns:
        Report: Deterministic for fixed input, seed and version.

    Raises:
        CapExceeded: If V has too many weights.
        InvalidMu: On bad mu coefficients.
        InvariantViolation: If a theoretical identity fails.
    """
    watch = Stopwatch()
    plan = options.plan
    with watch.lap("spcl"):
        reports = enumerate_spcl(
            inst,
            plan,
            jobs=options.jobs,
            max_weights=options.max_weights,
            include_unknown=True,
        )
    special = [(k + 1, r) for k, r in enumerate(reports) if r.special]

    with watch.lap("components"):
        cf = cf_decompose(inst, reports)

    with watch.lap("entries"):
        entries = [subspace_entry(r) for r in reports]
        edges = hasse_edges([r.subspace for _, r in special])
        hasse = [(special[i][0], special[j][0]) for i, j in edges]

    with watch.lap("exceptional"):
        exceptional = [exceptional_entry(k, r, plan) for k, r in special]

    with watch.lap("convergence"):
        convergence = convergence_entries(inst, special, options.mu)

    with watch.lap("ifd"):
        ifd = [ifd_entry(inst, spec, plan) for spec in ifds]

    lgr.info(
        f"{inst.name}: {len(special)} special, "
        f"{sum(1 for e in exceptional if e.status == 'exceptional')} "
        f"exceptional, {len(ifd)} filtration data"
    )
    return Report(
        tool_version=TOOL_VERSION,
        seed=plan.seed,
        instance=echo_instance(inst),
        components=[
            ComponentEntry(
                members=sorted(j + 1 for j in comp),
                central_character=list(omega),
            )
            for comp, omega in zip(cf.components, cf.central_characters)
        ],
        characters_independent=cf.independent,
        simple_case=cf.simple_case,
        spcl=entries,
        hasse=hasse,
        exceptional=exceptional,
        convergence=convergence,
        ifd=ifd,
        timings=watch.laps if options.timings else None,
    )


def ifd_report(
    inst: PvsInstance, ifds: Sequence[IfdSpec], plan: SamplingPlan
) -> Report:
    """Report with only the standardization verdicts."""
    return Report(
        tool_version=TOOL_VERSION,
        seed=plan.seed,
        instance=echo_instance(inst),
        ifd=[ifd_entry(inst, spec, plan) for spec in ifds],
    )


def report_bytes(report: Report) -> bytes:
    """Stable json bytes; timings appear only when they were asked for."""
    data = report.model_dump(mode="json")
    if data["timings"] is None:
        del data["timings"]
    return serialize(data)

