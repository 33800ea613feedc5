"""Special subspaces from induced filtrations, up to Weyl conjugation."""

import logging
from dataclasses import dataclass

from app.dktype.grading import (
    AmbientGroup,
    GradingElement,
    IfdSpec,
    ifd_to_grading,
    ifiltration_pieces,
)
from app.exactla.linalg import dot
from app.pvscore.instance import PvsInstance, WeightSubspace
from app.pvscore.regularity import MinsetStatus, SamplingPlan, minset_certify
from app.pvscore.special import SpecialReport, is_special
from app.rootsys.datum import ParabolicIndex
from app.rootsys.weyl import WeylElement, weyl_orbit
from app.utils.errors import AmbiguityError, InvariantViolation, NotFound
from app.utils.types import Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class StandardizedFiltration:
    """
    Weyl element moving the filtration to standard position and its U.

    Attributes:
        w (WeylElement): Shortest element with w(h~) = point.
        point (Vector): G-dominant conjugate of h~.
        subspace (WeightSubspace): U = w F~_2 meet V.
        report (SpecialReport): Special pipeline verdict on U.
    """

    w: WeylElement
    point: Vector
    subspace: WeightSubspace
    report: SpecialReport


def _filtered_subspace(target: PvsInstance, y: Vector) -> WeightSubspace:
    members = (
        j for j, beta in enumerate(target.psi_v) if dot(beta, y) >= 2
    )
    return WeightSubspace(target, frozenset(members))


def _filtration_stabilizer(
    target: PvsInstance, y: Vector
) -> ParabolicIndex:
    """Stab of the filtration of y intersected with G."""
    return ParabolicIndex.of(
        i for i in target.g_simple if dot(target.datum.simple_roots[i], y) == 0
    )


def _confirm(
    target: PvsInstance,
    w: WeylElement,
    y: Vector,
    subspace: WeightSubspace,
    plan: SamplingPlan | None,
) -> StandardizedFiltration:
    report = is_special(subspace, plan)
    if not report.special:
        raise InvariantViolation(
            f"{subspace.one_based()} from the filtration is not special"
        )
    expected = _filtration_stabilizer(target, y)
    if report.stab != expected:
        raise InvariantViolation(
            f"Stab {report.stab} differs from the filtration's {expected}"
        )
    return StandardizedFiltration(w, y, subspace, report)


def standardize_ifiltration(
    target: PvsInstance,
    grading: GradingElement,
    plan: SamplingPlan | None = None,
) -> StandardizedFiltration:
    """
    Conjugate an I-filtration so that it meets V in a special subspace.

    Every G-dominant point y of the Weyl orbit of h~ gives the candidate
    {beta in Psi_V : <beta, y> >= 2}; candidates in Minset(V) must agree.

    Args:
        target (PvsInstance): DK instance of the orbit.
        grading (GradingElement): h~ of the I-filtration.
        plan (SamplingPlan | None): Regularity sampling knobs.

    Returns:
        StandardizedFiltration: The shortest passing w and its U.

    Raises:
        NotFound: If no conjugate meets the regular set.
        AmbiguityError: If passing conjugates give different subspaces.
        InvariantViolation: If U is not special or its stabilizer differs.
    """
    ifiltration_pieces(target.datum, grading)
    datum = target.datum
    orbit = weyl_orbit(datum, grading.h)
    dominant = sorted(
        (
            (w, y)
            for y, w in orbit.items()
            if all(dot(datum.simple_roots[i], y) >= 0 for i in target.g_simple)
        ),
        key=lambda pair: (pair[0].length, pair[0].word),
    )
    lgr.debug(f"{len(orbit)} conjugates, {len(dominant)} G-dominant")

    passing = []
    undecided = 0
    for w, y in dominant:
        subspace = _filtered_subspace(target, y)
        if not subspace.members:
            continue
        status = minset_certify(subspace, plan)
        if status is MinsetStatus.CERTIFIED:
            passing.append((w, y, subspace))
        elif status is MinsetStatus.UNKNOWN:
            undecided += 1
    if not passing:
        raise NotFound(
            f"No conjugate of h~ = {list(grading.h)} meets the regular set"
            + (f" ({undecided} undecided)" if undecided else "")
        )
    distinct = {s.members for _, _, s in passing}
    if len(distinct) > 1:
        raise AmbiguityError(
            f"{len(distinct)} distinct subspaces from one filtration"
        )
    w, y, subspace = passing[0]
    lgr.info(
        f"Filtration standardized by w = {w.one_based_word()}, "
        f"U = {subspace.one_based()}"
    )
    return _confirm(target, w, y, subspace, plan)


def ifd_special(
    target: PvsInstance,
    ifd: IfdSpec,
    plan: SamplingPlan | None = None,
) -> StandardizedFiltration:
    """Special subspace attached to an induced filtration datum."""
    group = AmbientGroup(target.datum, target.datum.type_label)
    return standardize_ifiltration(target, ifd_to_grading(group, ifd), plan)


def richardson_special(
    target: PvsInstance,
    q_subset: ParabolicIndex,
    plan: SamplingPlan | None = None,
    standardize: bool = True,
) -> StandardizedFiltration:
    """
    Special subspace V meet n_Q' for the Richardson datum of Q.

    By default the filtration of Q is standardized first, so Q' is a Weyl
    conjugate of Q and the result is special whenever some conjugate meets
    the regular set. With `standardize=False` the nilradical of Q itself
    is intersected with V, without Weyl conjugation. These differ on the
    GL chain (1,2,3,2,1) with Q of type (3,2,2,1,1): V meet n_Q is not in
    Minset(V) and only the unconjugated call raises NotFound.

    Raises:
        NotFound: If the intersection misses the regular set (for
            `standardize=False`) or no conjugate meets it.
    """
    ifd = IfdSpec(q_subset)
    if standardize:
        return ifd_special(target, ifd, plan)
    group = AmbientGroup(target.datum, target.datum.type_label)
    grading = ifd_to_grading(group, ifd)
    subspace = _filtered_subspace(target, grading.h)
    if minset_certify(subspace, plan) is not MinsetStatus.CERTIFIED:
        raise NotFound(
            f"V meet n_Q = {subspace.one_based()} is not in Minset(V)"
        )
    identity = WeylElement.identity(target.datum)
    return _confirm(target, identity, grading.h, subspace, plan)
