"""Exceptional pairs (U, U') from flats of a hyperplane arrangement."""

import logging
from dataclasses import dataclass

from app.exactla.linalg import (
    combine,
    dot,
    in_span,
    kernel_basis,
    primitive,
    rank_of_span,
)
from app.pvscore.closure import stabilizer_of
from app.pvscore.instance import WeightSubspace
from app.pvscore.regularity import MinsetStatus, SamplingPlan, minset_certify
from app.utils.errors import ExceptionalStatusUnknown, InstanceError
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExceptionalWitness:
    """
    Minset subspace U' of U and a cocharacter x killing its weights.

    x lies in the kernel of X*(G) and of the Levi simple roots of Stab(U).
    """

    sub_members: IndexSet
    kernel_vector: Vector

    def one_based(self) -> list[int]:
        return [j + 1 for j in sorted(self.sub_members)]


def _restricted(
    subspace: WeightSubspace, kernel: list[Vector]
) -> dict[int, Vector]:
    """Weights of U as linear forms on the kernel basis."""
    inst = subspace.instance
    return {
        j: tuple(dot(inst.psi_v[j], k) for k in kernel)
        for j in sorted(subspace.members)
    }


def _minimal_flats(
    forms: dict[int, Vector], size: int
) -> list[IndexSet]:
    """
    Vanishing sets of the minimal nonzero flats of the arrangement.

    A flat is given by the weights vanishing on it; it is minimal when no
    further hyperplane cuts it to a nonzero flat.
    """
    seen: set[IndexSet] = set()
    leaves: set[IndexSet] = set()

    def closure(rows: list[Vector]) -> IndexSet:
        return frozenset(j for j, f in forms.items() if in_span(f, rows))

    def visit(vanishing: IndexSet) -> None:
        if vanishing in seen:
            return
        seen.add(vanishing)
        rows = [forms[j] for j in sorted(vanishing)]
        rank = rank_of_span(rows, size) if rows else 0
        deeper = False
        for j, f in forms.items():
            if j in vanishing:
                continue
            cut = rows + [f]
            if size - rank_of_span(cut, size) >= 1:
                deeper = True
                visit(closure(cut))
        if not deeper and size - rank >= 1:
            leaves.add(vanishing)

    visit(closure([]))
    return sorted(leaves, key=lambda t: (-len(t), sorted(t)))


def is_exceptional(
    subspace: WeightSubspace, plan: SamplingPlan | None = None
) -> ExceptionalWitness | None:
    """
    Search an exceptional partner U' of a special subspace.

    U' is a Minset subspace of U whose weights, with X*(G) and the Levi
    roots of Stab(U), fail to span.

    Only the largest U' attached to each minimal flat is tested; Minset is
    closed upward, so smaller candidates cannot succeed where these fail.

    Args:
        subspace (WeightSubspace): Special subspace U.
        plan (SamplingPlan | None): Regularity sampling knobs.

    Returns:
        ExceptionalWitness | None: First certified pair, None if U is not
        exceptional.

    Raises:
        InstanceError: If U is not P0-stable.
        ExceptionalStatusUnknown: If the oracle left candidates undecided.
    """
    inst = subspace.instance
    stab = stabilizer_of(subspace)
    if stab is None:
        raise InstanceError(f"{subspace.one_based()} is not P0-stable")
    spanning = [*inst.xstar_g, *(inst.datum.simple_roots[i] for i in stab)]
    kernel = kernel_basis(spanning, inst.dim)
    if not kernel:
        return None

    forms = _restricted(subspace, kernel)
    undecided = []
    for vanishing in _minimal_flats(forms, len(kernel)):
        candidate = WeightSubspace(inst, vanishing)
        status = minset_certify(candidate, plan)
        lgr.debug(f"Flat {candidate.one_based()}: {status.value}")
        if status is MinsetStatus.CERTIFIED:
            rows = [forms[j] for j in sorted(vanishing)]
            coords = kernel_basis(rows, len(kernel))
            x = primitive(combine(coords[0], kernel))
            return ExceptionalWitness(vanishing, x)
        if status is MinsetStatus.UNKNOWN:
            undecided.append(candidate.one_based())
    if undecided:
        raise ExceptionalStatusUnknown(
            f"Exceptional status of {subspace.one_based()} undecided: "
            f"{undecided}"
        )
    return None
