"""Decomposition of V into irreducible components and their characters."""

import logging
from dataclasses import dataclass, replace

from app.exactla.linalg import dot, kernel_basis, rank_of_span
from app.pvscore.closure import weight_components
from app.pvscore.instance import PvsInstance
from app.pvscore.special import SpecialReport
from app.utils.errors import InstanceError
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class CfReport:
    """
    Components of V with their central characters.

    Attributes:
        components (tuple[IndexSet, ...]): Weight indices per component.
        central_characters (tuple[Vector, ...]): omega_i on a_G.
        independent (bool): The omega_i are linearly independent.
        sub_instances (tuple[PvsInstance, ...]): One per component.
        simple_case (bool | None): Spcl(V) = {V}; None if not computed.
    """

    components: tuple[IndexSet, ...]
    central_characters: tuple[Vector, ...]
    independent: bool
    sub_instances: tuple[PvsInstance, ...]
    simple_case: bool | None = None


def _sub_instance(
    inst: PvsInstance, component: IndexSet, number: int
) -> PvsInstance:
    kept = sorted(component)
    return replace(
        inst,
        psi_v=tuple(inst.psi_v[j] for j in kept),
        multiplicities=tuple(inst.multiplicities[j] for j in kept),
        fund_chars=(),
        oracle=None,
        name=f"{inst.name}[{number}]",
        components=None,
    )


def cf_decompose(
    inst: PvsInstance, spcl: list[SpecialReport] | None = None
) -> CfReport:
    """
    Split V into G-irreducible blocks and check their characters.

    Declared components are validated; otherwise they are inferred as the
    connected blocks of weights under beta ~ beta +- alpha.

    Args:
        inst (PvsInstance): Instance.
        spcl (list[SpecialReport] | None): Special subspaces, to report
            whether V is the only one.

    Returns:
        CfReport: Components, characters and sub-instances.

    Raises:
        InstanceError: If the declared partition is inconsistent.
    """
    everything = set(range(inst.n_weights))
    if inst.components is not None:
        components = sorted(
            (frozenset(c) for c in inst.components), key=lambda c: min(c)
        )
        covered = [j for c in components for j in c]
        if any(not c for c in components):
            raise InstanceError("Empty component in the partition")
        if len(covered) != len(set(covered)) or set(covered) != everything:
            raise InstanceError("Components do not partition the weights")
    else:
        components = weight_components(inst)

    a_g = kernel_basis(list(inst.simple_g), inst.dim)
    omegas = []
    for number, comp in enumerate(components):
        restrictions = {
            tuple(dot(inst.psi_v[j], x) for x in a_g) for j in comp
        }
        if len(restrictions) != 1:
            raise InstanceError(
                f"Component {number + 1} carries several central characters"
            )
        omegas.append(restrictions.pop())

    independent = rank_of_span(omegas, len(a_g)) == len(omegas)
    simple_case = None
    if spcl is not None:
        simple_case = [r.subspace.members for r in spcl if r.special] == [
            frozenset(everything)
        ]
    lgr.info(
        f"{inst.name}: {len(components)} components, characters "
        f"{'independent' if independent else 'dependent'}"
    )
    return CfReport(
        tuple(components),
        tuple(omegas),
        independent,
        tuple(
            _sub_instance(inst, c, n + 1) for n, c in enumerate(components)
        ),
        simple_case,
    )
