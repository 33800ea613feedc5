"""PVS instances and weight-coordinate subspaces."""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from app.exactla.linalg import (
    dot,
    in_span,
    is_zero,
    kernel_basis,
    rank_of_span,
    vector_sum,
)
from app.relinv.oracle import OracleSpec, frip_plan, frip_weight
from app.rootsys.datum import (
    ParabolicIndex,
    ParabolicRoots,
    RootDatum,
    positive_roots_of,
)
from app.utils.errors import InstanceError
from app.utils.types import IndexSet, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class PvsInstance:
    """
    Prehomogeneous vector space given by weight data.

    Attributes:
        datum (RootDatum): Ambient torus context and its roots.
        g_simple (ParabolicIndex): Simple roots of G among those of datum.
        psi_v (tuple[Vector, ...]): Distinct weights of V.
        multiplicities (tuple[int, ...]): n_beta per weight.
        xstar_g (tuple[Vector, ...]): Generators of X*(G) (rationally).
        fund_chars (tuple[Vector, ...]): Fundamental characters.
        oracle (OracleSpec | None): Regularity oracle bound to psi_v.
        name (str): Label used in reports.
        components (tuple[IndexSet, ...] | None): Declared irreducible
            components (weight indices), inferred when None.
        grading (tuple[int, ...] | None): Labels <alpha_i, h> when built
            from a grading element.
    """

    datum: RootDatum
    g_simple: ParabolicIndex
    psi_v: tuple[Vector, ...]
    multiplicities: tuple[int, ...]
    xstar_g: tuple[Vector, ...]
    fund_chars: tuple[Vector, ...] = ()
    oracle: OracleSpec | None = field(default=None, repr=False)
    name: str = ""
    components: tuple[IndexSet, ...] | None = None
    grading: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        validate_instance(self)

    @property
    def dim(self) -> int:
        return self.datum.ambient_dim

    @property
    def n_weights(self) -> int:
        return len(self.psi_v)

    @cached_property
    def parabolic_g(self) -> ParabolicRoots:
        return positive_roots_of(self.g_simple, self.datum)

    @cached_property
    def phi_g_plus(self) -> tuple[Vector, ...]:
        """Positive roots of G."""
        return self.parabolic_g.levi

    @cached_property
    def phi_g(self) -> tuple[Vector, ...]:
        """All roots of G."""
        negatives = tuple(tuple(-a for a in r) for r in self.phi_g_plus)
        return self.phi_g_plus + negatives

    @cached_property
    def simple_g(self) -> tuple[Vector, ...]:
        """Delta_0^G in ambient index order."""
        return tuple(self.datum.simple_roots[i] for i in self.g_simple)

    @cached_property
    def delta0(self) -> Vector:
        return vector_sum(self.phi_g_plus, self.dim)

    @cached_property
    def delta_v(self) -> Vector:
        return vector_sum(
            (
                tuple(n * a for a in beta)
                for beta, n in zip(self.psi_v, self.multiplicities)
            ),
            self.dim,
        )

    @cached_property
    def weight_index(self) -> dict[Vector, int]:
        return {beta: i for i, beta in enumerate(self.psi_v)}

    def levi_roots(self, stab: ParabolicIndex) -> ParabolicRoots:
        """Levi and nilradical roots of a standard parabolic of G."""
        if not stab.issubset(self.g_simple):
            raise InstanceError(f"{stab} is not a parabolic of G")
        return positive_roots_of(stab, self.datum)

    def nilradical_in_g(self, stab: ParabolicIndex) -> tuple[Vector, ...]:
        """Positive roots of G outside the Levi of stab."""
        levi = set(self.levi_roots(stab).levi)
        return tuple(r for r in self.phi_g_plus if r not in levi)

    def subspace(self, members: Iterable[int]) -> "WeightSubspace":
        return WeightSubspace(self, frozenset(members))

    def whole(self) -> "WeightSubspace":
        return WeightSubspace(self, frozenset(range(self.n_weights)))

    def g_pattern(self, stab: ParabolicIndex | None) -> str:
        """Star pattern of a parabolic over the simple roots of G."""
        if stab is None:
            return "-"
        return stab.pattern(list(self.g_simple))


def validate_instance(inst: PvsInstance) -> None:
    """
    Check the consistency conditions of an instance.

    Raises:
        InstanceError: On any violated condition.
    """
    dim = inst.datum.ambient_dim
    if any(i < 0 or i >= inst.datum.rank for i in inst.g_simple.subset):
        raise InstanceError("g_simple names a nonexistent simple root")
    for group, vectors in (
        ("psi_v", inst.psi_v),
        ("xstar_g", inst.xstar_g),
        ("fund_chars", inst.fund_chars),
    ):
        for v in vectors:
            if len(v) != dim:
                raise InstanceError(
                    f"{group}: vector of length {len(v)}, expected {dim}"
                )
    if len(set(inst.psi_v)) != len(inst.psi_v):
        raise InstanceError("psi_v contains repeated weights")
    if len(inst.multiplicities) != len(inst.psi_v):
        raise InstanceError("One multiplicity per weight expected")
    if any(n < 1 for n in inst.multiplicities):
        raise InstanceError("Multiplicities must be positive")

    coroots = [inst.datum.simple_coroots[i] for i in inst.g_simple]
    for chi in inst.xstar_g:
        if any(dot(chi, c) != 0 for c in coroots):
            raise InstanceError(f"X*(G) generator {chi} pairs with a coroot")
    for chi in inst.fund_chars:
        if not in_span(chi, inst.xstar_g):
            raise InstanceError(f"Fundamental character {chi} not in X*(G)")
    simple = [inst.datum.simple_roots[i] for i in inst.g_simple]
    if not is_zero(inst.delta_v) and not in_span(
        inst.delta_v, [*inst.xstar_g, *simple]
    ):
        raise InstanceError("delta_V is outside X*(G) + span of roots of G")

    if inst.oracle is not None:
        if inst.oracle.n_slots != len(inst.psi_v):
            raise InstanceError(
                f"Oracle layout has {inst.oracle.n_slots} slots for "
                f"{len(inst.psi_v)} weights"
            )
        for i, (slot, n) in enumerate(
            zip(inst.oracle.positions, inst.multiplicities)
        ):
            if len(slot) != n:
                raise InstanceError(
                    f"Weight {i} has multiplicity {n}, oracle gives "
                    f"{len(slot)} positions"
                )
    if inst.components is not None:
        covered = [i for comp in inst.components for i in comp]
        if any(i < 0 or i >= len(inst.psi_v) for i in covered):
            raise InstanceError("Component names a nonexistent weight")


def x_star_of(
    datum: RootDatum, g_simple: ParabolicIndex
) -> tuple[Vector, ...]:
    """Basis of characters vanishing on the coroots of Delta_0^G."""
    coroots = [datum.simple_coroots[i] for i in g_simple]
    return tuple(kernel_basis(coroots, datum.ambient_dim))


def with_oracle_characters(inst: PvsInstance) -> PvsInstance:
    """
    Fill empty fundamental characters from the FRIP weights of the oracle.

    Returns:
        PvsInstance: The same instance when nothing can be filled.
    """
    if inst.fund_chars or inst.oracle is None:
        return inst
    bound = inst.oracle.bind(inst.psi_v)
    chars = tuple(frip_weight(bound, i) for i in range(len(frip_plan(bound))))
    lgr.info(f"{inst.name}: fundamental characters from oracle {chars}")
    return replace(inst, fund_chars=chars, oracle=bound)


def bind_oracle(inst: PvsInstance) -> PvsInstance:
    """Attach instance weights to the oracle when it has none."""
    if inst.oracle is None or inst.oracle.weights:
        return inst
    return replace(inst, oracle=inst.oracle.bind(inst.psi_v))


@dataclass(frozen=True)
class WeightSubspace:
    """Subspace U spanned by the weight spaces of its members."""

    instance: PvsInstance = field(compare=False, repr=False)
    members: IndexSet

    def __post_init__(self) -> None:
        if any(i < 0 or i >= self.instance.n_weights for i in self.members):
            raise InstanceError(f"Subspace members {set(self.members)}")

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.instance.n_weights

    @property
    def complement(self) -> IndexSet:
        """J_{V/U}: weights of V outside U."""
        return frozenset(range(self.instance.n_weights)) - self.members

    @property
    def weights(self) -> tuple[Vector, ...]:
        return tuple(self.instance.psi_v[i] for i in sorted(self.members))

    @property
    def weight_set(self) -> frozenset[Vector]:
        return frozenset(self.instance.psi_v[i] for i in self.members)

    @property
    def codim(self) -> int:
        """dim V/U counted with multiplicities."""
        return sum(self.instance.multiplicities[j] for j in self.complement)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Larger subspaces first, then lexicographic members."""
        return -len(self.members), tuple(sorted(self.members))

    def one_based(self) -> list[int]:
        return [i + 1 for i in sorted(self.members)]

    def intersection(self, other: "WeightSubspace") -> "WeightSubspace":
        return WeightSubspace(self.instance, self.members & other.members)


def weights_rank(vectors: Iterable[Vector], dim: int) -> int:
    return rank_of_span(list(vectors), dim)


def fraction_vector(values: Iterable[int | Fraction]) -> Vector:
    return tuple(Fraction(a) for a in values)
