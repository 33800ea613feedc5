"""Grading elements, DK-type instances and the filtrations they define."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from app.exactla.linalg import dot, solve_particular
from app.pvscore.instance import PvsInstance, x_star_of
from app.rootsys.datum import ParabolicIndex, RootDatum, build_root_datum
from app.utils.errors import GradingError
from app.utils.types import Numeric, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class AmbientGroup:
    """Split group G' given by its root datum."""

    datum: RootDatum
    label: str

    @classmethod
    def of(cls, spec: str) -> "AmbientGroup":
        datum = build_root_datum(spec)
        return cls(datum, datum.type_label)


@dataclass(frozen=True)
class GradingElement:
    """Cocharacter h with integral values on every root."""

    h: Vector

    @classmethod
    def from_labels(
        cls, datum: RootDatum, labels: Sequence[Numeric]
    ) -> "GradingElement":
        """
        Grading element with <alpha_i, h> = labels[i].

        Raises:
            GradingError: If the labels do not fit the datum.
        """
        if len(labels) != datum.rank:
            raise GradingError(
                f"{len(labels)} labels for rank {datum.rank}"
            )
        if any(Fraction(a).denominator != 1 for a in labels):
            raise GradingError(f"Labels {list(labels)} are not integral")
        h = solve_particular(datum.simple_roots, labels, datum.ambient_dim)
        if h is None:
            raise GradingError(f"No cocharacter has labels {list(labels)}")
        return cls(h)

    def value(self, chi: Sequence[Numeric]) -> Fraction:
        return dot(chi, self.h)

    def labels(self, datum: RootDatum) -> tuple[int, ...]:
        """Values on the simple roots (weighted Dynkin diagram)."""
        values = [self.value(a) for a in datum.simple_roots]
        if any(v.denominator != 1 for v in values):
            raise GradingError(f"h = {self.h} is not integral on the roots")
        return tuple(int(v) for v in values)

    def is_dominant(self, datum: RootDatum) -> bool:
        return all(v >= 0 for v in self.labels(datum))


@dataclass(frozen=True)
class IfdSpec:
    """
    Induced filtration datum: parabolic Q and a Levi grading.

    `levi_labels` gives <alpha_i, h_L> for the simple roots of Q in
    increasing index order; off Q the grading is 2.
    """

    q_subset: ParabolicIndex
    levi_labels: tuple[int, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        if self.levi_labels and len(self.levi_labels) != len(self.q_subset):
            raise GradingError(
                f"{len(self.levi_labels)} Levi labels for a Levi of rank "
                f"{len(self.q_subset)}"
            )
        if any(a < 0 for a in self.levi_labels):
            raise GradingError("Levi grading must be dominant")

    def labels(self, rank: int) -> list[int]:
        levi = dict(zip(self.q_subset, self.levi_labels))
        return [
            levi.get(i, 0) if i in self.q_subset else 2 for i in range(rank)
        ]


def ifd_to_grading(group: AmbientGroup, ifd: IfdSpec) -> GradingElement:
    """
    Grading of the I-filtration: h_L on Q and 2 off Q.

    Raises:
        GradingError: If Q names a nonexistent simple root.
    """
    rank = group.datum.rank
    if any(i < 0 or i >= rank for i in ifd.q_subset.subset):
        raise GradingError(f"Q = {ifd.q_subset.one_based()} outside G'")
    return GradingElement.from_labels(group.datum, ifd.labels(rank))


@dataclass(frozen=True)
class Filtration:
    """Root filtration F_i = {alpha : <alpha, h> >= i}."""

    datum: RootDatum
    grading: GradingElement

    @cached_property
    def values(self) -> dict[Vector, int]:
        out = {}
        for root in self.datum.roots:
            v = self.grading.value(root)
            if v.denominator != 1:
                raise GradingError(f"<{root}, h> = {v} is not integral")
            out[root] = int(v)
        return out

    def piece(self, i: int) -> frozenset[Vector]:
        return frozenset(r for r, v in self.values.items() if v >= i)

    def graded(self, i: int) -> frozenset[Vector]:
        return frozenset(r for r, v in self.values.items() if v == i)

    @property
    def odd_part_empty(self) -> bool:
        return all(v % 2 == 0 for v in self.values.values())

    def brackets_closed(self) -> bool:
        """[F_i, F_j] in F_(i+j) on root sums."""
        for a, va in self.values.items():
            for b, vb in self.values.items():
                s = tuple(x + y for x, y in zip(a, b))
                if s in self.values and self.values[s] < va + vb:
                    return False
        return True


def ifiltration_pieces(
    datum: RootDatum, grading: GradingElement
) -> Filtration:
    """
    Filtration of the roots by the grading.

    Raises:
        GradingError: If the grading is not integral or breaks brackets.
    """
    filtration = Filtration(datum, grading)
    if not filtration.brackets_closed():
        raise GradingError(f"Grading {grading.h} breaks bracket closure")
    return filtration


def build_dk_pvs(
    group: AmbientGroup, grading: GradingElement, name: str = ""
) -> PvsInstance:
    """
    PVS of DK-type: G = Levi of the zero labels acting on g'_2.

    Args:
        group (AmbientGroup): G'.
        grading (GradingElement): Dominant h.
        name (str): Instance name.

    Returns:
        PvsInstance: Weights sorted by height, then coefficients, each of
        multiplicity one; no oracle.

    Raises:
        GradingError: If h is not dominant.
    """
    datum = group.datum
    labels = grading.labels(datum)
    if any(v < 0 for v in labels):
        raise GradingError(f"Grading {labels} is not dominant")
    g_simple = ParabolicIndex.of(i for i, v in enumerate(labels) if v == 0)
    psi_v = tuple(r for r in datum.positive_roots if grading.value(r) == 2)
    if not psi_v:
        lgr.warning(f"Grading {labels} of {group.label}: V is empty")
    name = name or f"DK {group.label} {','.join(map(str, labels))}"
    lgr.info(f"{name}: {len(psi_v)} weights, G simple {g_simple.one_based()}")
    return PvsInstance(
        datum=datum,
        g_simple=g_simple,
        psi_v=psi_v,
        multiplicities=(1,) * len(psi_v),
        xstar_g=x_star_of(datum, g_simple),
        name=name,
        grading=labels,
    )
