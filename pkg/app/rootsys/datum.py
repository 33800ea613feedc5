"""Split root data, parabolic subsets and root bookkeeping."""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from app.exactla.linalg import dot, vector_sum
from app.rootsys.cartan import FactorRealization, realize_factor
from app.utils.errors import InstanceError, UnsupportedType
from app.utils.types import IndexSet, IntVector, Numeric, Vector

lgr = logging.getLogger(__name__)

PRODUCT_RE = re.compile(r"\s*[x×]\s*")


@dataclass(frozen=True)
class ParabolicIndex:
    """Standard parabolic given by a subset of simple root indices."""

    subset: IndexSet = field(default_factory=frozenset)

    @classmethod
    def of(cls, indices: Iterable[int]) -> "ParabolicIndex":
        return cls(frozenset(indices))

    def __contains__(self, index: object) -> bool:
        return index in self.subset

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.subset))

    def __len__(self) -> int:
        return len(self.subset)

    def issubset(self, other: "ParabolicIndex") -> bool:
        return self.subset <= other.subset

    def pattern(self, indices: Sequence[int]) -> str:
        """
        Render the subset as a string of '*' (in) and '0' (out).

        Args:
            indices (Sequence[int]): Simple root indices to print, in order.

        Returns:
            str: Pattern such as "(00*0)".
        """
        marks = "".join("*" if i in self.subset else "0" for i in indices)
        return f"({marks})"

    def one_based(self) -> list[int]:
        return [i + 1 for i in sorted(self.subset)]


@dataclass(frozen=True)
class ParabolicRoots:
    """Positive roots of a standard parabolic split into Levi/nilradical."""

    levi: tuple[Vector, ...]
    nilradical: tuple[Vector, ...]
    delta0_levi: Vector


@dataclass(frozen=True)
class RootDatum:
    """
    Split reductive root datum in fixed ambient coordinates.

    The standard dot product of ambient coordinates is the pairing between
    characters and cocharacters. Simple roots are numbered globally in the
    order of the factors.

    Attributes:
        type_label (str): Normalized spec, e.g. "E6 x T1".
        ambient_dim (int): Dimension of the character lattice.
        simple_roots (tuple[Vector, ...]): Delta_0.
        simple_coroots (tuple[Vector, ...]): Matching coroots.
        cartan (tuple[tuple[int, ...], ...]): <alpha_i, alpha_j^vee>.
        positive_roots (tuple[Vector, ...]): Sorted by height, then by
            simple root coefficients.
        root_coeffs (tuple[IntVector, ...]): Coefficients of every
            positive root in the simple roots.
        multiplicities (tuple[int, ...]): Root space dimensions, all one.
        factors (tuple[FactorRealization, ...]): Simple factors and tori.
    """

    type_label: str
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vector, ...]
    root_coeffs: tuple[IntVector, ...]
    multiplicities: tuple[int, ...]
    factors: tuple[FactorRealization, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def all_simple(self) -> ParabolicIndex:
        return ParabolicIndex(frozenset(range(self.rank)))

    @cached_property
    def delta0(self) -> Vector:
        """Sum of the positive roots."""
        return vector_sum(self.positive_roots, self.ambient_dim)

    @cached_property
    def int_simple_roots(self) -> tuple[IntVector, ...]:
        return tuple(_ints(r) for r in self.simple_roots)

    @cached_property
    def int_simple_coroots(self) -> tuple[IntVector, ...]:
        return tuple(_ints(c) for c in self.simple_coroots)

    @cached_property
    def positive_set(self) -> frozenset[Vector]:
        return frozenset(self.positive_roots)

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        """All roots: positive ones followed by their negatives."""
        negatives = tuple(tuple(-a for a in r) for r in self.positive_roots)
        return self.positive_roots + negatives

    @cached_property
    def coeffs_by_root(self) -> dict[Vector, IntVector]:
        return dict(zip(self.positive_roots, self.root_coeffs))

    def is_root(self, v: Sequence[Numeric]) -> bool:
        vec = tuple(Fraction(a) for a in v)
        return vec in self.positive_set or (
            tuple(-a for a in vec) in self.positive_set
        )

    def is_positive_root(self, v: Sequence[Numeric]) -> bool:
        return tuple(Fraction(a) for a in v) in self.positive_set

    def height(self, root: Vector) -> int:
        return sum(self.coeffs_by_root[root])

    def reflect(self, i: int, chi: Sequence[Numeric]) -> Vector:
        """Simple reflection s_i acting on a character."""
        c = dot(chi, self.simple_coroots[i])
        return tuple(
            Fraction(a) - c * b for a, b in zip(chi, self.simple_roots[i])
        )

    def coreflect(self, i: int, y: Sequence[Numeric]) -> Vector:
        """Simple reflection s_i acting on a cocharacter."""
        c = dot(self.simple_roots[i], y)
        return tuple(
            Fraction(a) - c * b for a, b in zip(y, self.simple_coroots[i])
        )

    def support(self, root: Vector) -> IndexSet:
        """Simple roots with a nonzero coefficient in a positive root."""
        return frozenset(
            i for i, c in enumerate(self.coeffs_by_root[root]) if c
        )

    def name_of(self, root: Vector) -> str:
        """Coefficient string of a positive root, e.g. "0121"."""
        return "".join(str(c) for c in self.coeffs_by_root[root])


def _ints(v: Sequence[Fraction]) -> IntVector:
    return tuple(int(a) for a in v)


def _positive_coefficients(cartan: list[list[int]]) -> list[IntVector]:
    """Positive roots in simple root coordinates by reflection closure."""
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(rank):
            pairing = sum(beta[k] * cartan[k][i] for k in range(rank))
            image = tuple(
                b - pairing * int(k == i) for k, b in enumerate(beta)
            )
            if min(image) >= 0 and any(image) and image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen, key=lambda c: (sum(c), c))


def build_root_datum(spec: str) -> RootDatum:
    """
    Build a root datum from a spec such as "F4", "GL2 x GL3" or "E6 x T1".

    Classical factors use orthonormal coordinates, GL factors live on
    Z^n, exceptional and A_n factors use simple root coordinates for
    characters and coweight coordinates for cocharacters. Factors are
    concatenated block-diagonally.

    Args:
        spec (str): Factor names joined by "x".

    Returns:
        RootDatum: The datum.

    Raises:
        UnsupportedType: On unknown or unsupported factors.
    """
    tokens = [t for t in PRODUCT_RE.split(spec.strip()) if t]
    if not tokens:
        raise UnsupportedType("Empty root datum spec")
    factors = tuple(realize_factor(t) for t in tokens)
    dim = sum(f.dim for f in factors)

    simple_roots: list[Vector] = []
    simple_coroots: list[Vector] = []
    offset = 0
    for f in factors:
        for root, coroot in zip(f.simple_roots, f.simple_coroots):
            simple_roots.append(_embed(root, offset, dim))
            simple_coroots.append(_embed(coroot, offset, dim))
        offset += f.dim

    cartan = [
        [int(dot(a, c)) for c in simple_coroots] for a in simple_roots
    ]
    coeffs = _positive_coefficients(cartan)
    positive = [
        vector_sum(
            (tuple(k * a for a in simple_roots[i]) for i, k in enumerate(c)),
            dim,
        )
        for c in coeffs
    ]
    label = " x ".join(f.label for f in factors)
    lgr.debug(f"Root datum {label}: dim {dim}, {len(positive)} pos. roots")
    return RootDatum(
        type_label=label,
        ambient_dim=dim,
        simple_roots=tuple(simple_roots),
        simple_coroots=tuple(simple_coroots),
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(positive),
        root_coeffs=tuple(coeffs),
        multiplicities=(1,) * len(positive),
        factors=factors,
    )


def _embed(v: IntVector, offset: int, dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for k, a in enumerate(v):
        out[offset + k] = Fraction(a)
    return tuple(out)


def positive_roots_of(
    parabolic: ParabolicIndex, datum: RootDatum
) -> ParabolicRoots:
    """
    Split the positive roots into Levi and nilradical parts.

    Args:
        parabolic (ParabolicIndex): Simple roots of the Levi.
        datum (RootDatum): Root datum.

    Returns:
        ParabolicRoots: Levi roots, nilradical roots and delta_0 of the Levi.

    Raises:
        InstanceError: If the subset names a nonexistent simple root.
    """
    if any(i < 0 or i >= datum.rank for i in parabolic.subset):
        raise InstanceError(f"Parabolic {parabolic} outside the datum")
    levi, nil = [], []
    for root, coeffs in zip(datum.positive_roots, datum.root_coeffs):
        if all(i in parabolic.subset for i, c in enumerate(coeffs) if c):
            levi.append(root)
        else:
            nil.append(root)
    return ParabolicRoots(
        tuple(levi), tuple(nil), vector_sum(levi, datum.ambient_dim)
    )
