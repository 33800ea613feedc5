"""Rational polyhedral cones: membership, envelopes, extreme rays."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from app.exactla.linalg import (
    as_vector,
    check_dims,
    combine,
    dot,
    independent_subset,
    is_zero,
    kernel_basis,
    neg,
    primitive,
    rank_of_span,
    solve_particular,
    span_basis,
)
from app.exactla.simplex import LpStatus, solve_lp
from app.utils.errors import DimensionMismatch, NotInCone
from app.utils.types import IndexSet, Numeric, Vector

lgr = logging.getLogger(__name__)


@dataclass(frozen=True)
class MembershipResult:
    """Answer of a cone membership test with a nonnegative witness."""

    member: bool
    witness: Vector | None = None


@dataclass(frozen=True)
class ConeGenerators:
    """Extreme rays of the pointed part plus a lineality basis."""

    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...] = ()

    @property
    def pointed(self) -> bool:
        return not self.lineality


@dataclass(frozen=True)
class PositivityCertificate:
    """
    Result of testing a functional on a cone.

    When `positive` is False, `witness` is a nonzero cone element with
    nonpositive value. `modulo_lineality` marks a test made on the pointed
    quotient because the functional vanishes on the lineality space.
    """

    positive: bool
    witness: Vector | None = None
    ray_values: tuple[tuple[Vector, Fraction], ...] = ()
    lineality: tuple[Vector, ...] = ()
    modulo_lineality: bool = False


@dataclass(frozen=True)
class ConeDescription:
    """
    Cone {x in W : <a, x> >= 0 for every inequality a}.

    W is the span of `subspace_basis`, or the whole space when it is None.
    Extreme rays are computed once on first access.
    """

    ambient_dim: int
    inequalities: tuple[Vector, ...]
    subspace_basis: tuple[Vector, ...] | None = field(default=None)

    def __post_init__(self) -> None:
        check_dims(self.inequalities, self.ambient_dim)
        if self.subspace_basis is not None:
            check_dims(self.subspace_basis, self.ambient_dim)

    @classmethod
    def from_rows(
        cls,
        inequalities: Sequence[Sequence[Numeric]],
        ambient_dim: int,
        subspace_basis: Sequence[Sequence[Numeric]] | None = None,
    ) -> "ConeDescription":
        """Build a cone from arbitrary int/Fraction rows."""
        return cls(
            ambient_dim=ambient_dim,
            inequalities=tuple(as_vector(a) for a in inequalities),
            subspace_basis=(
                None
                if subspace_basis is None
                else tuple(as_vector(b) for b in subspace_basis)
            ),
        )

    @cached_property
    def generators(self) -> ConeGenerators:
        return _double_description(self)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return self.generators.rays

    def contains(self, x: Sequence[Numeric]) -> bool:
        """Exact membership test against the inequality description."""
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("Point dimension differs from the cone")
        if self.subspace_basis is not None:
            basis = list(self.subspace_basis)
            if rank_of_span([*basis, x], self.ambient_dim) > rank_of_span(
                basis, self.ambient_dim
            ):
                return False
        return all(dot(a, x) >= 0 for a in self.inequalities)


def _generator_rows(
    generators: Sequence[Sequence[Numeric]], dim: int
) -> list[list[Fraction]]:
    """Coordinate rows of the matrix whose columns are the generators."""
    return [[Fraction(g[i]) for g in generators] for i in range(dim)]


def cone_membership(
    target: Sequence[Numeric], generators: Sequence[Sequence[Numeric]]
) -> MembershipResult:
    """
    Decide whether target is a nonnegative combination of generators.

    Args:
        target (Sequence[Numeric]): Vector to represent.
        generators (Sequence[Sequence[Numeric]]): Cone generators.

    Returns:
        MembershipResult: Membership flag and witness coefficients.

    Raises:
        DimensionMismatch: On inconsistent lengths.
    """
    dim = len(target)
    check_dims(generators, dim)
    if is_zero(target):
        return MembershipResult(True, (Fraction(0),) * len(generators))
    if not generators:
        return MembershipResult(False)
    result = solve_lp(
        _generator_rows(generators, dim), list(target), None, len(generators)
    )
    if result.status is not LpStatus.OPTIMAL:
        return MembershipResult(False)
    return MembershipResult(True, result.x)


def positive_envelope(
    target: Sequence[Numeric], generators: Sequence[Sequence[Numeric]]
) -> IndexSet:
    """
    Maximal positive support of a nonnegative representation of target.

    An index belongs to the envelope iff its coefficient can be made
    positive, i.e. sup x_i > 0 over the feasible set.

    Args:
        target (Sequence[Numeric]): Vector in the cone.
        generators (Sequence[Sequence[Numeric]]): Indexed generators.

    Returns:
        IndexSet: Indices of the envelope.

    Raises:
        NotInCone: If target is not in the cone of the generators.
    """
    membership = cone_membership(target, generators)
    if not membership.member or membership.witness is None:
        raise NotInCone(f"Target {target} is outside the generated cone")

    dim = len(target)
    rows = _generator_rows(generators, dim)
    envelope = {i for i, c in enumerate(membership.witness) if c > 0}
    for i in range(len(generators)):
        if i in envelope:
            continue
        objective = [Fraction(int(k == i)) for k in range(len(generators))]
        result = solve_lp(rows, list(target), objective, len(generators))
        if result.status is LpStatus.UNBOUNDED:
            envelope.add(i)
        elif result.x is not None:
            envelope.update(k for k, c in enumerate(result.x) if c > 0)
    lgr.debug(f"Envelope of {len(generators)} generators: {sorted(envelope)}")
    return frozenset(envelope)


def _initial_rays(
    rows: list[Vector], chosen: list[int], k: int
) -> list[Vector]:
    """Columns of the inverse of the chosen square block."""
    block = [rows[i] for i in chosen]
    rays = []
    for col in range(k):
        unit = [Fraction(int(r == col)) for r in range(k)]
        sol = solve_particular(block, unit, k)
        if sol is None:  # pragma: no cover
            raise ArithmeticError("Singular initial block")
        rays.append(primitive(sol))
    return rays


def _dd_pointed(rows: list[Vector], k: int) -> list[Vector]:
    """Double description for a full-rank system of inequalities in R^k."""
    rows = [r for r in rows if not is_zero(r)]
    chosen = independent_subset(rows, k)
    rays = _initial_rays(rows, chosen, k)
    tight = [
        frozenset(i for i in chosen if dot(rows[i], r) == 0) for r in rays
    ]
    processed = set(chosen)

    for j, row in enumerate(rows):
        if j in processed:
            continue
        values = [dot(row, r) for r in rays]
        positive = [i for i, v in enumerate(values) if v > 0]
        negative = [i for i, v in enumerate(values) if v < 0]
        new_rays: list[Vector] = []
        new_tight: list[frozenset[int]] = []
        for i, v in enumerate(values):
            if v > 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_tight.append(tight[i] | {j})
        for p in positive:
            for q in negative:
                common = tight[p] & tight[q]
                if len(common) < k - 2:
                    continue
                if rank_of_span([rows[c] for c in common], k) != k - 2:
                    continue
                combo = tuple(
                    values[p] * b - values[q] * a
                    for a, b in zip(rays[p], rays[q])
                )
                new_rays.append(primitive(combo))
                new_tight.append(common | {j})
        rays, tight = new_rays, new_tight
        processed.add(j)
        lgr.debug(f"DD step {j}: {len(rays)} rays")
    return rays


def _double_description(cone: ConeDescription) -> ConeGenerators:
    d = cone.ambient_dim
    if cone.subspace_basis is None:
        basis = [
            tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
        ]
    else:
        basis = span_basis(cone.subspace_basis, d)
    k = len(basis)
    if k == 0:
        return ConeGenerators(())

    rows_y = [tuple(dot(a, b) for b in basis) for a in cone.inequalities]
    lineality_y = kernel_basis(rows_y, k)
    lineality = tuple(
        primitive(combine(v, basis)) for v in lineality_y
    )
    complement = kernel_basis(lineality_y, k)
    if not complement:
        return ConeGenerators((), lineality)

    rows_z = [tuple(dot(r, c) for c in complement) for r in rows_y]
    rays_z = _dd_pointed(rows_z, len(complement))
    unique = {
        primitive(combine(combine(z, complement), basis)) for z in rays_z
    }
    rays = tuple(sorted(unique))
    lgr.debug(f"Cone in dim {d}: {len(rays)} rays, lineality {len(lineality)}")
    return ConeGenerators(rays, lineality)


def extreme_rays(cone: ConeDescription) -> list[Vector]:
    """
    Extreme rays of a cone, primitive and sorted lexicographically.

    For a non-pointed cone these are the rays of the pointed quotient; the
    lineality basis is available on `cone.generators`.
    """
    return list(cone.generators.rays)


def positive_on_cone(
    functional: Sequence[Numeric], cone: ConeDescription
) -> PositivityCertificate:
    """
    Check that a functional is positive on the cone minus the origin.

    Args:
        functional (Sequence[Numeric]): Linear form in ambient coordinates.
        cone (ConeDescription): Cone to test.

    Returns:
        PositivityCertificate: Ray values, or a failure witness.
    """
    if len(functional) != cone.ambient_dim:
        raise DimensionMismatch("Functional dimension differs from the cone")
    gens = cone.generators
    for v in gens.lineality:
        value = dot(functional, v)
        if value != 0:
            witness = v if value < 0 else neg(v)
            return PositivityCertificate(
                False, witness, lineality=gens.lineality
            )
    values = []
    for r in gens.rays:
        value = dot(functional, r)
        if value <= 0:
            return PositivityCertificate(
                False, r, tuple(values), gens.lineality, bool(gens.lineality)
            )
        values.append((r, value))
    return PositivityCertificate(
        True, None, tuple(values), gens.lineality, bool(gens.lineality)
    )
