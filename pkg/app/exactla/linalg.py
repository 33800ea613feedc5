"""Exact rational linear algebra on tuples of Fractions."""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from app.utils.errors import DimensionMismatch
from app.utils.types import Numeric, Vector

lgr = logging.getLogger(__name__)


def as_vector(values: Iterable[Numeric]) -> Vector:
    """Convert any iterable of ints/Fractions into a rational vector."""
    return tuple(Fraction(x) for x in values)


def check_dims(vectors: Sequence[Sequence[Numeric]], dim: int | None) -> int:
    """
    Check that all vectors share one length.

    Args:
        vectors (Sequence[Sequence[Numeric]]): Vectors to check.
        dim (int | None): Expected length, inferred from the first vector
            when omitted.

    Returns:
        int: Common dimension.

    Raises:
        DimensionMismatch: On ragged input or when no dimension is known.
    """
    if dim is None:
        if not vectors:
            raise DimensionMismatch("Cannot infer dimension of an empty set")
        dim = len(vectors[0])
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatch(
                f"Vector of length {len(v)} in a {dim}-dim context"
            )
    return dim


def dot(u: Sequence[Numeric], v: Sequence[Numeric]) -> Fraction:
    """Standard pairing of two vectors."""
    if len(u) != len(v):
        raise DimensionMismatch(f"Pairing {len(u)} with {len(v)} coords")
    return Fraction(sum(a * b for a, b in zip(u, v)))


def add(u: Sequence[Numeric], v: Sequence[Numeric]) -> Vector:
    """Coordinatewise sum."""
    return tuple(Fraction(a + b) for a, b in zip(u, v, strict=True))


def sub(u: Sequence[Numeric], v: Sequence[Numeric]) -> Vector:
    """Coordinatewise difference."""
    return tuple(Fraction(a - b) for a, b in zip(u, v, strict=True))


def scale(c: Numeric, v: Sequence[Numeric]) -> Vector:
    """Multiply a vector by a scalar."""
    return tuple(Fraction(c * a) for a in v)


def neg(v: Sequence[Numeric]) -> Vector:
    """Additive inverse."""
    return tuple(Fraction(-a) for a in v)


def zero(dim: int) -> Vector:
    """Zero vector."""
    return (Fraction(0),) * dim


def is_zero(v: Sequence[Numeric]) -> bool:
    """Whether every coordinate vanishes."""
    return all(a == 0 for a in v)


def vector_sum(vectors: Iterable[Sequence[Numeric]], dim: int) -> Vector:
    """Sum of a family of vectors in a fixed dimension."""
    total = [Fraction(0)] * dim
    for v in vectors:
        for i, a in enumerate(v):
            total[i] += a
    return tuple(total)


def primitive(v: Sequence[Numeric]) -> Vector:
    """
    Scale a nonzero vector to integer coordinates with gcd 1.

    The direction (sign) is preserved; the zero vector is returned as is.

    Args:
        v (Sequence[Numeric]): Rational vector.

    Returns:
        Vector: Primitive integral multiple of v.
    """
    fr = [Fraction(a) for a in v]
    if all(a == 0 for a in fr):
        return tuple(fr)
    den = reduce(lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(gcd, (abs(a) for a in ints if a), 0)
    return tuple(Fraction(a // g) for a in ints)


def to_ints(v: Sequence[Numeric]) -> tuple[int, ...]:
    """
    Convert an integral rational vector to ints.

    Raises:
        ValueError: If some coordinate is not an integer.
    """
    out = []
    for a in v:
        fa = Fraction(a)
        if fa.denominator != 1:
            raise ValueError(f"Non-integral coordinate {fa}")
        out.append(fa.numerator)
    return tuple(out)


def row_reduce(
    rows: Sequence[Sequence[Numeric]], dim: int | None = None
) -> tuple[list[list[Fraction]], list[int]]:
    """
    Reduced row echelon form by Gauss-Jordan elimination.

    Args:
        rows (Sequence[Sequence[Numeric]]): Matrix rows.
        dim (int | None): Number of columns (needed for empty input).

    Returns:
        tuple[list[list[Fraction]], list[int]]: Nonzero reduced rows and
            their pivot columns.
    """
    ncols = check_dims(rows, dim)
    mat = [[Fraction(a) for a in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next(
            (i for i in range(r, len(mat)) if mat[i][c] != 0), None
        )
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        p = mat[r][c]
        mat[r] = [a / p for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank_of_span(
    vectors: Sequence[Sequence[Numeric]], dim: int | None = None
) -> int:
    """
    Dimension of the rational span.

    Args:
        vectors (Sequence[Sequence[Numeric]]): Spanning family.
        dim (int | None): Ambient dimension, optional.

    Returns:
        int: Rank, 0 for an empty family.

    Raises:
        DimensionMismatch: On ragged input.
    """
    if not vectors:
        return 0
    reduced, _ = row_reduce(vectors, dim)
    return len(reduced)


def kernel_basis(
    vectors: Sequence[Sequence[Numeric]], dim: int | None = None
) -> list[Vector]:
    """
    Basis of the joint annihilator {x : <v, x> = 0 for all v}.

    Basis vectors are primitive integral. The empty family in dimension d
    yields the standard basis of size d.

    Args:
        vectors (Sequence[Sequence[Numeric]]): Linear forms.
        dim (int | None): Ambient dimension (mandatory for empty input).

    Returns:
        list[Vector]: Basis; empty iff the forms span the dual space.

    Raises:
        DimensionMismatch: On ragged input or unknown dimension.
    """
    ncols = check_dims(vectors, dim)
    reduced, pivots = row_reduce(vectors, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve_particular(
    rows: Sequence[Sequence[Numeric]],
    rhs: Sequence[Numeric],
    dim: int | None = None,
) -> Vector | None:
    """
    Find one solution of rows * x = rhs.

    Free variables are set to zero.

    Args:
        rows (Sequence[Sequence[Numeric]]): Coefficient rows.
        rhs (Sequence[Numeric]): Right-hand side, one entry per row.
        dim (int | None): Number of unknowns.

    Returns:
        Vector | None: A solution, or None if the system is inconsistent.
    """
    ncols = check_dims(rows, dim)
    if len(rhs) != len(rows):
        raise DimensionMismatch("Right-hand side length differs from rows")
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def in_span(
    target: Sequence[Numeric],
    vectors: Sequence[Sequence[Numeric]],
) -> bool:
    """Whether target lies in the rational span of vectors."""
    if is_zero(target):
        return True
    if not vectors:
        return False
    dim = check_dims([target, *vectors], None)
    return rank_of_span([*vectors, target], dim) == rank_of_span(
        vectors, dim
    )


def independent_subset(
    vectors: Sequence[Sequence[Numeric]], dim: int | None = None
) -> list[int]:
    """
    Greedy maximal linearly independent subfamily.

    Returns:
        list[int]: Indices kept, in input order.
    """
    ncols = check_dims(vectors, dim)
    kept: list[int] = []
    basis: list[Sequence[Numeric]] = []
    for i, v in enumerate(vectors):
        if rank_of_span([*basis, v], ncols) > len(basis):
            basis.append(v)
            kept.append(i)
    return kept


def span_basis(
    vectors: Sequence[Sequence[Numeric]], dim: int | None = None
) -> list[Vector]:
    """Echelon basis of the span (independent rows)."""
    if not vectors:
        return []
    reduced, _ = row_reduce(vectors, dim)
    return [tuple(r) for r in reduced]


def combine(coeffs: Sequence[Numeric], basis: Sequence[Vector]) -> Vector:
    """Linear combination sum(c_i * b_i) of a nonempty basis."""
    dim = len(basis[0])
    out = [Fraction(0)] * dim
    for c, b in zip(coeffs, basis, strict=True):
        if c:
            for k in range(dim):
                out[k] += c * b[k]
    return tuple(out)
