"""Exact determinants, Pfaffians and binary cubic discriminants."""

from fractions import Fraction
from typing import Sequence

from app.utils.errors import ShapeMismatch
from app.utils.types import Numeric

Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence[Numeric]]) -> Matrix:
    return [[Fraction(a) for a in row] for row in rows]


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return [[Fraction(0)] * n_cols for _ in range(n_rows)]


def transpose(m: Matrix) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """
    Product of two rational matrices.

    Raises:
        ShapeMismatch: If the inner dimensions differ.
    """
    inner = len(b)
    if any(len(row) != inner for row in a):
        raise ShapeMismatch(f"Cannot multiply by a {inner}-row matrix")
    n_cols = len(b[0]) if b else 0
    return [
        [
            sum((row[k] * b[k][j] for k in range(inner)), Fraction(0))
            for j in range(n_cols)
        ]
        for row in a
    ]


def chain_product(factors: Sequence[Matrix]) -> Matrix:
    """Product x_1 x_2 ... x_k of a nonempty chain."""
    out = factors[0]
    for m in factors[1:]:
        out = matmul(out, m)
    return out


def _check_square(m: Matrix) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ShapeMismatch(f"Square matrix expected, got {n} rows")
    return n


def bareiss_det(rows: Sequence[Sequence[Numeric]]) -> Fraction:
    """
    Determinant by fraction-free Bareiss elimination.

    Every division is exact, so integer input stays integral.

    Args:
        rows (Sequence[Sequence[Numeric]]): Square matrix.

    Returns:
        Fraction: Determinant; 1 for the empty matrix.

    Raises:
        ShapeMismatch: If the matrix is not square.
    """
    a = as_matrix(rows)
    n = _check_square(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def pfaffian(rows: Sequence[Sequence[Numeric]]) -> Fraction:
    """
    Pfaffian of a skew-symmetric matrix by expansion along the first row.

    Sign convention: Pf of [[0, 1], [-1, 0]] is 1.

    Args:
        rows (Sequence[Sequence[Numeric]]): Skew-symmetric square matrix.

    Returns:
        Fraction: Pfaffian; 0 for odd size, 1 for the empty matrix.

    Raises:
        ShapeMismatch: If the matrix is not square or not skew-symmetric.
    """
    a = as_matrix(rows)
    n = _check_square(a)
    for i in range(n):
        for j in range(i, n):
            if a[i][j] != -a[j][i]:
                raise ShapeMismatch("Pfaffian of a non-skew matrix")
    return _pf(a, tuple(range(n)))


def _pf(a: Matrix, idx: tuple[int, ...]) -> Fraction:
    if not idx:
        return Fraction(1)
    if len(idx) % 2:
        return Fraction(0)
    first, rest = idx[0], idx[1:]
    total = Fraction(0)
    for pos, j in enumerate(rest):
        if a[first][j] == 0:
            continue
        sign = -1 if pos % 2 else 1
        total += sign * a[first][j] * _pf(a, rest[:pos] + rest[pos + 1:])
    return total


def antidiagonal(n: int, skew: bool) -> Matrix:
    """
    Form matrix J with ones on the antidiagonal.

    In the skew case the upper-left half of the antidiagonal carries +1 and
    the lower-right half -1.
    """
    j = zeros(n, n)
    for r in range(n):
        c = n - 1 - r
        j[r][c] = Fraction(-1 if skew and r >= n // 2 else 1)
    return j


def cubic_coefficients(
    a: Sequence[Sequence[Numeric]], b: Sequence[Sequence[Numeric]]
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """
    Coefficients of the binary cubic det(x A + y B) for 3x3 matrices.

    By multilinearity in columns, the x^2 y coefficient is the sum of the
    determinants of A with one column taken from B, and symmetrically.

    Returns:
        tuple: (c3, c2, c1, c0) of c3 x^3 + c2 x^2 y + c1 x y^2 + c0 y^3.

    Raises:
        ShapeMismatch: Unless both matrices are 3x3.
    """
    ma, mb = as_matrix(a), as_matrix(b)
    if _check_square(ma) != 3 or _check_square(mb) != 3:
        raise ShapeMismatch("Binary cubic pencil needs two 3x3 matrices")

    def mixed(base: Matrix, other: Matrix) -> Fraction:
        total = Fraction(0)
        for col in range(3):
            m = [
                [other[r][c] if c == col else base[r][c] for c in range(3)]
                for r in range(3)
            ]
            total += bareiss_det(m)
        return total

    return bareiss_det(ma), mixed(ma, mb), mixed(mb, ma), bareiss_det(mb)


def binary_cubic_discriminant(
    a: Numeric, b: Numeric, c: Numeric, d: Numeric
) -> Fraction:
    """Discriminant of a x^3 + b x^2 y + c x y^2 + d y^3."""
    a, b, c, d = (Fraction(t) for t in (a, b, c, d))
    return (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )
