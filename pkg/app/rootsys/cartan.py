"""Cartan matrices and coordinate realizations of simple factors."""

import logging
import re
from dataclasses import dataclass
from math import factorial

from app.utils.errors import UnsupportedType
from app.utils.types import IntVector

lgr = logging.getLogger(__name__)

FACTOR_RE = re.compile(r"^(GL|T|[A-G])\s*(\d+)$")

# порядки групп Вейля исключительных типов
EXCEPTIONAL_WEYL_ORDERS = {
    ("G", 2): 12,
    ("F", 4): 1152,
    ("E", 6): 51840,
    ("E", 7): 2903040,
}

# связи диаграммы Дынкина в нумерации Бурбаки (с единицы)
E_BONDS = {
    6: ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4)),
    7: ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)),
}


@dataclass(frozen=True)
class FactorRealization:
    """
    One simple factor, GL factor or central torus in fixed coordinates.

    Attributes:
        label (str): Normalized name, e.g. "F4", "GL3", "T1".
        family (str): Letter of the family ("A".."G", "GL" or "T").
        rank (int): Number of simple roots.
        dim (int): Number of ambient coordinates.
        simple_roots (tuple[IntVector, ...]): Bourbaki-ordered roots.
        simple_coroots (tuple[IntVector, ...]): Matching coroots.
        weyl_order (int): Order of the Weyl group of the factor.
    """

    label: str
    family: str
    rank: int
    dim: int
    simple_roots: tuple[IntVector, ...]
    simple_coroots: tuple[IntVector, ...]
    weyl_order: int


def _unit(dim: int, *entries: tuple[int, int]) -> IntVector:
    v = [0] * dim
    for pos, value in entries:
        v[pos] += value
    return tuple(v)


def chain_cartan(rank: int) -> list[list[int]]:
    """Cartan matrix of type A of the given rank."""
    return [
        [2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(rank)]
        for i in range(rank)
    ]


def exceptional_cartan(family: str, rank: int) -> list[list[int]]:
    """
    Cartan matrix with entries <alpha_i, alpha_j^vee> (Bourbaki numbering).

    Args:
        family (str): "A", "G", "F" or "E".
        rank (int): Rank of the factor.

    Returns:
        list[list[int]]: Square integer matrix.

    Raises:
        UnsupportedType: For families/ranks without a stored matrix.
    """
    if family == "A":
        return chain_cartan(rank)
    if (family, rank) == ("G", 2):
        return [[2, -1], [-3, 2]]
    if (family, rank) == ("F", 4):
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    if family == "E" and rank in E_BONDS:
        cartan = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]
        for a, b in E_BONDS[rank]:
            cartan[a - 1][b - 1] = cartan[b - 1][a - 1] = -1
        return cartan
    raise UnsupportedType(f"No Cartan matrix stored for {family}{rank}")


def _simple_root_coordinates(family: str, rank: int) -> FactorRealization:
    """Characters in simple-root and cocharacters in coweight coordinates."""
    cartan = exceptional_cartan(family, rank)
    roots = tuple(_unit(rank, (i, 1)) for i in range(rank))
    coroots = tuple(
        tuple(cartan[i][j] for i in range(rank)) for j in range(rank)
    )
    if family == "A":
        order = factorial(rank + 1)
    else:
        order = EXCEPTIONAL_WEYL_ORDERS[(family, rank)]
    return FactorRealization(
        f"{family}{rank}", family, rank, rank, roots, coroots, order
    )


def _orthonormal(family: str, n: int) -> FactorRealization:
    """Bourbaki realization of B_n, C_n, D_n on Z^n."""
    roots = [_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if family == "B":
        roots.append(_unit(n, (n - 1, 1)))
        order = 2**n * factorial(n)
    elif family == "C":
        roots.append(_unit(n, (n - 1, 2)))
        order = 2**n * factorial(n)
    else:
        roots.append(_unit(n, (n - 2, 1), (n - 1, 1)))
        order = 2 ** (n - 1) * factorial(n)
    coroots = []
    for r in roots:
        norm = sum(a * a for a in r)
        coroots.append(tuple(2 * a // norm for a in r))
    return FactorRealization(
        f"{family}{n}", family, n, n, tuple(roots), tuple(coroots), order
    )


def _general_linear(n: int) -> FactorRealization:
    roots = tuple(_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1))
    return FactorRealization(
        f"GL{n}", "GL", n - 1, n, roots, roots, factorial(n)
    )


def realize_factor(token: str) -> FactorRealization:
    """
    Parse one factor of a root datum spec, e.g. "E6", "GL3" or "T1".

    Args:
        token (str): Factor name, case-insensitive.

    Returns:
        FactorRealization: Coordinates of the factor.

    Raises:
        UnsupportedType: On unknown families or out-of-range ranks.
    """
    match = FACTOR_RE.match(token.strip().upper())
    if match is None:
        raise UnsupportedType(f"Cannot parse root datum factor {token!r}")
    family, n = match.group(1), int(match.group(2))

    minimal = {"A": 1, "B": 2, "C": 2, "D": 3, "GL": 1, "T": 1}
    if family in minimal and n < minimal[family]:
        raise UnsupportedType(f"{family}{n} is not a valid factor")
    if family == "T":
        return FactorRealization(f"T{n}", "T", 0, n, (), (), 1)
    if family == "GL":
        return _general_linear(n)
    if family in "BCD":
        return _orthonormal(family, n)
    if family == "A" or (family, n) in EXCEPTIONAL_WEYL_ORDERS:
        return _simple_root_coordinates(family, n)
    raise UnsupportedType(f"Type {family}{n} is not supported")
