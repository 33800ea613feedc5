"""Exact two-phase simplex method with Bland's rule."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from app.exactla.linalg import check_dims
from app.utils.errors import DimensionMismatch
from app.utils.types import Numeric, Vector

lgr = logging.getLogger(__name__)


class LpStatus(str, Enum):
    """Outcome of a linear program."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    """Status, optimal point and value (both None unless optimal)."""

    status: LpStatus
    x: Vector | None = None
    value: Fraction | None = None


class _Tableau:
    """Dense tableau for max c.x, rows . x = rhs, x >= 0."""

    def __init__(
        self,
        rows: list[list[Fraction]],
        rhs: list[Fraction],
        basis: list[int],
    ) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, i: int, j: int) -> None:
        p = self.rows[i][j]
        self.rows[i] = [a / p for a in self.rows[i]]
        self.rhs[i] /= p
        for k in range(len(self.rows)):
            if k != i and self.rows[k][j] != 0:
                f = self.rows[k][j]
                self.rows[k] = [
                    a - f * b for a, b in zip(self.rows[k], self.rows[i])
                ]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j

    def reduced_costs(
        self, cost: Sequence[Fraction], allowed: int
    ) -> list[Fraction]:
        out = []
        for j in range(allowed):
            r = cost[j] - sum(
                cost[b] * row[j] for b, row in zip(self.basis, self.rows)
            )
            out.append(r)
        return out

    def run(self, cost: Sequence[Fraction], allowed: int) -> LpStatus:
        """Maximize cost.x over the first `allowed` columns."""
        while True:
            costs = self.reduced_costs(cost, allowed)
            # Bland: наименьший индекс с положительной приведённой стоимостью
            entering = next((j for j, r in enumerate(costs) if r > 0), None)
            if entering is None:
                return LpStatus.OPTIMAL
            candidates = [
                (self.rhs[i] / row[entering], self.basis[i], i)
                for i, row in enumerate(self.rows)
                if row[entering] > 0
            ]
            if not candidates:
                return LpStatus.UNBOUNDED
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def point(self, n: int) -> Vector:
        x = [Fraction(0)] * n
        for b, value in zip(self.basis, self.rhs):
            if b < n:
                x[b] = value
        return tuple(x)


def solve_lp(
    a_eq: Sequence[Sequence[Numeric]],
    b_eq: Sequence[Numeric],
    objective: Sequence[Numeric] | None = None,
    n_vars: int | None = None,
) -> LpResult:
    """
    Solve max objective.x subject to a_eq.x = b_eq, x >= 0 exactly.

    Phase one drives artificial variables to zero; phase two optimizes the
    objective. Without an objective the first feasible vertex is returned.

    Args:
        a_eq (Sequence[Sequence[Numeric]]): Equality rows.
        b_eq (Sequence[Numeric]): Right-hand side.
        objective (Sequence[Numeric] | None): Linear objective.
        n_vars (int | None): Number of variables for an empty system.

    Returns:
        LpResult: Status with point and value when optimal.

    Raises:
        DimensionMismatch: On inconsistent shapes.
    """
    n = check_dims(a_eq, n_vars) if a_eq else (n_vars or 0)
    if len(b_eq) != len(a_eq):
        raise DimensionMismatch("b_eq must have one entry per row")
    if objective is not None and len(objective) != n:
        raise DimensionMismatch("Objective length differs from variables")

    m = len(a_eq)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (row, b) in enumerate(zip(a_eq, b_eq)):
        sign = -1 if b < 0 else 1
        artificial = [Fraction(1 if k == i else 0) for k in range(m)]
        rows.append([Fraction(sign * a) for a in row] + artificial)
        rhs.append(Fraction(sign * b))
    tableau = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase_one = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.run(phase_one, n + m)
    if sum(tableau.rhs[i] for i, b in enumerate(tableau.basis) if b >= n):
        lgr.debug("LP infeasible after phase one")
        return LpResult(LpStatus.INFEASIBLE)

    # вывод искусственных переменных из базиса
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            j = next(
                (j for j in range(n) if tableau.rows[i][j] != 0), None
            )
            if j is None:
                del tableau.rows[i]
                del tableau.rhs[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, j)
        i += 1
    tableau.rows = [row[:n] for row in tableau.rows]

    if objective is None:
        return LpResult(LpStatus.OPTIMAL, tableau.point(n), Fraction(0))

    cost = [Fraction(c) for c in objective]
    if not tableau.rows:
        # нет ограничений: ограничено только если c <= 0
        if any(c > 0 for c in cost):
            return LpResult(LpStatus.UNBOUNDED)
        return LpResult(LpStatus.OPTIMAL, (Fraction(0),) * n, Fraction(0))
    status = tableau.run(cost, n)
    if status is LpStatus.UNBOUNDED:
        return LpResult(status)
    x = tableau.point(n)
    value = sum((c * a for c, a in zip(cost, x)), Fraction(0))
    return LpResult(status, x, value)
