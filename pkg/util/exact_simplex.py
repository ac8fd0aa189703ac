import logging
from fractions import Fraction
from typing import Literal, Sequence

Sense = Literal['>=', '==']


class FeasibilityTableau:
    """
    Phase-1 simplex over exact rationals for {rows, x >= 0}.

    Every row is (coefficients, sense, rhs). Rows are normalized to a
    nonnegative right-hand side; a '>=' row whose rhs was negative starts with
    its surplus variable basic, the others start on an artificial variable.
    Artificial columns are never materialized: once an artificial leaves the
    basis it cannot re-enter, so only its row marker is kept. Pivoting uses
    Bland's rule, which guarantees termination.
    """
    _logger: logging.Logger

    def __init__(self, variables: int, rows: Sequence[tuple[Sequence[Fraction], Sense, Fraction]]):
        self._logger = logging.getLogger(__name__)
        self.variables = variables
        self.columns = variables
        self.rows: list[dict[int, Fraction]] = []
        self.rhs: list[Fraction] = []
        # column index of the basic variable, or None while an artificial is basic
        self.basis: list[int | None] = []
        self.pivots = 0

        for coefficients, sense, rhs in rows:
            row = {j: Fraction(c) for j, c in enumerate(coefficients) if c != 0}
            rhs = Fraction(rhs)
            basic = None
            if sense == '>=':
                surplus = self.columns
                self.columns += 1
                row[surplus] = Fraction(-1)
                if rhs < 0:
                    row = {j: -c for j, c in row.items()}
                    rhs = -rhs
                    basic = surplus
            elif rhs < 0:
                row = {j: -c for j, c in row.items()}
                rhs = -rhs
            self.rows.append(row)
            self.rhs.append(rhs)
            self.basis.append(basic)

        # Phase-1 reduced costs: minus the sum of rows still carried by artificials.
        self.cost: dict[int, Fraction] = {}
        self.objective = Fraction(0)
        for row, rhs, basic in zip(self.rows, self.rhs, self.basis):
            if basic is None:
                for j, c in row.items():
                    self.cost[j] = self.cost.get(j, Fraction(0)) - c
                self.objective += rhs
        self.cost = {j: c for j, c in self.cost.items() if c != 0}

    def _pivot(self, i: int, j: int):
        pivot_row = self.rows[i]
        factor = pivot_row[j]
        pivot_row = {k: c / factor for k, c in pivot_row.items()}
        pivot_rhs = self.rhs[i] / factor
        self.rows[i] = pivot_row
        self.rhs[i] = pivot_rhs

        for k, row in enumerate(self.rows):
            if k == i or j not in row:
                continue
            f = row[j]
            for col, c in pivot_row.items():
                value = row.get(col, Fraction(0)) - f * c
                if value:
                    row[col] = value
                else:
                    row.pop(col, None)
            self.rhs[k] -= f * pivot_rhs

        f = self.cost.get(j)
        if f:
            for col, c in pivot_row.items():
                value = self.cost.get(col, Fraction(0)) - f * c
                if value:
                    self.cost[col] = value
                else:
                    self.cost.pop(col, None)
            self.objective += f * pivot_rhs

        self.basis[i] = j
        self.pivots += 1

    def _bland_step(self) -> bool:
        entering = [j for j, c in self.cost.items() if c < 0]
        if not entering:
            return False
        j = min(entering)
        candidates = [(self.rhs[i] / row[j], self._basis_order(i), i)
                      for i, row in enumerate(self.rows) if row.get(j, 0) > 0]
        # Phase-1 objective is bounded below by zero, so a candidate always exists.
        _, _, i = min(candidates)
        self._pivot(i, j)
        return True

    def _basis_order(self, i: int) -> int:
        # artificials rank after every real column
        basic = self.basis[i]
        return self.columns + i if basic is None else basic

    def solve(self) -> list[Fraction] | None:
        while self._bland_step():
            pass
        self._logger.debug('Phase 1 finished after %d pivots with residual %s', self.pivots, self.objective)
        if self.objective != 0:
            return None

        solution = [Fraction(0)] * self.variables
        for basic, rhs in zip(self.basis, self.rhs):
            if basic is not None and basic < self.variables:
                solution[basic] = rhs
        return solution
