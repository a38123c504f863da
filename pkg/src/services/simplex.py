"""
Exact Simplex Service

A dictionary-form simplex method in exact integer arithmetic.

Solves ``maximize c.x subject to A x <= b, x >= 0``. Every row is scaled to integers
and the dictionary is kept fraction-free: all entries share one positive denominator
``d`` (the absolute determinant of the current basis) and each pivot divides exactly by
the previous one. Every basic variable ``x_B(i)`` reads
``(b[i] - sum_j T[i][j] * x_N(j)) / d`` and the objective reads
``(z0 + sum_j c[j] * x_N(j)) / d``.

Variable ids: ``0..n-1`` are the structural variables, ``n..n+m-1`` the slacks of the
rows, ``n+m`` the auxiliary variable of phase one. The entering variable has the largest
reduced cost; right after a degenerate pivot Bland's rule (smallest id) is used
instead, which rules out cycling since a cycle consists of degenerate pivots only.

"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _integer_row(values: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = lcm(1, *(v.denominator for v in values))
    return [int(v * scale) for v in values], scale


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: list[Fraction] = field(default_factory=list)
    duals: list[Fraction] = field(default_factory=list)
    pivots: int = 0


class ExactSimplex:
    def __init__(self, A: Sequence[Sequence], b: Sequence, c: Sequence):
        self.m = len(b)
        self.n = len(c)
        self.T: list[list[int]] = []
        self.b: list[int] = []
        self.row_scale: list[int] = []
        for row, bound in zip(A, b):
            values, scale = _integer_row([Fraction(v) for v in row] + [Fraction(bound)])
            self.T.append(values[:-1])
            self.b.append(values[-1])
            self.row_scale.append(scale)
        self.objective, self.objective_scale = _integer_row([Fraction(v) for v in c])
        self.c = [0] * self.n
        self.z0 = 0
        self.d = 1
        self.nonbasic = list(range(self.n))
        self.basic = list(range(self.n, self.n + self.m))
        self.degenerate = False
        self.pivots = 0

    def pivot(self, r: int, s: int) -> None:
        p, d = self.T[r][s], self.d
        prow, pb = self.T[r], self.b[r]
        for i, row in enumerate(self.T):
            if i == r:
                continue
            t = row[s]
            if t:
                new = [(x * p - t * y) // d for x, y in zip(row, prow)]
                new[s] = -t
                self.b[i] = (self.b[i] * p - t * pb) // d
            elif p != d:
                new = [x * p // d for x in row]
                self.b[i] = self.b[i] * p // d
            else:
                continue
            self.T[i] = new
        cs = self.c[s]
        if cs:
            self.c = [(x * p - cs * y) // d for x, y in zip(self.c, prow)]
            self.c[s] = -cs
            self.z0 = (self.z0 * p + cs * pb) // d
        elif p != d:
            self.c = [x * p // d for x in self.c]
            self.z0 = self.z0 * p // d
        prow = list(prow)
        prow[s] = d
        self.T[r] = prow
        self.d = p
        if p < 0:
            self.T = [[-x for x in row] for row in self.T]
            self.b = [-x for x in self.b]
            self.c = [-x for x in self.c]
            self.z0 = -self.z0
            self.d = -p
        logger.debug(f"pivot: x{self.basic[r]} leaves, x{self.nonbasic[s]} enters")
        self.basic[r], self.nonbasic[s] = self.nonbasic[s], self.basic[r]
        self.pivots += 1

    def _entering(self) -> Optional[int]:
        positive = [j for j, v in enumerate(self.c) if v > 0]
        if not positive:
            return None
        if self.degenerate:
            return min(positive, key=lambda j: self.nonbasic[j])
        return min(positive, key=lambda j: (-self.c[j], self.nonbasic[j]))

    def _leaving(self, s: int) -> Optional[int]:
        best = None
        for i, row in enumerate(self.T):
            t = row[s]
            if t <= 0:
                continue
            if best is None:
                best = i
                continue
            # compare b[i] / t with b[best] / T[best][s]
            lhs, rhs = self.b[i] * self.T[best][s], self.b[best] * t
            if lhs < rhs or lhs == rhs and self.basic[i] < self.basic[best]:
                best = i
        return best

    def _iterate(self) -> str:
        self.degenerate = False
        while True:
            s = self._entering()
            if s is None:
                return OPTIMAL
            r = self._leaving(s)
            if r is None:
                return UNBOUNDED
            self.degenerate = self.b[r] == 0
            self.pivot(r, s)

    def _phase_one(self) -> bool:
        negative = [i for i, v in enumerate(self.b) if v < 0]
        if not negative:
            return True
        aux = self.n + self.m
        for row in self.T:
            row.append(-self.d)
        self.nonbasic.append(aux)
        self.c = [0] * self.n + [-self.d]
        self.z0 = 0
        s = len(self.nonbasic) - 1
        r = min(negative, key=lambda i: (self.b[i], i))
        self.pivot(r, s)
        self._iterate()
        if self.z0 < 0:
            return False
        if aux in self.basic:
            # at level zero, with a nonzero entry somewhere in its row
            r = self.basic.index(aux)
            _, s = min((self.nonbasic[j], j) for j, t in enumerate(self.T[r]) if t)
            self.pivot(r, s)
        s = self.nonbasic.index(aux)
        for row in self.T:
            del row[s]
        del self.nonbasic[s]
        return True

    def _install_objective(self) -> None:
        self.c = [0] * len(self.nonbasic)
        self.z0 = 0
        position = {v: j for j, v in enumerate(self.nonbasic)}
        row_of = {v: i for i, v in enumerate(self.basic)}
        for k, ck in enumerate(self.objective):
            if not ck:
                continue
            if k in position:
                self.c[position[k]] += ck * self.d
            else:
                i = row_of[k]
                self.z0 += ck * self.b[i]
                self.c = [x - ck * t for x, t in zip(self.c, self.T[i])]

    def solve(self) -> LPResult:
        """
        Run both phases.

        :return: Status, optimal value, primal solution and the dual multipliers of the
            rows (``y >= 0`` with ``A^T y >= c`` and ``b.y`` equal to the optimum).
        :rtype: LPResult
        """
        if not self._phase_one():
            logger.debug(f"infeasible after {self.pivots} pivots")
            return LPResult(INFEASIBLE, pivots=self.pivots)
        self._install_objective()
        status = self._iterate()
        if status == UNBOUNDED:
            return LPResult(UNBOUNDED, pivots=self.pivots)
        x = [Fraction(0)] * self.n
        duals = [Fraction(0)] * self.m
        for i, v in enumerate(self.basic):
            if v < self.n:
                x[v] = Fraction(self.b[i], self.d)
        for j, v in enumerate(self.nonbasic):
            if self.n <= v < self.n + self.m:
                i = v - self.n
                duals[i] = Fraction(-self.c[j] * self.row_scale[i], self.d * self.objective_scale)
        value = Fraction(self.z0, self.d * self.objective_scale)
        logger.debug(f"optimum {value} after {self.pivots} pivots")
        return LPResult(OPTIMAL, value, x, duals, self.pivots)


def maximize(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Solve ``max c.x, A x <= b, x >= 0`` exactly."""
    return ExactSimplex(A, b, c).solve()


def maximize_by_dual(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """
    Solve ``max c.x, A x <= b, x >= 0`` through its dual ``max -b.y, -A^T y <= -c,
    y >= 0``, which has one row per column of ``A``.

    :return: The result in terms of the original problem: ``x`` is read from the dual
        multipliers and ``duals`` from the dual solution. An infeasible dual is reported
        as ``UNBOUNDED``, which is exact whenever the original problem is feasible.
    :rtype: LPResult
    """
    rows = [[Fraction(v) for v in row] for row in A]
    width = len(c)
    transposed = [[-row[j] for row in rows] for j in range(width)]
    dual = maximize(transposed, [-Fraction(v) for v in c], [-Fraction(v) for v in b])
    if dual.status == UNBOUNDED:
        return LPResult(INFEASIBLE, pivots=dual.pivots)
    if dual.status == INFEASIBLE:
        return LPResult(UNBOUNDED, pivots=dual.pivots)
    return LPResult(OPTIMAL, -dual.value, dual.duals, dual.x, dual.pivots)
