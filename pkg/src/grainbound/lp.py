"""Dense exact-rational simplex for the packing / covering LP pair.

Entries are ``gmpy2.mpq``; results are returned as ``Fraction``.  Both
solvers use Bland's rule, so they terminate on degenerate problems, which the
sphere hypergraph produces in abundance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class LPError(ArithmeticError):
    pass


@dataclass
class LPSolution:
    value: Fraction
    x: list[Fraction]
    pivots: int


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _pivot(rows: list[list], obj: list, r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != ONE:
        prow = [a / piv for a in prow]
        rows[r] = prow
    nz = [k for k, a in enumerate(prow) if a]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for k in nz:
                row[k] -= f * prow[k]
    f = obj[c]
    if f:
        for k in nz:
            obj[k] -= f * prow[k]


def max_packing(columns: Sequence[Sequence[int]], num_rows: int, *, max_pivots: int = 10**6) -> LPSolution:
    """max 1'z  s.t.  A z <= 1, z >= 0, where column j of A is the 0/1 set ``columns[j]``.

    Primal simplex from the all-slack basis.
    """
    ncols = len(columns)
    width = ncols + num_rows + 1  # structural | slack | rhs
    rows = [[ZERO] * width for _ in range(num_rows)]
    for j, col in enumerate(columns):
        for i in col:
            rows[i][j] = ONE
    for i in range(num_rows):
        rows[i][ncols + i] = ONE
        rows[i][-1] = ONE
    # reduced-cost row of the maximization: obj[j] = c_j - c_B B^-1 A_j,
    # obj[-1] = -(current value)
    obj = [ONE] * ncols + [ZERO] * (num_rows + 1)
    basis = [ncols + i for i in range(num_rows)]
    pivots = 0
    while True:
        enter = next((j for j in range(width - 1) if obj[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise LPError("packing LP is unbounded")
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit reached")
    x = [ZERO] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            x[b] = rows[i][-1]
    return LPSolution(_to_fraction(-obj[-1]), [_to_fraction(q) for q in x], pivots)


def min_covering(columns: Sequence[Sequence[int]], num_rows: int, *, max_pivots: int = 10**6) -> LPSolution:
    """min 1'w  s.t.  A' w >= 1, w >= 0, same incidence as :func:`max_packing`.

    Dual simplex: with surplus rows -A' w + s = -1 the slack basis is dual
    feasible from the start, so no phase one is needed.
    """
    ncons = len(columns)
    width = num_rows + ncons + 1  # w | s | rhs
    rows = [[ZERO] * width for _ in range(ncons)]
    for j, col in enumerate(columns):
        row = rows[j]
        for i in col:
            row[i] = -ONE
        row[num_rows + j] = ONE
        row[-1] = -ONE
    # reduced costs of the minimization, obj[-1] = -(current value)
    obj = [ONE] * num_rows + [ZERO] * (ncons + 1)
    basis = [num_rows + j for j in range(ncons)]
    pivots = 0
    while True:
        leave = None
        for i, row in enumerate(rows):
            if row[-1] < 0 and (leave is None or basis[i] < basis[leave]):
                leave = i
        if leave is None:
            break
        row = rows[leave]
        enter, best = None, None
        for j in range(width - 1):
            a = row[j]
            if a < 0:
                ratio = obj[j] / -a
                if best is None or ratio < best:
                    enter, best = j, ratio
        if enter is None:
            raise LPError("covering LP is infeasible")
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise LPError("pivot limit reached")
    w = [ZERO] * num_rows
    for i, b in enumerate(basis):
        if b < num_rows:
            w[b] = rows[i][-1]
    return LPSolution(_to_fraction(-obj[-1]), [_to_fraction(q) for q in w], pivots)
