from fractions import Fraction

import pytest
from scipy.optimize import linprog

from grainbound.lp import max_packing, min_covering


def incidence(columns, rows):
    return [[1 if i in col else 0 for col in columns] for i in range(rows)]


CASES = [
    ([[0, 1], [1, 2], [0, 2]], 3, Fraction(3, 2)),  # triangle
    ([[0], [1], [2]], 3, Fraction(3)),
    ([[0, 1, 2]], 3, Fraction(1)),
    ([[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]], 5, Fraction(5, 2)),
    ([[0, 1], [0, 1], [1]], 2, Fraction(1)),
]


@pytest.mark.parametrize("cols, rows, value", CASES)
def test_small_duality(cols, rows, value):
    p = max_packing(cols, rows)
    c = min_covering(cols, rows)
    assert p.value == c.value == value
    assert sum(p.x) == value and sum(c.x) == value
    for i in range(rows):
        assert sum(z for z, col in zip(p.x, cols) if i in col) <= 1
    for col in cols:
        assert sum(c.x[i] for i in col) >= 1


def test_against_floating_lp():
    # random 0/1 systems, value compared with HiGHS to 1e-7
    import random

    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randint(2, 7)
        cols = []
        for _ in range(rng.randint(1, 8)):
            col = sorted({rng.randrange(rows) for _ in range(rng.randint(1, rows))})
            cols.append(col)
        A = incidence(cols, rows)
        ref = linprog([-1] * len(cols), A_ub=A, b_ub=[1] * rows, bounds=(0, None), method="highs")
        got = max_packing(cols, rows).value
        assert abs(float(got) + ref.fun) < 1e-7
        assert got == min_covering(cols, rows).value
