import math
import random
from fractions import Fraction

import numpy as np
import pytest

from grainbound.bounds import (
    ENUM_LIMIT,
    Method,
    QuaternaryDist,
    binary_entropy,
    bound_crossing,
    conj_v_bound,
    conjectured_rate_bound,
    conjectured_rate_grid,
    dmc_mutual_information,
    frac_cover_bound,
    info_rate_bound,
    nu_star,
    rate_curve,
)
from grainbound.errors import ScaleLimitError
from grainbound.verify import sphere_sizes

PLATEAU = binary_entropy(1 / 3) - 1 / 3


def enumerated_cover(n, t):
    return sum((Fraction(1, s) for s in sphere_sizes(n, t)), Fraction(0))


def test_frac_cover_examples():
    b = frac_cover_bound(5, 1)
    assert b.exact == Fraction(62, 5) and b.floored == 12
    assert b.method is Method.MN1_CLOSED
    assert frac_cover_bound(10, 2).floored == 114
    assert frac_cover_bound(20, 3).floored == 12510
    assert frac_cover_bound(7, 0).exact == 128


def test_conj_v_examples():
    assert conj_v_bound(10, 2).floored == 102
    assert conj_v_bound(20, 3).floored == 9921


@pytest.mark.parametrize("n", range(1, 65))
def test_t1_closed_form(n):
    assert frac_cover_bound(n, 1).exact == Fraction(2 ** (n + 1) - 2, n)


def test_t1_bounds_coincide():
    for n in range(1, 40):
        assert conj_v_bound(n, 1).exact == frac_cover_bound(n, 1).exact


def test_closed_forms_match_enumeration():
    for n in range(1, 15):
        for t in (1, 2, 3):
            assert frac_cover_bound(n, t).exact == enumerated_cover(n, t), (n, t)


def test_partition_sum_matches_enumeration():
    for n in range(1, 13):
        for t in (4, 5):
            b = frac_cover_bound(n, t)
            assert b.conjectural and b.method is Method.FRAC_COVER_ENUM
            assert b.exact == enumerated_cover(n, t)
    # the partition sum also reproduces the closed forms
    assert frac_cover_bound(18, 3).exact == frac_cover_bound(18, 3, enum_limit=0).exact


def test_enum_limit_guard():
    frac_cover_bound(ENUM_LIMIT, 4)
    with pytest.raises(ScaleLimitError):
        frac_cover_bound(ENUM_LIMIT + 1, 4)


def test_conj_v_never_exceeds_frac_cover():
    for n in range(1, 25):
        for t in (2, 3):
            assert conj_v_bound(n, t).exact <= frac_cover_bound(n, t).exact
    for n in range(1, 13):
        assert conj_v_bound(n, 4).exact <= frac_cover_bound(n, 4).exact


def test_bound_serialization():
    d = frac_cover_bound(4, 2).as_dict()
    assert (d["numerator"], d["denominator"], d["floored"]) == ("217", "30", 7)
    assert not d["conjectural"]


@pytest.mark.parametrize("xi, h", [(0, 0), (0.5, 1), (1 / 3, math.log2(3) - 2 / 3), (1, 0)])
def test_binary_entropy(xi, h):
    assert binary_entropy(xi) == pytest.approx(h, abs=1e-12)


def test_binary_entropy_domain():
    with pytest.raises(ValueError):
        binary_entropy(1.2)


def test_info_rate_examples():
    assert info_rate_bound(0) == pytest.approx(1.0, abs=1e-12)
    assert info_rate_bound(0.5) == pytest.approx(0.5, abs=1e-12)
    assert info_rate_bound(1 / 6) == pytest.approx(0.625815, abs=1e-5)
    assert info_rate_bound(0.25) == pytest.approx(0.561278, abs=1e-5)
    with pytest.raises(ValueError):
        info_rate_bound(0.6)


def test_info_rate_nonincreasing():
    values = [info_rate_bound(t) for t in np.linspace(0, 0.5, 10_000)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def test_conjectured_rate_examples():
    assert conjectured_rate_bound(0) == pytest.approx(1.0, abs=1e-12)
    assert conjectured_rate_bound(0.25) == pytest.approx(0.584963, abs=1e-5)
    assert abs(conjectured_rate_bound(0.1, verify=False) - conjectured_rate_grid(0.1)) < 1e-6


def test_conjectured_rate_plateau_and_continuity():
    for tau in np.linspace(1 / 6, 0.5, 101):
        assert conjectured_rate_bound(float(tau), verify=False) == pytest.approx(PLATEAU, abs=1e-9)
    left = conjectured_rate_bound(1 / 6 - 1e-12, verify=False)
    right = conjectured_rate_bound(1 / 6, verify=False)
    assert abs(left - right) < 1e-9
    assert nu_star(1 / 6) == pytest.approx(1 / 3)


@pytest.mark.parametrize("tau", [0.0, 0.02, 0.05, 0.1, 0.15, 0.16, 0.2, 0.3, 0.45])
def test_conjectured_rate_closed_form_vs_grid(tau):
    conjectured_rate_bound(tau, verify=True)


def test_crossing():
    tau = bound_crossing()
    assert abs(tau - 0.214) <= 0.002
    assert conjectured_rate_bound(1 / 6, verify=False) < info_rate_bound(1 / 6)
    assert conjectured_rate_bound(0.25, verify=False) > info_rate_bound(0.25)
    with pytest.raises(ArithmeticError):
        bound_crossing(0.3, 0.4)


def test_rate_curve_grid():
    pts = rate_curve(0.1)
    assert [round(p.tau, 10) for p in pts] == [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
    assert pts[0].info_bound == pytest.approx(1.0)
    with pytest.raises(ValueError):
        rate_curve(0)


def test_dmc_noiseless():
    f = QuaternaryDist(0.1, 0.2, 0.3, 0.4)
    res = dmc_mutual_information(f, 0.0)
    assert res.p == 0.0
    h = -sum(q * math.log2(q) for q in (0.1, 0.2, 0.3, 0.4))
    assert res.mutual_information == pytest.approx(h)


def test_dmc_full_collapse():
    f = QuaternaryDist(0.25, 0.25, 0.2, 0.3)
    res = dmc_mutual_information(f, 0.25)
    assert res.p == pytest.approx(1.0)
    # Y is a function of X: 00 with mass 0.45, 11 with mass 0.55
    assert res.mutual_information == pytest.approx(binary_entropy(0.45))


def test_dmc_uniform_example():
    res = dmc_mutual_information(QuaternaryDist(0.25, 0.25, 0.25, 0.25), 0.125)
    assert res.p == pytest.approx(0.5)
    assert res.mutual_information <= res.closed_bound + 1e-12


def test_dmc_rejects_bad_input():
    with pytest.raises(ValueError):
        QuaternaryDist(0.5, 0.5, 0.5, -0.5)
    with pytest.raises(ValueError):
        dmc_mutual_information(QuaternaryDist(0.4, 0.4, 0.1, 0.1), 0.2)


def test_dmc_bound_dominates_random_samples():
    rng = random.Random(20111)
    for _ in range(2000):
        raw = [rng.random() for _ in range(4)]
        s = sum(raw)
        f = QuaternaryDist(*(r / s for r in raw))
        tau = rng.uniform(0, (f.f01 + f.f10) / 2)
        res = dmc_mutual_information(f, tau)
        assert res.mutual_information <= res.closed_bound + 1e-9
