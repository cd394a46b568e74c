from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from grainbound.counting import (
    ProfileClass,
    binomial_conv,
    hamming_ball,
    phi_count_closed,
    phi_count_general,
    phi_count_lengths,
    profile_class_count,
    realizable,
    weight_histogram_formulas,
)
from grainbound.grain_model import RunProfile, phi_set, run_profile, run_lengths_int

from conftest import words_upto


def sphere_size_by_runs(lengths, t):
    """Independent count: choose non-adjacent positions inside each run, at most t overall."""
    cells = []
    pos = 0
    for length in lengths:
        cells.extend(range(pos, pos + length))
        pos += length + 1
    total = 0
    for k in range(t + 1):
        for sub in combinations(cells, k):
            if all(b - a >= 2 for a, b in zip(sub, sub[1:])):
                total += 1
    return total


@pytest.mark.parametrize("n, t, v", [(0, 3, 1), (4, 2, 11), (3, 3, 8), (5, 0, 1), (2, 9, 4)])
def test_hamming_ball(n, t, v):
    assert hamming_ball(n, t) == v


@pytest.mark.parametrize("a, b, v", [(-1, -1, 1), (5, -1, 0), (4, 2, 6), (-1, 0, 0), (3, 4, 0)])
def test_binomial_conv(a, b, v):
    assert binomial_conv(a, b) == v


def test_phi_count_lengths_examples():
    assert phi_count_lengths([], 4) == 1
    assert phi_count_lengths([2], 2) == 3
    assert phi_count_lengths([1, 1], 2) == 4


def test_phi_count_closed_examples():
    assert phi_count_closed(RunProfile(2, 1, 0, 1), 2) == 3
    assert phi_count_closed(RunProfile(2, 2, 2, 0), 2) == 4
    assert phi_count_closed(RunProfile(2, 1, 0, 1), 3) == 3
    with pytest.raises(ValueError):
        phi_count_closed(RunProfile(2, 1, 0, 1), 4)


@given(st.lists(st.integers(1, 6), max_size=4), st.integers(0, 5))
def test_product_count_matches_subset_count(lengths, t):
    assert phi_count_lengths(lengths, t) == sphere_size_by_runs(lengths, t)


def test_counts_agree_with_enumerated_spheres():
    for x in words_upto(10):
        prof = run_profile(x)
        for t in range(6):
            size = len(phi_set(x, t))
            assert phi_count_general(prof, t) == size
            if 1 <= t <= 3:
                assert phi_count_closed(prof, t) == size


@pytest.mark.parametrize(
    "cls, count",
    [(ProfileClass(4, 2, 1), 2), (ProfileClass(7, 0, 0), 1), (ProfileClass(4, 2, 2, 2), 1)],
)
def test_profile_class_examples(cls, count):
    assert profile_class_count(cls) == count


def test_profile_class_counts_by_enumeration():
    for n in range(1, 13):
        seen = Counter()
        seen1 = Counter()
        for d in range(1 << (n - 1)):
            lengths = run_lengths_int(d)
            w, m = sum(lengths), len(lengths)
            seen[w, m] += 1
            seen1[w, m, lengths.count(1)] += 1
        total = 0
        for w in range(n):
            for m in range(min(w, n - w) + 1):
                c = profile_class_count(ProfileClass(n, w, m))
                assert c == seen[w, m]
                total += c
                for m1 in range(m + 1):
                    assert profile_class_count(ProfileClass(n, w, m, m1)) == seen1[w, m, m1]
        assert total == 2 ** (n - 1)


def test_realizable_against_generated_profiles():
    for n in range(1, 15):
        found = set()
        for d in range(1 << (n - 1)):
            p = RunProfile.from_lengths(run_lengths_int(d))
            found.add((p.omega, p.m, p.m1, p.m2))
        for w in range(n + 1):
            for m in range(w + 1):
                for m1 in range(m + 1):
                    for m2 in range(m - m1 + 1):
                        assert realizable(w, m, m1, m2, n) == ((w, m, m1, m2) in found), (n, w, m, m1, m2)


def test_realizable_without_length():
    assert realizable(0, 0, 0, 0)
    assert realizable(5, 1, 0, 0)
    assert not realizable(4, 2, 2, 0)  # two runs of length 1 weigh 2
    assert not realizable(3, 1, 0, 1)
    assert not realizable(2, 1, 0, 0)


@pytest.mark.parametrize(
    "profile, t, expected",
    [
        (RunProfile(2, 1, 0, 1), 2, [2, 1, 0]),
        (RunProfile(2, 1, 0, 1), 3, [2, 1, 0, 0]),
        (RunProfile(0, 0, 0, 0), 2, [1, 0, 0]),
        (RunProfile(0, 0, 0, 0), 3, [1, 0, 0, 0]),
    ],
)
def test_histogram_formula_examples(profile, t, expected):
    assert weight_histogram_formulas(profile, t) == expected


@pytest.mark.parametrize("m", range(0, 7))
def test_histogram_formula_all_singletons(m):
    assert weight_histogram_formulas(RunProfile(m, m, m, 0), 2) == [1 + m + comb(m, 2), 0, 0]


def partitions(total, largest=None):
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def test_closed_equals_general_on_all_run_multisets():
    for w in range(21):
        for lengths in partitions(w):
            prof = RunProfile.from_lengths(lengths)
            assert realizable(prof.omega, prof.m, prof.m1, prof.m2)
            for t in (1, 2, 3):
                assert phi_count_closed(prof, t) == phi_count_general(prof, t), lengths
