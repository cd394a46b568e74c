"""Sphere sizes and word-class cardinalities, all in exact integers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .grain_model import RunProfile


def binomial_conv(a: int, b: int) -> int:
    """Binomial coefficient with C(-1, -1) = 1 and zero outside the usual range."""
    if a == -1 and b == -1:
        return 1
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def hamming_ball(n: int, t: int) -> int:
    if n < 0 or t < 0:
        raise ValueError(f"need n, t >= 0, got n={n}, t={t}")
    if t >= n:
        return 1 << n
    return sum(comb(n, j) for j in range(t + 1))


@lru_cache(maxsize=None)
def _run_poly(length: int, t: int) -> tuple[int, ...]:
    # ways to pick k non-consecutive positions from a run of `length` ones
    top = min(t, (length + 1) // 2)
    return tuple(comb(length - k + 1, k) for k in range(top + 1))


@lru_cache(maxsize=None)
def _count_from_lengths(lengths: tuple[int, ...], t: int) -> int:
    # Truncated product of per-run generating polynomials; coefficient k of
    # the product is the number of k-grain patterns, so summing up to t is
    # the sum over all (t_1..t_m) with total <= t.
    acc = [1]
    for length in lengths:
        poly = _run_poly(length, t)
        nxt = [0] * min(t + 1, len(acc) + len(poly) - 1)
        for i, a in enumerate(acc):
            if not a:
                continue
            for k, c in enumerate(poly):
                if i + k > t:
                    break
                nxt[i + k] += a * c
        acc = nxt
    return sum(acc)


def phi_count_lengths(lengths: Sequence[int], t: int) -> int:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return _count_from_lengths(tuple(sorted(lengths)), t)


def phi_count_general(profile: RunProfile, t: int) -> int:
    """Size of the radius-``t`` sphere of any word with this run profile."""
    return phi_count_lengths(profile.lengths, t)


def phi_count_closed(profile: RunProfile, t: int) -> int:
    w, m = profile.omega, profile.m
    if t == 1:
        return 1 + w
    if t == 2:
        return 1 + m + comb(w, 2)
    if t == 3:
        return 1 + profile.m1 + m * (w - 3) + comb(w, 3) - comb(w, 2) + 2 * w
    raise ValueError(f"closed form only exists for t in 1..3, got {t}")


def phi3_closed(m1: int, m: int, w: int) -> int:
    return 1 + m1 + m * (w - 3) + comb(w, 3) - comb(w, 2) + 2 * w


@dataclass(frozen=True)
class ProfileClass:
    """Derivative sequences of length n-1 with weight omega and m runs of ones.

    ``m1`` optionally fixes how many of those runs have length 1.
    """

    n: int
    omega: int
    m: int
    m1: Optional[int] = None

    def __post_init__(self):
        if not 0 <= self.omega <= max(self.n - 1, 0):
            raise ValueError(f"omega={self.omega} outside 0..{self.n - 1}")
        if not 0 <= self.m <= min(self.omega, self.n - self.omega):
            raise ValueError(f"m={self.m} outside 0..min(omega, n-omega)")
        if self.m1 is not None and not 0 <= self.m1 <= self.m:
            raise ValueError(f"m1={self.m1} outside 0..m")


def profile_class_count(cls: ProfileClass) -> int:
    """Number of derivative sequences in the class (each lifts to 2 words)."""
    n, w, m = cls.n, cls.omega, cls.m
    if cls.m1 is None:
        return binomial_conv(w - 1, m - 1) * comb(n - w, m)
    m1 = cls.m1
    return comb(m, m1) * binomial_conv(w - m - 1, m - m1 - 1) * comb(n - w, m)


def realizable(omega: int, m: int, m1: int, m2: int, n: Optional[int] = None) -> bool:
    """Whether some derivative sequence has this run profile.

    With ``n`` given the sequence must fit in length ``n - 1``; otherwise any
    length is allowed.
    """
    if min(omega, m, m1, m2) < 0 or m1 + m2 > m:
        return False
    longer = m - m1 - m2
    if longer == 0:
        if omega != m1 + 2 * m2:
            return False
    elif omega < m1 + 2 * m2 + 3 * longer:
        return False
    if n is not None and m > 0 and omega + m - 1 > n - 1:
        return False
    if n is not None and omega > max(n - 1, 0):
        return False
    return True


def weight_histogram_formulas(profile: RunProfile, t: int) -> list[int]:
    """Counts of sphere elements grouped by drop in derivative weight.

    t=2 gives [drop 0-1, drop 2-3, drop 4]; t=3 gives
    [drop 0-1, drop 2-3, drop 4-5, drop 6].
    """
    w, m, m1, m2 = profile.omega, profile.m, profile.m1, profile.m2
    k = w - m  # non-trailing ones
    if t == 2:
        return [
            1 + m + comb(m, 2),
            k * (m + 1) - (m - m1),
            comb(k, 2) - k + (m - m1),
        ]
    if t == 3:
        return [
            1 + m + comb(m, 2) + comb(m, 3),
            k * (1 + m + comb(m, 2)) - m * (m - m1),
            (1 + m) * (comb(k, 2) - k) - (w - 2 * m - 3) * (m - m1) - m2,
            comb(k, 3) - k * (k + 1) + k * (m - m1) + 4 * (w - 2 * m + m1) + m2,
        ]
    raise ValueError(f"weight histograms are only tabulated for t in (2, 3), got {t}")
