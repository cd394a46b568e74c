"""Cardinality upper bounds on grain-correcting codes and asymptotic rate curves.

Cardinality bounds are exact ``Fraction`` sums; rate curves are floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator

import numpy as np
from scipy.optimize import bisect

from .counting import binomial_conv, hamming_ball, phi3_closed, phi_count_lengths
from .errors import ScaleLimitError

# Largest n for which the t >= 4 fractional-covering sum is evaluated.
ENUM_LIMIT = 28


class Method(str, enum.Enum):
    FRAC_COVER_ENUM = "FRAC_COVER_ENUM"
    FRAC_COVER_CLOSED = "FRAC_COVER_CLOSED"
    MN1_CLOSED = "MN1_CLOSED"
    CONJ_V = "CONJ_V"


@dataclass(frozen=True)
class BoundValue:
    exact: Fraction
    floored: int
    method: Method
    conjectural: bool = False

    @classmethod
    def of(cls, exact: Fraction, method: Method, conjectural: bool = False) -> BoundValue:
        return cls(exact, math.floor(exact), method, conjectural)

    def as_dict(self) -> dict:
        return {
            "numerator": str(self.exact.numerator),
            "denominator": str(self.exact.denominator),
            "floored": self.floored,
            "method": self.method.value,
            "conjectural": self.conjectural,
        }


def _partitions(total: int, parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` parts, each <= ``largest``, nonincreasing."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // parts)
    for first in range(min(largest, total - parts + 1), lo - 1, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _orderings(parts: tuple[int, ...]) -> int:
    out = factorial(len(parts))
    for p in set(parts):
        out //= factorial(parts.count(p))
    return out


def _frac_cover_t1(n: int) -> Fraction:
    return 2 * sum((Fraction(comb(n - 1, w), 1 + w) for w in range(n)), Fraction(0))


def _frac_cover_t2(n: int) -> Fraction:
    total = Fraction(0)
    for w in range(n):
        for m in range(min(w, n - w) + 1):
            cnt = binomial_conv(w - 1, m - 1) * comb(n - w, m)
            if cnt:
                total += Fraction(cnt, 1 + m + comb(w, 2))
    return 2 * total


def _frac_cover_t3(n: int) -> Fraction:
    total = Fraction(0)
    for w in range(n):
        for m in range(min(w, n - w) + 1):
            outer = comb(n - w, m)
            for m1 in range(m + 1):
                cnt = comb(m, m1) * binomial_conv(w - m - 1, m - m1 - 1) * outer
                if cnt:
                    total += Fraction(cnt, phi3_closed(m1, m, w))
    return 2 * total


def _frac_cover_enum(n: int, t: int) -> Fraction:
    # Sphere size depends only on the multiset of 1-run lengths; an ordered
    # run sequence with m runs and weight w fits in C(n-w, m) ways.
    total = Fraction(0)
    for w in range(n):
        for m in range(min(w, n - w) + 1):
            gaps = comb(n - w, m)
            for parts in _partitions(w, m, w):
                total += Fraction(gaps * _orderings(parts), phi_count_lengths(parts, t))
    return 2 * total


def frac_cover_bound(n: int, t: int, *, enum_limit: int = ENUM_LIMIT) -> BoundValue:
    """Sum over all words of 1/|sphere|, an upper bound on M(n, t).

    Proven for t <= 3; for larger t the value is flagged conjectural.
    """
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    if t == 0:
        return BoundValue.of(Fraction(2**n), Method.FRAC_COVER_CLOSED)
    if t == 1:
        return BoundValue.of(_frac_cover_t1(n), Method.MN1_CLOSED)
    if t == 2:
        return BoundValue.of(_frac_cover_t2(n), Method.FRAC_COVER_CLOSED)
    if t == 3:
        return BoundValue.of(_frac_cover_t3(n), Method.FRAC_COVER_CLOSED)
    if n > enum_limit:
        raise ScaleLimitError("n", n, enum_limit)
    return BoundValue.of(_frac_cover_enum(n, t), Method.FRAC_COVER_ENUM, conjectural=True)


def conj_v_bound(n: int, t: int) -> BoundValue:
    """Hamming-ball weighted bound 2 * sum_w C(n-1, w) / V(w, t)."""
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    total = sum((Fraction(comb(n - 1, w), hamming_ball(w, t)) for w in range(n)), Fraction(0))
    return BoundValue.of(2 * total, Method.CONJ_V, conjectural=t >= 4)


# -- asymptotic rates --------------------------------------------------------

def binary_entropy(xi: float) -> float:
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"binary entropy needs 0 <= xi <= 1, got {xi}")
    if xi == 0.0 or xi == 1.0:
        return 0.0
    return -xi * math.log2(xi) - (1.0 - xi) * math.log2(1.0 - xi)


def _entropy_np(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p)
    return np.nan_to_num(h, nan=0.0)


def _check_tau(tau: float) -> None:
    if not 0.0 <= tau <= 0.5:
        raise ValueError(f"tau must lie in [0, 1/2], got {tau}")


def info_rate_bound(tau: float) -> float:
    """Information-theoretic upper bound on the asymptotic rate R(tau)."""
    _check_tau(tau)
    h = binary_entropy
    return 0.5 * (1.0 + h(0.5 - tau) - (0.5 + tau) * h(2.0 * tau / (0.5 + tau)))


@dataclass(frozen=True)
class QuaternaryDist:
    f00: float
    f11: float
    f01: float
    f10: float

    def __post_init__(self):
        vals = (self.f00, self.f11, self.f01, self.f10)
        if any(v < 0.0 or v > 1.0 for v in vals):
            raise ValueError(f"frequencies must lie in [0, 1]: {vals}")
        if abs(sum(vals) - 1.0) > 1e-9:
            raise ValueError(f"frequencies must sum to 1, got {sum(vals)}")


@dataclass(frozen=True)
class DmcResult:
    mutual_information: float
    closed_bound: float
    p: float


def _entropy_bits(probs) -> float:
    return -sum(q * math.log2(q) for q in probs if q > 0.0)


def dmc_mutual_information(f: QuaternaryDist, tau: float) -> DmcResult:
    """I(X;Y) for input ``f`` through the two-pair collapse channel.

    Inputs 00 and 11 pass unchanged; 01 becomes 00 and 10 becomes 11 with
    probability ``p = 2 tau / (f01 + f10)``.
    """
    if tau < 0.0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    mixed = f.f01 + f.f10
    if mixed == 0.0:
        if tau != 0.0:
            raise ValueError("f01 + f10 = 0 requires tau = 0")
        p = 0.0
    else:
        p = 2.0 * tau / mixed
    if p > 1.0 + 1e-12:
        raise ValueError(f"transition probability p = {p} exceeds 1")
    p = min(p, 1.0)
    y = (f.f00 + p * f.f01, f.f11 + p * f.f10, (1.0 - p) * f.f01, (1.0 - p) * f.f10)
    info = _entropy_bits(y) - mixed * binary_entropy(p)
    x = max(mixed - 2.0 * tau, 0.0)
    bound = 1.0 + binary_entropy(min(x, 1.0))
    if mixed > 0.0:
        bound -= mixed * binary_entropy(min(2.0 * tau / mixed, 1.0))
    return DmcResult(info, bound, p)


def _eta(nu: np.ndarray, tau: float) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(nu > 0, tau / nu, 0.0)
    return np.where(nu <= 2.0 * tau, nu, nu * _entropy_np(ratio))


def conjectured_rate_grid(tau: float, points: int = 200_001) -> float:
    """max over a uniform nu-grid on [0, 1] of h(nu) - eta(nu)."""
    _check_tau(tau)
    nu = np.linspace(0.0, 1.0, points)
    return float(np.max(_entropy_np(nu) - _eta(nu, tau)))


def nu_star(tau: float) -> float:
    return 0.25 * (tau + 1.0 + math.sqrt(tau * tau - 6.0 * tau + 1.0))


def conjectured_rate_bound(tau: float, *, verify: bool = True, tol: float = 1e-6) -> float:
    """Asymptotic rate implied by the Hamming-ball weighted bound."""
    _check_tau(tau)
    if tau >= 1.0 / 6.0:
        value = binary_entropy(1.0 / 3.0) - 1.0 / 3.0
    else:
        nu = nu_star(tau)
        value = binary_entropy(nu) - nu * binary_entropy(tau / nu)
    if verify:
        grid = conjectured_rate_grid(tau)
        if abs(grid - value) > tol:
            raise ArithmeticError(
                f"closed form {value!r} disagrees with grid maximum {grid!r} at tau={tau}"
            )
    return value


@dataclass(frozen=True)
class RateCurvePoint:
    tau: float
    info_bound: float
    conj_bound: float


def rate_curve(step: float = 0.001) -> list[RateCurvePoint]:
    if not 0.0 < step <= 0.5:
        raise ValueError(f"grid step must be in (0, 1/2], got {step}")
    count = int(round(0.5 / step))
    taus = [min(i * step, 0.5) for i in range(count + 1)]
    if taus[-1] < 0.5:
        taus.append(0.5)
    return [
        RateCurvePoint(tau, info_rate_bound(tau), conjectured_rate_bound(tau, verify=False))
        for tau in taus
    ]


def bound_crossing(lo: float = 0.15, hi: float = 0.30, xtol: float = 1e-6) -> float:
    """tau where the conjectured rate bound overtakes the information bound."""

    def gap(tau: float) -> float:
        return conjectured_rate_bound(tau, verify=False) - info_rate_bound(tau)

    if gap(lo) * gap(hi) >= 0.0:
        raise ArithmeticError(f"no sign change of the bound difference on [{lo}, {hi}]")
    return bisect(gap, lo, hi, xtol=xtol)
