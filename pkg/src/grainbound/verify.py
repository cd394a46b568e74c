"""Exhaustive checks of the covering inequalities, the weight histograms,
the pairing construction and the numeric side conditions of the t=3 proof."""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .counting import hamming_ball, phi_count_lengths, realizable, weight_histogram_formulas
from .errors import ScaleLimitError
from .grain_model import (
    BitWord,
    RunProfile,
    derivative_int,
    image_ints,
    run_lengths_int,
    run_profile,
)

COVERING_LIMIT = 20


class Weighting(str, enum.Enum):
    PHI = "phi"    # 1 / |sphere(y)|
    BALL = "ball"  # 1 / V(weight(y'), t)


@lru_cache(maxsize=8)
def sphere_sizes(n: int, t: int) -> tuple[int, ...]:
    """|sphere_t(v)| for every n-bit word v."""
    cache: dict[tuple[int, ...], int] = {}
    out = []
    for v in range(1 << n):
        key = run_lengths_int(derivative_int(v, n))
        size = cache.get(key)
        if size is None:
            size = cache[key] = phi_count_lengths(key, t)
        out.append(size)
    return tuple(out)


@lru_cache(maxsize=8)
def ball_sizes(n: int, t: int) -> tuple[int, ...]:
    balls = [hamming_ball(w, t) for w in range(max(n, 1))]
    return tuple(balls[bin(derivative_int(v, n)).count("1")] for v in range(1 << n))


def _weights(n: int, t: int, weighting: Weighting) -> tuple[int, ...]:
    return sphere_sizes(n, t) if weighting is Weighting.PHI else ball_sizes(n, t)


# -- covering inequality -----------------------------------------------------

@dataclass(frozen=True)
class CoveringCheckReport:
    n: int
    t: int
    weighting: Weighting
    min_lhs: Fraction
    witness: BitWord
    holds: bool
    conjectural: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "weighting": self.weighting.value,
            "min_lhs": f"{self.min_lhs.numerator}/{self.min_lhs.denominator}",
            "witness": str(self.witness),
            "holds": self.holds,
            "conjectural": self.conjectural,
        }


def _covering_chunk(n: int, t: int, weighting: Weighting, lo: int, hi: int) -> tuple[Fraction, int]:
    denom = _weights(n, t, weighting)
    best: Optional[Fraction] = None
    best_v = lo
    for v in range(lo, hi):
        counts = Counter(denom[y] for y in image_ints(v, n, t))
        lhs = sum((Fraction(c, d) for d, c in counts.items()), Fraction(0))
        if best is None or lhs < best:
            best, best_v = lhs, v
    return best, best_v


def merge_minima(parts) -> tuple[Fraction, int]:
    """Order-independent merge of (min, witness) pairs; ties go to the smaller word."""
    return min(parts, key=lambda p: (p[0], p[1]))


def check_covering_inequality(
    n: int,
    t: int,
    weighting: Weighting | str = Weighting.PHI,
    *,
    unsafe: bool = False,
    workers: int = 1,
) -> CoveringCheckReport:
    """Minimum over all x of sum_{y in sphere_t(x)} w(y), in exact rationals.

    Only words starting with 0 are swept: complementing x complements its
    sphere and leaves every weight unchanged.
    """
    weighting = Weighting(weighting)
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    if n > COVERING_LIMIT and not unsafe:
        raise ScaleLimitError("n", n, COVERING_LIMIT)
    half = 1 << (n - 1)
    if workers <= 1 or half < 4096:
        best, best_v = _covering_chunk(n, t, weighting, 0, half)
    else:
        step = -(-half // (4 * workers))
        bounds = [(lo, min(lo + step, half)) for lo in range(0, half, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_covering_chunk, *zip(*[(n, t, weighting, lo, hi) for lo, hi in bounds])))
        best, best_v = merge_minima(parts)
    return CoveringCheckReport(
        n=n,
        t=t,
        weighting=weighting,
        min_lhs=best,
        witness=BitWord(n, best_v),
        holds=best >= 1,
        conjectural=t >= 4,
    )


def conjecture_evidence(n_max: int, t: int, weighting: Weighting | str) -> list[dict]:
    """Covering sweeps reported as evidence records, never as assertions."""
    records = []
    for n in range(1, n_max + 1):
        rep = check_covering_inequality(n, t, weighting)
        rec = rep.as_dict()
        rec["kind"] = "evidence"
        rec["counterexample"] = None if rep.holds else str(rep.witness)
        records.append(rec)
    return records


def arithmetic_mean_excess(x: BitWord, t: int) -> int:
    """sum_{y in sphere(x)} (|sphere(y)| - |sphere(x)|); nonpositive values suffice for covering."""
    sizes = sphere_sizes(x.n, t)
    own = sizes[x.value]
    return sum(sizes[y] - own for y in image_ints(x.value, x.n, t))


# -- weight histograms ---------------------------------------------------------

def weight_histogram(x: BitWord, t: int) -> list[int]:
    """Enumerated sphere elements grouped by derivative-weight drop, in pairs."""
    if t not in (2, 3):
        raise ValueError(f"t must be 2 or 3, got {t}")
    w = bin(derivative_int(x.value, x.n)).count("1")
    groups = [0] * (t + 1)
    for y in image_ints(x.value, x.n, t):
        drop = w - bin(derivative_int(y, x.n)).count("1")
        groups[min(drop // 2, t)] += 1
    return groups


def check_weight_histogram(x: BitWord, t: int) -> bool:
    return weight_histogram(x, t) == weight_histogram_formulas(run_profile(x), t)


# -- pairing ----------------------------------------------------------------------

@dataclass
class PairingReport:
    x: BitWord
    t: int
    F: frozenset
    G: frozenset
    mapping: dict
    injective: bool
    into_G: bool
    inequality_holds: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.injective and self.into_G and self.inequality_holds and not self.violations

    @property
    def image(self) -> frozenset:
        return frozenset(self.mapping.values())

    @property
    def unpaired(self) -> frozenset:
        return self.G - self.image


def _run_length_at(d: int, b: int) -> int:
    """Length of the 1-run of ``d`` whose last (lowest) bit is ``b``."""
    k = 0
    while (d >> (b + k)) & 1:
        k += 1
    return k


def _partner_mask(v: int, n: int, t: int, mask: int) -> tuple[int, list[str]]:
    """Grain mask of the partner pattern for the pattern ``mask`` that generates y."""
    d = derivative_int(v, n)
    dy = derivative_int(v ^ mask, n)
    problems = []
    out = 0
    s = mask
    while s:
        b = s & -s
        s ^= b
        i = b.bit_length() - 1
        trailing = i == 0 or not (d >> (i - 1)) & 1
        if not trailing:
            problems.append(f"grain at bit {i} acts on a non-trailing 1")
            out |= b
            continue
        length = _run_length_at(d, i)
        if t == 2:
            # A grain on the trailing 1 of a longer run pushes that 1 one step
            # right; it splits the run unless the pushed 1 lands against
            # another 1 of y'.
            shift = length >= 2 and i >= 1 and (i < 2 or not (dy >> (i - 2)) & 1)
        else:
            shift = length >= 2
        out |= (b << 1) if shift else b
    return out, problems


def build_pairing(x: BitWord, t: int) -> PairingReport:
    """Pair each sphere element with a larger sphere against one with a smaller sphere."""
    if t not in (2, 3):
        raise ValueError(f"pairing is constructed for t in (2, 3), got {t}")
    n, v = x.n, x.value
    sizes = sphere_sizes(n, t)
    own = sizes[v]
    images = image_ints(v, n, t)
    image_set = set(images)
    F = sorted(y for y in images if sizes[y] > own)
    G = sorted(y for y in images if sizes[y] <= own)
    G_set = set(G)
    mapping: dict[int, int] = {}
    violations = []
    inequality = True
    for y in F:
        mask = v ^ y
        partner, problems = _partner_mask(v, n, t, mask)
        violations.extend(f"{format(y, f'0{n}b')}: {p}" for p in problems)
        z = v ^ partner
        if z not in image_set:
            violations.append(f"{format(y, f'0{n}b')}: partner pattern leaves the sphere")
        mapping[y] = z
        sy, sz = sizes[y], sizes[z]
        # 1/sy + 1/sz >= 2/own, cleared of denominators
        if (sy + sz) * own < 2 * sy * sz:
            inequality = False
            violations.append(
                f"{format(y, f'0{n}b')} -> {format(z, f'0{n}b')}: "
                f"1/{sy} + 1/{sz} < 2/{own}"
            )
    injective = len(set(mapping.values())) == len(mapping)
    into_G = all(z in G_set for z in mapping.values())
    if not injective:
        violations.append("pairing is not injective")
    if not into_G:
        violations.append("pairing image leaves G")
    word = lambda u: BitWord(n, u)  # noqa: E731
    return PairingReport(
        x=x,
        t=t,
        F=frozenset(map(word, F)),
        G=frozenset(map(word, G)),
        mapping={word(a): word(b) for a, b in mapping.items()},
        injective=injective,
        into_G=into_G,
        inequality_holds=inequality,
        violations=violations,
    )


# -- t = 3 side conditions ------------------------------------------------------------

def U(a: int) -> int:
    """Hamming-ball size V(a, 3) for a >= 0."""
    return 1 + a + comb(a, 2) + comb(a, 3)


def _U_poly(a: int) -> Fraction:
    return 1 + a + Fraction(a * (a - 1), 2) + Fraction(a * (a - 1) * (a - 2), 6)


def u_main_rhs(omega: int, m: int, m1: int, m2: int) -> Fraction:
    """Lower bound on the ball-weighted sum built from the four B-groupings."""
    groups = weight_histogram_formulas(RunProfile(omega, m, m1, m2), 3)
    total = Fraction(0)
    for j, count in enumerate(groups):
        if count == 0:
            continue
        if count < 0:
            raise ArithmeticError(f"negative grouping {j} for {(omega, m, m1, m2)}: {count}")
        a = omega - 2 * j
        if a < 0:
            raise ArithmeticError(f"grouping {j} nonzero with weight {a} for {(omega, m, m1, m2)}")
        total += Fraction(count, U(a))
    return total


def g_exact(omega: int, m: int) -> Fraction:
    w = omega
    k = w - m
    return (
        Fraction(1 + m + comb(m, 2)) / _U_poly(w - 2)
        + Fraction((1 + m) * (w - m - 3), 2) / _U_poly(w - 4)
        + Fraction(k * k - 9 * k - 4, 6) / _U_poly(w - 6)
        - Fraction(w * w + w * m + m * m + 5, 6) / _U_poly(w)
    )


def g_float(omega: int, m: float) -> float:
    w = float(omega)

    def u(a: float) -> float:
        return 1.0 + a + a * (a - 1.0) / 2.0 + a * (a - 1.0) * (a - 2.0) / 6.0

    k = w - m
    return (
        (1.0 + m + m * (m - 1.0) / 2.0) / u(w - 2.0)
        + 0.5 * (1.0 + m) * (w - m - 3.0) / u(w - 4.0)
        + (k * k - 9.0 * k - 4.0) / 6.0 / u(w - 6.0)
        - (w * w + w * m + m * m + 5.0) / 6.0 / u(w)
    )


def realizable_profiles(omega: int):
    for m in range(omega + 1):
        for m1 in range(m + 1):
            for m2 in range(m - m1 + 1):
                if realizable(omega, m, m1, m2):
                    yield m, m1, m2


@dataclass
class T3SideReport:
    omega_exact: int
    omega_max: int
    exact_instances: int = 0
    min_exact_rhs: Optional[Fraction] = None
    min_exact_witness: Optional[tuple] = None
    g_instances: int = 0
    min_g: Optional[float] = None
    min_g_witness: Optional[tuple] = None
    convexity_checks: int = 0
    slope_checks: int = 0
    consistency_checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_t3_side_conditions(
    omega_max: int = 200, *, omega_exact: int = 16, tol: float = 1e-9
) -> T3SideReport:
    if omega_max < omega_exact + 1:
        raise ValueError(f"omega_max must be at least {omega_exact + 1}")
    rep = T3SideReport(omega_exact, omega_max)

    # (i) exact right-hand side for every small realizable profile
    for w in range(omega_exact + 1):
        for m, m1, m2 in realizable_profiles(w):
            try:
                rhs = u_main_rhs(w, m, m1, m2)
            except ArithmeticError as exc:
                rep.failures.append(("rhs", (w, m, m1, m2), str(exc)))
                continue
            rep.exact_instances += 1
            if rep.min_exact_rhs is None or rhs < rep.min_exact_rhs:
                rep.min_exact_rhs, rep.min_exact_witness = rhs, (w, m, m1, m2)
            if rhs < 1:
                rep.failures.append(("rhs", (w, m, m1, m2), str(rhs)))
            if w == m and rhs != 1:
                rep.failures.append(("rhs_diag", (w, m, m1, m2), str(rhs)))
            # (iv) the g-based lower bound stays below the exact value
            if w >= 6 and 1 <= m <= w - 1:
                rep.consistency_checks += 1
                if 1 + (w - m) * g_exact(w, m) > rhs:
                    rep.failures.append(("consistency", (w, m, m1, m2), str(rhs)))

    # (ii) g_w(m) >= 0 on the range used by the asymptotic argument
    for w in range(13, omega_max + 1):
        for m in range(1, w):
            g = g_float(w, m)
            rep.g_instances += 1
            if rep.min_g is None or g < rep.min_g:
                rep.min_g, rep.min_g_witness = g, (w, m)
            if g < -tol:
                rep.failures.append(("g", (w, m), g))

    # (iii) discrete convexity and the slope sign at m = w - 1
    for w in range(6, omega_max + 1):
        vals = [g_float(w, m) for m in range(1, w + 1)]
        for i in range(1, len(vals) - 1):
            rep.convexity_checks += 1
            if vals[i + 1] - 2 * vals[i] + vals[i - 1] < -tol:
                rep.failures.append(("convexity", (w, i + 1), vals[i + 1] - 2 * vals[i] + vals[i - 1]))
        if w >= 12:
            rep.slope_checks += 1
            back = vals[w - 2] - vals[w - 3]
            if back > tol:
                rep.failures.append(("slope", (w,), back))
    return rep
