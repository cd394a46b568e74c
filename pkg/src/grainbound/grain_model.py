"""Grain-error channel model on binary words.

Words are stored as Python ints, most significant bit first: position 1
(the first cell written on the track) is bit ``n - 1`` and position ``n`` is
bit 0.  All public interfaces use 1-based positions.

A length-2 grain whose right endpoint is ``j`` copies ``x[j-1]`` into
``x[j]``.  Such a grain only changes the word when ``j`` is in the support of
the derivative sequence, and for ``E`` inside that support the image is simply
``x XOR mask(E)``.  That identity drives every fast path in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass(frozen=True, order=True)
class BitWord:
    """A binary word of fixed length ``n`` packed into an int."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"word length must be nonnegative, got {self.n}")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_str(cls, s: str) -> BitWord:
        s = s.strip()
        if s and set(s) - {"0", "1"}:
            raise ValueError(f"not a binary string: {s!r}")
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitWord:
        return cls.from_str("".join("1" if b else "0" for b in bits))

    @classmethod
    def zeros(cls, n: int) -> BitWord:
        return cls(n, 0)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b") if self.n else ""

    def __len__(self) -> int:
        return self.n

    def bit(self, j: int) -> int:
        """Bit at 1-based position ``j``."""
        if not 1 <= j <= self.n:
            raise IndexError(f"position {j} outside 1..{self.n}")
        return (self.value >> (self.n - j)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.n - j)) & 1 for j in range(1, self.n + 1))

    @property
    def weight(self) -> int:
        return bin(self.value).count("1")

    def complement(self) -> BitWord:
        return BitWord(self.n, self.value ^ ((1 << self.n) - 1))


@dataclass(frozen=True)
class GrainPattern:
    """Right endpoints of the length-2 grains on a track of ``n`` cells."""

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = tuple(sorted(self.indices))
        object.__setattr__(self, "indices", idx)
        for a, b in zip(idx, idx[1:]):
            if b - a < 2:
                raise ValueError(f"grain pattern has overlapping grains at {a}, {b}")
        if idx and (idx[0] < 2 or idx[-1] > self.n):
            raise ValueError(f"grain indices must lie in 2..{self.n}, got {idx}")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    @property
    def mask(self) -> int:
        return positions_to_mask(self.indices, self.n)


@dataclass(frozen=True)
class RunProfile:
    """Statistics of the 1-runs of a derivative sequence."""

    omega: int
    m: int
    m1: int
    m2: int
    lengths: tuple[int, ...] = field(default=())

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> RunProfile:
        lengths = tuple(lengths)
        if any(l < 1 for l in lengths):
            raise ValueError(f"run lengths must be positive: {lengths}")
        return cls(
            omega=sum(lengths),
            m=len(lengths),
            m1=lengths.count(1),
            m2=lengths.count(2),
            lengths=lengths,
        )


# -- int-level primitives shared by the sweep code ---------------------------

def positions_to_mask(positions: Iterable[int], n: int) -> int:
    mask = 0
    for j in positions:
        mask |= 1 << (n - j)
    return mask


def mask_to_positions(mask: int, n: int) -> tuple[int, ...]:
    return tuple(j for j in range(1, n + 1) if (mask >> (n - j)) & 1)


def derivative_int(v: int, n: int) -> int:
    """Derivative of an ``n``-bit word as an ``(n-1)``-bit int.

    Bit ``n - j`` of the result is ``x[j-1] XOR x[j]``, so a grain at ``j``
    and the derivative entry it acts on share the same bit index.
    """
    if n < 2:
        return 0
    return (v ^ (v >> 1)) & ((1 << (n - 1)) - 1)


def run_lengths_int(d: int) -> tuple[int, ...]:
    """Lengths of the 1-runs of ``d`` read from the most significant bit."""
    if not d:
        return ()
    return tuple(len(r) for r in bin(d)[2:].split("0") if r)


def pattern_masks(support: int, t: int) -> list[int]:
    """All masks with at most ``t`` bits, drawn from ``support``, no two adjacent."""
    bits = []
    s = support
    while s:
        low = s & -s
        bits.append(low)
        s ^= low
    out = [0]
    if t <= 0:
        return out
    # stack of (next candidate index, mask, grains left)
    stack = [(0, 0, t)]
    k = len(bits)
    while stack:
        i, mask, left = stack.pop()
        for a in range(i, k):
            b = bits[a]
            if mask & (b >> 1):
                continue
            nm = mask | b
            out.append(nm)
            if left > 1:
                stack.append((a + 1, nm, left - 1))
    return out


def image_ints(v: int, n: int, t: int) -> list[int]:
    """Distinct elements of the sphere of radius ``t`` around ``v``."""
    return [v ^ m for m in pattern_masks(derivative_int(v, n), t)]


def apply_mask(v: int, mask: int) -> int:
    return (v & ~mask) | ((v >> 1) & mask)


# -- public operations -------------------------------------------------------

def derivative(x: BitWord) -> BitWord:
    if x.n < 2:
        return BitWord(0, 0)
    return BitWord(x.n - 1, derivative_int(x.value, x.n))


def apply_grain_pattern(x: BitWord, E: GrainPattern) -> BitWord:
    if E.n != x.n:
        raise ValueError(f"pattern built for n={E.n}, word has n={x.n}")
    return BitWord(x.n, apply_mask(x.value, E.mask))


def run_profile(x: BitWord) -> RunProfile:
    return RunProfile.from_lengths(run_lengths_int(derivative_int(x.value, x.n)))


def enumerate_grain_patterns(n: int, t: int) -> Iterator[GrainPattern]:
    """Every pattern in 2..n with at most ``t`` grains, lexicographic order."""

    def rec(prefix: tuple[int, ...], start: int) -> Iterator[GrainPattern]:
        yield GrainPattern(n, prefix)
        if len(prefix) == t:
            return
        for j in range(start, n + 1):
            yield from rec(prefix + (j,), j + 2)

    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    yield from rec((), 2)


def phi_set(x: BitWord, t: int) -> frozenset[BitWord]:
    """Sphere of all words reachable from ``x`` with at most ``t`` grains."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return frozenset(BitWord(x.n, y) for y in image_ints(x.value, x.n, t))


def phi_set_bruteforce(x: BitWord, t: int) -> frozenset[BitWord]:
    """Same sphere, computed by running every pattern in E_{n,t}."""
    return frozenset(apply_grain_pattern(x, E) for E in enumerate_grain_patterns(x.n, t))


def confusable(x1: BitWord, x2: BitWord, t: int) -> bool:
    if x1.n != x2.n:
        raise ValueError(f"length mismatch: {x1.n} != {x2.n}")
    if x1 == x2:
        return True
    a = set(image_ints(x1.value, x1.n, t))
    return any(y in a for y in image_ints(x2.value, x2.n, t))
