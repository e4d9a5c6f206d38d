"""Windowed integer sets and the elementary constructions on them.

Every set here is a finite truncation of a subset of the integers to a
half-open window ``[lo, hi)``. Membership is stored in a Python ``int`` used
as a bitmap: bit ``k`` set means ``lo + k`` is a member. Generators document
their truncation as intersection with the output window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundExceeded, EmptyFamily

SUMSET_BOUND = 24


def _mask(width: int) -> int:
    return (1 << width) - 1 if width > 0 else 0


def _bit_positions(bits: int) -> np.ndarray:
    if not bits:
        return np.empty(0, dtype=np.int64)
    raw = bits.to_bytes((bits.bit_length() + 7) // 8, "little")
    unpacked = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(unpacked).astype(np.int64)


@dataclass(frozen=True)
class WindowedSet:
    """Immutable subset of ``[lo, hi)`` backed by an integer bitmap."""

    lo: int
    hi: int
    bits: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty-or-inverted window [{self.lo}, {self.hi})")
        if self.bits < 0 or self.bits.bit_length() > self.hi - self.lo:
            raise ValueError("bitmap does not fit the window")

    # construction

    @classmethod
    def empty(cls, lo: int, hi: int) -> WindowedSet:
        return cls(lo, hi, 0)

    @classmethod
    def full(cls, lo: int, hi: int) -> WindowedSet:
        return cls(lo, hi, _mask(hi - lo))

    @classmethod
    def from_iterable(cls, members: Iterable[int], lo: int, hi: int) -> WindowedSet:
        """Build from members; anything outside the window is dropped."""
        bits = 0
        for n in members:
            if lo <= n < hi:
                bits |= 1 << (n - lo)
        return cls(lo, hi, bits)

    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], lo: int, hi: int) -> WindowedSet:
        return cls.from_iterable((n for n in range(lo, hi) if pred(n)), lo, hi)

    @classmethod
    def from_mask(cls, mask: np.ndarray, lo: int) -> WindowedSet:
        """Build from a boolean array whose entry ``k`` is membership of ``lo + k``."""
        mask = np.asarray(mask, dtype=bool)
        packed = np.packbits(mask, bitorder="little").tobytes()
        return cls(lo, lo + len(mask), int.from_bytes(packed, "little"))

    # set protocol

    @property
    def width(self) -> int:
        return self.hi - self.lo

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, n: object) -> bool:
        if not isinstance(n, (int, np.integer)):
            return False
        return self.lo <= n < self.hi and (self.bits >> (int(n) - self.lo)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        lo = self.lo
        return (lo + int(k) for k in _bit_positions(self.bits))

    def to_array(self) -> np.ndarray:
        """Sorted members as an int64 array (python ints for huge values)."""
        return _bit_positions(self.bits) + self.lo

    def members(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        shown = self.members()[:12]
        tail = ", ..." if len(self) > 12 else ""
        return f"WindowedSet([{self.lo}, {self.hi}), {{{', '.join(map(str, shown))}{tail}}})"

    def min(self) -> int | None:
        if not self.bits:
            return None
        return self.lo + ((self.bits & -self.bits).bit_length() - 1)

    def max(self) -> int | None:
        if not self.bits:
            return None
        return self.lo + self.bits.bit_length() - 1

    # windows and algebra

    def restrict(self, lo: int, hi: int) -> WindowedSet:
        """Re-window to ``[lo, hi)``; members outside the new window are dropped."""
        hi = max(hi, lo)
        bits = self.bits
        if lo >= self.lo:
            bits >>= lo - self.lo
        else:
            bits <<= self.lo - lo
        return WindowedSet(lo, hi, bits & _mask(hi - lo))

    def _aligned(self, other: WindowedSet, lo: int, hi: int) -> tuple[int, int]:
        return self.restrict(lo, hi).bits, other.restrict(lo, hi).bits

    def __and__(self, other: WindowedSet) -> WindowedSet:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return WindowedSet(lo, lo, 0)
        a, b = self._aligned(other, lo, hi)
        return WindowedSet(lo, hi, a & b)

    def __or__(self, other: WindowedSet) -> WindowedSet:
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        a, b = self._aligned(other, lo, hi)
        return WindowedSet(lo, hi, a | b)

    def __sub__(self, other: WindowedSet) -> WindowedSet:
        _, b = self._aligned(other, self.lo, self.hi)
        return WindowedSet(self.lo, self.hi, self.bits & ~b)

    def complement(self) -> WindowedSet:
        return WindowedSet(self.lo, self.hi, _mask(self.width) & ~self.bits)

    def shift(self, k: int) -> WindowedSet:
        """Translate members and window by ``k``."""
        return WindowedSet(self.lo + k, self.hi + k, self.bits)

    def issubset(self, other: WindowedSet) -> bool:
        """Exact containment; members of ``self`` outside ``other``'s window count as missing."""
        return not (self - other).bits

    def isdisjoint(self, other: WindowedSet) -> bool:
        return not (self & other).bits

    def same_members(self, other: WindowedSet) -> bool:
        """Equality of member sets, ignoring windows."""
        return frozenset(self) == frozenset(other)


@dataclass(frozen=True)
class GapSumSpec:
    """A finite sequence ``p`` with gap parameter ``d``.

    ``p`` is a sequence, so order matters and duplicates are separate terms.
    """

    p: tuple[int, ...]
    d: int

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if any(x < 1 for x in self.p):
            raise ValueError(f"sequence entries must be >= 1, got {self.p}")
        if self.d < 1:
            raise ValueError(f"gap parameter must be >= 1, got {self.d}")


@dataclass(frozen=True)
class IntervalFamily:
    """Finite sequence of half-open integer intervals ``[a_k, b_k)``."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ivs = tuple((int(a), int(b)) for a, b in self.intervals)
        for a, b in ivs:
            if a >= b:
                raise ValueError(f"interval [{a}, {b}) is empty")
        object.__setattr__(self, "intervals", ivs)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @classmethod
    def growing(cls, start: int, lengths: Sequence[int], spacing: int = 0) -> IntervalFamily:
        """Consecutive intervals of the given lengths, ``spacing`` apart."""
        ivs, a = [], start
        for n in lengths:
            ivs.append((a, a + n))
            a += n + spacing
        return cls(tuple(ivs))


def delta_set(s: WindowedSet) -> WindowedSet:
    """Positive differences ``{b - a : a, b in s, b > a}`` on window ``[1, hi - lo)``."""
    width = s.width
    out_lo, out_hi = 1, max(1, width)
    acc = 0
    bits = s.bits
    for k in _bit_positions(bits):
        acc |= bits >> int(k)
    # bit t of acc (t >= 1) is the difference t; drop t = 0
    return WindowedSet(out_lo, out_hi, acc >> 1)


def sumset(e: Iterable[int], bound: int = SUMSET_BOUND) -> WindowedSet:
    """All sums of nonempty subsets of the distinct positive integers ``e``.

    The result lives on ``[1, sum(e) + 1)``. ``bound`` caps ``|e|`` so that the
    2**|e| subsets stay enumerable by an independent checker.
    """
    e = list(e)
    if len(set(e)) != len(e):
        raise ValueError(f"sumset needs distinct elements, got {sorted(e)}")
    if any(x < 1 for x in e):
        raise ValueError("sumset elements must be positive")
    if len(e) > bound:
        raise BoundExceeded(f"|E| = {len(e)} exceeds the enumeration cap {bound}")
    reach = 0  # bit v: v is a sum of a nonempty subset
    for x in e:
        reach |= (reach << x) | (1 << x)
    return WindowedSet(1, sum(e) + 1, reach >> 1)


def sh_d(spec: GapSumSpec, cap: int) -> WindowedSet:
    """``SH_d(P)`` intersected with ``[1, cap]``.

    Frontier DP: ``frontier[i]`` is the bitmap of sums whose last chosen
    index is ``i``. Index ``i`` may follow any chosen index ``k`` with
    ``i - k <= d``, or start a fresh sum (leading zeros are free). Sums
    above ``cap`` are masked off as they are produced.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    mask = _mask(cap + 1)
    d = spec.d
    frontier: list[int] = []
    result = 0
    for i, p in enumerate(spec.p):
        prev = 1  # bit 0: the empty prefix
        for f in frontier[max(0, i - d) : i]:
            prev |= f
        cur = (prev << p) & mask
        frontier.append(cur)
        result |= cur
    return WindowedSet(1, cap + 1, result >> 1)


def sh_d_oracle(spec: GapSumSpec, cap: int, max_len: int = 20) -> WindowedSet:
    """Brute-force ``SH_d(P) ∩ [1, cap]`` by enumerating index subsets."""
    from itertools import combinations

    n = len(spec.p)
    if n > max_len:
        raise BoundExceeded(f"|P| = {n} exceeds the oracle cap {max_len}")
    found = set()
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if all(j - i <= spec.d for i, j in pairwise(idx)):
                total = sum(spec.p[i] for i in idx)
                if total <= cap:
                    found.add(total)
    return WindowedSet.from_iterable(found, 1, cap + 1)


def upper_density(s: WindowedSet, fam: IntervalFamily) -> Fraction:
    """Largest relative density ``|s ∩ [a, b)| / (b - a)`` over the family."""
    if len(fam) == 0:
        raise EmptyFamily("density over an empty interval family")
    best = Fraction(0)
    for a, b in fam:
        if a < s.lo or b > s.hi:
            raise ValueError(f"interval [{a}, {b}) leaves window [{s.lo}, {s.hi})")
        best = max(best, Fraction(len(s.restrict(a, b)), b - a))
    return best


def max_gap(s: WindowedSet, lo: int | None = None, hi: int | None = None) -> int | float:
    """Largest gap between consecutive members within ``[lo, hi)``.

    The range ends ``lo`` and ``hi - 1`` act as sentinels, so a long empty
    stretch at either boundary counts. Returns ``math.inf`` when no member
    lies in the range.
    """
    lo = s.lo if lo is None else lo
    hi = s.hi if hi is None else hi
    if lo < s.lo or hi > s.hi:
        raise ValueError(f"range [{lo}, {hi}) leaves window [{s.lo}, {s.hi})")
    pts =s.restrict(lo, hi).to_array()
    if len(pts) == 0:
        return math.inf
    gaps = [int(pts[0]) - lo, hi - 1 - int(pts[-1])]
    if len(pts) > 1:
        gaps.append(int(np.diff(pts).max()))
    return max(gaps)


def partial_sums(p: Sequence[int], start: int = 0) -> list[int]:
    """``[s, s + p1, s + p1 + p2, ...]``."""
    out = [start]
    for x in p:
        out.append(out[-1] + x)
    return out
