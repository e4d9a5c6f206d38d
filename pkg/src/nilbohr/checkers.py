"""Brute-force tests for the dual (star) classes over finite universes.

``Δ*_r`` and ``S*_r`` are decided exhaustively once the universe is capped;
``SH_d*`` can only be refuted, so its checker samples sequences and reports
"not refuted at budget" rather than a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .dynamics import HALF, BohrTarget, in_arc
from .errors import BudgetExceeded, PreconditionViolated
from .setcore import GapSumSpec, WindowedSet, delta_set, sh_d, sumset

BUDGET = 10**8


@dataclass
class StarReport:
    check: str
    verdict: str  # "holds" | "refuted"
    witness: tuple[int, ...] | None
    universe: tuple[int, int]  # inclusive
    r_or_d: int
    enumerated: int
    exhaustive: bool = True
    seed: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    @property
    def label(self) -> str:
        if self.holds and not self.exhaustive:
            return "holds (not refuted at budget)"
        return self.verdict


def _budget(m_choices: int, r: int, budget: int) -> None:
    n = math.comb(m_choices, r)
    if n > budget:
        raise BudgetExceeded(f"C({m_choices}, {r}) = {n} exceeds budget {budget}")


def check_sumset_star(a: WindowedSet, r: int, m: int, budget: int = BUDGET) -> StarReport:
    """Does ``a`` meet ``FS(E)`` for every ``E ⊆ [1, m]`` with ``|E| = r``?

    Candidates are scanned in lexicographic order; the first miss is the witness.
    """
    _budget(m, r, budget)
    seen = 0
    for e in combinations(range(1, m + 1), r):
        seen += 1
        if sumset(e).isdisjoint(a):
            return StarReport("sumset_star", "refuted", e, (1, m), r, seen)
    return StarReport("sumset_star", "holds", None, (1, m), r, seen)


def check_delta_star(a: WindowedSet, r: int, m: int, budget: int = BUDGET) -> StarReport:
    """Does ``a`` meet ``Δ(S)`` for every ``S ⊆ [0, m]`` with ``|S| = r``?"""
    _budget(m + 1, r, budget)
    seen = 0
    for s in combinations(range(m + 1), r):
        seen += 1
        if not any(y - x in a for x, y in combinations(s, 2)):
            return StarReport("delta_star", "refuted", s, (0, m), r, seen)
    return StarReport("delta_star", "holds", None, (0, m), r, seen)


def adversarial_sequences(length: int, top: int):
    """Constant runs ``(c, ..., c)`` then doublings ``(c, 2c, 4c, ...)`` with total <= top."""
    for c in range(1, top // length + 1):
        yield (c,) * length
    for c in range(1, top + 1):
        seq = tuple(c << i for i in range(length))
        if sum(seq) > top:
            break
        yield seq


def check_shd_star_sampled(a: WindowedSet, d: int, length: int, trials: int,
                           seed: int = 0) -> StarReport:
    """Hunt for a finite ``P`` with ``SH_d(P) ∩ a = ∅``.

    Every candidate has total at most ``a.hi - 1``, so ``SH_d(P)`` is
    computed in full, never truncated. The adversarial family is tried
    first, then ``trials`` sequences with entries drawn uniformly from
    ``[1, (a.hi - 1) // length]`` by a PCG64 generator seeded with ``seed``.
    """
    if length < 1 or d < 1:
        raise ValueError("length and d must be >= 1")
    top = a.hi - 1
    if top < length:
        raise ValueError(f"window top {top} too small for sequences of length {length}")
    rng = np.random.Generator(np.random.PCG64(seed))
    top_entry = top // length

    def candidates():
        yield from adversarial_sequences(length, top)
        for _ in range(trials):
            yield tuple(int(x) for x in rng.integers(1, top_entry + 1, size=length))

    seen = 0
    params = {"length": length, "trials": trials}
    for p in candidates():
        seen += 1
        if sh_d(GapSumSpec(p, d), sum(p)).isdisjoint(a):
            return StarReport("shd_star_sampled", "refuted", p, (1, top), d, seen,
                              exhaustive=False, seed=seed, params=params)
    return StarReport("shd_star_sampled", "holds", None, (1, top), d, seen,
                      exhaustive=False, seed=seed, params=params)


@dataclass
class ClassIdentityReport:
    m: int
    triples: int
    pairs: int
    mapping_ok: bool
    families_equal: bool
    progressions: int
    progressions_ok: bool
    literal_families_equal: bool
    delta_family_size: int
    fs_family_size: int
    mismatch: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.mapping_ok and self.families_equal and self.progressions_ok


def class_identity_delta3_fs2(m: int) -> ClassIdentityReport:
    """Compare ``{Δ(S) : S ⊆ [0, m], |S| = 3}`` with ``{FS(E) : |E| = 2}`` exhaustively.

    The correspondence is ``Δ({a, b, c}) = FS({b - a, c - b})``; universes are
    matched by requiring ``FS(E) ⊆ [1, m]``, i.e. ``x + y <= m``. When
    ``b - a == c - b`` the triple is an arithmetic progression and
    ``Δ(S) = {x, 2x}`` is not ``FS`` of any two-element set. Those triples are
    counted separately and checked to be exactly the progressions.
    """
    if m > 200:
        raise ValueError("m must be <= 200")
    delta_family, ap_family = set(), set()
    mapping_ok, progressions_ok = True, True
    triples = progressions = 0
    mismatch = None
    for a, b, c in combinations(range(m + 1), 3):
        triples += 1
        dset = frozenset({b - a, c - b, c - a})
        x, y = b - a, c - b
        if x == y:
            progressions += 1
            ap_family.add(dset)
            if dset != frozenset({x, 2 * x}):
                progressions_ok = False
            continue
        delta_family.add(dset)
        if dset != frozenset(sumset((x, y))):
            mapping_ok = False
            mismatch = mismatch or ((a, b, c), (x, y))

    fs_family, pairs = set(), 0
    for x, y in combinations(range(1, m + 1), 2):
        if x + y <= m:
            pairs += 1
            fs_family.add(frozenset(sumset((x, y))))
    if ap_family & fs_family:
        progressions_ok = False
    return ClassIdentityReport(
        m=m, triples=triples, pairs=pairs, mapping_ok=mapping_ok,
        families_equal=delta_family == fs_family, progressions=progressions,
        progressions_ok=progressions_ok,
        literal_families_equal=(delta_family | ap_family) == fs_family,
        delta_family_size=len(delta_family), fs_family_size=len(fs_family),
        mismatch=mismatch,
    )


def pigeonhole_count(t: BohrTarget) -> int:
    """Smallest set size forcing a difference into the Bohr_0 target.

    Coordinate ``i`` is cut into ``ceil(1/r_i)`` half-open cells of width at
    most ``r_i`` (one cell when the arc is the whole circle).
    """
    cells = 1
    for r in t.radii:
        cells *= 1 if r >= HALF else math.ceil(1 / r)
    return cells + 1


def bohr_member(t: BohrTarget, n: int) -> bool:
    return all(in_arc(n * a, c, r) for a, c, r in zip(t.angles, t.centers, t.radii))


@dataclass
class PigeonholeReport:
    trials: int
    held: int
    count: int
    bound: int
    seed: int
    failures: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.held == self.trials


def bohr0_hits_differences(t: BohrTarget, count: int, trials: int, seed: int = 0,
                           span: int = 10**6) -> PigeonholeReport:
    """Sample ``trials`` sets of ``count`` distinct integers in ``[0, span)`` and
    check each has a positive difference in the Bohr_0 set ``t``."""
    if not t.is_bohr0:
        raise ValueError("target must have every center at 0")
    bound = pigeonhole_count(t)
    if count < bound:
        raise PreconditionViolated(f"count {count} is below the pigeonhole bound {bound}")
    rng = np.random.Generator(np.random.PCG64(seed))
    report = PigeonholeReport(trials, 0, count, bound, seed)
    for _ in range(trials):
        s = sorted(int(x) for x in rng.choice(span, size=count, replace=False))
        diffs = delta_set(WindowedSet.from_iterable(s, 0, span))
        if any(bohr_member(t, n) for n in diffs):
            report.held += 1
        else:
            report.failures.append(tuple(s))
    return report
