"""Finite versions of the two constructive procedures.

* The greedy SH_d-avoider: given a target set ``B`` and a gap parameter
  ``d``, choose ``p_1, p_2, ...`` with every gap-constrained sum inside ``B``.
* The counterexample search: integers ``n_1 < n_2 < ...`` whose squares
  times ``alpha`` sit near ``1/3`` while pairwise products sit near ``0``, so
  that their differences avoid the quadratic return set ``{n : n^2 alpha ~ 0}``.

Plus extraction of strongly-piecewise witnesses from interval families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dynamics import HALF, PolyTarget, _ArcCounter, poly_return_set, to_angle
from .errors import NotFound, Stuck, VerificationFailed
from .setcore import (
    GapSumSpec,
    IntervalFamily,
    WindowedSet,
    _bit_positions,
    delta_set,
    sh_d,
    sh_d_oracle,
)

ORACLE_MAX_LEN = 16


# avoider -------------------------------------------------------------------


@dataclass(frozen=True)
class ChoicePolicy:
    """How the next term is picked from the admissible set.

    ``kind`` is ``"smallest"``, ``"threshold"`` (smallest strictly above
    ``threshold``) or ``"random"`` (uniform over admissible terms, drawn from
    a PCG64 generator seeded with ``seed``).
    """

    kind: str = "smallest"
    threshold: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("smallest", "threshold", "random"):
            raise ValueError(f"unknown policy {self.kind!r}")

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


@dataclass(frozen=True)
class AvoiderState:
    """State after ``j = len(p)`` steps.

    ``history[i]`` is the bitmap of ``E_{j-i}`` (bit ``v`` means ``v`` is a
    member), so ``history[0]`` is the current ``E_j``. Only the last ``d``
    sets are kept since the recursion never looks further back. ``bj`` is
    ``B_j``, the set of admissible next terms (before restricting to
    positive values).
    """

    b: WindowedSet
    d: int
    p: tuple[int, ...] = ()
    history: tuple[int, ...] = (1,)
    bj: WindowedSet | None = None

    @classmethod
    def start(cls, b: WindowedSet, d: int) -> AvoiderState:
        if d < 1:
            raise ValueError("d must be >= 1")
        return cls(b=b, d=d, p=(), history=(1,), bj=b)

    @property
    def j(self) -> int:
        return len(self.p)

    @property
    def e_bits(self) -> int:
        return self.history[0]

    @property
    def e(self) -> frozenset[int]:
        return frozenset(int(v) for v in _bit_positions(self.history[0]))

    def admissible(self) -> WindowedSet:
        """Positive members of ``B_j``: the candidates for ``p_{j+1}``."""
        return self.bj.restrict(max(1, self.bj.lo), self.bj.hi)


def shifted_intersection(b: WindowedSet, e_bits: int) -> WindowedSet:
    """``⋂_{q in E} (B - q)`` on ``b``'s window; shifts past the window top count as misses."""
    acc = b.bits
    for q in _bit_positions(e_bits):
        acc &= b.bits >> int(q)
        if not acc:
            break
    return WindowedSet(b.lo, b.hi, acc)


def next_e(history: Sequence[int], p: Sequence[int], d: int) -> int:
    """``E_j = {0} ∪ (E_{j-1}+p_j) ∪ ... ∪ (E_{j-min(j,d)}+p_{j-min(j,d)+1})``.

    ``history`` holds ``E_{j-1}, E_{j-2}, ...`` and ``p`` holds ``p_1..p_j``.
    """
    j = len(p)
    acc = 1
    for i in range(1, min(j, d) + 1):
        acc |= history[i - 1] << p[j - i]
    return acc


def avoider_step(state: AvoiderState, policy: ChoicePolicy = ChoicePolicy(),
                 rng: np.random.Generator | None = None) -> AvoiderState:
    """Choose ``p_{j+1}`` in ``B_j``, then update ``E`` and ``B``.

    Raises :class:`Stuck` when ``B_j`` has no positive member on the window.
    """
    cands = state.admissible()
    if not cands:
        raise Stuck(state.j + 1, state.p)
    if policy.kind == "smallest":
        pick = cands.min()
    elif policy.kind == "threshold":
        above = cands.restrict(max(cands.lo, policy.threshold + 1), cands.hi)
        if not above:
            raise Stuck(state.j + 1, state.p)
        pick = above.min()
    else:
        rng = rng if rng is not None else policy.rng()
        arr = cands.to_array()
        pick = int(arr[rng.integers(len(arr))])

    p = state.p + (pick,)
    # nonzero members of E_j all lie in B, so E_j stays bounded by the window
    e = next_e(state.history, p, state.d)
    history = (e,) + state.history[: state.d - 1]
    return replace(state, p=p, history=history, bj=shifted_intersection(state.b, e))


@dataclass
class AvoiderReport:
    """Outcome of :func:`avoider_run`."""

    p: tuple[int, ...]
    d: int
    window: tuple[int, int]
    verified_by: str
    verdict: str
    sums_checked: int
    violations: list[int] = field(default_factory=list)


def verify_avoidance(p: Sequence[int], d: int, b: WindowedSet) -> tuple[str, int, list[int]]:
    """Exactly check ``SH_d(P) ⊆ B``; returns (method, |SH_d(P)|, offending sums)."""
    spec = GapSumSpec(tuple(p), d)
    cap = sum(p)
    if len(p) <= ORACLE_MAX_LEN:
        sums, method = sh_d_oracle(spec, cap), "sh_d_oracle"
    else:
        sums, method = sh_d(spec, cap), "sh_d"
    bad = sums - b
    return method, len(sums), list(bad)[:10]


def avoider_run(b: WindowedSet, d: int, steps: int,
                policy: ChoicePolicy = ChoicePolicy()) -> AvoiderReport:
    """Run ``steps`` avoider steps and verify the resulting ``P`` exactly.

    Raises :class:`Stuck` if the recursion cannot be continued on the window.
    Since every element of ``E_{j-1} + p_j`` is checked to lie in ``B`` (which
    includes the window), the whole of ``SH_d(P)`` is verified, not just a
    truncation of it.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = policy.rng() if policy.kind == "random" else None
    state = AvoiderState.start(b, d)
    for _ in range(steps):
        state = avoider_step(state, policy, rng)
    method, n_sums, bad = verify_avoidance(state.p, d, b)
    if bad:
        raise VerificationFailed(f"SH_{d}({list(state.p)}) leaves B at {bad}")
    return AvoiderReport(state.p, d, (b.lo, b.hi), method, "PASS", n_sums, bad)


# counterexample ------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleSpec:
    alpha: Fraction
    epsilon: Fraction
    target_count: int
    search_bound: int
    target: Fraction = Fraction(1, 3)

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_angle(self.alpha))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "target", to_angle(self.target))
        if not 0 < self.epsilon <= HALF:
            raise ValueError("epsilon must lie in (0, 1/2]")
        if self.target_count < 1 or self.search_bound < self.target_count:
            raise ValueError("need 1 <= target_count <= search_bound")


def counterexample_search(spec: CounterexampleSpec) -> WindowedSet:
    """Greedy scan for ``n_1 < ... < n_k <= search_bound``.

    ``n`` is accepted when ``||n^2 alpha - target|| < eps`` and
    ``||n_i n alpha|| < eps`` for every earlier ``n_i``. The smallest
    qualifying ``n`` always wins, so the output is unique. Returns the set on
    window ``[0, n_k + 1)``; raises :class:`NotFound` otherwise.
    """
    chosen: list[int] = []
    for n in greedy_terms(spec.alpha, spec.epsilon, spec.search_bound, spec.target):
        chosen.append(n)
        if len(chosen) == spec.target_count:
            return WindowedSet.from_iterable(chosen, 0, n + 1)
    raise NotFound(
        f"only {len(chosen)} of {spec.target_count} terms below {spec.search_bound}: {chosen}"
    )


def greedy_terms(alpha, epsilon, search_bound: int, target=Fraction(1, 3)):
    """Yield every term the greedy scan accepts up to ``search_bound``."""
    alpha = to_angle(alpha)
    p, q = alpha.numerator, alpha.denominator
    near_target = _ArcCounter(q, target, epsilon)
    near_zero = _ArcCounter(q, 0, epsilon)
    chosen: list[int] = []
    sq = 0  # n^2 p mod q
    for n in range(1, search_bound + 1):
        sq = (sq + (2 * n - 1) * p) % q
        if not near_target(sq):
            continue
        if all(near_zero((m * n * p) % q) for m in chosen):
            chosen.append(n)
            yield n


@dataclass
class CounterexampleReport:
    s: tuple[int, ...]
    window: tuple[int, int]
    differences: int
    omega_size: int
    empty: bool
    witness: tuple[int, int, int] | None  # (a, b, b - a) with b - a in Omega


def counterexample_verify(s: WindowedSet, t: PolyTarget) -> CounterexampleReport:
    """Check ``Δ(S) ∩ Ω = ∅`` with ``Ω`` the return set of ``t``, exactly.

    Both sets are computed on the window induced by ``S``, i.e. differences
    ``1 .. max(S) - min(S)``.
    """
    members = s.members()
    diffs = delta_set(s)
    hi = (members[-1] - members[0] + 1) if members else 1
    omega = poly_return_set(t, (1, max(hi, 1)))
    hit = diffs & omega
    witness = None
    if hit:
        g = hit.min()
        present = set(members)
        a = next(a for a in members if a + g in present)
        witness = (a, a + g, g)
    return CounterexampleReport(tuple(members), (1, max(hi, 1)), len(diffs), len(omega),
                                not hit, witness)


# strongly piecewise witnesses ---------------------------------------------


@dataclass(frozen=True)
class PiecewiseWitness:
    """Intervals ``I_j`` (half-open) with the index ``k(j)`` of the ``J_k`` containing them."""

    lambda_id: str
    picked: tuple[tuple[int, int, int], ...]  # (start, stop, k)

    def lengths(self) -> list[int]:
        return [b - a for a, b, _ in self.picked]


def longest_clean_interval(a: WindowedSet, lam: WindowedSet, lo: int, hi: int) -> tuple[int, int]:
    """Longest (leftmost on ties) ``[x, y) ⊆ [lo, hi)`` with ``Λ ∩ [x, y) ⊆ A``."""
    bad = (lam.restrict(lo, hi) - a.restrict(lo, hi)).to_array()
    best = (lo, lo)
    start = lo
    for v in list(map(int, bad)) + [hi]:
        if v - start > best[1] - best[0]:
            best = (start, v)
        start = v + 1
    return best


def pw_witness(a: WindowedSet, lam: WindowedSet, jks: IntervalFamily, min_len: int = 1,
               lambda_id: str = "lambda") -> PiecewiseWitness:
    """For each ``J_k`` pick its longest subinterval on which ``Λ`` lies inside ``A``.

    Intervals shorter than ``min_len`` are dropped; the rest are ordered by
    length (ties by ``k``) so the lengths are nondecreasing. Raises
    :class:`NotFound` when no ``J_k`` yields one.
    """
    picked = []
    for k, (lo, hi) in enumerate(jks):
        for w in (a, lam):
            if lo < w.lo or hi > w.hi:
                raise ValueError(f"J_{k} = [{lo}, {hi}) leaves window [{w.lo}, {w.hi})")
        x, y = longest_clean_interval(a, lam, lo, hi)
        if y - x >= min_len:
            picked.append((x, y, k))
    if not picked:
        raise NotFound(f"no J_k contains a clean interval of length >= {min_len}")
    picked.sort(key=lambda t: (t[1] - t[0], t[2]))
    return PiecewiseWitness(lambda_id, tuple(picked))
