import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilbohr.errors import BoundExceeded, EmptyFamily
from nilbohr.setcore import (
    GapSumSpec,
    IntervalFamily,
    WindowedSet,
    delta_set,
    max_gap,
    partial_sums,
    sh_d,
    sh_d_oracle,
    sumset,
    upper_density,
)

W = WindowedSet


def members(s):
    return set(s)


def brute_delta(xs):
    return {b - a for a in xs for b in xs if b > a}


def brute_fs(e):
    e = list(e)
    return {sum(c) for k in range(1, len(e) + 1) for c in combinations(e, k)}


# WindowedSet ----------------------------------------------------------------


def test_window_invariants():
    s = W.from_iterable([3, 5, 99, -1, 10], 0, 10)
    assert members(s) == {3, 5}
    assert len(s) == 2 and s.bits.bit_count() == 2
    assert all(s.lo <= n < s.hi for n in s)
    with pytest.raises(ValueError):
        W(5, 4)
    with pytest.raises(ValueError):
        W(0, 3, 0b1000)


def test_window_algebra():
    a = W.from_iterable(range(0, 20, 2), 0, 20)
    b = W.from_iterable(range(0, 30, 3), 5, 30)
    assert members(a & b) == {6, 12, 18}
    assert members(a | b) == set(range(0, 20, 2)) | set(range(6, 30, 3))
    assert members(a - b) == set(range(0, 20, 2)) - {6, 12, 18}
    assert members(a.complement()) == set(range(1, 20, 2))
    assert members(a.shift(-3)) == {x - 3 for x in range(0, 20, 2)}
    assert a.restrict(-5, 5).members() == [0, 2, 4]
    assert a.min() == 0 and a.max() == 18 and W.empty(0, 4).min() is None


def test_from_mask_round_trip():
    import numpy as np

    mask = np.zeros(37, dtype=bool)
    mask[[0, 5, 36]] = True
    s = W.from_mask(mask, -4)
    assert s.members() == [-4, 1, 32] and (s.lo, s.hi) == (-4, 33)


@given(st.sets(st.integers(-50, 50)), st.integers(-60, 0), st.integers(1, 60))
def test_membership_matches_python_sets(xs, lo, hi):
    s = W.from_iterable(xs, lo, hi)
    inside = {x for x in xs if lo <= x < hi}
    assert members(s) == inside
    assert len(s) == len(inside)
    assert list(s) == sorted(inside)


# delta_set ---------------------------------------------------------------


@pytest.mark.parametrize("xs, expected", [
    ([0], set()),
    ([0, 5], {5}),
    ([1, 4, 9], {3, 5, 8}),
    ([], set()),
])
def test_delta_set_examples(xs, expected):
    assert members(delta_set(W.from_iterable(xs, 0, 10))) == expected


@given(st.sets(st.integers(0, 80)))
def test_delta_set_matches_pairs(xs):
    assert members(delta_set(W.from_iterable(xs, 0, 81))) == brute_delta(xs)


@given(st.sets(st.integers(0, 60)), st.integers(1, 60))
def test_delta_set_shift_intersection(xs, n):
    s = W.from_iterable(xs, 0, 61)
    assert (n in delta_set(s)) == bool(s & s.shift(n))


# sumset ------------------------------------------------------------------


@pytest.mark.parametrize("e, expected", [
    ({3}, {3}),
    ({1, 2}, {1, 2, 3}),
    ({1, 2, 4}, set(range(1, 8))),
])
def test_sumset_examples(e, expected):
    assert members(sumset(e)) == expected


def test_sumset_bound_and_distinctness():
    with pytest.raises(BoundExceeded):
        sumset(range(1, 26))
    sumset(range(1, 25))
    with pytest.raises(ValueError):
        sumset([2, 2])


@given(st.sets(st.integers(1, 40), max_size=8))
def test_sumset_matches_enumeration(e):
    fs = sumset(e)
    assert members(fs) == brute_fs(e)
    assert len(fs) <= 2 ** len(e) - 1


@given(st.lists(st.integers(1, 5), min_size=1, max_size=10))
def test_sumset_super_increasing_is_injective(gaps):
    e, total = [], 0
    for g in gaps:
        e.append(total + g)
        total += e[-1]
    assert len(sumset(e)) == 2 ** len(e) - 1


# SH_d ----------------------------------------------------------------------


def test_gap_sum_spec_validation():
    with pytest.raises(ValueError):
        GapSumSpec((0, 1), 1)
    with pytest.raises(ValueError):
        GapSumSpec((1,), 0)
    assert GapSumSpec([2, 2], 1).p == (2, 2)


@pytest.mark.parametrize("d", [1, 2, 5])
def test_sh_d_single_term(d):
    assert members(sh_d(GapSumSpec((7,), d), 100)) == {7}


def test_sh_d_examples():
    assert members(sh_d(GapSumSpec((1, 2, 4), 1), 100)) == {1, 2, 3, 4, 6, 7}
    full = sh_d(GapSumSpec((1, 2, 4), 2), 100)
    assert members(full) == set(range(1, 8)) == members(sumset({1, 2, 4}))


def test_sh_d_oracle_examples():
    assert members(sh_d_oracle(GapSumSpec((5, 5), 1), 100)) == {5, 10}
    assert members(sh_d_oracle(GapSumSpec((1, 10), 1), 100)) == {1, 10, 11}
    got = sh_d_oracle(GapSumSpec((1, 10, 100), 1), 1000)
    assert 101 not in got
    assert members(got) == {1, 10, 100, 11, 110, 111}
    with pytest.raises(BoundExceeded):
        sh_d_oracle(GapSumSpec((1,) * 21, 1), 10)


def test_sh_d_cap_discards_large_sums():
    got = sh_d(GapSumSpec((3, 50, 4), 2), 10)
    assert members(got) == {3, 4, 7}
    assert (got.lo, got.hi) == (1, 11)


def word_oracle(p, d, cap):
    """0/1 patterns whose interior zero-blocks are shorter than d."""
    out = set()
    n = len(p)
    for mask in range(1, 2 ** n):
        eps = [(mask >> i) & 1 for i in range(n)]
        ones = [i for i in range(n) if eps[i]]
        interior = eps[ones[0] : ones[-1] + 1]
        run = longest = 0
        for bit in interior:
            run = run + 1 if bit == 0 else 0
            longest = max(longest, run)
        if longest < d:
            total = sum(x for x, e in zip(p, eps) if e)
            if total <= cap:
                out.add(total)
    return out


@settings(max_examples=200)
@given(st.lists(st.integers(1, 50), min_size=1, max_size=10), st.integers(1, 4))
def test_sh_d_equals_oracle_and_word_form(p, d):
    spec = GapSumSpec(tuple(p), d)
    fast, slow = sh_d(spec, 600), sh_d_oracle(spec, 600)
    assert fast == slow
    assert members(fast) == word_oracle(p, d, 600)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=9), st.integers(1, 4),
       st.integers(1, 300))
def test_sh_d_monotone_in_d(p, d, cap):
    small = sh_d(GapSumSpec(tuple(p), d), cap)
    assert small.issubset(sh_d(GapSumSpec(tuple(p), d + 1), cap))


@given(st.lists(st.integers(1, 20), min_size=1, max_size=15), st.integers(0, 50))
def test_sh_1_is_delta_of_partial_sums(p, start):
    cap = sum(p)
    s = partial_sums(p, start)
    delta = delta_set(W.from_iterable(s, start, s[-1] + 1))
    assert members(sh_d(GapSumSpec(tuple(p), 1), cap)) == {x for x in delta if x <= cap}


@given(st.sets(st.integers(1, 20), min_size=1, max_size=6))
def test_sh_d_is_sumset_when_length_is_d_plus_one(e):
    p = tuple(sorted(e))
    d = len(p) - 1
    if d == 0:
        return
    assert members(sh_d(GapSumSpec(p, d), sum(p))) == members(sumset(e))


# density and gaps ---------------------------------------------------------


def test_upper_density_examples():
    fam = IntervalFamily(((0, 10), (20, 50)))
    assert upper_density(W.full(0, 100), fam) == 1
    assert upper_density(W.empty(0, 100), fam) == 0
    evens = W.from_iterable(range(0, 100, 2), 0, 100)
    assert upper_density(evens, IntervalFamily(((0, 10),))) == Fraction(1, 2)
    with pytest.raises(EmptyFamily):
        upper_density(evens, IntervalFamily(()))
    with pytest.raises(ValueError):
        upper_density(evens, IntervalFamily(((90, 110),)))


@given(st.sets(st.integers(0, 99)), st.lists(st.tuples(st.integers(0, 98), st.integers(1, 50)),
                                             min_size=1, max_size=5))
def test_upper_density_is_max_ratio(xs, raw):
    ivs = tuple((a, min(100, a + n)) for a, n in raw)
    s = W.from_iterable(xs, 0, 100)
    expect = max(Fraction(sum(1 for x in xs if a <= x < b), b - a) for a, b in ivs)
    assert upper_density(s, IntervalFamily(ivs)) == expect


def test_max_gap_examples():
    assert max_gap(W.from_iterable(range(0, 700, 7), 0, 700)) == 7
    assert max_gap(W.empty(0, 50)) == math.inf
    assert max_gap(W.from_iterable([0, 3, 50], 0, 60)) == 47
    assert max_gap(W.from_iterable([40], 0, 60), 0, 60) == 40


@given(st.sets(st.integers(0, 99), min_size=1))
def test_max_gap_against_scan(xs):
    pts = sorted(xs)
    seq = [0] + pts + [99]
    assert max_gap(W.from_iterable(xs, 0, 100)) == max(b - a for a, b in zip(seq, seq[1:]))


def test_interval_family_validation():
    with pytest.raises(ValueError):
        IntervalFamily(((3, 3),))
    fam = IntervalFamily.growing(0, [10, 20, 40], spacing=5)
    assert fam.intervals == ((0, 10), (15, 35), (40, 80))
