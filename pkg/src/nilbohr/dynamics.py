"""Exact-rational orbits on the circle and on the 2-torus skew product.

Angles are :class:`fractions.Fraction` values reduced into ``[0, 1)``. An
irrational rotation is stood in for by a continued-fraction convergent with a
large denominator; every later computation is exact over that rational.

Arcs are open: ``{x : ||x - center|| < radius}``. A radius of ``1/2`` is
treated as the whole circle, so that the largest admissible arc really is
the torus rather than the torus minus one antipodal point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, islice
from typing import Iterator, Sequence

import numpy as np

from .errors import ParseError
from .setcore import WindowedSet

HALF = Fraction(1, 2)


def to_angle(x) -> Fraction:
    """Coerce to a Fraction in ``[0, 1)``."""
    return Fraction(x) % 1


def torus_distance(a, b) -> Fraction:
    """Nearest-integer distance ``||a - b||`` in ``[0, 1/2]``."""
    t = (Fraction(a) - Fraction(b)) % 1
    return min(t, 1 - t)


def in_arc(x, center, radius) -> bool:
    radius = Fraction(radius)
    return radius >= HALF or torus_distance(x, center) < radius


def _check_radius(r) -> Fraction:
    r = Fraction(r)
    if not 0 < r <= HALF:
        raise ValueError(f"radius must lie in (0, 1/2], got {r}")
    return r


# continued fractions -------------------------------------------------------


def _terms_sqrt2() -> Iterator[int]:
    yield 1
    while True:
        yield 2


def _terms_golden() -> Iterator[int]:
    while True:
        yield 1


def _terms_e() -> Iterator[int]:
    yield 2
    for i in count(1):
        yield 2 * (i + 1) // 3 if i % 3 == 2 else 1


CF_CONSTANTS = {"sqrt2": _terms_sqrt2, "golden": _terms_golden, "e": _terms_e}


def convergents(terms: Sequence[int]) -> list[Fraction]:
    """All convergents ``p_k/q_k`` of a finite list of partial quotients."""
    out = []
    p_prev, p = 1, terms[0]
    q_prev, q = 0, 1
    out.append(Fraction(p, q))
    for a in terms[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(Fraction(p, q))
    return out


def cf_convergent(name: str, k: int) -> Fraction:
    """The k-th convergent (``k = 0`` is the integer part) of a named constant."""
    if name not in CF_CONSTANTS:
        raise ValueError(f"unknown constant {name!r}; choose from {sorted(CF_CONSTANTS)}")
    if k < 0:
        raise ValueError("convergent index must be >= 0")
    terms = list(islice(CF_CONSTANTS[name](), k + 1))
    return convergents(terms)[-1]


def irrational_proxy(name: str, min_denominator: int = 10**12) -> Fraction:
    """First convergent of ``name`` whose denominator reaches ``min_denominator``."""
    k = 0
    while True:
        c = cf_convergent(name, k)
        if c.denominator >= min_denominator:
            return c
        k += 1


def parse_angle(text: str) -> Fraction:
    """Parse ``"p/q"`` (or any Fraction literal) or ``"cf:<name>:<k>"``; reduce mod 1."""
    text = text.strip()
    if text.startswith("cf:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise ParseError(f"angle literal {text!r}: expected cf:<name>:<k>")
        try:
            k = int(parts[2])
            return to_angle(cf_convergent(parts[1], k))
        except ValueError as exc:
            raise ParseError(f"angle literal {text!r}: {exc}") from None
    try:
        return to_angle(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"angle literal {text!r}: expected p/q or cf:<name>:<k>") from None


# exact arc tests on a common denominator -----------------------------------


class _ArcCounter:
    """Tests ``r/q`` (r an integer residue) against an arc with exact integers."""

    def __init__(self, q: int, center, radius):
        center, radius = Fraction(center) % 1, Fraction(radius)
        self.full = radius >= HALF
        self.L = q * center.denominator // math.gcd(q, center.denominator)
        self.scale = self.L // q
        self.offset = center.numerator * (self.L // center.denominator)
        self.num, self.den = radius.numerator, radius.denominator

    def __call__(self, r: int) -> bool:
        if self.full:
            return True
        t = (r * self.scale - self.offset) % self.L
        return min(t, self.L - t) * self.den < self.num * self.L


# data types ----------------------------------------------------------------


@dataclass(frozen=True)
class BohrTarget:
    """Rotation angles with one open arc per coordinate."""

    angles: tuple[Fraction, ...]
    centers: tuple[Fraction, ...]
    radii: tuple[Fraction, ...]

    def __post_init__(self):
        angles = tuple(to_angle(a) for a in self.angles)
        centers = tuple(to_angle(c) for c in self.centers)
        radii = tuple(_check_radius(r) for r in self.radii)
        if not angles or not (len(angles) == len(centers) == len(radii)):
            raise ValueError("need m >= 1 angles with matching centers and radii")
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def bohr0(cls, angles, radii) -> BohrTarget:
        angles = tuple(angles)
        if not isinstance(radii, (tuple, list)):
            radii = (radii,) * len(angles)
        return cls(angles, (Fraction(0),) * len(angles), tuple(radii))

    @property
    def is_bohr0(self) -> bool:
        return all(c == 0 for c in self.centers)

    def with_radii(self, radii) -> BohrTarget:
        return BohrTarget(self.angles, self.centers, tuple(radii))


@dataclass(frozen=True)
class SkewSystem:
    """The map ``(x, y) -> (x + alpha, y + x)`` on the 2-torus with a base point."""

    alpha: Fraction
    x0: Fraction = Fraction(0)
    y0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha", "x0", "y0"):
            object.__setattr__(self, name, to_angle(getattr(self, name)))

    def step(self, x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
        return (x + self.alpha) % 1, (y + x) % 1


@dataclass(frozen=True)
class PolyTarget:
    """Return times of ``q(n) * alpha`` to an arc around 0, ``q(n) = c2 n^2 + c1 n + c0``."""

    alpha: Fraction
    poly: tuple[int, int, int]
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_angle(self.alpha))
        object.__setattr__(self, "poly", tuple(int(c) for c in self.poly))
        object.__setattr__(self, "radius", _check_radius(self.radius))
        if len(self.poly) != 3:
            raise ValueError("poly must be (c2, c1, c0)")

    def value(self, n: int) -> Fraction:
        c2, c1, c0 = self.poly
        return (Fraction(c2 * n * n + c1 * n + c0) * self.alpha) % 1


# operations ----------------------------------------------------------------


def _window(window) -> tuple[int, int]:
    lo, hi = window
    if lo > hi:
        raise ValueError(f"inverted window {window}")
    return int(lo), int(hi)


def bohr_set(t: BohrTarget, window) -> WindowedSet:
    """``{n in window : ||n * angle_i - center_i|| < radius_i for all i}``."""
    lo, hi = _window(window)
    bits = (1 << (hi - lo)) - 1
    for alpha, center, radius in zip(t.angles, t.centers, t.radii):
        if radius >= HALF:
            continue
        p, q = alpha.numerator, alpha.denominator
        test = _ArcCounter(q, center, radius)
        r = (lo * p) % q
        coord = bytearray(hi - lo)
        for k in range(hi - lo):
            if test(r):
                coord[k] = 1
            r += p
            if r >= q:
                r -= q
        bits &= WindowedSet.from_mask(np.frombuffer(coord, dtype=np.uint8), lo).bits
    return WindowedSet(lo, hi, bits)


def skew_orbit(sys: SkewSystem, n: int) -> tuple[Fraction, Fraction]:
    """``T^n(x0, y0)`` in closed form: ``(x0 + n a, y0 + n x0 + C(n, 2) a)`` mod 1."""
    a = sys.alpha
    x = (sys.x0 + n * a) % 1
    y = (sys.y0 + n * sys.x0 + Fraction(n * (n - 1), 2) * a) % 1
    return x, y


def skew_iterate(sys: SkewSystem, n: int) -> tuple[Fraction, Fraction]:
    """``T^n(x0, y0)`` by applying the one-step map ``n`` times (``n >= 0``)."""
    x, y = sys.x0, sys.y0
    for _ in range(n):
        x, y = sys.step(x, y)
    return x, y


def skew_return_set(sys: SkewSystem, radius, window) -> WindowedSet:
    """Times ``n`` with ``T^n(base)`` inside the product arc of ``radius`` around the base."""
    lo, hi = _window(window)
    base = (sys.x0, sys.y0)
    return WindowedSet.from_iterable(
        (n for n in range(lo, hi)
         if all(in_arc(c, b, radius) for c, b in zip(skew_orbit(sys, n), base))),
        lo, hi,
    )


def poly_return_set(t: PolyTarget, window) -> WindowedSet:
    """``{n in window : ||q(n) * alpha|| < radius}``, swept with exact finite differences."""
    lo, hi = _window(window)
    if t.radius >= HALF:
        return WindowedSet.full(lo, hi)
    c2, c1, c0 = t.poly
    p, q = t.alpha.numerator, t.alpha.denominator
    test = _ArcCounter(q, 0, t.radius)
    r = ((c2 * lo * lo + c1 * lo + c0) * p) % q
    step = ((c2 * (2 * lo + 1) + c1) * p) % q  # q(n+1) - q(n), times p
    accel = (2 * c2 * p) % q
    mask = bytearray(hi - lo)
    for k in range(hi - lo):
        if test(r):
            mask[k] = 1
        r = (r + step) % q
        step = (step + accel) % q
    return WindowedSet.from_mask(np.frombuffer(mask, dtype=np.uint8), lo)
