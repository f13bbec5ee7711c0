"""Seeded random inputs: Eisenstein polynomials, field elements, ball points.

Eisenstein sampling bounds: degree 2..6; constant term ``u * p`` with ``u``
drawn from ``{1, ..., p-1}`` plus a few small units; middle coefficients
``c * p^j`` with ``1 <= j <= 3`` and ``|c| <= p`` (``c = 0`` allowed).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .berkovich import BerkPoint
from .valued_field import AbsValue, ExtField, FieldElt, vp

PRIMES = (2, 3, 5, 7)
DEGREES = range(2, 7)


def small_units(p: int) -> list[Fraction]:
    extra = [Fraction(-1), Fraction(p + 1), Fraction(-(p + 1)), Fraction(1, p + 1), Fraction(p - 1, 2 * p + 1)]
    units = [Fraction(u) for u in range(1, p)] + extra
    return [u for u in units if vp(u, p) == 0]


def random_eisenstein(rng: random.Random, p: int, e: int) -> list[Fraction]:
    """Coefficients (lowest first) of a random monic Eisenstein polynomial."""
    coeffs = [rng.choice(small_units(p)) * p]
    for _ in range(1, e):
        c = rng.randint(-p, p)
        coeffs.append(Fraction(c) * p ** rng.randint(1, 3))
    coeffs.append(Fraction(1))
    return coeffs


def random_rational(rng: random.Random, p: int, lo: int = -2, hi: int = 4) -> Fraction:
    """A rational ``u * p^k`` with ``u`` a small unit fraction, or 0 now and then."""
    if rng.random() < 0.1:
        return Fraction(0)
    num = rng.choice([n for n in range(-3 * p, 3 * p + 1) if n % p])
    den = rng.choice([d for d in range(1, 2 * p + 2) if d % p])
    return Fraction(num, den) * Fraction(p) ** rng.randint(lo, hi)


def random_element(rng: random.Random, k: ExtField, lo: int = -2, hi: int = 4) -> FieldElt:
    return FieldElt(k, tuple(random_rational(rng, k.p, lo, hi) for _ in range(k.degree)))


def random_radius(rng: random.Random, k: ExtField, lo: int = -3, hi: int = 6, allow_zero: bool = False) -> AbsValue:
    if allow_zero and rng.random() < 0.1:
        return AbsValue("inf")
    e = k.ramification_index
    # include exponents outside the value group now and then
    den = rng.choice([e, e, 2 * e, 3])
    return AbsValue(Fraction(rng.randint(lo * den, hi * den), den))


def random_point(rng: random.Random, k: ExtField, allow_type1: bool = False) -> BerkPoint:
    return BerkPoint(random_element(rng, k), random_radius(rng, k, allow_zero=allow_type1))
