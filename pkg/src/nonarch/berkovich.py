"""Points of the Berkovich affine line as closed balls ``E(a, r)``.

A point with radius ``r > 0`` is the maximal point ``eta_a(r)`` of the ball;
radius ``0`` (exponent ``INF``) is the rational point ``a``.  The seminorm
attached to ``E(a, r)`` sends ``f = sum c_i (X - a)^i`` to ``max |c_i| r^i``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import parse_poly
from .valued_field import (
    INF,
    AbsValue,
    ExtField,
    FieldElt,
    base_field,
    common_field,
    make_extension,
    taylor_shift,
)


class PointType(enum.IntEnum):
    TYPE_1 = 1
    TYPE_2 = 2
    TYPE_3 = 3  # reserved, never produced


@dataclass(frozen=True, eq=False)
class BerkPoint:
    center: FieldElt
    radius: AbsValue

    @property
    def field(self) -> ExtField:
        return self.center.field

    @property
    def radius_exp(self):
        return self.radius.exp

    def over(self, k: ExtField) -> "BerkPoint":
        """The same ball viewed over a larger field of the tower."""
        return BerkPoint(k.lift(self.center), self.radius)

    def __eq__(self, other):
        if not isinstance(other, BerkPoint):
            return NotImplemented
        return self.radius == other.radius and (self.center - other.center).abs <= self.radius

    def __hash__(self):
        return hash(self.radius.exp)

    def __str__(self):
        return f"eta({self.center}; {self.radius.format(self.field.p)})"

    __repr__ = __str__

    def to_json(self):
        return {
            "center": [_rat_json(c) for c in self.center.coeffs],
            "radius_exp": self.radius.to_json(),
            "field": self.field.name,
        }

    @classmethod
    def from_json(cls, obj) -> "BerkPoint":
        k = field_from_id(obj["field"])
        coeffs = [_rat_from_json(c) for c in obj["center"]]
        return cls(FieldElt(k, tuple(coeffs)), AbsValue.from_json(obj["radius_exp"]))


def _rat_json(c):
    return {"num": c.numerator, "den": c.denominator}


def _rat_from_json(obj):
    return Fraction(obj["num"], obj["den"])


_FIELD_ID = re.compile(r"^Q_(\d+)(?:\[T\]/\((.+)\))?$")


def field_from_id(name: str) -> ExtField:
    m = _FIELD_ID.match(name.strip())
    if m is None:
        raise ValueError(f"bad field id {name!r}")
    p = int(m.group(1))
    if m.group(2) is None:
        return base_field(p)
    return make_extension(p, parse_poly(m.group(2)))


def eta(a: FieldElt, radius: AbsValue) -> BerkPoint:
    """The point ``eta_a(r)``: maximal point of ``E(a, r)``, or ``a`` when r = 0."""
    if not isinstance(radius, AbsValue):
        raise TypeError("radius must be an AbsValue")
    return BerkPoint(a, radius)


def _common(x: BerkPoint, y: BerkPoint) -> tuple[BerkPoint, BerkPoint]:
    k = common_field(x.field, y.field)
    return x.over(k), y.over(k)


def leq(x: BerkPoint, y: BerkPoint) -> bool:
    """Ball containment ``E(x) <= E(y)``; also the seminorm domination order."""
    x, y = _common(x, y)
    return x.radius <= y.radius and (x.center - y.center).abs <= y.radius


def join(x: BerkPoint, y: BerkPoint) -> BerkPoint:
    """Smallest closed ball containing both points."""
    x, y = _common(x, y)
    return BerkPoint(x.center, max(x.radius, y.radius, (x.center - y.center).abs))


def seminorm_eval(f: Sequence, x: BerkPoint) -> AbsValue:
    """``|f(x)|`` for a polynomial ``f`` with rational or field coefficients."""
    k = x.field
    for c in f:
        if isinstance(c, FieldElt):
            k = common_field(k, c.field)
    x = x.over(k)
    shifted = taylor_shift([k(c) for c in f], x.center)
    if not shifted:
        return AbsValue(INF)
    q = x.radius.exp
    best = shifted[0].valuation
    if q != INF:
        for i, c in enumerate(shifted[1:], start=1):
            best = min(best, c.valuation + i * q)
    return AbsValue(best)


def point_type(x: BerkPoint) -> PointType:
    return PointType.TYPE_1 if x.radius.is_zero() else PointType.TYPE_2


def in_open_ball(a: FieldElt, center: FieldElt, radius: AbsValue) -> bool:
    """``|a - center| < radius``."""
    return (a - center).abs < radius


def render_points(points: Sequence[BerkPoint]) -> str:
    return "\n".join(str(x) for x in points)
