"""Exact valuations on Q_p and on its Eisenstein or unramified extensions.

Everything is rational arithmetic.  A valuation is a ``Fraction`` or
``INF`` (for zero), normalized by ``v(p) = 1``; the matching absolute value
is ``p**(-v)``.  Elements of an extension ``K = Q_p[T]/(P)`` are coordinate
vectors in the basis ``1, alpha, ..., alpha^(e-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, Sequence, Union

from . import poly as _poly
from .poly import ParseError, format_poly, parse_poly

INF = math.inf

Exponent = Union[Fraction, float]  # float only ever holds INF
Rational = Union[int, Fraction]

TRIVIAL = "trivial"
EISENSTEIN = "eisenstein"
UNRAMIFIED = "unramified"


class IncomparableFields(ValueError):
    """Two fields with no declared embedding between them."""


def as_exponent(q) -> Exponent:
    if isinstance(q, str) and q.strip().lower() in ("inf", "+inf", "oo"):
        return INF
    if q == INF:
        return INF
    return Fraction(q)


def exp_to_json(q: Exponent):
    if q == INF:
        return "inf"
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def exp_from_json(obj) -> Exponent:
    if obj == "inf":
        return INF
    return Fraction(obj["num"], obj["den"])


def format_exp(q: Exponent) -> str:
    if q == INF:
        return "inf"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@total_ordering
@dataclass(frozen=True)
class AbsValue:
    """The absolute value ``p**(-exp)``; ``exp = INF`` is ``|0|``.

    Ordering and multiplication act on values, so ``AbsValue(2) < AbsValue(1)``.
    """

    exp: Exponent

    def __post_init__(self):
        object.__setattr__(self, "exp", as_exponent(self.exp))

    def __lt__(self, other: "AbsValue") -> bool:
        if not isinstance(other, AbsValue):
            return NotImplemented
        return self.exp > other.exp

    def __mul__(self, other: "AbsValue") -> "AbsValue":
        return AbsValue(self.exp + other.exp)

    def __truediv__(self, other: "AbsValue") -> "AbsValue":
        if other.exp == INF:
            raise ZeroDivisionError("division by |0|")
        return AbsValue(self.exp - other.exp)

    def __pow__(self, n: int) -> "AbsValue":
        if n == 0:
            return AbsValue(0)
        if self.exp == INF:
            if n < 0:
                raise ZeroDivisionError("negative power of |0|")
            return self
        return AbsValue(self.exp * n)

    def is_zero(self) -> bool:
        return self.exp == INF

    def to_json(self):
        return exp_to_json(self.exp)

    @classmethod
    def from_json(cls, obj) -> "AbsValue":
        return cls(exp_from_json(obj))

    def format(self, p: int) -> str:
        if self.exp == INF:
            return "0"
        if self.exp == 0:
            return "1"
        return f"{p}^{{{format_exp(-self.exp)}}}"


def vp(x: Rational, p: int) -> Exponent:
    """p-adic valuation of a rational number; ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF

    def _v(n: int) -> int:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    return Fraction(_v(abs(x.numerator)) - _v(x.denominator))


@dataclass(frozen=True)
class ExtField:
    """``Q_p[T]/(P)`` for a monic P that is linear, Eisenstein, or unramified.

    Build instances with :func:`make_extension`, which validates ``kind``.
    """

    p: int
    defining_poly: tuple[Fraction, ...]
    kind: str

    @property
    def degree(self) -> int:
        return len(self.defining_poly) - 1

    e = degree

    @property
    def ramification_index(self) -> int:
        return self.degree if self.kind == EISENSTEIN else 1

    @property
    def residue_degree(self) -> int:
        return self.degree if self.kind == UNRAMIFIED else 1

    @property
    def residue_size(self) -> int:
        return self.p**self.residue_degree

    def is_base(self) -> bool:
        return self.kind == TRIVIAL

    @property
    def gen(self) -> "FieldElt":
        if self.degree == 1:
            return self(-self.defining_poly[0])
        return FieldElt(self, tuple(Fraction(int(i == 1)) for i in range(self.degree)))

    @property
    def one(self) -> "FieldElt":
        return self(1)

    @property
    def zero(self) -> "FieldElt":
        return self(0)

    def __call__(self, value) -> "FieldElt":
        if isinstance(value, FieldElt):
            return self.lift(value)
        if isinstance(value, str):
            return self.parse(value)
        coeffs = [Fraction(value)] + [Fraction(0)] * (self.degree - 1)
        return FieldElt(self, tuple(coeffs))

    def from_poly(self, coeffs: Sequence[Rational]) -> "FieldElt":
        """The class of ``sum c_i alpha^i``, reduced modulo the defining polynomial."""
        coeffs = [Fraction(c) for c in coeffs]
        if self.degree == 1:
            alpha = -self.defining_poly[0]
            return self(sum((c * alpha**i for i, c in enumerate(coeffs)), Fraction(0)))
        if len(coeffs) > self.degree:
            _, coeffs = _poly.pdivmod(coeffs, list(self.defining_poly))
        coeffs = list(coeffs) + [Fraction(0)] * (self.degree - len(coeffs))
        return FieldElt(self, tuple(coeffs))

    def parse(self, text: str) -> "FieldElt":
        """Parse an element written as a polynomial in ``alpha``."""
        return self.from_poly(parse_poly(text, var="alpha"))

    def lift(self, x: "FieldElt") -> "FieldElt":
        if x.field == self:
            return x
        if x.field.is_base() and x.field.p == self.p:
            return self(x.coeffs[0])
        raise IncomparableFields(f"no declared embedding of {x.field.name} into {self.name}")

    def elements(self, coeffs_list: Iterable[Sequence[Rational]]) -> list["FieldElt"]:
        return [self.from_poly(c) for c in coeffs_list]

    def poly(self, coeffs: Sequence) -> list["FieldElt"]:
        """Lift a coefficient list (rationals or elements) into K[X]."""
        return [c if isinstance(c, FieldElt) and c.field == self else self(c) for c in coeffs]

    @property
    def name(self) -> str:
        if self.is_base():
            return f"Q_{self.p}"
        return f"Q_{self.p}[T]/({format_poly(self.defining_poly)})"

    def to_json(self):
        return {"p": self.p, "poly": format_poly(self.defining_poly), "kind": self.kind}


def common_field(f: ExtField, g: ExtField) -> ExtField:
    """The field containing both, along the tower ``Q_p < K``; raises otherwise."""
    if f == g:
        return f
    if f.p == g.p:
        if f.is_base():
            return g
        if g.is_base():
            return f
    raise IncomparableFields(f"{f.name} and {g.name} are not comparable")


def _coerce(x, y):
    if isinstance(y, FieldElt):
        k = common_field(x.field, y.field)
        return k.lift(x), k.lift(y)
    if isinstance(y, (int, Fraction)):
        return x, x.field(y)
    return None, None


@dataclass(frozen=True, eq=False)
class FieldElt:
    field: ExtField
    coeffs: tuple[Fraction, ...]

    def _wrap(self, coeffs) -> "FieldElt":
        return FieldElt(self.field, tuple(coeffs))

    def __add__(self, other):
        a, b = _coerce(self, other)
        if a is None:
            return NotImplemented
        return a._wrap(x + y for x, y in zip(a.coeffs, b.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-c for c in self.coeffs)

    def __sub__(self, other):
        a, b = _coerce(self, other)
        if a is None:
            return NotImplemented
        return a._wrap(x - y for x, y in zip(a.coeffs, b.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = _coerce(self, other)
        if a is None:
            return NotImplemented
        k = a.field
        if k.degree == 1:
            return a._wrap([a.coeffs[0] * b.coeffs[0]])
        return k.from_poly(_poly.pmul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        k = self.field
        if k.degree == 1:
            return self._wrap([1 / self.coeffs[0]])
        d, s, _ = _poly.pxgcd(list(self.coeffs), list(k.defining_poly))
        assert d == [1], "defining polynomial must be irreducible"
        return k.from_poly(s)

    def __truediv__(self, other):
        a, b = _coerce(self, other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        a, b = _coerce(self, other) if isinstance(other, (FieldElt, int, Fraction)) else (None, None)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        trimmed = tuple(_poly.trim(self.coeffs))
        if len(trimmed) <= 1:
            return hash(trimmed[0] if trimmed else Fraction(0))
        return hash(trimmed)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def in_base(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_poly(self) -> list[Fraction]:
        return _poly.trim(self.coeffs)

    @cached_property
    def valuation(self) -> Exponent:
        return elt_valuation(self)

    @property
    def abs(self) -> AbsValue:
        return AbsValue(self.valuation)

    def __repr__(self):
        if self.field.degree == 1:
            return format_poly([self.coeffs[0]], var="alpha")
        return format_poly(self.coeffs, var="alpha")

    __str__ = __repr__


@dataclass(frozen=True)
class NewtonPolygon:
    """Root valuations with multiplicity, ascending.

    Each entry of ``slopes`` is ``(root valuation, multiplicity)``; the root
    valuation is minus the geometric slope of the corresponding edge of the
    lower convex hull.  Zero roots, when kept, show up as ``(INF, m)``.
    """

    slopes: tuple[tuple[Exponent, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.slopes)

    def valuations(self) -> list[Exponent]:
        return [s for s, m in self.slopes for _ in range(m)]


# -- operations ---------------------------------------------------------------


def make_extension(p: int, defining_poly) -> ExtField:
    """Validate ``defining_poly`` over Q_p and classify the extension it defines.

    ``defining_poly`` is a coefficient list (lowest degree first) or a string
    in ``T``.  Raises ``ValueError`` naming the criterion that failed.
    """
    if isinstance(defining_poly, str):
        coeffs = parse_poly(defining_poly, var="T")
    else:
        coeffs = _poly.trim([Fraction(c) for c in defining_poly])
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError(f"p = {p} is not prime")
    if len(coeffs) < 2:
        raise ValueError("defining polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError(f"defining polynomial is not monic (leading coefficient {coeffs[-1]})")
    n = len(coeffs) - 1
    poly_t = tuple(coeffs)
    if n == 1:
        return ExtField(p, poly_t, TRIVIAL)
    lower = [vp(c, p) for c in coeffs[:-1]]
    if lower[0] == 1 and all(v >= 1 for v in lower):
        return ExtField(p, poly_t, EISENSTEIN)
    if any(v < 0 for v in lower):
        raise ValueError(f"defining polynomial is not {p}-integral")
    if _poly.is_irreducible_mod_p(_poly.reduce_mod_p(coeffs, p), p):
        return ExtField(p, poly_t, UNRAMIFIED)
    if lower[0] != 1:
        why = f"constant term has valuation {format_exp(lower[0])}, not 1"
    else:
        bad = [i for i, v in enumerate(lower) if v < 1]
        why = f"coefficient of T^{bad[0]} is a {p}-adic unit"
    raise ValueError(
        f"{format_poly(coeffs)} is not Eisenstein at {p} ({why}) and its reduction "
        f"mod {p} is reducible, so it is not unramified-defining either"
    )


@lru_cache(maxsize=None)
def base_field(p: int) -> ExtField:
    """Q_p itself, presented as ``Q_p[T]/(T)``."""
    return make_extension(p, [0, 1])


@lru_cache(maxsize=None)
def unramified_extension(p: int, degree: int = 2) -> ExtField:
    """The first monic lift of an irreducible degree-``degree`` polynomial mod p.

    Candidates are enumerated by coefficient vectors in ``range(p)``, constant
    term first, so the result is deterministic.
    """
    for idx in range(p**degree):
        digits = [(idx // p**i) % p for i in range(degree)]
        if _poly.is_irreducible_mod_p(digits + [1], p):
            return make_extension(p, digits + [1])
    raise AssertionError("F_p has irreducible polynomials of every degree")


def elt_valuation(x: FieldElt) -> Exponent:
    """``v(x) = v_p(N(x)) / [K:Q_p]`` with the norm taken as a resultant."""
    if x.is_zero():
        return INF
    k = x.field
    if k.degree == 1:
        return vp(x.coeffs[0], k.p)
    norm = _poly.resultant(list(k.defining_poly), x.as_poly())
    return vp(norm, k.p) / k.degree


def residue_reduce(x: FieldElt):
    """Image of an integral element in the residue field.

    Returns an int in ``range(p)`` for prime residue fields, or a tuple of
    coordinates (over F_p, in the reduced basis) for unramified extensions.
    """
    v = x.valuation
    k = x.field
    if v < 0:
        raise ValueError(f"{x} has negative valuation {format_exp(v)}; no residue")
    if k.kind == UNRAMIFIED:
        red = _poly.reduce_mod_p(x.coeffs, k.p)
        return tuple(red + [0] * (k.degree - len(red)))
    # Eisenstein: alpha^i for i >= 1 lies in the maximal ideal, and the
    # coordinate basis is orthogonal, so only b_0 survives.
    b0 = x.coeffs[0]
    if b0 == 0:
        return 0
    return b0.numerator * pow(b0.denominator, -1, k.p) % k.p


def _valuation_of(c, p: int) -> Exponent:
    return c.valuation if isinstance(c, FieldElt) else vp(c, p)


def newton_polygon(f: Sequence, field: ExtField | None = None, drop_zero_roots: bool = False) -> NewtonPolygon:
    """Newton polygon of ``f`` (coefficients lowest degree first).

    Coefficients are ``FieldElt`` or rationals; pass ``field`` for the latter.
    """
    f = _poly.trim(f)
    if not f:
        raise ValueError("Newton polygon of the zero polynomial")
    if field is None:
        elts = [c for c in f if isinstance(c, FieldElt)]
        if not elts:
            raise ValueError("pass field= for polynomials with rational coefficients")
        field = elts[0].field
    p = field.p
    m = next(i for i, c in enumerate(f) if c != 0)
    pts = [(i, _valuation_of(c, p)) for i, c in enumerate(f) if c != 0]
    hull: list[tuple[int, Exponent]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes: dict[Exponent, int] = {}
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        root_val = -(Fraction(y2 - y1) / (x2 - x1))
        slopes[root_val] = slopes.get(root_val, 0) + (x2 - x1)
    if m and not drop_zero_roots:
        slopes[INF] = m
    return NewtonPolygon(tuple(sorted(slopes.items(), key=lambda t: t[0])))


def taylor_shift(f: Sequence, a) -> list:
    """Coefficients of ``f(X + a)``."""
    if isinstance(a, FieldElt):
        k = a.field
        f = [k.lift(c) if isinstance(c, FieldElt) else k(c) for c in f]
        return _poly.taylor_shift(f, a, zero=k.zero)
    return _poly.taylor_shift([Fraction(c) for c in f], Fraction(a), zero=Fraction(0))


def conjugate_distances(k: ExtField) -> list[AbsValue]:
    """``{|alpha^g - alpha| : alpha^g != alpha}`` with multiplicity, descending."""
    if k.kind != EISENSTEIN:
        raise ValueError(f"conjugate distances need an Eisenstein extension, got kind {k.kind!r}")
    shifted = taylor_shift(k.defining_poly, k.gen)
    np_ = newton_polygon(shifted, drop_zero_roots=True)
    return sorted((AbsValue(v) for v in np_.valuations()), reverse=True)


def orbit_diameter(k: ExtField) -> AbsValue:
    return max(conjugate_distances(k))

