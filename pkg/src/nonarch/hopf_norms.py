"""Seminorms on the coordinate Hopf algebras of split tori and of G_a.

Points are stored by their weights, never as closures, so equality and the
domination order ``x <= y`` (``|f(x)| <= |f(y)|`` for every regular f) are
decidable:

* ``MonomialNorm`` on ``Q_p[x1^+-1, ..., xn^+-1]``:  ``|sum c_u x^u| = max |c_u| prod r_i^u_i``.
* ``BallNorm`` on ``Q_p[a]``:  the Gauss norm of the ball ``E(0, r)``.
* ``TorusPoint`` / ``AdditivePoint``: evaluation at a rational point.

Weights and radii are held as exponents (value ``p**(-q)``).  Both norm
families are diagonal in the monomial basis, which is what makes the
infimum over tensor decompositions in ``*`` and in base change computable:
the monomial decomposition realizes it.  :func:`decomposition_search` tries
random decompositions to falsify that claim.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence, Union

from .valued_field import INF, AbsValue, ExtField, FieldElt, as_exponent, vp

Laurent = Mapping[tuple[int, ...], object]


@dataclass(frozen=True)
class MonomialNorm:
    p: int
    weights_exp: tuple[Fraction, ...]
    field: Optional[ExtField] = field(default=None, compare=False)

    def __post_init__(self):
        w = tuple(as_exponent(q) for q in self.weights_exp)
        if any(q == INF for q in w):
            raise ValueError("torus weights must be nonzero")
        object.__setattr__(self, "weights_exp", w)

    @property
    def rank(self) -> int:
        return len(self.weights_exp)

    @property
    def family(self) -> str:
        return "torus"

    def weight(self, u: Sequence[int]) -> AbsValue:
        return AbsValue(sum((q * ui for q, ui in zip(self.weights_exp, u)), Fraction(0)))

    def to_json(self):
        return {"family": "torus", "weights_exp": [_exp_json(q) for q in self.weights_exp]}


@dataclass(frozen=True)
class BallNorm:
    p: int
    radius_exp: Fraction
    field: Optional[ExtField] = field(default=None, compare=False)

    def __post_init__(self):
        q = as_exponent(self.radius_exp)
        if q == INF:
            raise ValueError("ball radius must be nonzero")
        object.__setattr__(self, "radius_exp", q)

    @property
    def rank(self) -> int:
        return 1

    @property
    def family(self) -> str:
        return "additive"

    @property
    def radius(self) -> AbsValue:
        return AbsValue(self.radius_exp)

    def to_json(self):
        return {"family": "additive", "radius_exp": _exp_json(self.radius_exp)}


@dataclass(frozen=True)
class TorusPoint:
    """Evaluation at a rational point ``g`` of ``G_m^n``."""

    p: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        if any(x == 0 for x in c):
            raise ValueError("torus coordinates must be nonzero")
        object.__setattr__(self, "coords", c)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def family(self) -> str:
        return "torus"


@dataclass(frozen=True)
class AdditivePoint:
    """Evaluation at a rational point of ``G_a``."""

    p: int
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def rank(self) -> int:
        return 1

    @property
    def family(self) -> str:
        return "additive"


Point = Union[MonomialNorm, BallNorm, TorusPoint, AdditivePoint]


def _exp_json(q):
    return {"num": q.numerator, "den": q.denominator}


def _val(c, p: int):
    return c.valuation if isinstance(c, FieldElt) else vp(c, p)


def _as_laurent(f, x: Point) -> dict:
    if isinstance(f, Mapping):
        return {tuple(u): c for u, c in f.items()}
    # a coefficient list is a polynomial in one variable
    return {(i,): c for i, c in enumerate(f)}


def identity_point(family: str, p: int, rank: int = 1) -> Point:
    """The point ``1_G``: evaluation at the group identity."""
    if family == "torus":
        return TorusPoint(p, (Fraction(1),) * rank)
    if family == "additive":
        return AdditivePoint(p, Fraction(0))
    raise ValueError(f"unknown family {family!r}")


def shilov_point_torus(n: int, p: int = 2) -> MonomialNorm:
    """``o_T``: the Gauss point of ``|x1| = ... = |xn| = 1``."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    return MonomialNorm(p, (Fraction(0),) * n)


def norm_eval(f, x: Point) -> AbsValue:
    """``|f(x)|`` for a Laurent polynomial ``{exponents: coeff}`` or a coefficient list."""
    terms = _as_laurent(f, x)
    p = x.p
    for u in terms:
        if len(u) != x.rank:
            raise ValueError(f"monomial {u} does not match rank {x.rank}")
    if isinstance(x, MonomialNorm):
        best = INF
        for u, c in terms.items():
            if c != 0:
                best = min(best, _val(c, p) + x.weight(u).exp)
        return AbsValue(best)
    if isinstance(x, BallNorm):
        best = INF
        for (i,), c in terms.items():
            if i < 0:
                raise ValueError("negative power on G_a")
            if c != 0:
                best = min(best, _val(c, p) + i * x.radius_exp)
        return AbsValue(best)
    if isinstance(x, TorusPoint):
        total = sum(
            (c * _monomial_value(x.coords, u) for u, c in terms.items()),
            Fraction(0),
        )
        return AbsValue(_val(total, p))
    if isinstance(x, AdditivePoint):
        total = sum((c * x.value**i for (i,), c in terms.items()), Fraction(0))
        return AbsValue(_val(total, p))
    raise TypeError(f"not a point: {x!r}")


def _monomial_value(coords, u):
    out = Fraction(1)
    for g, k in zip(coords, u):
        out *= g**k
    return out


def _check_same(x: Point, y: Point):
    if x.family != y.family or x.rank != y.rank or x.p != y.p:
        raise ValueError("points must share family, rank and prime")


def leq_norm(x: Point, y: Point) -> bool:
    """``x <= y`` iff ``|f(x)| <= |f(y)|`` for every regular function f."""
    _check_same(x, y)
    if isinstance(y, MonomialNorm):
        if isinstance(x, MonomialNorm):
            # both x_i and 1/x_i must be dominated
            return x.weights_exp == y.weights_exp
        if isinstance(x, TorusPoint):
            return all(vp(g, x.p) == q for g, q in zip(x.coords, y.weights_exp))
    if isinstance(y, BallNorm):
        if isinstance(x, BallNorm):
            return x.radius_exp >= y.radius_exp
        if isinstance(x, AdditivePoint):
            return vp(x.value, x.p) >= y.radius_exp
    if isinstance(y, (TorusPoint, AdditivePoint)):
        # a rational point dominates only itself: it kills x_i - g_i
        return x == y
    raise TypeError(f"cannot compare {type(x).__name__} with {type(y).__name__}")


def convolve(x: Point, y: Point) -> Point:
    """``x * y``: the seminorm ``f -> |Delta(f)|_{x (x) y}``."""
    _check_same(x, y)
    if isinstance(x, MonomialNorm) and isinstance(y, MonomialNorm):
        return MonomialNorm(x.p, tuple(a + b for a, b in zip(x.weights_exp, y.weights_exp)), x.field)
    if isinstance(x, BallNorm) and isinstance(y, BallNorm):
        return BallNorm(x.p, min(x.radius_exp, y.radius_exp), x.field)
    if isinstance(x, TorusPoint) and isinstance(y, TorusPoint):
        return TorusPoint(x.p, tuple(a * b for a, b in zip(x.coords, y.coords)))
    if isinstance(x, AdditivePoint) and isinstance(y, AdditivePoint):
        return AdditivePoint(x.p, x.value + y.value)
    point, norm = (x, y) if isinstance(x, (TorusPoint, AdditivePoint)) else (y, x)
    if isinstance(norm, MonomialNorm):
        # translation by g rescales each weight by |g_i|
        w = tuple(q + vp(g, point.p) for q, g in zip(norm.weights_exp, point.coords))
        return MonomialNorm(norm.p, w, norm.field)
    if vp(point.value, point.p) >= norm.radius_exp:
        return norm
    raise ValueError(f"translate of E(0, r) by {point.value} is not a ball centered at 0")


def inv_norm(x: Point) -> Point:
    """``inv(x)``: pull back along the antipode."""
    if isinstance(x, MonomialNorm):
        return MonomialNorm(x.p, tuple(-q for q in x.weights_exp), x.field)
    if isinstance(x, BallNorm):
        return x
    if isinstance(x, TorusPoint):
        return TorusPoint(x.p, tuple(1 / g for g in x.coords))
    if isinstance(x, AdditivePoint):
        return AdditivePoint(x.p, -x.value)
    raise TypeError(f"not a point: {x!r}")


@dataclass(frozen=True)
class EnvelopeCheck:
    unit_ok: bool
    inv_ok: bool
    idem_ok: bool
    bounded_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.unit_ok and self.inv_ok and self.idem_ok and self.bounded_ok

    def to_dict(self) -> dict:
        return {
            "unit_ok": self.unit_ok,
            "inv_ok": self.inv_ok,
            "idem_ok": self.idem_ok,
            "bounded_ok": self.bounded_ok,
        }


def envelope_check(x: Point) -> EnvelopeCheck:
    """The three conditions making ``{z : z <= x}`` a subgroup, plus boundedness.

    Boundedness holds for every point of these families: the envelope lies
    in the polydisc cut out by the generators' values at ``x``.
    """
    one = identity_point(x.family, x.p, x.rank)
    return EnvelopeCheck(
        unit_ok=leq_norm(one, x),
        inv_ok=leq_norm(inv_norm(x), x),
        idem_ok=leq_norm(convolve(x, x), x),
        bounded_ok=True,
    )


def base_change_norm(x: Point, k: ExtField) -> Point:
    """``x (x) 1`` over ``k``; the weights are unchanged for these diagonal families."""
    if k.p != x.p:
        raise ValueError("extension of a different prime")
    if isinstance(x, (MonomialNorm, BallNorm)):
        return replace(x, field=k)
    return x


def in_value_group(q, k: Optional[ExtField]) -> bool:
    """Whether ``p**(-q)`` lies in ``|k^x|``."""
    e = k.ramification_index if k is not None else 1
    return Fraction(q) * e == int(Fraction(q) * e)


def weights_in_value_group(x: Point) -> tuple[bool, ...]:
    k = getattr(x, "field", None)
    if isinstance(x, MonomialNorm):
        return tuple(in_value_group(q, k) for q in x.weights_exp)
    if isinstance(x, BallNorm):
        return (in_value_group(x.radius_exp, k),)
    return ()


# -- Theorem conditions on the torus -------------------------------------------


def _unit_vector(n, i, sign):
    return tuple(sign if j == i else 0 for j in range(n))


def _falsifying_character(x: Point, y: Point) -> Optional[tuple[int, ...]]:
    """A character chi with |chi(x)| > |chi(y)|, or None if x <= y on characters."""
    for i in range(x.rank):
        for sign in (1, -1):
            u = _unit_vector(x.rank, i, sign)
            chi = {u: Fraction(1)}
            if norm_eval(chi, x) > norm_eval(chi, y):
                return u
    return None


@dataclass(frozen=True)
class TheoremReport:
    universal: bool
    group_like: bool
    dominates_o_t: bool
    maximal: bool
    witnesses: dict

    @property
    def all_ok(self) -> bool:
        return self.universal and self.group_like and self.dominates_o_t and self.maximal

    def to_dict(self) -> dict:
        return {
            "i_universal": self.universal,
            "ii_star_and_inv": self.group_like,
            "iii_dominates_o_T": self.dominates_o_t,
            "iv_maximal": self.maximal,
            "maximality_scope": "monomial norms of the same rank",
            "witnesses": self.witnesses,
        }


def theorem_conditions_torus(x: MonomialNorm) -> TheoremReport:
    """Conditions (i)-(iv) for a monomial norm on a split torus.

    (iv) is decided within the monomial family only: there ``<=`` is
    equality, so x is maximal exactly when it satisfies (i)-(iii).
    """
    if not isinstance(x, MonomialNorm):
        raise TypeError("expected a MonomialNorm")
    witnesses: dict = {}
    universal = True
    xx, ix = convolve(x, x), inv_norm(x)
    idem = leq_norm(xx, x)
    inv = leq_norm(ix, x)
    if not idem:
        witnesses["ii_star"] = list(_falsifying_character(xx, x))
    if not inv:
        witnesses["ii_inv"] = list(_falsifying_character(ix, x))
    o_t = MonomialNorm(x.p, (Fraction(0),) * x.rank, x.field)
    dominates = leq_norm(o_t, x)
    if not dominates:
        witnesses["iii"] = list(_falsifying_character(o_t, x))
    group_like = idem and inv
    maximal = universal and group_like and dominates
    if not maximal:
        witnesses["iv"] = "fails (i)-(iii)"
    return TheoremReport(universal, group_like, dominates, maximal, witnesses)


def torus_weight_grid(rank: int, exps: Sequence = (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2), p: int = 2):
    for w in itertools.product(exps, repeat=rank):
        yield MonomialNorm(p, tuple(Fraction(q) for q in w))


# -- tensor decompositions on G_a ---------------------------------------------


def comultiply_power(n: int) -> dict[tuple[int, int], Fraction]:
    """``Delta(a^n) = sum C(n, i) a^i (x) a^(n-i)`` as ``{(i, j): coeff}``."""
    return {(i, n - i): Fraction(comb(n, i)) for i in range(n + 1)}


def tensor_norm_canonical(tensor: Mapping[tuple[int, int], Fraction], x: BallNorm, y: BallNorm) -> AbsValue:
    """``|t|_{x (x) y}`` computed on the monomial basis ``a^i (x) a^j``."""
    best = INF
    for (i, j), c in tensor.items():
        if c != 0:
            best = min(best, vp(c, x.p) + i * x.radius_exp + j * y.radius_exp)
    return AbsValue(best)


def decomposition_value(pairs, x: BallNorm, y: BallNorm) -> AbsValue:
    """``max_k |b_k(x)| |c_k(y)|`` for a decomposition ``sum b_k (x) c_k``."""
    return max(norm_eval(b, x) * norm_eval(c, y) for b, c in pairs)


def decomposition_tensor(pairs) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}
    for b, c in pairs:
        for i, bi in enumerate(b):
            for j, cj in enumerate(c):
                if bi and cj:
                    out[(i, j)] = out.get((i, j), Fraction(0)) + bi * cj
    return {k: v for k, v in out.items() if v != 0}


def _solve_inverse(a: list[list[Fraction]]) -> Optional[list[list[Fraction]]]:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a_ - f * b_ for a_, b_ in zip(m[r], m[col])]
    return [row[n:] for row in m]


def random_decomposition(tensor: Mapping[tuple[int, int], Fraction], size: int, rng: random.Random, p: int):
    """A random ``[(b_k, c_k)]`` with ``sum b_k (x) c_k == tensor``.

    Writes the coefficient matrix ``M`` as ``(M A^-1) A`` for a random
    invertible ``A`` whose entries mix units and powers of p, then splits a
    random term in two.
    """
    n = size
    mat = [[tensor.get((i, j), Fraction(0)) for j in range(n)] for i in range(n)]
    while True:
        a = [[Fraction(rng.randint(-3, 3)) * Fraction(p) ** rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        a_inv = _solve_inverse(a)
        if a_inv is not None:
            break
    b = [[sum((mat[i][k] * a_inv[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    pairs = [([b[i][j] for i in range(n)], list(a[j])) for j in range(n)]
    j = rng.randrange(n)
    bj, cj = pairs[j]
    piece = [Fraction(rng.randint(-4, 4)) * Fraction(p) ** rng.randint(-2, 2) for _ in range(n)]
    pairs[j] = (piece, cj)
    pairs.append(([u - v for u, v in zip(bj, piece)], cj))
    return pairs


def decomposition_search(n: int, x: BallNorm, y: BallNorm, trials: int, rng: random.Random):
    """Canonical value of ``Delta(a^n)`` under ``x (x) y`` and the best random one found."""
    tensor = comultiply_power(n)
    canonical = tensor_norm_canonical(tensor, x, y)
    best = None
    for _ in range(trials):
        pairs = random_decomposition(tensor, n + 1, rng, x.p)
        assert decomposition_tensor(pairs) == {k: v for k, v in tensor.items() if v != 0}
        val = decomposition_value(pairs, x, y)
        best = val if best is None else min(best, val)
    return canonical, best


def norm_from_json(obj, p: int) -> Point:
    if obj["family"] == "torus":
        return MonomialNorm(p, tuple(Fraction(w["num"], w["den"]) for w in obj["weights_exp"]))
    if obj["family"] == "additive":
        r = obj["radius_exp"]
        return BallNorm(p, Fraction(r["num"], r["den"]))
    raise ValueError(f"unknown family {obj['family']!r}")

