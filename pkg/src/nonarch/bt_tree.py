"""The tree of SL2 inside the Berkovich line: retraction, Galois-fixed points,
and the diagonal-torus action used to detect apartments.

Over a totally ramified ``K = Q_p(alpha)`` the basis ``1, alpha, ...,
alpha^(e-1)`` is orthogonal (its valuations are distinct mod 1), so the
distance from ``beta = sum b_i alpha^i`` to ``Q_p`` is ``max_{i>=1} |b_i alpha^i|``,
attained at ``b_0``.  Everything below leans on that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import poly as _poly
from .berkovich import BerkPoint, eta
from .poly import format_poly
from .valued_field import (
    EISENSTEIN,
    INF,
    UNRAMIFIED,
    AbsValue,
    ExtField,
    FieldElt,
    base_field,
    common_field,
    conjugate_distances,
    make_extension,
    newton_polygon,
    residue_reduce,
    taylor_shift,
    unramified_extension,
    vp,
)


def distance_to_base(beta: FieldElt) -> AbsValue:
    """``d(beta, Q_p) = min_a |beta - a|`` by the coordinate formula."""
    k = beta.field
    if k.kind == UNRAMIFIED:
        raise ValueError("distance to the base is only implemented for totally ramified fields")
    if k.is_base():
        return AbsValue(INF)
    step = Fraction(1, k.degree)
    best = INF
    for i, b in enumerate(beta.coeffs[1:], start=1):
        best = min(best, vp(b, k.p) + i * step)
    return AbsValue(best)


def tau(x: BerkPoint, base: Optional[ExtField] = None) -> BerkPoint:
    """Maximal point of the smallest ball with center in ``Q_p`` containing ``x``.

    The result lives over the base field.  A rational point of the base is
    returned unchanged (it is its own smallest ball).
    """
    k = x.field
    base = base or base_field(k.p)
    if not base.is_base() or base.p != k.p:
        raise ValueError(f"{base.name} is not the base field of {k.name}")
    if k.kind == UNRAMIFIED:
        raise ValueError("tau is only defined here for totally ramified extensions")
    b0 = base(x.center.coeffs[0])
    radius = max(x.radius, distance_to_base(x.center))
    return BerkPoint(b0, radius)


def in_building(x: BerkPoint, base: Optional[ExtField] = None) -> bool:
    """Whether ``x`` lies on the tree of SL2 over the base field."""
    if x.radius.is_zero():
        raise ValueError("rational points are not in the building")
    return tau(x, base) == x


def galois_conjugate_deg2(x: BerkPoint) -> BerkPoint:
    """Image of ``x`` under the nontrivial automorphism of a quadratic field."""
    k = x.field
    if k.is_base():
        return x
    if k.degree != 2:
        raise ValueError(f"explicit Galois action needs degree 2, got {k.degree}")
    a1 = k.defining_poly[1]
    b0, b1 = x.center.coeffs
    # alpha -> -a1 - alpha
    conj = FieldElt(k, (b0 - a1 * b1, -b1))
    return BerkPoint(conj, x.radius)


def q_polynomial(p: int, P) -> tuple[list[FieldElt], list[int]]:
    """``Q(U) = P(alpha U) / a_0`` over ``K = Q_p[T]/(P)`` and its residue reduction."""
    k = _eisenstein_field(p, P)
    alpha, a0 = k.gen, k.defining_poly[0]
    q = [k(a) * alpha**i / a0 for i, a in enumerate(k.defining_poly)]
    return q, [residue_reduce(c) for c in q]


def _eisenstein_field(p: int, P) -> ExtField:
    k = P if isinstance(P, ExtField) else make_extension(p, P)
    if k.kind != EISENSTEIN:
        raise ValueError(f"{format_poly(k.defining_poly)} is not Eisenstein at {p} (kind {k.kind})")
    return k


@dataclass(frozen=True)
class GaloisOrbitReport:
    p: int
    defining_poly: str
    e: int
    r: AbsValue
    r_prime: AbsValue
    fixed_segment: Optional[tuple[AbsValue, AbsValue]]
    cond_paths_outside: bool
    cond_open_ball: bool
    cond_q_roots: bool
    cond_e_vanishes: bool
    q_reduction: tuple[int, ...]
    conjugate_distances: tuple[AbsValue, ...] = ()

    def to_dict(self) -> dict:
        seg = None
        if self.fixed_segment is not None:
            lo, hi = self.fixed_segment
            seg = {"from_exp": lo.to_json(), "to_exp": hi.to_json(), "closed_open": True}
        return {
            "p": self.p,
            "defining_poly": self.defining_poly,
            "e": self.e,
            "r_exp": self.r.to_json(),
            "r_prime_exp": self.r_prime.to_json(),
            "fixed_segment": seg,
            "cond_paths_outside": self.cond_paths_outside,
            "cond_open_ball": self.cond_open_ball,
            "cond_q_roots": self.cond_q_roots,
            "cond_e_vanishes": self.cond_e_vanishes,
            "q_reduction": list(self.q_reduction),
            "q_reduction_text": format_poly([Fraction(c) for c in self.q_reduction], var="U"),
            "conjugate_distances_exp": [d.to_json() for d in self.conjugate_distances],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GaloisOrbitReport":
        seg = d["fixed_segment"]
        if seg is not None:
            seg = (AbsValue.from_json(seg["from_exp"]), AbsValue.from_json(seg["to_exp"]))
        return cls(
            p=d["p"],
            defining_poly=d["defining_poly"],
            e=d["e"],
            r=AbsValue.from_json(d["r_exp"]),
            r_prime=AbsValue.from_json(d["r_prime_exp"]),
            fixed_segment=seg,
            cond_paths_outside=d["cond_paths_outside"],
            cond_open_ball=d["cond_open_ball"],
            cond_q_roots=d["cond_q_roots"],
            cond_e_vanishes=d["cond_e_vanishes"],
            q_reduction=tuple(d["q_reduction"]),
            conjugate_distances=tuple(AbsValue.from_json(x) for x in d.get("conjugate_distances_exp", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GaloisOrbitReport":
        return cls.from_dict(json.loads(text))

    @property
    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.cond_paths_outside, self.cond_open_ball, self.cond_q_roots, self.cond_e_vanishes)


def galois_fixed_report(p: int, P) -> GaloisOrbitReport:
    """Orbit diameter, distance to the base, fixed segment and the four conditions.

    The three geometric conditions are computed along separate routes:
    the meet point against the building via ``tau``, the conjugates against
    the open ball via the Newton polygon of ``P(X + alpha)``, and the roots of
    ``Q`` via its residue reduction.
    """
    k = _eisenstein_field(p, P)
    e = k.degree
    if e < 2:
        raise ValueError("degree must be at least 2")
    alpha = k.gen

    dists = conjugate_distances(k)
    r = max(dists)
    r_prime = tau(eta(alpha, AbsValue(INF))).radius
    meet = eta(alpha, r)
    cond_paths_outside = not in_building(meet)

    # every root alpha^g, alpha itself included, measured from alpha
    shifted = taylor_shift(k.defining_poly, alpha)
    root_vals = newton_polygon(shifted).valuations()
    cond_open_ball = all(AbsValue(v) < alpha.abs for v in root_vals)

    _, q_red = q_polynomial(p, k)
    u_minus_1_pow = [1]
    for _ in range(e):
        u_minus_1_pow = _poly.pmul(u_minus_1_pow, [-1, 1])
    cond_q_roots = _poly.mod_p_equal_up_to_unit(q_red, u_minus_1_pow, p)

    seg = (r, r_prime) if cond_paths_outside else None
    return GaloisOrbitReport(
        p=p,
        defining_poly=format_poly(k.defining_poly),
        e=e,
        r=r,
        r_prime=r_prime,
        fixed_segment=seg,
        cond_paths_outside=cond_paths_outside,
        cond_open_ball=cond_open_ball,
        cond_q_roots=cond_q_roots,
        cond_e_vanishes=e % p == 0,
        q_reduction=tuple(q_red),
        conjugate_distances=tuple(dists),
    )


def render_report_ascii(report: GaloisOrbitReport) -> str:
    """Sketch of the conjugate paths climbing to their meet and on to ``tau(alpha)``."""
    p, e = report.p, report.e
    r, rp = report.r.format(p), report.r_prime.format(p)
    width = 4 * (e - 1) + 1
    pad = " " * 6
    mid = pad + " " * (width // 2)
    lines = [
        f"P(T) = {report.defining_poly} over Q_{p}, e = {e}",
        "",
        f"{mid}*  eta(0; {rp}) = tau(alpha)    [tree of SL2 over Q_{p}]",
    ]
    if report.fixed_segment is not None:
        lines += [
            f"{mid}|",
            f"{mid}|  eta(alpha; [{r}, {rp}))",
            f"{mid}|  Galois-fixed, outside the tree over Q_{p}",
            f"{mid}|",
            f"{mid}*  eta(alpha; {r}) = meet of the conjugate paths",
        ]
    else:
        lines.append(f"{mid}   (the conjugate paths meet only at tau(alpha))")
    lines += [
        pad + "_" * (width // 2) + "|" + "_" * (width // 2),
        pad + "   ".join("|" for _ in range(e)),
        pad + "   ".join("o" for _ in range(e)) + "   conjugates of alpha",
    ]
    dist = ", ".join(d.format(p) for d in report.conjugate_distances)
    lines.append("")
    lines.append(f"|alpha^g - alpha| for alpha^g != alpha: {dist}")
    flags = "".join(
        f"\n  ({tag}) {name}: {val}"
        for tag, name, val in zip(
            "abcd",
            ["paths meet outside the tree", "roots in D(alpha, |alpha|)", "roots of Q in D(1, 1)", "p divides e"],
            report.flags,
        )
    )
    lines.append("conditions:" + flags)
    return "\n".join(lines)


@dataclass(frozen=True)
class ApartmentMoveWitness:
    unit: FieldElt
    extension_used: Optional[ExtField]
    moved_to: BerkPoint

    def to_dict(self) -> dict:
        return {
            "unit": str(self.unit),
            "extension_used": self.extension_used.name if self.extension_used else None,
            "moved_to": self.moved_to.to_json(),
        }


def apartment_action(t: FieldElt, x: BerkPoint) -> BerkPoint:
    """``diag(t, 1/t)`` acting on the line: ``E(a, r) -> E(t^2 a, |t^2| r)``."""
    if t.is_zero():
        raise ValueError("t must be nonzero")
    k = common_field(t.field, x.field)
    t2 = k.lift(t) ** 2
    return BerkPoint(t2 * k.lift(x.center), t2.abs * x.radius)


def on_standard_apartment(x: BerkPoint) -> bool:
    """Whether ``x`` is some ``eta_0(r)``."""
    return x.center.abs <= x.radius


def _unit_candidates(k: ExtField):
    if k.is_base():
        for u in range(1, k.p):
            yield k(u)
        return
    # residue representatives not already in the base
    for b1 in range(1, k.p):
        for b0 in range(k.p):
            yield k.from_poly([b0, b1])


def find_moving_unit(x: BerkPoint, base: Optional[ExtField] = None) -> ApartmentMoveWitness:
    """A unit ``t`` with ``t . x != x`` for a point off the apartment ``{eta_0(r)}``.

    Residue representatives of the base are tried first, then those of the
    unramified quadratic extension.
    """
    base = base or base_field(x.field.p)
    if not x.field.is_base():
        raise ValueError("the apartment test takes a point over the base field")
    if x.radius.is_zero():
        raise ValueError("rational points are not in the building")
    if on_standard_apartment(x):
        raise ValueError(f"{x} lies on the apartment; every unit fixes it")
    for k, used in ((base, None), (unramified_extension(base.p, 2), "ext")):
        for t in _unit_candidates(k):
            if t.valuation != 0:
                continue
            if (t * t - 1).abs * x.center.abs > x.radius:
                moved = apartment_action(t, x)
                assert moved != x
                return ApartmentMoveWitness(t, k if used else None, moved)
    raise AssertionError("the quadratic unramified extension always has a moving unit")


def apartment_orbit_fixed(x: BerkPoint, units: Sequence[FieldElt]) -> bool:
    return all(apartment_action(t, x) == x for t in units)
