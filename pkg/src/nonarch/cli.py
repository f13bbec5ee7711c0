"""Command-line front end.

Polynomials use ``T`` for the variable of the defining polynomial; field
elements are polynomials in ``alpha``, the class of ``T``.  Torus functions
are Laurent polynomials in ``x1 .. xn``; functions on G_a use ``a``.
Exponents are rationals such as ``3/2`` (the radius is ``p^(-q)``).

Exit status: 0 on success, 2 on invalid input, 3 when a sweep finds a
counterexample.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction

from . import bt_tree, hopf_norms
from .berkovich import eta
from .poly import ParseError, format_poly, parse_laurent, parse_poly
from .sampling import DEGREES, PRIMES, random_eisenstein
from .valued_field import AbsValue, as_exponent, base_field, make_extension

log = logging.getLogger("nonarch")

EXIT_INPUT = 2
EXIT_SWEEP = 3


class SweepFailure(Exception):
    def __init__(self, summary):
        super().__init__(f"{summary['failed']} sample(s) failed")
        self.summary = summary


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _exp_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise ValueError(f"bad exponent list {text!r}: {exc}") from None


def _exp(text: str):
    try:
        return as_exponent(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad exponent {text!r}") from None


def _point_args(args):
    k = make_extension(args.p, args.poly)
    return eta(k.parse(args.center), AbsValue(_exp(args.radius_exp)))


def _norm_from_args(args, weights=None, radius=None):
    if args.family == "torus":
        text = weights if weights is not None else args.weights
        if text is None:
            raise ValueError("--weights is required for the torus family")
        return hopf_norms.MonomialNorm(args.p, _exp_list(text))
    text = radius if radius is not None else args.radius_exp
    if text is None:
        raise ValueError("--radius-exp is required for the additive family")
    return hopf_norms.BallNorm(args.p, _exp(text))


# -- commands -------------------------------------------------------------------


def cmd_fixed_points(args) -> str:
    report = bt_tree.galois_fixed_report(args.p, parse_poly(args.poly))
    if args.json:
        return report.to_json()
    if args.ascii:
        return bt_tree.render_report_ascii(report)
    p = report.p
    seg = report.fixed_segment
    lines = [
        f"P(T) = {report.defining_poly}, p = {p}, e = {report.e}",
        f"r  (orbit diameter)    = {report.r.format(p)}",
        f"r' (distance to Q_{p})  = {report.r_prime.format(p)}",
        "fixed segment         = "
        + (f"eta(alpha; [{seg[0].format(p)}, {seg[1].format(p)}))" if seg else "empty"),
        f"(a) paths meet outside the tree: {report.cond_paths_outside}",
        f"(b) roots in D(alpha, |alpha|):   {report.cond_open_ball}",
        f"(c) roots of Q in D(1, 1):        {report.cond_q_roots}",
        f"(d) p divides e:                  {report.cond_e_vanishes}",
        "Q reduces to " + format_poly([Fraction(c) for c in report.q_reduction], var="U") + f" mod {p}",
    ]
    return "\n".join(lines)


def cmd_tau(args) -> str:
    x = _point_args(args)
    y = bt_tree.tau(x)
    if args.json:
        return dumps({"input": x.to_json(), "tau": y.to_json()})
    return f"tau({x}) = {y}"


def cmd_in_building(args) -> str:
    x = _point_args(args)
    inside = bt_tree.in_building(x)
    if args.json:
        return dumps({"point": x.to_json(), "in_building": inside, "tau": bt_tree.tau(x).to_json()})
    return f"{x} {'lies' if inside else 'does not lie'} on the tree over Q_{args.p}"


def cmd_norm_eval(args) -> str:
    x = _norm_from_args(args)
    if args.family == "torus":
        f = parse_laurent(args.poly, x.rank)
    else:
        f = parse_poly(args.poly, var="a")
    val = hopf_norms.norm_eval(f, x)
    if args.json:
        return dumps({"norm": x.to_json(), "poly": args.poly, "value_exp": val.to_json()})
    return f"|{args.poly}| = {val.format(args.p)}"


def cmd_convolve(args) -> str:
    x = _norm_from_args(args, weights=args.x, radius=args.x)
    y = _norm_from_args(args, weights=args.y, radius=args.y)
    z = hopf_norms.convolve(x, y)
    if args.json:
        return dumps({"x": x.to_json(), "y": y.to_json(), "x_star_y": z.to_json()})
    return json.dumps(z.to_json(), sort_keys=True)


def cmd_envelope_check(args) -> str:
    x = _norm_from_args(args)
    check = hopf_norms.envelope_check(x)
    if args.json:
        return dumps({"norm": x.to_json(), **check.to_dict()})
    return "\n".join(f"{k}: {v}" for k, v in check.to_dict().items())


def cmd_theorem_check(args) -> str:
    x = hopf_norms.MonomialNorm(args.p, _exp_list(args.weights))
    if x.rank != args.rank:
        raise ValueError(f"--weights has {x.rank} entries, --rank is {args.rank}")
    report = hopf_norms.theorem_conditions_torus(x)
    if args.json:
        return dumps({"norm": x.to_json(), **report.to_dict()})
    d = report.to_dict()
    lines = [f"{k}: {d[k]}" for k in ("i_universal", "ii_star_and_inv", "iii_dominates_o_T", "iv_maximal")]
    lines.append(f"(iv) decided within {d['maximality_scope']}")
    if d["witnesses"]:
        lines.append(f"witnesses: {json.dumps(d['witnesses'], sort_keys=True)}")
    return "\n".join(lines)


def cmd_apartment_test(args) -> str:
    k = base_field(args.p)
    x = eta(k.parse(args.center), AbsValue(_exp(args.radius_exp)))
    if x.radius.is_zero():
        raise ValueError("rational points are not in the building")
    if bt_tree.on_standard_apartment(x):
        out = {"point": x.to_json(), "on_apartment": True, "witness": None}
    else:
        w = bt_tree.find_moving_unit(x)
        out = {"point": x.to_json(), "on_apartment": False, "witness": w.to_dict()}
    if args.json:
        return dumps(out)
    if out["on_apartment"]:
        return f"{x} lies on the apartment eta_0; every unit fixes it"
    w = out["witness"]
    where = w["extension_used"] or f"Q_{args.p}"
    return f"{x} is moved by t = {w['unit']} in {where}"


def run_sweep(mode: str, count: int, seed: int) -> dict:
    """Sample Eisenstein polynomials and check the mode's property on each."""
    rng = random.Random(seed)
    samples = []
    for _ in range(count):
        if mode == "tame":
            p = rng.choice(PRIMES)
            e = rng.choice([d for d in DEGREES if d % p])
        elif mode == "wild-prime":
            p = rng.choice([q for q in PRIMES if q in DEGREES])
            e = p
        elif mode == "equivalence":
            p = rng.choice(PRIMES)
            e = rng.choice(list(DEGREES))
        else:
            raise ValueError(f"unknown sweep mode {mode!r}")
        samples.append((p, random_eisenstein(rng, p, e)))

    failures, divergences, passed = [], [], 0
    for p, coeffs in samples:
        rep = bt_tree.galois_fixed_report(p, coeffs)
        a, b, c, d = rep.flags
        problems = []
        if not a == b == c:
            problems.append("(a), (b), (c) disagree")
        if c and not d:
            problems.append("(c) holds but p does not divide e")
        if mode == "tame" and not (rep.r == rep.r_prime and rep.fixed_segment is None):
            problems.append("tame degree but r < r'")
        if mode == "wild-prime" and not (rep.r < rep.r_prime and rep.fixed_segment is not None and all(rep.flags)):
            problems.append("e = p but no fixed segment")
        if d and not c:
            divergences.append({"p": p, "poly": rep.defining_poly, "e": rep.e})
            log.info("(d) without (c): p=%d P=%s", p, rep.defining_poly)
        if problems:
            failures.append({"p": p, "poly": rep.defining_poly, "problems": problems})
        else:
            passed += 1
    return {
        "mode": mode,
        "count": count,
        "seed": seed,
        "passed": passed,
        "failed": len(failures),
        "failures": failures,
        "d_divergences": divergences,
    }


def cmd_sweep(args) -> str:
    summary = run_sweep(args.mode, args.count, args.seed)
    if args.json:
        text = dumps(summary)
    else:
        text = f"sweep {args.mode}: {summary['passed']}/{summary['count']} passed (seed {args.seed})"
        if summary["d_divergences"]:
            text += f"\n{len(summary['d_divergences'])} sample(s) with p | e but (a)-(c) false"
        for f in summary["failures"]:
            text += f"\nFAIL p={f['p']} P={f['poly']}: {'; '.join(f['problems'])}"
    if summary["failed"]:
        print(text)
        raise SweepFailure(summary)
    return text


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonarch",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log sweep details to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("fixed-points", cmd_fixed_points, "Galois-fixed points for an Eisenstein polynomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--poly", required=True, help='Eisenstein polynomial in T, e.g. "T^2-2"')
    sp.add_argument("--ascii", action="store_true", help="draw the conjugate paths")

    for name, func, help_ in (
        ("tau", cmd_tau, "retract a ball point onto the tree over Q_p"),
        ("in-building", cmd_in_building, "test whether a ball point lies on the tree over Q_p"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--poly", default="T", help='defining polynomial in T (default "T", i.e. Q_p)')
        sp.add_argument("--center", required=True, help='center as a polynomial in alpha, e.g. "1+alpha"')
        sp.add_argument("--radius-exp", required=True, help="radius exponent q (radius p^-q) or inf")

    def add_norm(sp, weights=True):
        sp.add_argument("--family", choices=["torus", "additive"], default="torus")
        if weights:
            sp.add_argument("--weights", help='torus weight exponents, e.g. "0,1/2"')
            sp.add_argument("--radius-exp", help="G_a ball radius exponent")

    sp = add("norm-eval", cmd_norm_eval, "evaluate a torus or G_a norm on a function")
    sp.add_argument("--p", type=int, required=True)
    add_norm(sp)
    sp.add_argument("--poly", required=True, help='Laurent polynomial in x1..xn, or polynomial in a')

    sp = add("convolve", cmd_convolve, "convolution x * y of two norms")
    sp.add_argument("--p", type=int, default=2, help="prime (does not affect the result)")
    add_norm(sp, weights=False)
    sp.add_argument("--x", required=True, help="weights (torus) or radius exponent (additive)")
    sp.add_argument("--y", required=True)

    sp = add("envelope-check", cmd_envelope_check, "subgroup conditions on the envelope of a norm")
    sp.add_argument("--p", type=int, default=2, help="prime (does not affect the result)")
    add_norm(sp)

    sp = add("theorem-check", cmd_theorem_check, "conditions (i)-(iv) for a monomial torus norm")
    sp.add_argument("--p", type=int, default=2, help="prime (does not affect the result)")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--weights", required=True)

    sp = add("apartment-test", cmd_apartment_test, "find a unit moving a point off the apartment eta_0")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--center", required=True)
    sp.add_argument("--radius-exp", required=True)

    sp = add("sweep", cmd_sweep, "seeded property sweep over random Eisenstein polynomials")
    sp.add_argument("--mode", choices=["tame", "wild-prime", "equivalence"], required=True)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        out = args.func(args)
    except SweepFailure:
        return EXIT_SWEEP
    except (ValueError, ParseError, ZeroDivisionError) as exc:
        print(f"nonarch {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
