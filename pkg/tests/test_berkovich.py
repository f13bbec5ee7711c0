import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonarch import poly
from nonarch.berkovich import (
    BerkPoint,
    PointType,
    eta,
    field_from_id,
    in_open_ball,
    join,
    leq,
    point_type,
    render_points,
    seminorm_eval,
)
from nonarch.sampling import random_point, random_rational
from nonarch.valued_field import INF, AbsValue, base_field, make_extension, vp

FIELDS = [(2, "T"), (3, "T"), (2, "T^2-2"), (3, "T^2-3")]

seeds = st.integers(0, 2**32 - 1)
field_st = st.sampled_from(FIELDS).map(lambda t: make_extension(*t))


def test_gauss_point(Q2):
    g = eta(Q2(0), AbsValue(0))
    assert seminorm_eval([1, 1, 1], g) == AbsValue(0)
    assert seminorm_eval([2, 0, 4], g) == AbsValue(1)
    assert point_type(g) is PointType.TYPE_2
    assert str(g) == "eta(0; 1)"


def test_ball_identity(Q2):
    x = eta(Q2(0), AbsValue(1))
    assert x == eta(Q2(2), AbsValue(1))
    assert x == eta(Q2(Fraction(6)), AbsValue(1))
    assert x != eta(Q2(1), AbsValue(1))
    assert x != eta(Q2(0), AbsValue(2))
    assert len({x, eta(Q2(-2), AbsValue(1))}) == 1


def test_type1_points(Q3):
    a = eta(Q3(5), AbsValue("inf"))
    assert point_type(a) is PointType.TYPE_1
    assert seminorm_eval([-5, 1], a).is_zero()
    assert seminorm_eval([-2, 1], a) == AbsValue(1)
    assert leq(a, eta(Q3(2), AbsValue(1)))
    assert not leq(a, eta(Q3(2), AbsValue(2)))


def test_eta_requires_absvalue(Q2):
    with pytest.raises(TypeError):
        eta(Q2(0), Fraction(1))


def test_in_open_ball(Q2):
    assert in_open_ball(Q2(4), Q2(0), AbsValue(1))
    assert not in_open_ball(Q2(2), Q2(0), AbsValue(1))


def test_extension_points_compare_with_base(K2, Q2):
    x = eta(K2.gen, AbsValue(Fraction(1, 2)))
    assert x == eta(K2(0), AbsValue(Fraction(1, 2)))
    assert leq(x, eta(Q2(0), AbsValue(0)))
    assert join(x, eta(Q2(1), AbsValue(3))) == eta(K2(0), AbsValue(0))


@given(field_st, seeds)
def test_json_round_trip(k, seed):
    x = random_point(random.Random(seed), k, allow_type1=True)
    text = json.dumps(x.to_json(), sort_keys=True)
    y = BerkPoint.from_json(json.loads(text))
    assert y == x
    assert y.center == x.center and y.radius == x.radius
    assert json.dumps(y.to_json(), sort_keys=True) == text


def test_field_from_id():
    assert field_from_id("Q_5") is base_field(5)
    assert field_from_id("Q_2[T]/(T^2 - 2)").defining_poly == (-2, 0, 1)
    with pytest.raises(ValueError):
        field_from_id("R")


def test_render_points(Q2):
    xs = [eta(Q2(0), AbsValue(1)), eta(Q2(1), AbsValue(Fraction(-1, 2)))]
    assert render_points(xs) == "eta(0; 2^{-1})\neta(1; 2^{1/2})"


def _random_poly(rng, k, deg):
    return [random_rational(rng, k.p, -1, 3) for _ in range(deg + 1)]


@settings(max_examples=150)
@given(field_st, seeds)
def test_seminorm_multiplicative_and_ultrametric(k, seed):
    rng = random.Random(seed)
    x = random_point(rng, k, allow_type1=True)
    f, g = _random_poly(rng, k, rng.randint(0, 3)), _random_poly(rng, k, rng.randint(0, 3))
    fx, gx = seminorm_eval(f, x), seminorm_eval(g, x)
    assert seminorm_eval(poly.pmul(f, g), x) == fx * gx
    s = seminorm_eval(poly.padd(f, g), x)
    assert s <= max(fx, gx)
    if fx != gx:
        assert s == max(fx, gx)


@settings(max_examples=150)
@given(field_st, seeds)
def test_seminorm_monotone_in_order(k, seed):
    rng = random.Random(seed)
    x, y = random_point(rng, k, allow_type1=True), random_point(rng, k)
    z = join(x, y)
    f = _random_poly(rng, k, rng.randint(1, 4))
    assert seminorm_eval(f, x) <= seminorm_eval(f, z)
    assert seminorm_eval(f, y) <= seminorm_eval(f, z)


@given(seeds)
def test_seminorm_matches_residue_sup(seed):
    # Over Q_7 with deg f < 7 the Gauss norm of a ball E(a, 7^-k) is attained
    # on one of the 7 points a + 7^k c, c = 0..6.
    rng = random.Random(seed)
    Q7 = base_field(7)
    a = random_rational(rng, 7)
    k = rng.randint(-2, 3)
    f = _random_poly(rng, Q7, rng.randint(0, 6))
    x = eta(Q7(a), AbsValue(k))
    best = INF
    for c in range(7):
        b = a + Fraction(7) ** k * c
        val = sum(coef * b**i for i, coef in enumerate(f))
        best = min(best, vp(val, 7))
    assert seminorm_eval(f, x) == AbsValue(best)


@settings(max_examples=200)
@given(field_st, seeds)
def test_partial_order_and_join(k, seed):
    rng = random.Random(seed)
    x, y, z = (random_point(rng, k, allow_type1=True) for _ in range(3))
    assert leq(x, x)
    if leq(x, y) and leq(y, x):
        assert x == y
    if leq(x, y) and leq(y, z):
        assert leq(x, z)
    j = join(x, y)
    assert leq(x, j) and leq(y, j)
    assert join(y, x) == j
    if leq(x, z) and leq(y, z):
        assert leq(j, z)
