import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nonarch import poly
from nonarch.sampling import random_eisenstein, random_element
from nonarch.valued_field import (
    EISENSTEIN,
    INF,
    TRIVIAL,
    UNRAMIFIED,
    AbsValue,
    FieldElt,
    IncomparableFields,
    NewtonPolygon,
    base_field,
    common_field,
    conjugate_distances,
    elt_valuation,
    exp_from_json,
    exp_to_json,
    make_extension,
    newton_polygon,
    orbit_diameter,
    residue_reduce,
    taylor_shift,
    unramified_extension,
    vp,
)

from .conftest import small_fractions


def test_vp_basics():
    assert vp(8, 2) == 3
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(0, 5) == INF
    assert vp(Fraction(-50, 7), 5) == 2


def test_absvalue_order_and_products():
    a, b = AbsValue(Fraction(1, 2)), AbsValue(2)
    assert b < a
    assert (a * b).exp == Fraction(5, 2)
    assert (a / b).exp == Fraction(-3, 2)
    assert (a**3).exp == Fraction(3, 2)
    assert AbsValue("inf").is_zero()
    assert AbsValue("inf") < b
    assert AbsValue(Fraction(3, 2)).format(2) == "2^{-3/2}"


@pytest.mark.parametrize("q", [Fraction(3, 2), Fraction(-1, 3), Fraction(0), INF])
def test_exponent_json_round_trip(q):
    assert exp_from_json(exp_to_json(q)) == q


def test_sqrt2_example(K2):
    alpha = K2.gen
    assert K2.kind == EISENSTEIN
    assert K2.ramification_index == 2
    assert alpha.valuation == Fraction(1, 2)
    assert alpha * alpha == 2
    np_ = newton_polygon(taylor_shift(K2.defining_poly, alpha), drop_zero_roots=True)
    assert np_.slopes == ((Fraction(3, 2), 1),)


def test_classification():
    assert make_extension(2, "T^2+T+1").kind == UNRAMIFIED
    assert make_extension(3, "T - 1/2").kind == TRIVIAL
    assert make_extension(3, "T^3 - 3*T + 6").kind == EISENSTEIN
    assert unramified_extension(2).defining_poly == (1, 1, 1)
    assert unramified_extension(3).defining_poly == (1, 0, 1)


@pytest.mark.parametrize(
    "p, text, fragment",
    [
        (2, "2*T^2 - 2", "monic"),
        (2, "T^2 - 4", "not Eisenstein"),
        (2, "T^2 - 1", "reducible"),
        (3, "T^2 - 1/3", "integral"),
        (4, "T^2 - 2", "prime"),
        (2, "T^2 + T + 2", "unit"),
    ],
)
def test_make_extension_diagnostics(p, text, fragment):
    with pytest.raises(ValueError, match=fragment):
        make_extension(p, text)


def test_incomparable_fields(K2):
    K3 = make_extension(3, "T^2-3")
    with pytest.raises(IncomparableFields):
        common_field(K2, K3)
    with pytest.raises(IncomparableFields):
        K2.gen + make_extension(2, "T^2+2").gen


def test_field_element_arithmetic(K2):
    x = K2.parse("1 + alpha")
    assert x * x.inverse() == 1
    assert (x**-2) * x * x == K2.one
    assert x - x == 0
    assert 3 - x == K2.parse("2 - alpha")
    assert K2.lift(base_field(2)(5)) == 5


def test_residue_reduce(K2):
    assert residue_reduce(K2.parse("3 + alpha")) == 1
    F4 = unramified_extension(2)
    assert residue_reduce(F4.parse("1 + 3*alpha")) == (1, 1)
    with pytest.raises(ValueError):
        residue_reduce(K2.parse("alpha/2"))


fields = st.sampled_from(
    [(2, "T"), (3, "T"), (2, "T^2-2"), (3, "T^2-3"), (2, "T^3-2"), (2, "T^2+T+1"), (5, "T^2 - 5*T + 10")]
).map(lambda t: make_extension(*t))


@st.composite
def field_and_elements(draw, count=2):
    k = draw(fields)
    elts = [FieldElt(k, tuple(draw(small_fractions()) for _ in range(k.degree))) for _ in range(count)]
    return k, elts


@given(field_and_elements(3))
def test_valuation_laws(data):
    k, (x, y, z) = data
    assert (x * y).valuation == x.valuation + y.valuation
    assert (x + y).valuation >= min(x.valuation, y.valuation)
    if x.valuation != y.valuation:
        assert (x + y).valuation == min(x.valuation, y.valuation)
    assert (x * (y + z)) == x * y + x * z


@given(field_and_elements(1))
def test_valuation_in_value_group(data):
    k, (x,) = data
    v = x.valuation
    if v != INF:
        assert (v * k.ramification_index).denominator == 1
        assert (x.inverse()).valuation == -v


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 6), st.integers(0, 10**6))
def test_eisenstein_normalisation(p, e, seed):
    k = make_extension(p, random_eisenstein(random.Random(seed), p, e))
    assert k.kind == EISENSTEIN
    assert k.gen.valuation == Fraction(1, e)
    assert (k.gen**e).valuation == 1


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 20)), min_size=1, max_size=5), st.sampled_from([2, 3]))
def test_newton_polygon_of_products(roots, p):
    # prod (X - p^a * u): roots have valuations a exactly
    f = [Fraction(1)]
    expected = []
    for a, u in roots:
        assume(u % p)
        r = Fraction(p) ** a * u
        f = poly.pmul(f, [-r, Fraction(1)])
        expected.append(Fraction(a))
    np_ = newton_polygon(f, field=base_field(p))
    assert np_.valuations() == sorted(expected)
    assert np_.degree == len(roots)


def test_newton_polygon_zero_roots(Q2):
    np_ = newton_polygon([0, 0, 2, 1], field=Q2)
    assert np_.slopes == ((1, 1), (INF, 2))
    assert newton_polygon([0, 0, 2, 1], field=Q2, drop_zero_roots=True).slopes == ((1, 1),)
    assert NewtonPolygon(((Fraction(1, 2), 2),)).valuations() == [Fraction(1, 2)] * 2


@pytest.mark.parametrize(
    "p, text, expected",
    [
        (2, "T^3-2", [Fraction(1, 3)] * 2),
        (3, "T^2-3", [Fraction(1, 2)]),
        (2, "T^2-2", [Fraction(3, 2)]),
        (3, "T^3-3", [Fraction(5, 6)] * 2),
    ],
)
def test_conjugate_distances_examples(p, text, expected):
    got = conjugate_distances(make_extension(p, text))
    assert [d.exp for d in got] == expected


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 6), st.integers(0, 10**6))
def test_distance_sum_is_different(p, e, seed):
    # sum of v(alpha - alpha^g) over g != 1 equals v(P'(alpha))
    coeffs = random_eisenstein(random.Random(seed), p, e)
    k = make_extension(p, coeffs)
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    pa = sum((k.gen**i * c for i, c in enumerate(deriv)), k.zero)
    ds = conjugate_distances(k)
    assert len(ds) == e - 1
    assert sum(d.exp for d in ds) == pa.valuation
    assert all(d <= k.gen.abs for d in ds)
    assert orbit_diameter(k) == ds[0]


def test_conjugate_distances_rejects_unramified():
    with pytest.raises(ValueError):
        conjugate_distances(unramified_extension(2))


@given(st.integers(0, 10**6))
def test_elt_valuation_matches_norm_oracle(seed):
    # N(x) as a determinant of the multiplication matrix
    rng = random.Random(seed)
    k = make_extension(3, "T^3 - 3*T + 6")
    x = random_element(rng, k)
    assume(not x.is_zero())
    cols = [(x * k.gen**i).coeffs for i in range(3)]
    m = [[cols[j][i] for j in range(3)] for i in range(3)]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    assert elt_valuation(x) == vp(det, 3) / 3
