from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtiframes.groups import InvalidInput
from gtiframes.torus.profiles import (
    Piece,
    RationalStepProfile,
    add_profiles,
    as_fraction,
    conj_product,
)


def tile(lo, hi, value=1, gain_sq=None, domain="torus"):
    return RationalStepProfile(domain, (Piece(F(lo), F(hi), value),), gain_sq)


def test_validation():
    with pytest.raises(InvalidInput):
        RationalStepProfile("torus", (Piece(F(1, 2), F(1, 2), 1),))
    with pytest.raises(InvalidInput):
        RationalStepProfile("torus", (Piece(F(0), F(2), 1),))
    with pytest.raises(InvalidInput):
        RationalStepProfile("torus", (Piece(F(0), F(1, 2), 1), Piece(F(1, 4), F(1), 1)))
    with pytest.raises(InvalidInput):
        RationalStepProfile("sphere", ())
    with pytest.raises(InvalidInput):
        tile(0, 1, gain_sq=-1)
    with pytest.raises(InvalidInput):
        as_fraction(object())


def test_half_open_evaluation():
    p = tile("1/4", "1/2", 3)
    assert p(F(1, 4)) == 3 and p(F(1, 2)) == 0
    # torus evaluation is periodic
    assert p(F(5, 4)) == 3 and p(F(-3, 4)) == 3


def test_torus_shift_wraps():
    p = tile("3/4", 1, 2)
    q = p.shift(F(1, 2))
    assert [(x.lo, x.hi, x.value) for x in q.pieces] == [(F(1, 4), F(1, 2), 2)]
    r = tile(0, "1/2").shift(F(1, 4))
    # q(x) = p(x + 1/4): support [0, 1/4) and [3/4, 1)
    assert r(F(0)) == 1 and r(F(1, 4)) == 0 and r(F(3, 4)) == 1


def test_real_dilate_and_shift():
    p = tile(1, 2, domain="real")
    d = p.dilate(F(1, 2))
    assert d.support == (F(2), F(4))
    n = p.dilate(-1)
    assert n.support == (F(-2), F(-1))
    with pytest.raises(InvalidInput):
        tile(0, 1).dilate(2)
    with pytest.raises(InvalidInput):
        p.dilate(0)
    assert p.shift(1).support == (F(0), F(1))


def test_gain_tag_gives_exact_products():
    a = tile(0, "1/2", 1, gain_sq=F(2, 9))
    prod = conj_product(a, a)
    assert prod.pieces[0].value == F(2, 9)
    assert a.integral_abs_sq() == F(1, 9)
    # mixed tags fall back to floats
    b = tile(0, "1/2", 1, gain_sq=F(1, 4))
    assert conj_product(a, b).pieces[0].value == pytest.approx((2 / 9) ** 0.5 * 0.5)
    with pytest.raises(InvalidInput):
        add_profiles([a])


def test_add_and_simplify():
    s = add_profiles([tile(0, "1/2"), tile("1/2", 1), tile("1/4", "3/4", -1)])
    assert [(p.lo, p.hi, p.value) for p in s.pieces] == [(F(0), F(1, 4), 1), (F(3, 4), F(1), 1)]
    assert add_profiles([tile(0, 1), tile(0, 1, -1)]).is_zero()
    with pytest.raises(InvalidInput):
        add_profiles([tile(0, 1, domain="real")], "torus")


def test_complex_values_and_conj():
    p = tile(0, "1/2", 1 + 2j)
    assert p.conj()(F(0)) == 1 - 2j
    assert conj_product(p, p).pieces[0].value == 5
    assert tile(0, 1, 3 + 0j).pieces[0].value == 3


def test_json_round_trip():
    p = RationalStepProfile(
        "torus", (Piece(F(0), F(1, 3), F(2, 7)), Piece(F(1, 2), F(1), 0.5 - 1.5j)), gain_sq=F(3, 5)
    )
    q = RationalStepProfile.from_dict(p.to_dict())
    assert q == p


def test_malformed_dict():
    with pytest.raises(InvalidInput):
        RationalStepProfile.from_dict({"pieces": [{"lo": "0"}]})
    with pytest.raises(InvalidInput):
        RationalStepProfile.from_dict({"pieces": [{"lo": "a", "hi": "1", "re": 1}]})


fractions = st.fractions(min_value=0, max_value=1, max_denominator=64)


@st.composite
def torus_profiles(draw):
    cuts = sorted(set(draw(st.lists(fractions, min_size=2, max_size=8))))
    if len(cuts) < 2:
        cuts = [F(0), F(1)]
    vals = draw(st.lists(st.fractions(-3, 3, max_denominator=9), min_size=len(cuts) - 1, max_size=len(cuts) - 1))
    return RationalStepProfile("torus", tuple(Piece(a, b, v) for a, b, v in zip(cuts, cuts[1:], vals)))


@given(torus_profiles(), st.lists(fractions, max_size=6), fractions)
def test_refinement_changes_nothing(p, cuts, x):
    q = p.refine(cuts)
    assert q.simplified() == p.simplified()
    assert q(x) == p(x)
    assert q.integral_abs_sq() == p.integral_abs_sq()


@given(torus_profiles(), fractions, fractions)
def test_shift_is_periodic_translation(p, t, x):
    assert p.shift(t)(x) == p(x + t)
    assert p.shift(t).integral_abs_sq() == p.integral_abs_sq()


@given(torus_profiles(), torus_profiles(), fractions)
def test_conj_product_pointwise(a, b, x):
    assert conj_product(a, b)(x) == a(x) * b(x)
