import math
from fractions import Fraction as F

import pytest

from gtiframes.groups import InvalidInput
from gtiframes.torus.profiles import RationalStepProfile
from gtiframes.torus.real import (
    box,
    calderon_continuous,
    janssen_check,
    log_normalized_profile,
    shannon_profile,
    wavelet_talpha_dyadic,
)


def test_shannon_t0_is_one():
    res = wavelet_talpha_dyadic(shannon_profile(), alpha=0)
    assert res.is_exact()
    assert all(p.value == 1 for p in res.profile.pieces)


@pytest.mark.parametrize("alpha", [1, 2, 3, 4, 6, 8, -5])
def test_shannon_talpha_vanishes(alpha):
    res = wavelet_talpha_dyadic(shannon_profile(), alpha=alpha)
    assert res.is_exact() and res.profile.is_zero()


def test_wavelet_bad_input():
    with pytest.raises(InvalidInput):
        wavelet_talpha_dyadic(shannon_profile(), alpha=F(1, 2))
    with pytest.raises(InvalidInput):
        wavelet_talpha_dyadic(box(0, 1), alpha=0)
    with pytest.raises(InvalidInput):
        wavelet_talpha_dyadic(RationalStepProfile.zero("torus"))


def test_wavelet_scaled_shannon_residual():
    res = wavelet_talpha_dyadic(shannon_profile().scale(2), alpha=0)
    assert res.max_residual() == 3


def test_calderon_values():
    assert calderon_continuous(log_normalized_profile()).positive_side == pytest.approx(1, abs=1e-12)
    assert calderon_continuous(log_normalized_profile()).admissible
    one = calderon_continuous(box(1, 4))
    assert one.positive_side == pytest.approx(math.log(4), abs=1e-12)
    assert one.negative_side == pytest.approx(math.log(4), abs=1e-12)
    half = calderon_continuous(box(1, 4), dilations="positive")
    assert half.positive_side == pytest.approx(math.log(4)) and half.negative_side == 0
    with pytest.raises(InvalidInput):
        calderon_continuous(box(-1, 1))
    with pytest.raises(InvalidInput):
        calderon_continuous(box(1, 2), dilations="some")


def test_janssen_box_cases():
    assert janssen_check(box(), box(), 1, 1).passed
    assert janssen_check(box(), box(), 1, F(1, 2)).passed
    bad = janssen_check(box(), box(), 1, 2)
    assert not bad.passed and bad.details["worst_alpha"] == "-1/2"
    assert bad.max_residual == 1
    assert bad.details["exact"]


def test_janssen_zero_window():
    v = janssen_check(box(), RationalStepProfile.zero("real"), 2, 1)
    assert v.max_residual == pytest.approx(0.5)


def test_janssen_scaled_window():
    # g = 1_[0,2), h = g / 2 is a dual pair for a = 1, b = 1/2
    g = box(0, 2)
    assert janssen_check(g, g.scale(F(1, 2)), 1, F(1, 2)).passed
    assert not janssen_check(g, g, 1, F(1, 2)).passed


def test_janssen_invalid():
    with pytest.raises(InvalidInput):
        janssen_check(box(), box(), 0, 1)
