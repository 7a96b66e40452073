import math

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from means_toolkit.errors import InvalidInput, RangeError
from means_toolkit.harness.oracle import oracle_eval
from means_toolkit.models.ratio_functions import (
    TAU_X,
    ConvexityClass,
    DiscClass,
    OrderedQuad,
    classify_g,
    eval_f,
    eval_f_prime,
    eval_g,
    eval_g_prime,
    eval_g_second,
    g_prime_at_zero,
    log_secant_slope,
    midpoint_convexity_slack,
    secant_slope,
)
from tests.conftest import NEGATIVE_QUAD, POSITIVE_QUAD, ZERO_QUAD, strict_quads

R_NEGATIVE = math.log(4.0 / 3.0) / math.log(2.0)


def _quad(values):
    return OrderedQuad(*values)


def test_quad_validation():
    with pytest.raises(InvalidInput):
        OrderedQuad(1.0, 2.0, 3.0, 4.0)
    with pytest.raises(InvalidInput):
        OrderedQuad(4.0, 3.0, 2.0, 0.0)
    with pytest.raises(InvalidInput):
        OrderedQuad(4.0, 4.0, 2.0, 1.0)
    relaxed = OrderedQuad(2.0, 2.0, 2.0, 2.0, relaxed=True)
    assert not relaxed.is_strict
    with pytest.raises(InvalidInput):
        eval_f(relaxed, 1.0)


@pytest.mark.parametrize('values, disc, convexity', [
    (POSITIVE_QUAD, DiscClass.POSITIVE, ConvexityClass.STRICTLY_CONVEX),
    (NEGATIVE_QUAD, DiscClass.NEGATIVE, ConvexityClass.STRICTLY_CONCAVE),
    (ZERO_QUAD, DiscClass.ZERO, ConvexityClass.LINEAR),
])
def test_classification(values, disc, convexity):
    quad = _quad(values)
    assert quad.disc_class is disc
    assert classify_g(quad) is convexity
    assert math.copysign(1.0, quad.discriminant) == math.copysign(1.0, quad.rel_disc) or disc is DiscClass.ZERO


def test_discriminant_of_huge_quad_does_not_overflow():
    quad = OrderedQuad(1e300, 1e299, 1e-299, 1e-300)
    assert quad.disc_class is DiscClass.ZERO or math.isfinite(quad.rel_disc)


def test_f_worked_values():
    quad = _quad(NEGATIVE_QUAD)
    assert eval_f(quad, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert eval_f(quad, 0.0) == pytest.approx(R_NEGATIVE, rel=1e-14)
    assert eval_f(quad, 2.0) == pytest.approx(7.0 / 3.0, rel=1e-14)
    zero = _quad(ZERO_QUAD)
    for x in (-3.0, 0.0, 0.5, 7.0):
        assert eval_f(zero, x) == pytest.approx(2.0 ** x, rel=1e-14)


def test_derivative_worked_values():
    quad = _quad(NEGATIVE_QUAD)
    assert eval_f_prime(quad, 0.0) == pytest.approx(R_NEGATIVE * math.log(math.sqrt(12.0) / math.sqrt(2.0)), rel=1e-13)
    assert eval_f_prime(_quad(ZERO_QUAD), 0.0) == pytest.approx(math.log(2.0), rel=1e-14)
    assert eval_g_prime(_quad(POSITIVE_QUAD), 0.0) == pytest.approx(math.log(4.0 / math.sqrt(2.0)), rel=1e-14)
    assert g_prime_at_zero(quad) == pytest.approx(0.5 * math.log(6.0), rel=1e-14)


def test_g_worked_values():
    assert eval_g(_quad(ZERO_QUAD), 3.0) == pytest.approx(3.0 * math.log(2.0), rel=1e-14)
    assert eval_g(_quad(NEGATIVE_QUAD), 0.0) == pytest.approx(math.log(R_NEGATIVE), rel=1e-14)


def test_f_prime_matches_central_difference():
    quad = _quad(POSITIVE_QUAD)
    h = 1e-5
    central = (eval_f(quad, 1.0 + h) - eval_f(quad, 1.0 - h)) / (2.0 * h)
    assert eval_f_prime(quad, 1.0) == pytest.approx(central, rel=1e-8)


@given(strict_quads(), st.floats(-10.0, 10.0))
def test_g_prime_matches_central_difference(values, x):
    quad = _quad(values)
    h = 1e-4
    central = (eval_g(quad, x + h) - eval_g(quad, x - h)) / (2.0 * h)
    scale = max(1.0, abs(quad.alpha), abs(quad.gamma)) ** 3
    assert eval_g_prime(quad, x) == pytest.approx(central, rel=1e-6, abs=1e-6 * scale)


@pytest.mark.parametrize('values', [NEGATIVE_QUAD, POSITIVE_QUAD, (1.5, 1.2, 1.1, 1.0)])
@pytest.mark.parametrize('x', [1e-9, -1e-9, 1e-7, -1e-7, 1e-6, 0.0])
def test_f_near_zero_against_oracle(values, x):
    inputs = dict(zip('abcd', values), x=x)
    reference = float(oracle_eval('f', inputs, digits=40).value)
    assert eval_f(_quad(values), x) == pytest.approx(reference, rel=1e-12)


def test_singular_window_seam_is_continuous():
    quad = _quad(NEGATIVE_QUAD)
    for sign in (1.0, -1.0):
        inside = eval_f(quad, sign * TAU_X)
        outside = eval_f(quad, math.nextafter(sign * TAU_X, sign * math.inf))
        assert inside == pytest.approx(outside, rel=1e-12)


def test_f_overflow_raises_range_error():
    quad = OrderedQuad(1e10, 2.0, 1.5, 1.0)
    with pytest.raises(RangeError):
        eval_f(quad, 100.0)
    assert eval_g(quad, 100.0) > 709.0


@given(strict_quads(), st.floats(-20.0, 20.0), st.floats(-20.0, 20.0))
def test_f_is_increasing(values, x1, x2):
    """Property: f is strictly increasing"""
    assume(abs(x1 - x2) >= 0.1)
    quad = _quad(values)
    lo, hi = sorted((x1, x2))
    assert eval_g(quad, hi) > eval_g(quad, lo)


@st.composite
def spread_quads(draw):
    """Quads with d >= 1 whose neighbours are at least a factor 2 apart"""
    d = draw(st.floats(1.0, 100.0))
    c = d * draw(st.floats(2.0, 4.0))
    b = c * draw(st.floats(2.0, 4.0))
    a = b * draw(st.floats(2.0, 4.0))
    return a, b, c, d


@given(spread_quads())
def test_f_vanishes_far_left(values):
    """Property: f tends to 0 as x -> -inf, checked at x = -40"""
    quad = _quad(values)
    assert eval_f(quad, -40.0) < 1e-6 * eval_f(quad, 0.0)


def test_secant_slopes():
    assert secant_slope(_quad(ZERO_QUAD), 0.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    quad = _quad(NEGATIVE_QUAD)
    assert secant_slope(quad, 1.0, 3.0) < secant_slope(quad, 2.0, 4.0)
    positive = _quad(POSITIVE_QUAD)
    assert secant_slope(positive, -1.0, 1.0) == pytest.approx(
        (eval_f(positive, 1.0) - eval_f(positive, -1.0)) / 2.0, rel=1e-14)
    assert log_secant_slope(quad, 1.0, 3.0) == pytest.approx(math.log(secant_slope(quad, 1.0, 3.0)), rel=1e-12)
    with pytest.raises(InvalidInput):
        secant_slope(quad, 2.0, 2.0)


def test_midpoint_worked_values():
    assert midpoint_convexity_slack('f', _quad(NEGATIVE_QUAD), -1.0, 1.0) > 0.0
    assert abs(midpoint_convexity_slack('g', _quad(ZERO_QUAD), -2.0, 5.0)) <= 1e-13
    assert midpoint_convexity_slack('g', _quad(NEGATIVE_QUAD), 0.0, 2.0) < 0.0
    with pytest.raises(InvalidInput):
        midpoint_convexity_slack('h', _quad(NEGATIVE_QUAD), 0.0, 1.0)
    with pytest.raises(InvalidInput):
        midpoint_convexity_slack('f', _quad(NEGATIVE_QUAD), 1.0, 1.0)


@given(strict_quads(), st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
def test_f_is_convex(values, x1, x2):
    """Property: f is strictly convex on the real line"""
    assume(abs(x1 - x2) >= 0.1)
    quad = _quad(values)
    slack = midpoint_convexity_slack('f', quad, x1, x2)
    assert slack >= -1e-12 * eval_f(quad, 0.5 * (x1 + x2))


@given(strict_quads(lo=0.5, hi=20.0), st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
def test_g_convexity_follows_discriminant(values, x1, x2):
    """Property: the sign of g's midpoint slack is the sign of ad - bc"""
    assume(abs(x1 - x2) >= 0.1)
    quad = _quad(values)
    assume(abs(quad.rel_disc) >= 1e-3)
    slack = midpoint_convexity_slack('g', quad, x1, x2)
    if quad.disc_class is DiscClass.POSITIVE:
        assert slack > 0.0
    else:
        assert slack < 0.0


@given(strict_quads(), st.floats(-5.0, 5.0))
def test_g_second_sign_follows_discriminant(values, x):
    quad = _quad(values)
    assume(abs(quad.rel_disc) >= 1e-6)
    curvature = eval_g_second(quad, x)
    if quad.disc_class is DiscClass.POSITIVE:
        assert curvature >= 0.0
    else:
        assert curvature <= 0.0


def test_g_second_matches_difference_of_g_prime():
    quad = _quad(POSITIVE_QUAD)
    h = 1e-5
    central = (eval_g_prime(quad, 0.7 + h) - eval_g_prime(quad, 0.7 - h)) / (2.0 * h)
    assert eval_g_second(quad, 0.7) == pytest.approx(central, rel=1e-6)
    assert eval_g_second(_quad(ZERO_QUAD), 0.7) == 0.0
