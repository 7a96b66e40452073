import math
import sys

import pytest
from hypothesis import given
import hypothesis.strategies as st

from means_toolkit.errors import InvalidInput
from means_toolkit.harness.oracle import oracle_eval
from means_toolkit.models.means_core import (
    MeanId,
    PExponent,
    PKind,
    PositivePair,
    arithmetic_mean,
    evaluate_mean,
    geometric_mean,
    harmonic_mean,
    identric_mean,
    logarithmic_mean,
    mean_chain_slacks,
    p_logarithmic_mean,
)
from tests.conftest import positive_floats, separated_pairs


@pytest.mark.parametrize('mean, a, b, expected', [
    (arithmetic_mean, 1.0, 1.0, 1.0),
    (arithmetic_mean, 4.0, 2.0, 3.0),
    (arithmetic_mean, 4.0, 3.0, 3.5),
    (geometric_mean, 4.0, 1.0, 2.0),
    (geometric_mean, 4.0, 2.0, math.sqrt(8.0)),
    (geometric_mean, 1e200, 1e200, 1e200),
    (harmonic_mean, 1.0, 1.0, 1.0),
    (harmonic_mean, 4.0, 2.0, 8.0 / 3.0),
    (harmonic_mean, 4.0, 3.0, 24.0 / 7.0),
    (logarithmic_mean, math.e, 1.0, math.e - 1.0),
    (logarithmic_mean, 4.0, 2.0, 2.0 / math.log(2.0)),
    (identric_mean, 5.0, 5.0, 5.0),
    (identric_mean, 4.0, 2.0, 8.0 / math.e),
    (identric_mean, 2.0, 1.0, 4.0 / math.e),
])
def test_worked_values(mean, a, b, expected):
    assert mean(PositivePair(a, b)) == pytest.approx(expected, rel=1e-13)


def test_logarithmic_mean_near_equal_arguments():
    value = logarithmic_mean(PositivePair(1.0 + 1e-12, 1.0))
    assert value == pytest.approx(1.0 + 5e-13, rel=1e-13)


def test_extreme_products_do_not_overflow():
    pair = PositivePair(1e300, 1e250)
    assert geometric_mean(pair) == pytest.approx(1e275, rel=1e-14)
    assert harmonic_mean(PositivePair(1e-300, 1e-310)) > 0.0
    assert math.isfinite(identric_mean(pair))


@pytest.mark.parametrize('a, b', [(0.0, 1.0), (-1.0, 2.0), (math.inf, 1.0), (math.nan, 1.0), (True, 1.0)])
def test_pair_rejects_bad_values(a, b):
    with pytest.raises(InvalidInput):
        PositivePair(a, b)


def test_p_exponent_snaps_to_limits():
    assert PExponent(1e-9).kind is PKind.ZERO_LIMIT
    assert PExponent(-1.0 + 1e-9).kind is PKind.MINUS_ONE_LIMIT
    assert PExponent(0.5).is_generic
    with pytest.raises(InvalidInput):
        PExponent(math.inf)


def test_p_logarithmic_special_cases():
    pair = PositivePair(4.0, 2.0)
    assert p_logarithmic_mean(pair, 1.0) == pytest.approx(3.0, rel=1e-14)
    assert p_logarithmic_mean(pair, -2.0) == pytest.approx(math.sqrt(8.0), rel=1e-14)
    assert p_logarithmic_mean(pair, 1e-9) == pytest.approx(8.0 / math.e, rel=1e-6)
    assert p_logarithmic_mean(pair, -1.0) == logarithmic_mean(pair)


@pytest.mark.parametrize('p', [1e-5, -1e-5, 0.3, -0.7, -1.0 + 1e-5, -1.3, 2.5, 40.0, -40.0])
def test_p_logarithmic_against_oracle(p):
    """Every evaluation branch of L_p agrees with the mpmath reference"""
    for a, b in ((4.0, 2.0), (1.0001, 1.0), (1e6, 1e-3)):
        reference = oracle_eval('Lp', {'a': a, 'b': b, 'p': p}, digits=40)
        assert p_logarithmic_mean(PositivePair(a, b), p) == pytest.approx(float(reference.value), rel=1e-12)


@given(separated_pairs(), st.floats(-3.0, 3.0))
def test_p_logarithmic_is_symmetric_and_between_arguments(pair, p):
    a, b = pair
    value = p_logarithmic_mean(PositivePair(a, b), p)
    assert value == pytest.approx(p_logarithmic_mean(PositivePair(b, a), p), rel=1e-13)
    assert b * (1 - 1e-13) <= value <= a * (1 + 1e-13)


def test_p_logarithmic_limits_are_continuous():
    pair = PositivePair(4.0, 2.0)
    assert p_logarithmic_mean(pair, 2e-6) == pytest.approx(identric_mean(pair), rel=1e-5)
    assert p_logarithmic_mean(pair, -1.0 - 2e-6) == pytest.approx(logarithmic_mean(pair), rel=1e-5)


@given(positive_floats(), positive_floats())
def test_mean_chain_is_ordered(a, b):
    """Property: H <= G <= L <= I <= A up to rounding"""
    pair = PositivePair(a, b)
    scale = max(a, b)
    for slack in mean_chain_slacks(pair):
        assert slack >= -1e-13 * scale


def test_mean_chain_worked_values():
    assert mean_chain_slacks(PositivePair(1.0, 1.0)) == (0.0, 0.0, 0.0, 0.0)
    slacks = mean_chain_slacks(PositivePair(4.0, 2.0))
    assert slacks == pytest.approx((0.1618, 0.0570, 0.0576, 0.0570), abs=1e-4)
    assert all(s > 0 for s in mean_chain_slacks(PositivePair(2.0, 1.0)))


@given(positive_floats(), positive_floats(), st.sampled_from(['A', 'G', 'H', 'L', 'I']))
def test_means_are_symmetric(a, b, mean_id):
    forward = evaluate_mean(mean_id, PositivePair(a, b)).value
    backward = evaluate_mean(mean_id, PositivePair(b, a)).value
    assert forward == pytest.approx(backward, rel=1e-14)


def test_evaluate_mean_dispatch():
    pair = PositivePair(4.0, 2.0)
    assert evaluate_mean('L', pair).mean_id is MeanId.L
    assert evaluate_mean(MeanId.LP, pair, 1.0).value == pytest.approx(3.0)
    with pytest.raises(InvalidInput):
        evaluate_mean('Lp', pair)
    with pytest.raises(ValueError):
        evaluate_mean('Q', pair)


EPS = sys.float_info.epsilon

HOMOGENEITY_CASES = [
    (MeanId.A, None),
    (MeanId.G, None),
    (MeanId.H, None),
    (MeanId.L, None),
    (MeanId.I, None),
    (MeanId.LP, 0.37),
    (MeanId.LP, 2.5),
    (MeanId.LP, -2.0),
    (MeanId.LP, -0.7),
]


@pytest.mark.parametrize('mean_id, p', HOMOGENEITY_CASES)
@given(positive_floats(), positive_floats(), st.sampled_from([1e-8, 1.0, 1e8]))
def test_means_are_homogeneous(mean_id, p, a, b, scale):
    """Property: M(la, lb) = l M(a, b) to within 4 units of binary64 epsilon"""
    expected = scale * evaluate_mean(mean_id, PositivePair(a, b), p).value
    scaled = evaluate_mean(mean_id, PositivePair(scale * a, scale * b), p).value
    assert abs(scaled - expected) <= 4 * EPS * expected


@pytest.mark.parametrize('p', [2.5, 0.8, -0.6, -3.0])
def test_p_logarithmic_wide_ratio_against_oracle(p):
    for a, b in ((1e3, 1e-3), (7.0, 1e-4), (3e5, 2.0)):
        reference = float(oracle_eval('Lp', {'a': a, 'b': b, 'p': p}, digits=40).value)
        assert abs(p_logarithmic_mean(PositivePair(a, b), p) - reference) <= 8 * EPS * reference


@given(separated_pairs(), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
def test_p_logarithmic_is_nondecreasing_in_p(pair, p1, p2):
    low, high = sorted((p1, p2))
    small = p_logarithmic_mean(PositivePair(*pair), low)
    large = p_logarithmic_mean(PositivePair(*pair), high)
    assert small <= large * (1 + 1e-13)


@given(positive_floats(), st.floats(0.999e-3, 1.001e-3))
def test_identric_series_meets_direct_form(b, t):
    """Both sides of the series threshold agree with the reference"""
    a = b * (1.0 + t) / (1.0 - t)
    reference = float(oracle_eval('I', {'a': a, 'b': b}, digits=40).value)
    assert identric_mean(PositivePair(a, b)) == pytest.approx(reference, rel=1e-12)


@given(positive_floats(), positive_floats(), st.sampled_from(['A', 'G', 'H', 'L', 'I']))
def test_means_lie_between_arguments(a, b, mean_id):
    value = evaluate_mean(mean_id, PositivePair(a, b)).value
    assert min(a, b) * (1 - 2 * EPS) <= value <= max(a, b) * (1 + 2 * EPS)


@st.composite
def spread_pairs(draw):
    b = draw(positive_floats())
    return b * draw(st.floats(1.01, 100.0)), b


@given(spread_pairs())
def test_p_logarithmic_limit_identities(pair):
    pair = PositivePair(*pair)
    identric = identric_mean(pair)
    logarithmic = logarithmic_mean(pair)
    for p in (1e-6, -1e-6):
        assert p_logarithmic_mean(pair, p) == pytest.approx(identric, rel=1e-5)
    for p in (-1.0 + 1e-6, -1.0 - 1e-6):
        assert p_logarithmic_mean(pair, p) == pytest.approx(logarithmic, rel=1e-5)
    assert p_logarithmic_mean(pair, 1.0) == pytest.approx(arithmetic_mean(pair), rel=1e-13)
    assert p_logarithmic_mean(pair, -2.0) == pytest.approx(geometric_mean(pair), rel=1e-13)
