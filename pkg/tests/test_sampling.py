import pytest

from means_toolkit.errors import InvalidInput
from means_toolkit.harness import sampling
from means_toolkit.harness.sampling import SignConstraint, counter_rng
from means_toolkit.models.inequality_catalog import Verdict, evaluate
from means_toolkit.models.kyfan import compute_stats, kyfan_report
from means_toolkit.models.ratio_functions import DiscClass


def test_counter_rng_is_a_pure_function_of_its_arguments():
    first = counter_rng(42, 'quad', 17).random(4)
    again = counter_rng(42, 'quad', 17).random(4)
    assert list(first) == list(again)
    assert list(counter_rng(42, 'quad', 18).random(4)) != list(first)
    assert list(counter_rng(42, 'pair', 17).random(4)) != list(first)
    assert list(counter_rng(43, 'quad', 17).random(4)) != list(first)
    with pytest.raises(InvalidInput):
        counter_rng(42, 'quad', -1)


def test_quads_are_reproducible_in_any_order():
    forward = [sampling.sample_quad(7, i) for i in range(20)]
    backward = [sampling.sample_quad(7, i) for i in reversed(range(20))]
    assert forward == list(reversed(backward))


@pytest.mark.parametrize('constraint, disc', [
    ('positive', DiscClass.POSITIVE),
    ('negative', DiscClass.NEGATIVE),
    ('zero', DiscClass.ZERO),
])
def test_sign_constraint_is_honoured(constraint, disc):
    for index in range(50):
        quad = sampling.sample_quad(5, index, constraint)
        assert quad.disc_class is disc
        assert quad.a > quad.b >= quad.c > quad.d > 0
        if disc is DiscClass.ZERO:
            assert abs(quad.discriminant) <= 1e-12 * (quad.a * quad.d + quad.b * quad.c)


def test_values_stay_in_range():
    lo, hi = 0.5, 2.0
    for index in range(100):
        quad = sampling.sample_quad(1, index, value_range=(lo, hi))
        assert all(lo <= v <= hi for v in (quad.a, quad.b, quad.c))
        pair = sampling.sample_pair(1, index, (lo, hi))
        assert lo <= pair.b < pair.a <= hi
        assert (pair.a - pair.b) / pair.b >= 1e-6


def test_ties_are_drawn():
    ties = sum(1 for i in range(200) if (q := sampling.sample_quad(3, i)).b == q.c)
    assert 10 < ties < 100


def test_exponents_avoid_limit_points():
    for index in range(200):
        p, q = sampling.sample_exponents(11, index)
        for e in (p, q):
            assert -3.0 <= e <= 3.0
            assert abs(e) >= 0.05 and abs(e + 1.0) >= 0.05
        assert abs(p - q) >= 0.05


def test_sequence_and_kyfan_draws():
    ns = [sampling.sample_sequence_n(2, i, (1, 1000)) for i in range(200)]
    assert all(1 <= n <= 1000 for n in ns)
    assert min(ns) < 10 and max(ns) > 100
    for index in range(50):
        n = sampling.sample_kyfan_size(2, index, (3, 10))
        assert 3 <= n <= 10
        sample = sampling.sample_kyfan(2, index, n)
        assert sample.n == n
        assert all(0.0 < x <= 0.5 for x in sample.values)


def test_two_point_kyfan_samples_feed_eq20_equality():
    for index in range(20):
        stats = compute_stats(sampling.sample_kyfan(9, index, 2))
        assert kyfan_report('EQ20', stats).verdict is Verdict.EQUALITY_CASE


def test_zero_quads_make_eq13_an_equality():
    for index in range(20):
        quad = sampling.sample_quad(13, index, SignConstraint.ZERO)
        p, q = sampling.sample_exponents(13, index)
        inputs = {'a': quad.a, 'b': quad.b, 'c': quad.c, 'd': quad.d, 'p': p, 'q': q}
        assert evaluate('EQ13', inputs).verdict is Verdict.EQUALITY_CASE


def test_bad_arguments():
    with pytest.raises(InvalidInput):
        SignConstraint.parse('sideways')
    with pytest.raises(InvalidInput):
        sampling.sample_quad(1, 0, value_range=(2.0, 1.0))
    with pytest.raises(InvalidInput):
        sampling.sample_kyfan(1, 0, 0)
    with pytest.raises(InvalidInput):
        sampling.sample_sequence_n(1, 0, (0, 5))
