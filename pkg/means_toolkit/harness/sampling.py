"""
Counter-based samplers for sweeps.

Every draw is a pure function of (seed, stream, index): the generator for a
sample is a fresh Philox instance whose key is a hash of seed and stream and
whose counter starts at index << 128.  Workers can therefore evaluate any
subset of indices in any order and see the same inputs.
"""
import hashlib
import logging
import math
from enum import Enum

import numpy as np

from means_toolkit.errors import InvalidInput, SamplingError
from means_toolkit.models.inequality_catalog import EQ10_MIN_RATIO_EXCESS
from means_toolkit.models.kyfan import KyFanSample
from means_toolkit.models.means_core import PositivePair
from means_toolkit.models.ratio_functions import DiscClass, OrderedQuad

logger = logging.getLogger(__name__)

DEFAULT_RANGE = (1e-3, 1e3)
DEFAULT_KYFAN_N_RANGE = (2, 20)
DEFAULT_SEQUENCE_N_RANGE = (1, 1_000_000)

MAX_REDRAWS = 10_000

# probability of forcing b = c in sampled quads
TIE_PROBABILITY = 0.2

# sampled p, q live in [-P_BOUND, P_BOUND], keep this gap from each other and from {0, -1}
P_BOUND = 3.0
P_GAP = 0.05

KYFAN_EPS = 1e-6


class SignConstraint(str, Enum):
    ANY = 'Any'
    POSITIVE = 'Positive'
    NEGATIVE = 'Negative'
    ZERO = 'Zero'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise InvalidInput(f'unknown sign constraint {value!r}; use any, positive, negative or zero')


_WANTED_CLASS = {
    SignConstraint.POSITIVE: DiscClass.POSITIVE,
    SignConstraint.NEGATIVE: DiscClass.NEGATIVE,
    SignConstraint.ZERO: DiscClass.ZERO,
}


def counter_rng(seed, stream, index):
    """Generator for one sample; depends on nothing but its three arguments"""
    if index < 0:
        raise InvalidInput(f'sample index must be non-negative, got {index!r}')
    digest = hashlib.blake2b(f'{int(seed)}:{stream}'.encode(), digest_size=16).digest()
    key = int.from_bytes(digest, 'little')
    return np.random.Generator(np.random.Philox(key=key, counter=int(index) << 128))


def _check_range(value_range):
    lo, hi = (float(v) for v in value_range)
    if not (0.0 < lo < hi and math.isfinite(hi)):
        raise InvalidInput(f'sampling range must satisfy 0 < lo < hi, got {value_range!r}')
    return math.log(lo), math.log(hi)


def _log_uniform(rng, log_lo, log_hi, size):
    return np.exp(rng.uniform(log_lo, log_hi, size=size))


def sample_quad(seed, index, sign_constraint=SignConstraint.ANY, value_range=DEFAULT_RANGE):
    sign_constraint = SignConstraint.parse(sign_constraint)
    log_lo, log_hi = _check_range(value_range)
    rng = counter_rng(seed, 'quad', index)

    for attempt in range(MAX_REDRAWS):
        a, b, c, d = (float(v) for v in np.sort(_log_uniform(rng, log_lo, log_hi, 4))[::-1])
        if rng.random() < TIE_PROBABILITY:
            c = b
        if sign_constraint is SignConstraint.ZERO:
            d = b * (c / a)
        if not (a > b >= c > d > 0.0):
            continue
        quad = OrderedQuad(a, b, c, d)
        wanted = _WANTED_CLASS.get(sign_constraint)
        if wanted is not None and quad.disc_class is not wanted:
            continue
        if attempt > 100:
            logger.debug('quad sample %d needed %d redraws', index, attempt)
        return quad

    raise SamplingError(
        f'no {sign_constraint.value} quad after {MAX_REDRAWS} redraws (seed={seed}, index={index})'
    )


def sample_pair(seed, index, value_range=DEFAULT_RANGE):
    """Pair with a > b and a/b >= 1 + 1e-6"""
    log_lo, log_hi = _check_range(value_range)
    rng = counter_rng(seed, 'pair', index)
    for _ in range(MAX_REDRAWS):
        hi, lo = (float(v) for v in np.sort(_log_uniform(rng, log_lo, log_hi, 2))[::-1])
        if hi > lo and (hi - lo) / lo >= EQ10_MIN_RATIO_EXCESS:
            return PositivePair(hi, lo)
    raise SamplingError(f'no separated pair after {MAX_REDRAWS} redraws (seed={seed}, index={index})')


def _exponent_ok(p):
    return abs(p) >= P_GAP and abs(p + 1.0) >= P_GAP


def sample_exponents(seed, index):
    """p, q uniform in [-3, 3], apart from each other and from the limit points"""
    rng = counter_rng(seed, 'exponents', index)
    for _ in range(MAX_REDRAWS):
        p, q = (float(v) for v in rng.uniform(-P_BOUND, P_BOUND, size=2))
        if abs(p - q) >= P_GAP and _exponent_ok(p) and _exponent_ok(q):
            return p, q
    raise SamplingError(f'no exponent pair after {MAX_REDRAWS} redraws (seed={seed}, index={index})')


def sample_sequence_n(seed, index, n_range=DEFAULT_SEQUENCE_N_RANGE):
    lo, hi = int(n_range[0]), int(n_range[1])
    if not 1 <= lo <= hi:
        raise InvalidInput(f'sequence n range must satisfy 1 <= lo <= hi, got {n_range!r}')
    rng = counter_rng(seed, 'sequence', index)
    n = int(math.floor(math.exp(rng.uniform(math.log(lo), math.log(hi + 1)))))
    return min(max(n, lo), hi)


def sample_kyfan(seed, index, n):
    """n values uniform in (1e-6, 1/2]"""
    if n < 1:
        raise InvalidInput(f'a Ky Fan sample needs n >= 1, got {n!r}')
    rng = counter_rng(seed, 'kyfan', index)
    u = rng.random(int(n))
    values = 0.5 - u * (0.5 - KYFAN_EPS)
    return KyFanSample(tuple(float(v) for v in values))


def sample_kyfan_size(seed, index, n_range=DEFAULT_KYFAN_N_RANGE):
    lo, hi = int(n_range[0]), int(n_range[1])
    if not 1 <= lo <= hi:
        raise InvalidInput(f'Ky Fan n range must satisfy 1 <= lo <= hi, got {n_range!r}')
    rng = counter_rng(seed, 'kyfan-n', index)
    return int(rng.integers(lo, hi, endpoint=True))


def sample_abscissa(seed, index, bound=5.0):
    rng = counter_rng(seed, 'abscissa', index)
    return float(rng.uniform(-bound, bound))
