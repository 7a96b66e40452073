"""
Binary64 kernels for the six classical two-argument means.

Every mean short-circuits to `a` when the two arguments are bit-identical.
Near-equal arguments go through relative-difference forms (log1p, expm1 or a
short even series) so the results stay smooth as a -> b.
"""
import math
import sys
from dataclasses import dataclass
from enum import Enum

from means_toolkit.errors import InvalidInput
from means_toolkit.utils.stable_math import (
    log_abs_expm1,
    log_expm1_ratio,
    log_ratio_1p,
)

# PExponent snapping radius around the limit points p = 0 and p = -1
TAU_P = 1e-6

# below this |t| = |a-b|/(a+b) the identric mean uses its even series in t
IDENTRIC_SERIES_THRESHOLD = 1e-3

# ln(I/A) = -t^2/6 - t^4/20 - t^6/42 - ...
_IDENTRIC_SERIES = (1.0 / 6.0, 1.0 / 20.0, 1.0 / 42.0)

_EXP_SAFE = 700.0


@dataclass(frozen=True)
class PositivePair:
    a: float
    b: float

    def __post_init__(self):
        for name in ('a', 'b'):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidInput(f'{name} must be a real number, got {value!r}')
            if not (math.isfinite(value) and value > 0):
                raise InvalidInput(f'{name} must be a finite positive number, got {value!r}')
        object.__setattr__(self, 'a', float(self.a))
        object.__setattr__(self, 'b', float(self.b))

    @property
    def hi(self):
        return max(self.a, self.b)

    @property
    def lo(self):
        return min(self.a, self.b)


class PKind(str, Enum):
    GENERIC = 'Generic'
    ZERO_LIMIT = 'ZeroLimit'
    MINUS_ONE_LIMIT = 'MinusOneLimit'


@dataclass(frozen=True)
class PExponent:
    """Parameter p of the p-logarithmic mean; kind is derived from value"""
    value: float
    kind: PKind = PKind.GENERIC

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InvalidInput(f'p must be finite, got {self.value!r}')
        object.__setattr__(self, 'value', float(self.value))
        if abs(self.value) <= TAU_P:
            kind = PKind.ZERO_LIMIT
        elif abs(self.value + 1.0) <= TAU_P:
            kind = PKind.MINUS_ONE_LIMIT
        else:
            kind = PKind.GENERIC
        object.__setattr__(self, 'kind', kind)

    @property
    def is_generic(self):
        return self.kind is PKind.GENERIC


class MeanId(str, Enum):
    A = 'A'
    G = 'G'
    H = 'H'
    L = 'L'
    I = 'I'  # noqa: E741
    LP = 'Lp'


@dataclass(frozen=True)
class MeanValue:
    value: float
    mean_id: MeanId


def arithmetic_mean(pair):
    a, b = pair.a, pair.b
    if a == b:
        return a
    return 0.5 * a + 0.5 * b


def geometric_mean(pair):
    a, b = pair.a, pair.b
    if a == b:
        return a
    prod = a * b
    if math.isfinite(prod) and prod >= 2.2250738585072014e-308:
        return math.sqrt(prod)
    # a*b left the normal range; the split square root cannot
    return math.sqrt(a) * math.sqrt(b)


def harmonic_mean(pair):
    a, b = pair.a, pair.b
    if a == b:
        return a
    h = 2.0 / (1.0 / a + 1.0 / b)
    if h > 0.0 and math.isfinite(h):
        return h
    hi, lo = pair.hi, pair.lo
    return lo * (2.0 * (hi / (hi + lo)))


def logarithmic_mean(pair):
    a, b = pair.a, pair.b
    if a == b:
        return a
    hi, lo = pair.hi, pair.lo
    d = (hi - lo) / lo
    if math.isfinite(d):
        return lo * (d / math.log1p(d))
    return (hi - lo) / (math.log(hi) - math.log(lo))


def identric_mean(pair):
    a, b = pair.a, pair.b
    if a == b:
        return a
    hi, lo = pair.hi, pair.lo
    half_sum = 0.5 * hi + 0.5 * lo
    t = (0.5 * hi - 0.5 * lo) / half_sum
    if t < IDENTRIC_SERIES_THRESHOLD:
        return half_sum * math.exp(-_identric_series(t * t))
    d = (hi - lo) / lo
    ln_x = log_ratio_1p(hi, lo)
    # ln I = ln hi - 1 + ln(x)/(x - 1) with x = hi/lo
    return hi * math.exp(ln_x / d - 1.0)


def _identric_series(t2):
    c2, c4, c6 = _IDENTRIC_SERIES
    return t2 * (c2 + t2 * (c4 + t2 * c6))


def p_logarithmic_mean(pair, p):
    if not isinstance(p, PExponent):
        p = PExponent(p)
    a, b = pair.a, pair.b
    if a == b:
        return a
    if p.kind is PKind.ZERO_LIMIT:
        return identric_mean(pair)
    if p.kind is PKind.MINUS_ONE_LIMIT:
        return logarithmic_mean(pair)

    hi, lo = pair.hi, pair.lo
    d = (hi - lo) / lo
    if math.isfinite(d):
        u = math.log1p(d)
        ln_d = math.log(d)
        ln_u_over_d = math.log(u / d)
    else:
        u = math.log(hi) - math.log(lo)
        ln_d = log_abs_expm1(u)
        ln_u_over_d = math.log(u) - ln_d

    pv = p.value
    qv = pv + 1.0
    if abs(pv) >= 0.5 and abs(qv * u) > 1.0:
        value = _lp_power_form(hi, lo, pv, qv)
        if value is not None:
            return value

    # ln_r = ln[(x^(p+1) - 1) / ((p+1)(x - 1))] with x = hi/lo and u = ln x
    if abs(pv) < 0.5 and abs(pv * u) < _EXP_SAFE:
        inv_d = 1.0 / d
        ln_r = math.log1p((1.0 + inv_d) * math.expm1(pv * u)) - math.log1p(pv)
    elif abs(qv) < 0.5 or abs(qv * u) <= 1.0:
        ln_r = log_expm1_ratio(qv * u) + ln_u_over_d
    else:
        ln_r = log_abs_expm1(qv * u) - math.log(abs(qv)) - ln_d

    y = ln_r / pv
    if y < _EXP_SAFE:
        return lo * math.exp(y)
    return math.exp(math.log(lo) + y)


def _lp_power_form(hi, lo, pv, qv):
    """hi * C**(1/p) with C = (1 - y^q) / (q (1 - y)) and y = lo/hi.

    Rounding errors stay relative to C instead of growing with ln(hi/lo).
    Returns None when y^q or the result leaves the normal binary64 range.
    """
    y = lo / hi
    if y < sys.float_info.min:
        return None
    try:
        t = math.pow(y, qv)
        c = (1.0 - t) / (qv * (1.0 - y))
        if not (math.isfinite(c) and c > 0.0):
            return None
        value = hi * math.pow(c, 1.0 / pv)
    except (OverflowError, ValueError):
        return None
    if not math.isfinite(value) or value < sys.float_info.min:
        return None
    return value


def mean_chain_slacks(pair):
    """Additive slacks (G-H, L-G, I-L, A-I) of H <= G <= L <= I <= A"""
    h = harmonic_mean(pair)
    g = geometric_mean(pair)
    lm = logarithmic_mean(pair)
    im = identric_mean(pair)
    am = arithmetic_mean(pair)
    return (g - h, lm - g, im - lm, am - im)


MEAN_FUNCTIONS = {
    MeanId.A: arithmetic_mean,
    MeanId.G: geometric_mean,
    MeanId.H: harmonic_mean,
    MeanId.L: logarithmic_mean,
    MeanId.I: identric_mean,
}


def evaluate_mean(mean_id, pair, p=None):
    """Dispatch by mean id; p is required for Lp and ignored otherwise"""
    mean_id = MeanId(mean_id)
    if mean_id is MeanId.LP:
        if p is None:
            raise InvalidInput('the p-logarithmic mean needs a value for p')
        value = p_logarithmic_mean(pair, p)
    else:
        value = MEAN_FUNCTIONS[mean_id](pair)
    return MeanValue(value=value, mean_id=mean_id)
