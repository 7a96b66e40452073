"""
Cancellation-free elementary kernels shared by the models.

Everything here works on log-scale arguments so that callers never form
a**x directly. Python's math functions raise OverflowError instead of
returning inf, so every branch that could overflow is guarded explicitly.
"""
import math

import numpy as np

# d - log1p(d) switches to its power series below this |d|
_DEFECT_CUTOFF = 0.05
_DEFECT_TERMS = 14

# above this, exp(-z) is negligible against 1 and expm1(z) would overflow soon
_LARGE = 40.0

# Taylor coefficients of (s/expm1(s) - 1)/s, i.e. B_{k+1}/(k+1)! for k = 0..9
_BERNOULLI_GAP = (
    -0.5,
    1.0 / 12.0,
    0.0,
    -1.0 / 720.0,
    0.0,
    1.0 / 30240.0,
    0.0,
    -1.0 / 1209600.0,
    0.0,
    1.0 / 47900160.0,
)


def log_abs_expm1(z):
    """ln|e^z - 1| for z != 0"""
    if z == 0.0:
        raise ValueError('log_abs_expm1 is singular at 0')
    if z > _LARGE:
        return z + math.log1p(-math.exp(-z))
    return math.log(abs(math.expm1(z)))


def log_expm1_ratio(z):
    """ln((e^z - 1)/z), extended by continuity to 0 at z = 0"""
    if z == 0.0:
        return 0.0
    if z > _LARGE:
        return z + math.log1p(-math.exp(-z)) - math.log(z)
    return math.log(math.expm1(z) / z)


def bernoulli_gap(s):
    """(s/(e^s - 1) - 1)/s, smooth through s = 0 where it equals -1/2"""
    if abs(s) < 0.1:
        acc = 0.0
        for coeff in reversed(_BERNOULLI_GAP):
            acc = acc * s + coeff
        return acc
    if s > _LARGE:
        w = s * math.exp(-s) / -math.expm1(-s)
    else:
        w = s / math.expm1(s)
    return (w - 1.0) / s


def log_expm1_ratio_curvature(z):
    """Second derivative of ln((e^z-1)/z): (1 - ((z/2)/sinh(z/2))**2)/z**2"""
    if abs(z) < 1e-3:
        return 1.0 / 12.0 - z * z / 240.0
    half = 0.5 * abs(z)
    bump = 0.0 if half > 700.0 else (half / math.sinh(half)) ** 2
    return (1.0 - bump) / (z * z)


def log1p_defect(d):
    """d - log1p(d) elementwise for d > -1; nonnegative and O(d^2) near 0"""
    d = np.asarray(d, dtype=np.float64)
    series = np.zeros_like(d)
    for k in range(_DEFECT_TERMS, 1, -1):
        series = series * -d + 1.0 / k
    series = series * d * d
    with np.errstate(divide='ignore', invalid='ignore'):
        direct = d - np.log1p(d)
    return np.where(np.abs(d) < _DEFECT_CUTOFF, series, direct)


def log_ratio_1p(hi, lo):
    """ln(hi/lo) for hi >= lo > 0, accurate when hi is close to lo"""
    d = (hi - lo) / lo
    if math.isfinite(d):
        return math.log1p(d)
    return math.log(hi) - math.log(lo)
