"""
The power-difference ratio f(x) = (a^x - b^x)/(c^x - d^x) and g = ln f.

Everything is evaluated in the log domain.  With alpha = ln(a/b) and
gamma = ln(c/d),

    g(x) = x ln(b/d) + ln(alpha/gamma) + E(x alpha) - E(x gamma)

where E(z) = ln((e^z - 1)/z).  E is smooth through zero, so the only
special handling at x = 0 is the singular window where f is replaced by
its first-order expansion.
"""
import math
from dataclasses import dataclass, field
from enum import Enum

from means_toolkit.errors import InvalidInput, RangeError
from means_toolkit.utils.stable_math import (
    bernoulli_gap,
    log_expm1_ratio,
    log_expm1_ratio_curvature,
    log_ratio_1p,
)

# removable singularity window around x = 0
TAU_X = 1e-7

# |ad - bc| <= DISC_TOL * (ad + bc) counts as ad = bc
DISC_TOL = 1e-12

_LOG_MAX_FLOAT = 709.782712893384


class DiscClass(str, Enum):
    POSITIVE = 'Positive'
    ZERO = 'Zero'
    NEGATIVE = 'Negative'


class ConvexityClass(str, Enum):
    STRICTLY_CONVEX = 'StrictlyConvex'
    STRICTLY_CONCAVE = 'StrictlyConcave'
    LINEAR = 'Linear'


_CONVEXITY = {
    DiscClass.POSITIVE: ConvexityClass.STRICTLY_CONVEX,
    DiscClass.NEGATIVE: ConvexityClass.STRICTLY_CONCAVE,
    DiscClass.ZERO: ConvexityClass.LINEAR,
}


@dataclass(frozen=True)
class OrderedQuad:
    """
    Four reals with a > b >= c > d > 0.

    relaxed=True admits a >= b >= c >= d > 0; such quads can feed the mean
    comparisons but not f or g.
    """
    a: float
    b: float
    c: float
    d: float
    relaxed: bool = False
    alpha: float = field(init=False, repr=False)
    gamma: float = field(init=False, repr=False)
    rel_disc: float = field(init=False, repr=False)
    disc_class: DiscClass = field(init=False)

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidInput(f'{name} must be a real number, got {value!r}')
            if not (math.isfinite(value) and value > 0):
                raise InvalidInput(f'{name} must be a finite positive number, got {value!r}')
            object.__setattr__(self, name, float(value))

        a, b, c, d = self.a, self.b, self.c, self.d
        if self.relaxed:
            if not (a >= b >= c >= d):
                raise InvalidInput(f'need a >= b >= c >= d > 0, got ({a!r}, {b!r}, {c!r}, {d!r})')
        elif not (a > b >= c > d):
            raise InvalidInput(f'need a > b >= c > d > 0, got ({a!r}, {b!r}, {c!r}, {d!r})')

        alpha = log_ratio_1p(a, b)
        gamma = log_ratio_1p(c, d)
        # (ad - bc)/(ad + bc) = tanh((ln(ad) - ln(bc))/2), free of overflow
        rel_disc = math.tanh(0.5 * (alpha - gamma))
        if abs(rel_disc) <= DISC_TOL:
            disc_class = DiscClass.ZERO
        elif rel_disc > 0:
            disc_class = DiscClass.POSITIVE
        else:
            disc_class = DiscClass.NEGATIVE

        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'gamma', gamma)
        object.__setattr__(self, 'rel_disc', rel_disc)
        object.__setattr__(self, 'disc_class', disc_class)

    @property
    def discriminant(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_strict(self):
        return self.a > self.b >= self.c > self.d


def _require_strict(quad):
    if not quad.is_strict:
        raise InvalidInput('f and g need a > b >= c > d; this quad is only valid in relaxed mode')


def _log_b_over_d(quad):
    return log_ratio_1p(quad.b, quad.d)


def _log_a_over_c(quad):
    return log_ratio_1p(quad.a, quad.c)


def g_prime_at_zero(quad):
    """ln(G(a,b)/G(c,d))"""
    _require_strict(quad)
    return 0.5 * (_log_a_over_c(quad) + _log_b_over_d(quad))


def eval_g(quad, x):
    _require_strict(quad)
    x = float(x)
    if quad.disc_class is DiscClass.ZERO:
        return x * _log_b_over_d(quad)

    alpha, gamma = quad.alpha, quad.gamma
    log_r = math.log(alpha / gamma)
    if abs(x) <= TAU_X:
        return log_r + x * g_prime_at_zero(quad)
    return (
        x * _log_b_over_d(quad)
        + log_r
        + log_expm1_ratio(x * alpha)
        - log_expm1_ratio(x * gamma)
    )


def eval_f(quad, x):
    g = eval_g(quad, x)
    if g > _LOG_MAX_FLOAT:
        raise RangeError(f'f({x!r}) = exp({g!r}) overflows binary64')
    try:
        return math.exp(g)
    except OverflowError as e:
        raise RangeError(f'f({x!r}) = exp({g!r}) overflows binary64') from e


def eval_g_prime(quad, x):
    """g'(x) = (1/x) ln(I(a^x, b^x)/I(c^x, d^x)), ln(G(a,b)/G(c,d)) at 0"""
    _require_strict(quad)
    x = float(x)
    if quad.disc_class is DiscClass.ZERO:
        return _log_b_over_d(quad)
    if x == 0.0:
        return g_prime_at_zero(quad)
    alpha, gamma = quad.alpha, quad.gamma
    return (
        _log_a_over_c(quad)
        + alpha * bernoulli_gap(x * alpha)
        - gamma * bernoulli_gap(x * gamma)
    )


def eval_f_prime(quad, x):
    return eval_f(quad, x) * eval_g_prime(quad, x)


def eval_g_second(quad, x):
    _require_strict(quad)
    if quad.disc_class is DiscClass.ZERO:
        return 0.0
    x = float(x)
    alpha, gamma = quad.alpha, quad.gamma
    return (
        alpha * alpha * log_expm1_ratio_curvature(x * alpha)
        - gamma * gamma * log_expm1_ratio_curvature(x * gamma)
    )


def classify_g(quad):
    return _CONVEXITY[quad.disc_class]


def secant_slope(quad, alpha, beta):
    """Slope of f between the abscissae alpha and beta"""
    if alpha == beta:
        raise InvalidInput('secant slope needs two distinct abscissae')
    return (eval_f(quad, beta) - eval_f(quad, alpha)) / (beta - alpha)


def log_secant_slope(quad, alpha, beta):
    """ln of the secant slope, without forming f; slopes are positive since f increases"""
    if alpha == beta:
        raise InvalidInput('secant slope needs two distinct abscissae')
    lo, hi = min(alpha, beta), max(alpha, beta)
    g_lo = eval_g(quad, lo)
    g_hi = eval_g(quad, hi)
    gap = g_lo - g_hi
    if gap >= 0.0:
        # f(lo) == f(hi) after rounding; the slope is below resolution
        return -math.inf
    return g_hi + math.log(-math.expm1(gap)) - math.log(hi - lo)


def _midpoint_slack(phi, x1, x2):
    return 0.5 * (phi(x1) + phi(x2)) - phi(0.5 * (x1 + x2))


def midpoint_convexity_slack(which, quad, x1, x2):
    """(phi(x1) + phi(x2))/2 - phi((x1 + x2)/2) for phi in {f, g}"""
    if x1 == x2:
        raise InvalidInput('midpoint slack needs two distinct points')
    if which == 'f':
        return _midpoint_slack(lambda x: eval_f(quad, x), x1, x2)
    if which != 'g':
        raise InvalidInput(f"which must be 'f' or 'g', got {which!r}")

    _require_strict(quad)
    if quad.disc_class is DiscClass.ZERO:
        return 0.0
    # the linear part x ln(b/d) and the constant cancel; only E terms remain
    alpha, gamma = quad.alpha, quad.gamma
    slack_a = _midpoint_slack(lambda x: log_expm1_ratio(x * alpha), x1, x2)
    slack_c = _midpoint_slack(lambda x: log_expm1_ratio(x * gamma), x1, x2)
    return slack_a - slack_c
