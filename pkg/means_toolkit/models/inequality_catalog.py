"""
Registry of the mean inequalities derived from the ratio f.

Each entry turns one displayed inequality (or chain) into signed slacks,
one per link, oriented so that a positive slack means the link holds in the
direction the inequality asserts.  EQ13 and EQ14 flip with sign(ad - bc);
their slacks are reported already oriented.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType

import numpy as np

from means_toolkit.config import DEFAULT_TOLERANCE
from means_toolkit.errors import HypothesisViolation, InvalidInput, UnsupportedOperation
from means_toolkit.models.means_core import (
    PExponent,
    PositivePair,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    identric_mean,
    logarithmic_mean,
    mean_chain_slacks,
    p_logarithmic_mean,
)
from means_toolkit.models.ratio_functions import (
    DiscClass,
    OrderedQuad,
    eval_g_prime,
    eval_g_second,
    log_secant_slope,
)
from means_toolkit.utils.stable_math import log_ratio_1p

logger = logging.getLogger(__name__)

# relative distance to an equality manifold inside which a zero slack is accepted
NEAR_EQUALITY_RADIUS = 0.05

# EQ10's last member divides by ln(I(a,b)/b), which vanishes as a -> b
EQ10_MIN_RATIO_EXCESS = 1e-6

# tolerance factor for the closed-form sequence links
SEQUENCE_TOL_ULPS = 32.0

_EPS = float(np.finfo(np.float64).eps)


class SlackDomain(str, Enum):
    ADDITIVE = 'Additive'
    LOG_RATIO = 'LogRatio'


class Verdict(str, Enum):
    HOLDS = 'Holds'
    EQUALITY_CASE = 'EqualityCase'
    VIOLATED = 'Violated'


class Arity(str, Enum):
    PAIR = 'pair'
    XY = 'xy'
    QUAD = 'quad'
    RELAXED_QUAD = 'relaxed quad'
    QUAD_PQ = 'quad+p,q'
    SEQUENCE = 'n'
    KYFAN = 'kyfan sample'


@dataclass(frozen=True)
class Link:
    name: str
    slack: float
    tolerance: float


@dataclass(frozen=True)
class SlackReport:
    id: str
    inputs: dict
    links: tuple
    domain: SlackDomain
    verdict: Verdict
    margin: float
    members: dict = field(default_factory=dict)
    direction: str = 'fixed'

    @property
    def slacks(self):
        return tuple(link.slack for link in self.links)

    def to_dict(self):
        return {
            'id': self.id,
            'inputs': dict(self.inputs),
            'domain': self.domain.value,
            'direction': self.direction,
            'verdict': self.verdict.value,
            'margin': self.margin,
            'links': [
                {'name': link.name, 'slack': link.slack, 'tolerance': link.tolerance}
                for link in self.links
            ],
            'members': dict(self.members),
        }


def judge(links, near_equality, exact_equality=False):
    """Map link slacks to a verdict; NaN slacks are always violations"""
    if any(math.isnan(link.slack) for link in links):
        return Verdict.VIOLATED
    if exact_equality:
        if any(abs(link.slack) > link.tolerance for link in links):
            return Verdict.VIOLATED
        return Verdict.EQUALITY_CASE
    if any(link.slack < -link.tolerance for link in links):
        return Verdict.VIOLATED
    if all(link.slack > link.tolerance for link in links):
        return Verdict.HOLDS
    return Verdict.EQUALITY_CASE if near_equality else Verdict.VIOLATED


def build_report(ineq_id, inputs, links, domain, members, near_equality,
                 exact_equality=False, direction='fixed'):
    links = tuple(links)
    verdict = judge(links, near_equality, exact_equality)
    margin = min(link.slack for link in links)
    if verdict is Verdict.VIOLATED:
        logger.debug('%s violated at %s (margin %r)', ineq_id, inputs, margin)
    return SlackReport(
        id=ineq_id,
        inputs=dict(inputs),
        links=links,
        domain=domain,
        verdict=verdict,
        margin=margin,
        members=dict(members),
        direction=direction,
    )


def additive_link(name, lhs, rhs, tol):
    """Link asserting lhs > rhs, slack lhs - rhs with a scale-relative tolerance"""
    return Link(name, lhs - rhs, tol * max(abs(lhs), abs(rhs)))


def log_link(name, slack, tol):
    return Link(name, slack, tol)


def pair_distance(x, y):
    """|x - y|/(x + y), overflow-free"""
    hx, hy = 0.5 * x, 0.5 * y
    return abs(hx - hy) / (hx + hy)


def quad_distance(quad):
    return pair_distance(quad.a, quad.d)


def _safe_exp(y):
    return math.exp(y) if y < 709.0 else math.inf


def _pairs(quad):
    return PositivePair(quad.a, quad.b), PositivePair(quad.c, quad.d)


def _log_ratio(mean, top, bottom):
    return math.log(mean(top) / mean(bottom))


def _quad_inputs(quad):
    return {'a': quad.a, 'b': quad.b, 'c': quad.c, 'd': quad.d}


def _require_strict(quad, ineq_id):
    if not quad.is_strict:
        raise HypothesisViolation(f'{ineq_id} needs a > b >= c > d > 0')


def _require_generic(ineq_id, *exponents):
    for p in exponents:
        if not p.is_generic:
            raise HypothesisViolation(
                f'{ineq_id} needs p, q away from 0 and -1; {p.value!r} snaps to {p.kind.value}'
            )


def _as_exponent(p):
    return p if isinstance(p, PExponent) else PExponent(p)


# ---------------------------------------------------------------------------
# Pair chain H <= G <= L <= I <= A

def slack_eq3(pair, tol=DEFAULT_TOLERANCE):
    means = {
        'H': harmonic_mean(pair),
        'G': geometric_mean(pair),
        'L': logarithmic_mean(pair),
        'I': identric_mean(pair),
        'A': arithmetic_mean(pair),
    }
    names = list(means)
    slacks = mean_chain_slacks(pair)
    links = [
        Link(f'EQ3[{i + 1}]', slacks[i],
             tol * max(means[names[i]], means[names[i + 1]]))
        for i in range(4)
    ]
    return build_report(
        'EQ3', {'a': pair.a, 'b': pair.b}, links, SlackDomain.ADDITIVE, means,
        near_equality=pair_distance(pair.a, pair.b) <= NEAR_EQUALITY_RADIUS,
        exact_equality=pair.a == pair.b,
    )


# ---------------------------------------------------------------------------
# Quad inequalities

def _log_lp_ratio(quad, p):
    top, bottom = _pairs(quad)
    return math.log(p_logarithmic_mean(top, p) / p_logarithmic_mean(bottom, p))


def _lp_power_gap(quad, p, q):
    """p ln(L_p(a,b)/L_p(c,d)) - q ln(L_q(a,b)/L_q(c,d)) and g'(q+1)"""
    delta = p.value * _log_lp_ratio(quad, p) - q.value * _log_lp_ratio(quad, q)
    return delta, eval_g_prime(quad, q.value + 1.0)


def slack_eq4(quad, p, q, tol=DEFAULT_TOLERANCE):
    p, q = _as_exponent(p), _as_exponent(q)
    _require_strict(quad, 'EQ4')
    _require_generic('EQ4', p, q)

    # both sides divided by L_q^q(a,b)/L_q^q(c,d)
    delta, slope = _lp_power_gap(quad, p, q)
    step = (p.value - q.value) * slope
    lhs = _safe_exp(delta)
    rhs = 1.0 + step
    slack = math.expm1(delta) - step if delta < 709.0 else math.inf
    link = Link('EQ4', slack, tol * max(abs(lhs), abs(rhs)))

    near = (
        abs(p.value - q.value) / (1.0 + abs(q.value)) <= NEAR_EQUALITY_RADIUS
        or quad_distance(quad) <= NEAR_EQUALITY_RADIUS
    )
    inputs = dict(_quad_inputs(quad), p=p.value, q=q.value)
    return build_report(
        'EQ4', inputs, [link], SlackDomain.ADDITIVE,
        {'lhs': lhs, 'rhs': rhs},
        near_equality=near,
        exact_equality=p.value == q.value,
    )


def slack_eq5(quad, tol=DEFAULT_TOLERANCE):
    _require_strict(quad, 'EQ5')
    top, bottom = _pairs(quad)
    log_i = _log_ratio(identric_mean, top, bottom)
    l_ratio = logarithmic_mean(top) / logarithmic_mean(bottom)
    links = [
        log_link('EQ5_L', log_i - (1.0 - 1.0 / l_ratio), tol),
        log_link('EQ5_R', (l_ratio - 1.0) - log_i, tol),
    ]
    members = {
        'exp(1 - L(c,d)/L(a,b))': _safe_exp(1.0 - 1.0 / l_ratio),
        'I(a,b)/I(c,d)': _safe_exp(log_i),
        'exp(L(a,b)/L(c,d) - 1)': _safe_exp(l_ratio - 1.0),
    }
    return build_report(
        'EQ5', _quad_inputs(quad), links, SlackDomain.LOG_RATIO, members,
        near_equality=quad_distance(quad) <= NEAR_EQUALITY_RADIUS,
    )


def slack_eq6(pair, tol=DEFAULT_TOLERANCE):
    a, b = pair.a, pair.b
    if not a > b:
        raise HypothesisViolation('EQ6 needs a > b > 0')
    log_i = log_ratio_1p(identric_mean(pair), b)
    l_over_b = logarithmic_mean(pair) / b
    links = [
        log_link('EQ6_L', log_i - (1.0 - 1.0 / l_over_b), tol),
        log_link('EQ6_R', (l_over_b - 1.0) - log_i, tol),
    ]
    members = {
        'exp(1 - b/L(a,b))': _safe_exp(1.0 - 1.0 / l_over_b),
        'I(a,b)/b': _safe_exp(log_i),
        'exp(L(a,b)/b - 1)': _safe_exp(l_over_b - 1.0),
    }
    return build_report(
        'EQ6', {'a': a, 'b': b}, links, SlackDomain.LOG_RATIO, members,
        near_equality=pair_distance(a, b) <= NEAR_EQUALITY_RADIUS,
    )


def _log_g_ratio(quad):
    return 0.5 * (log_ratio_1p(quad.a, quad.c) + log_ratio_1p(quad.b, quad.d))


def slack_eq8(quad, tol=DEFAULT_TOLERANCE):
    _require_strict(quad, 'EQ8')
    top, bottom = _pairs(quad)
    l_ratio = logarithmic_mean(top) / logarithmic_mean(bottom)
    middle = 1.0 + _log_g_ratio(quad)
    # 2ab/(ab + cd) without forming the products
    lower = 2.0 / (1.0 + (quad.c / quad.a) * (quad.d / quad.b))
    links = [
        additive_link('EQ8_1', l_ratio, middle, tol),
        additive_link('EQ8_2', middle, lower, tol),
    ]
    members = {
        'L(a,b)/L(c,d)': l_ratio,
        '1 + ln(G(a,b)/G(c,d))': middle,
        '2ab/(ab+cd)': lower,
    }
    return build_report(
        'EQ8', _quad_inputs(quad), links, SlackDomain.ADDITIVE, members,
        near_equality=quad_distance(quad) <= NEAR_EQUALITY_RADIUS,
    )


def slack_eq9(quad, tol=DEFAULT_TOLERANCE):
    _require_strict(quad, 'EQ9')
    top, bottom = _pairs(quad)
    log_l = _log_ratio(logarithmic_mean, top, bottom)
    log_g = _log_g_ratio(quad)
    log_i = _log_ratio(identric_mean, top, bottom)
    link = log_link('EQ9', log_l - math.log(log_g / log_i), tol)
    members = {
        'L(a,b)/L(c,d)': math.exp(log_l),
        'ln(G(a,b)/G(c,d))/ln(I(a,b)/I(c,d))': log_g / log_i,
    }
    return build_report(
        'EQ9', _quad_inputs(quad), [link], SlackDomain.LOG_RATIO, members,
        near_equality=quad_distance(quad) <= NEAR_EQUALITY_RADIUS,
    )


def slack_eq10(pair, tol=DEFAULT_TOLERANCE):
    a, b = pair.a, pair.b
    if not (a > b and (a - b) / b >= EQ10_MIN_RATIO_EXCESS):
        raise HypothesisViolation(f'EQ10 needs a/b >= 1 + {EQ10_MIN_RATIO_EXCESS!r}')
    log_ab = log_ratio_1p(a, b)
    members = {
        'L(a,b)/b': logarithmic_mean(pair) / b,
        '1 + ln(a/b)/2': 1.0 + 0.5 * log_ab,
        '2a/(a+b)': 2.0 / (1.0 + b / a),
        'ln(a/b)/(2 ln(I(a,b)/b))': log_ab / (2.0 * log_ratio_1p(identric_mean(pair), b)),
    }
    values = list(members.values())
    links = [
        additive_link(f'EQ10[{i + 1}]', values[i], values[i + 1], tol)
        for i in range(3)
    ]
    return build_report(
        'EQ10', {'a': a, 'b': b}, links, SlackDomain.ADDITIVE, members,
        near_equality=pair_distance(a, b) <= NEAR_EQUALITY_RADIUS,
    )


def _half_log_link(name, x, y, tol):
    """1/2 ln(x/y) > (x/y - 1)/(x/y + 1) for x > y > 0"""
    half_log = 0.5 * log_ratio_1p(x, y)
    rel = (x - y) / y
    bound = rel / (rel + 2.0) if math.isfinite(rel) else 1.0
    return additive_link(name, half_log, bound, tol), half_log, bound


def slack_eq11_12(quad, tol=DEFAULT_TOLERANCE):
    _require_strict(quad, 'EQ11')
    log_g = _log_g_ratio(quad)
    t = (quad.c / quad.a) * (quad.d / quad.b)
    bound = (1.0 - t) / (1.0 + t)
    link11 = additive_link('EQ11', log_g, bound, tol)
    link12, half_log, bound12 = _half_log_link('EQ12', quad.a * quad.b, quad.c * quad.d, tol)
    members = {
        'ln(G(a,b)/G(c,d))': log_g,
        '(ab-cd)/(ab+cd)': bound,
        '1/2 ln(x/y)': half_log,
        '(x/y-1)/(x/y+1)': bound12,
    }
    return build_report(
        'EQ11', _quad_inputs(quad), [link11, link12], SlackDomain.ADDITIVE, members,
        near_equality=quad_distance(quad) <= NEAR_EQUALITY_RADIUS,
    )


def slack_eq12(x, y, tol=DEFAULT_TOLERANCE):
    if not (x > y > 0):
        raise HypothesisViolation('EQ12 needs x > y > 0')
    link, half_log, bound = _half_log_link('EQ12', x, y, tol)
    return build_report(
        'EQ12', {'x': x, 'y': y}, [link], SlackDomain.ADDITIVE,
        {'1/2 ln(x/y)': half_log, '(x/y-1)/(x/y+1)': bound},
        near_equality=pair_distance(x, y) <= NEAR_EQUALITY_RADIUS,
    )


_ORIENTATION = {
    DiscClass.POSITIVE: (1.0, 'ascending'),
    DiscClass.NEGATIVE: (-1.0, 'descending'),
    DiscClass.ZERO: (1.0, 'equal'),
}


def _numerically_linear(quad, p, q, tol):
    """Taylor remainder of g between q+1 and p+1 is below tol"""
    lo, hi = sorted((q.value + 1.0, p.value + 1.0))
    curvature = max(abs(eval_g_second(quad, t)) for t in (lo, 0.5 * (lo + hi), hi))
    return 0.5 * (hi - lo) ** 2 * curvature <= tol


def slack_eq13(quad, p, q, tol=DEFAULT_TOLERANCE):
    p, q = _as_exponent(p), _as_exponent(q)
    _require_strict(quad, 'EQ13')
    _require_generic('EQ13', p, q)

    delta, slope = _lp_power_gap(quad, p, q)
    raw = delta - (p.value - q.value) * slope
    sign, direction = _ORIENTATION[quad.disc_class]
    link = log_link('EQ13', sign * raw, tol)

    exact = quad.disc_class is DiscClass.ZERO or p.value == q.value
    near = (
        abs(quad.rel_disc) <= NEAR_EQUALITY_RADIUS
        or abs(p.value - q.value) / (1.0 + abs(q.value)) <= NEAR_EQUALITY_RADIUS
        or quad_distance(quad) <= NEAR_EQUALITY_RADIUS
        or _numerically_linear(quad, p, q, tol)
    )
    inputs = dict(_quad_inputs(quad), p=p.value, q=q.value)
    members = {'raw_slack': raw, "g'(q+1)": slope, 'disc_class': quad.disc_class.value}
    return build_report(
        'EQ13', inputs, [link], SlackDomain.LOG_RATIO, members,
        near_equality=near, exact_equality=exact, direction=direction,
    )


def chain_eq14(quad, tol=DEFAULT_TOLERANCE):
    top, bottom = _pairs(quad)
    names = ('H', 'G', 'L', 'I', 'A')
    kernels = (harmonic_mean, geometric_mean, logarithmic_mean, identric_mean, arithmetic_mean)
    log_ratios = [_log_ratio(mean, top, bottom) for mean in kernels]
    sign, direction = _ORIENTATION[quad.disc_class]
    links = [
        log_link(f'EQ14[{i + 1}]', sign * (log_ratios[i + 1] - log_ratios[i]), tol)
        for i in range(4)
    ]
    members = {
        f'{name}(a,b)/{name}(c,d)': math.exp(value)
        for name, value in zip(names, log_ratios)
    }
    near = (
        abs(quad.rel_disc) <= NEAR_EQUALITY_RADIUS
        or quad_distance(quad) <= NEAR_EQUALITY_RADIUS
    )
    return build_report(
        'EQ14', _quad_inputs(quad), links, SlackDomain.LOG_RATIO, members,
        near_equality=near,
        exact_equality=quad.disc_class is DiscClass.ZERO,
        direction=direction,
    )


def slack_slope3(quad, tol=DEFAULT_TOLERANCE):
    """Secant slopes of f: m over [d, b] stays below m over [c, a]"""
    _require_strict(quad, 'SLOPE_3')
    log_m_ca = log_secant_slope(quad, quad.c, quad.a)
    log_m_db = log_secant_slope(quad, quad.d, quad.b)
    link = log_link('SLOPE_3', log_m_ca - log_m_db, tol)
    near = max(pair_distance(quad.a, quad.b), pair_distance(quad.c, quad.d)) <= NEAR_EQUALITY_RADIUS
    return build_report(
        'SLOPE_3', _quad_inputs(quad), [link], SlackDomain.LOG_RATIO,
        {'ln m(d,b)': log_m_db, 'ln m(c,a)': log_m_ca},
        near_equality=near,
    )


# ---------------------------------------------------------------------------
# Integer sequence a = n+2, b = c = n+1, d = n
#
# With x = 1/(n+1) every member is a function of x.  The links differ only at
# order x^3, so the excess functions below are summed as series for small x.

_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 12


def _atanh_excess(x):
    """atanh(x) - x"""
    x = np.asarray(x, dtype=np.float64)
    x2 = x * x
    series = np.zeros_like(x)
    for k in range(_SERIES_TERMS, 0, -1):
        series = series * x2 + 1.0 / (2 * k + 1)
    series = series * x2 * x
    direct = np.arctanh(x) - x
    return np.where(x < _SERIES_CUTOFF, series, direct)


def _odd_tail(x, coefficient, direct):
    """sum over k >= 1 of coefficient(k) x^(2k+1), or direct(x) once x is not small"""
    x = np.asarray(x, dtype=np.float64)
    x2 = x * x
    series = np.zeros_like(x)
    for k in range(_SERIES_TERMS, 0, -1):
        series = series * x2 + coefficient(k)
    series = series * x2 * x
    return np.where(x < _SERIES_CUTOFF, series, direct(x))


def _atanh_log_gap(x):
    """2(atanh(x) - x) + ln(1 - x^2)/x + x"""
    return _odd_tail(
        x,
        lambda k: 1.0 / ((2 * k + 1) * (k + 1)),
        lambda v: 2.0 * (np.arctanh(v) - v) + np.log1p(-v * v) / v + v,
    )


def _log_atanh_gap(x):
    """-ln(1 - x^2)/x - atanh(x)"""
    return _odd_tail(
        x,
        lambda k: k / ((k + 1) * (2 * k + 1)),
        lambda v: -np.log1p(-v * v) / v - np.arctanh(v),
    )


SEQUENCE_LINKS = ('EQ15[1]', 'EQ15[2]', 'EQ16', 'EQ17[1]', 'EQ17[2]', 'EQ17[3]', 'EQ17[4]')


def _validate_n(n):
    arr = np.asarray(n, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr != np.floor(arr)):
        raise InvalidInput('n must be a positive integer')
    if np.any(arr < 1):
        raise HypothesisViolation('the sequence example needs n >= 1')
    return arr


def sequence_logs(n):
    """
    Natural logs of the sequence members and the link slacks for every n.

    Returns (slacks, tolerances, logs): dicts of numpy arrays.  Links are log
    differences; tolerances are SEQUENCE_TOL_ULPS ulps of the compared logs.
    """
    n = _validate_n(n)
    x = 1.0 / (n + 1.0)
    ex = _atanh_excess(x)
    ex_half = _atanh_excess(0.5 * x)
    gap = _atanh_log_gap(x)
    tail = _log_atanh_gap(x)

    log_plus = np.log1p(x)
    log_sq = -np.log1p(-x * x)
    at = x + ex
    # ln of ln(1+1/n)/ln(1+1/(n+1)) = 2 atanh(r) with r = ln((n+1)^2/(n(n+2)))/(2 at)
    ln_m3 = np.log1p(log_sq / log_plus)
    ex_r = _atanh_excess(0.5 * log_sq / at)
    # ln[(n+2)(1+1/(n+1))^(n+1) / ((n+1)(1+1/n)^n)]
    d = x + gap

    logs = {
        '(n+2)/(n+1)': log_plus,
        '1+ln sqrt((n+2)/n)': np.log1p(at),
        'ln(1+1/n)/ln(1+1/(n+1))': ln_m3,
        'eq16 lhs': np.log1p(tail / d),
        '(2n+3)/(2n+1)': x + 2.0 * ex_half,
        'eq17 product': d,
        'sqrt((n+2)/n)': at,
        '(n+2)(2n+1)/(n(2n+3))': x + 2.0 * ex - 2.0 * ex_half,
    }
    pairs = {
        'EQ15[1]': ('(n+2)/(n+1)', '1+ln sqrt((n+2)/n)',
                    np.log1p(ex / (1.0 + x))),
        'EQ15[2]': ('1+ln sqrt((n+2)/n)', 'ln(1+1/n)/ln(1+1/(n+1))',
                    np.log1p((log_sq / log_plus - at) / (1.0 + at))),
        'EQ16': ('eq16 lhs', 'ln(1+1/n)/ln(1+1/(n+1))', None),
        'EQ17[1]': ('(2n+3)/(2n+1)', 'eq17 product', gap - 2.0 * ex_half),
        'EQ17[2]': ('eq17 product', 'ln(1+1/n)/ln(1+1/(n+1))', x * tail / at - gap + 2.0 * ex_r),
        'EQ17[3]': ('ln(1+1/n)/ln(1+1/(n+1))', 'sqrt((n+2)/n)', (x * gap + ex * ex) / at - 2.0 * ex_r),
        'EQ17[4]': ('sqrt((n+2)/n)', '(n+2)(2n+1)/(n(2n+3))', ex - 2.0 * ex_half),
    }
    slacks, tolerances = {}, {}
    for name in SEQUENCE_LINKS:
        lower, upper, closed = pairs[name]
        slacks[name] = logs[upper] - logs[lower] if closed is None else closed
        tolerances[name] = SEQUENCE_TOL_ULPS * _EPS * np.maximum(np.abs(logs[lower]), np.abs(logs[upper]))
    return slacks, tolerances, logs


def sequence_eq15_16_17(n):
    """SlackReport for one n; see sequence_logs for whole arrays"""
    if isinstance(n, bool) or not float(n).is_integer():
        raise InvalidInput(f'n must be a positive integer, got {n!r}')
    n = int(n)
    slacks, tolerances, logs = sequence_logs(n)
    links = [Link(name, float(slacks[name]), float(tolerances[name])) for name in SEQUENCE_LINKS]
    members = {name: float(np.exp(value)) for name, value in logs.items()}
    return build_report(
        'EQ15_16_17', {'n': n}, links, SlackDomain.LOG_RATIO, members,
        near_equality=False,
    )


def sequence_scan(n_values):
    """Smallest tolerance-scaled margin of every sequence link over an array of n"""
    n_values = np.asarray(n_values)
    slacks, tolerances, _ = sequence_logs(n_values)
    summary = {}
    for name in SEQUENCE_LINKS:
        ratio = slacks[name] / tolerances[name]
        idx = int(np.argmin(ratio))
        summary[name] = {
            'min_slack': float(slacks[name][idx]),
            'argmin_n': int(n_values[idx]),
            'violations': int(np.count_nonzero(slacks[name] <= tolerances[name])),
        }
    return summary


# ---------------------------------------------------------------------------
# Registry

def _value(inputs, key):
    try:
        value = inputs[key]
    except KeyError:
        raise InvalidInput(f'missing input {key!r}') from None
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInput(f'input {key!r} must be a number, got {value!r}') from None
    if not math.isfinite(value):
        raise InvalidInput(f'input {key!r} must be finite, got {value!r}')
    return value


def _positive(inputs, key):
    value = _value(inputs, key)
    if value <= 0:
        raise InvalidInput(f'input {key!r} must be positive, got {value!r}')
    return value


def _build_quad(inputs, relaxed=False):
    a, b, c, d = (_positive(inputs, key) for key in 'abcd')
    if relaxed:
        if not (a >= b >= c >= d):
            raise HypothesisViolation('needs a >= b >= c >= d > 0')
    elif not (a > b >= c > d):
        raise HypothesisViolation('needs a > b >= c > d > 0')
    return OrderedQuad(a, b, c, d, relaxed=relaxed)


def _build_pair(inputs):
    return PositivePair(_positive(inputs, 'a'), _positive(inputs, 'b'))


def _build_exponents(inputs):
    return PExponent(_value(inputs, 'p')), PExponent(_value(inputs, 'q'))


@dataclass(frozen=True)
class InequalityEntry:
    id: str
    arity: Arity
    hypothesis: str
    equality: str
    direction: str
    links: tuple
    evaluate: object = field(repr=False, compare=False)

    def describe(self):
        return {
            'id': self.id,
            'arity': self.arity.value,
            'hypothesis': self.hypothesis,
            'equality': self.equality,
            'direction': self.direction,
            'links': list(self.links),
        }


def _entries():
    quad_keys = 'a > b >= c > d > 0'
    return [
        InequalityEntry('EQ3', Arity.PAIR, 'a, b > 0', 'a = b', 'fixed',
                        tuple(f'EQ3[{i}]' for i in range(1, 5)),
                        lambda inp, tol: slack_eq3(_build_pair(inp), tol)),
        InequalityEntry('EQ4', Arity.QUAD_PQ, f'{quad_keys}; p, q not in {{0, -1}}', 'p = q', 'fixed',
                        ('EQ4',),
                        lambda inp, tol: slack_eq4(_build_quad(inp), *_build_exponents(inp), tol=tol)),
        InequalityEntry('EQ5', Arity.QUAD, quad_keys, 'none', 'fixed', ('EQ5_L', 'EQ5_R'),
                        lambda inp, tol: slack_eq5(_build_quad(inp), tol)),
        InequalityEntry('EQ6', Arity.PAIR, 'a > b > 0', 'none', 'fixed', ('EQ6_L', 'EQ6_R'),
                        lambda inp, tol: slack_eq6(_build_pair(inp), tol)),
        InequalityEntry('EQ8', Arity.QUAD, quad_keys, 'none', 'fixed', ('EQ8_1', 'EQ8_2'),
                        lambda inp, tol: slack_eq8(_build_quad(inp), tol)),
        InequalityEntry('EQ9', Arity.QUAD, quad_keys, 'none', 'fixed', ('EQ9',),
                        lambda inp, tol: slack_eq9(_build_quad(inp), tol)),
        InequalityEntry('EQ10', Arity.PAIR, f'a/b >= 1 + {EQ10_MIN_RATIO_EXCESS!r}', 'none', 'fixed',
                        ('EQ10[1]', 'EQ10[2]', 'EQ10[3]'),
                        lambda inp, tol: slack_eq10(_build_pair(inp), tol)),
        InequalityEntry('EQ11', Arity.QUAD, quad_keys, 'none', 'fixed', ('EQ11', 'EQ12'),
                        lambda inp, tol: slack_eq11_12(_build_quad(inp), tol)),
        InequalityEntry('EQ12', Arity.XY, 'x > y > 0', 'x = y', 'fixed', ('EQ12',),
                        lambda inp, tol: slack_eq12(_positive(inp, 'x'), _positive(inp, 'y'), tol)),
        InequalityEntry('EQ13', Arity.QUAD_PQ, f'{quad_keys}; p, q not in {{0, -1}}',
                        'ad = bc or p = q', 'sign(ad - bc)', ('EQ13',),
                        lambda inp, tol: slack_eq13(_build_quad(inp), *_build_exponents(inp), tol=tol)),
        InequalityEntry('EQ14', Arity.RELAXED_QUAD, 'a >= b >= c >= d > 0', 'ad = bc', 'sign(ad - bc)',
                        tuple(f'EQ14[{i}]' for i in range(1, 5)),
                        lambda inp, tol: chain_eq14(_build_quad(inp, relaxed=True), tol)),
        InequalityEntry('EQ15_16_17', Arity.SEQUENCE, 'integer n >= 1', 'none', 'fixed', SEQUENCE_LINKS,
                        lambda inp, tol: sequence_eq15_16_17(_value(inp, 'n'))),
        InequalityEntry('SLOPE_3', Arity.QUAD, quad_keys, 'none', 'fixed', ('SLOPE_3',),
                        lambda inp, tol: slack_slope3(_build_quad(inp), tol)),
    ]


REGISTRY = MappingProxyType({entry.id: entry for entry in _entries()})

# accepted spellings that resolve to a registered id
ALIASES = MappingProxyType({
    'EQ11_12': 'EQ11',
    'EQ15': 'EQ15_16_17',
    'EQ16': 'EQ15_16_17',
    'EQ17': 'EQ15_16_17',
})


def resolve_id(ineq_id):
    key = str(ineq_id).strip().upper()
    key = ALIASES.get(key, key)
    if key not in REGISTRY:
        raise UnsupportedOperation(f'unknown inequality id {ineq_id!r}')
    return key


def list_inequalities():
    return [entry.describe() for entry in REGISTRY.values()]


def evaluate(ineq_id, inputs, tol=DEFAULT_TOLERANCE):
    """Dispatch an id and a mapping of named inputs to its slack operation"""
    entry = REGISTRY[resolve_id(ineq_id)]
    return entry.evaluate(inputs, tol)
