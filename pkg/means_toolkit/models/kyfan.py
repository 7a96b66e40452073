"""
Ky Fan type inequalities for samples in (0, 1/2].

All statistics are derived from the log-defects of the sample around its
mean, so ln(A/G) and ln(A'/G') never come from subtracting two nearly equal
logs.  The refinement chains compare powers of A/G and A'/G', so they are
expressed through the logs of the chain members.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from means_toolkit.config import DEFAULT_TOLERANCE
from means_toolkit.errors import HypothesisViolation, InvalidInput, UnsupportedOperation
from means_toolkit.models.inequality_catalog import (
    NEAR_EQUALITY_RADIUS,
    Arity,
    SlackDomain,
    additive_link,
    build_report,
    chain_eq14,
    log_link,
    slack_eq8,
    slack_eq9,
)
from means_toolkit.models.means_core import PositivePair, identric_mean
from means_toolkit.models.ratio_functions import OrderedQuad, eval_f, eval_g
from means_toolkit.utils.stable_math import log1p_defect

logger = logging.getLogger(__name__)

KYFAN_IDS = tuple(f'EQ{i}' for i in range(18, 32))

# ids whose hypotheses exclude all-equal samples
STRICT_IDS = frozenset(f'EQ{i}' for i in range(23, 32))


@dataclass(frozen=True)
class KyFanSample:
    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise InvalidInput('a Ky Fan sample needs at least one value')
        cleaned = []
        for x in values:
            if isinstance(x, bool):
                raise InvalidInput(f'sample values must be real numbers, got {x!r}')
            try:
                x = float(x)
            except (TypeError, ValueError):
                raise InvalidInput(f'sample values must be real numbers, got {x!r}') from None
            if not (0.0 < x <= 0.5):
                raise InvalidInput(f'sample values must lie in (0, 1/2], got {x!r}')
            cleaned.append(x)
        object.__setattr__(self, 'values', tuple(cleaned))

    @property
    def n(self):
        return len(self.values)

    @property
    def all_equal(self):
        return max(self.values) == min(self.values)

    @property
    def spread(self):
        hi, lo = max(self.values), min(self.values)
        return (hi - lo) / (hi + lo)


@dataclass(frozen=True)
class KyFanStats:
    A: float
    G: float
    A_prime: float
    G_prime: float
    n: int
    log_q: float = field(repr=False)
    log_p: float = field(repr=False)
    all_equal: bool = False
    spread: float = 0.0

    def to_dict(self):
        return {
            'n': self.n,
            'A': self.A,
            'G': self.G,
            'A_prime': self.A_prime,
            'G_prime': self.G_prime,
            'ln(A/G)': self.log_q,
            "ln(A'/G')": self.log_p,
            'all_equal': self.all_equal,
        }


def compute_stats(sample):
    """A, G, A', G' of a sample; G and G' are geometric means through logs"""
    x = np.asarray(sample.values, dtype=np.float64)
    n = sample.n
    a_mean = math.fsum(x) / n
    a_prime = 1.0 - a_mean
    if sample.all_equal:
        a_mean = sample.values[0]
        a_prime = 1.0 - a_mean
        return KyFanStats(a_mean, a_mean, a_prime, a_prime, n, 0.0, 0.0, True, 0.0)

    # ln(A/G) = mean(d - log1p(d)) with d = x/A - 1; every term is >= 0
    dev = (x - a_mean) / a_mean
    dev_prime = (a_mean - x) / a_prime
    log_q = math.fsum(log1p_defect(dev)) / n
    log_p = math.fsum(log1p_defect(dev_prime)) / n
    return KyFanStats(
        A=a_mean,
        G=a_mean * math.exp(-log_q),
        A_prime=a_prime,
        G_prime=a_prime * math.exp(-log_p),
        n=n,
        log_q=log_q,
        log_p=log_p,
        all_equal=False,
        spread=sample.spread,
    )


def _ln(v):
    if v > 0:
        return math.log(v)
    return -math.inf if v == 0 else math.nan


def _log_power_gap(mean, log_ratio, n):
    """ln(mean^n - geo^n) with ln(mean/geo) = log_ratio > 0"""
    if log_ratio == 0.0:
        return -math.inf
    return n * math.log(mean) + math.log(-math.expm1(-n * log_ratio))


@dataclass(frozen=True)
class _Quantities:
    """Shared pieces of the refinement chains"""
    lp: float
    lq: float
    alpha_p: float
    alpha_q: float
    rho: float
    half_log: float
    log_i: float
    kappa: float
    gap_p: float
    gap_q: float
    log_a_ratio: float


def _quantities(stats):
    lp, lq, n = stats.log_p, stats.log_q, stats.n
    # A - G and A' - G' from the log ratios, free of cancellation
    alpha_q = -stats.A * math.expm1(-lq)
    alpha_p = -stats.A_prime * math.expm1(-lp)
    log_a_ratio = math.log(stats.A_prime / stats.A)
    top = PositivePair(stats.A_prime, stats.G_prime)
    bottom = PositivePair(stats.A, stats.G)
    return _Quantities(
        lp=lp,
        lq=lq,
        alpha_p=alpha_p,
        alpha_q=alpha_q,
        rho=alpha_p / alpha_q if alpha_q > 0 else math.nan,
        # ln sqrt(A'G'/(AG))
        half_log=log_a_ratio - 0.5 * (lp - lq),
        log_i=math.log(identric_mean(top) / identric_mean(bottom)),
        kappa=(stats.A + stats.G) / (stats.A_prime + stats.G_prime),
        gap_p=_log_power_gap(stats.A_prime, lp, n),
        gap_q=_log_power_gap(stats.A, lq, n),
        log_a_ratio=log_a_ratio,
    )


def _chain_links(prefix, log_members, tol):
    """Links between consecutive members given by their logs (ascending chain)"""
    return [
        log_link(f'{prefix}[{i + 1}]', log_members[i + 1] - log_members[i], tol)
        for i in range(len(log_members) - 1)
    ]


def _inputs(stats):
    return {'n': stats.n, 'A': stats.A, 'G': stats.G, 'A_prime': stats.A_prime, 'G_prime': stats.G_prime}


def _report(ineq_id, stats, links, domain, members, exact=False):
    near = stats.spread <= NEAR_EQUALITY_RADIUS
    return build_report(
        ineq_id, _inputs(stats), links, domain, members,
        near_equality=near, exact_equality=exact,
    )


def _eq18(stats, q, tol):
    link = log_link('EQ18', q.lq - q.lp, tol)
    return _report('EQ18', stats, [link], SlackDomain.LOG_RATIO,
                   {"A'/G'": math.exp(q.lp), 'A/G': math.exp(q.lq)},
                   exact=stats.all_equal)


def _eq19(stats, q, tol):
    link = additive_link('EQ19', q.alpha_q, q.alpha_p, tol)
    return _report('EQ19', stats, [link], SlackDomain.ADDITIVE,
                   {"A'-G'": q.alpha_p, 'A-G': q.alpha_q},
                   exact=stats.all_equal)


def _eq20(stats, q, tol):
    n = stats.n
    if n == 2:
        # A^2 - G^2 = (A - G)(A + G) keeps the identity visible to the last bit
        upper = q.alpha_p * (stats.A_prime + stats.G_prime)
        lower = q.alpha_q * (stats.A + stats.G)
    else:
        upper = _exp_or_zero(q.gap_p)
        lower = _exp_or_zero(q.gap_q)
    link = additive_link('EQ20', upper, lower, tol)
    return _report('EQ20', stats, [link], SlackDomain.ADDITIVE,
                   {'A^n-G^n': lower, "A'^n-G'^n": upper},
                   exact=stats.all_equal or n <= 2)


def _exp_or_zero(y):
    return 0.0 if y == -math.inf else math.exp(y)


def _eq21(stats, q, tol):
    lhs = (stats.A_prime + stats.G_prime) * q.lp
    rhs = (stats.A + stats.G) * q.lq
    link = log_link('EQ21', rhs - lhs, tol)
    return _report('EQ21', stats, [link], SlackDomain.LOG_RATIO,
                   {"(A'+G') ln(A'/G')": lhs, '(A+G) ln(A/G)': rhs},
                   exact=stats.all_equal)


def _eq22(stats, q, tol):
    lhs = q.alpha_q * q.lp
    rhs = q.alpha_p * q.lq
    link = log_link('EQ22', rhs - lhs, tol)
    return _report('EQ22', stats, [link], SlackDomain.LOG_RATIO,
                   {"(A-G) ln(A'/G')": lhs, "(A'-G') ln(A/G)": rhs},
                   exact=stats.all_equal)


def _eq23(stats, q, tol):
    members = {
        "ln(A'/G')": q.lp,
        'exponent 1': q.rho * q.lq - q.lp * q.half_log,
        'exponent 2': q.rho * q.lq - q.lp * q.log_a_ratio,
        'exponent 3': q.lq - q.lp * q.log_a_ratio,
        'ln(A/G)': q.lq,
    }
    links = _chain_links('EQ23', [_ln(v) for v in members.values()], tol)
    return _report('EQ23', stats, links, SlackDomain.LOG_RATIO, members)


def _eq24(stats, q, tol):
    boosted = q.lp * (1.0 + q.half_log)
    members = {
        "ln(A'/G')": q.lp,
        'max': max(boosted, q.lp / q.rho),
        'product': boosted / q.rho,
        'ln(A/G)': q.lq,
    }
    links = _chain_links('EQ24', [_ln(v) for v in members.values()], tol)
    return _report('EQ24', stats, links, SlackDomain.LOG_RATIO, members)


def _eq25_slack(stats, q):
    lhs = q.gap_p - q.gap_q
    rhs = 2.0 * stats.n * q.half_log + _ln(q.lp) - _ln(q.lq)
    return lhs, rhs


def _eq25(stats, q, tol):
    lhs, rhs = _eq25_slack(stats, q)
    link = log_link('EQ25', rhs - lhs, tol)
    return _report('EQ25', stats, [link], SlackDomain.LOG_RATIO,
                   {"ln((A'^n-G'^n)/(A^n-G^n))": lhs, 'ln(rhs)': rhs})


def _eq26(stats, q, tol):
    n = stats.n
    log_x1 = q.gap_p - q.gap_q - n * q.half_log
    log_x2 = _ln(q.rho) - q.half_log
    log_t_over_s = _ln(q.log_i) - _ln(q.half_log)
    logs = [
        max(log_x1, log_x2),
        _ln(q.lp) - _ln(q.lq),
        _ln(q.rho) + log_t_over_s,
        min(_ln(q.rho), log_t_over_s),
        0.0,
    ]
    names = ('ln max', 'ln r', 'ln rho*T/S', 'ln min', 'ln 1')
    links = _chain_links('EQ26', logs, tol)
    return _report('EQ26', stats, links, SlackDomain.LOG_RATIO, dict(zip(names, logs)))


def _eq27(stats, q, tol):
    log_lp = _ln(q.lp)
    logs = [
        log_lp,
        log_lp + _ln(q.half_log) - _ln(q.log_i),
        _ln(q.rho) + _ln(q.lq),
        _ln(q.lq),
        log_lp + stats.n * q.half_log,
    ]
    names = ("ln ln(A'/G')", "ln exponent S/T", "ln exponent rho", "ln ln(A/G)", "ln exponent (A'G'/AG)^(n/2)")
    links = _chain_links('EQ27', logs, tol)
    return _report('EQ27', stats, links, SlackDomain.LOG_RATIO, dict(zip(names, logs)))


def _eq28(stats, q, tol):
    lhs, middle = _eq25_slack(stats, q)
    middle = middle - stats.n * q.half_log
    logs = [lhs, middle, stats.n * q.half_log]
    links = _chain_links('EQ28', logs, tol)
    return _report('EQ28', stats, links, SlackDomain.LOG_RATIO,
                   dict(zip(('ln lhs', 'ln middle', 'ln rhs'), logs)))


def _eq29(stats, q, tol):
    members = {
        "ln(A'/G')": q.lp,
        'exponent kappa*rho': q.lq * q.kappa * q.rho,
        'exponent min': q.lq * min(q.kappa, q.rho),
        'ln(A/G)': q.lq,
    }
    links = _chain_links('EQ29', [_ln(v) for v in members.values()], tol)
    return _report('EQ29', stats, links, SlackDomain.LOG_RATIO, members)


def _eq30(stats, q, tol):
    members = {
        "ln(A'/G')": q.lp,
        'exponent': q.lp * math.exp(q.log_i) / q.rho,
        'ln(A/G)': q.lq,
    }
    links = _chain_links('EQ30', [_ln(v) for v in members.values()], tol)
    return _report('EQ30', stats, links, SlackDomain.LOG_RATIO, members)


def _eq31(stats, q, tol):
    n = stats.n
    first = 2.0 * (_ln(q.lp) - _ln(q.alpha_p) - _ln(q.lq) + _ln(q.alpha_q))
    second = (2.0 / n) * (_ln(n * q.lp) - q.gap_p - _ln(n * q.lq) + q.gap_q)
    logs = [-2.0 * q.half_log, min(first, second), 0.0]
    links = _chain_links('EQ31', logs, tol)
    return _report('EQ31', stats, links, SlackDomain.LOG_RATIO,
                   dict(zip(("ln(AG/(A'G'))", 'ln min', 'ln 1'), logs)))


_BUILDERS = {
    'EQ18': _eq18, 'EQ19': _eq19, 'EQ20': _eq20, 'EQ21': _eq21, 'EQ22': _eq22,
    'EQ23': _eq23, 'EQ24': _eq24, 'EQ25': _eq25, 'EQ26': _eq26, 'EQ27': _eq27,
    'EQ28': _eq28, 'EQ29': _eq29, 'EQ30': _eq30, 'EQ31': _eq31,
}

KYFAN_LINKS = {
    'EQ18': ('EQ18',), 'EQ19': ('EQ19',), 'EQ20': ('EQ20',),
    'EQ21': ('EQ21',), 'EQ22': ('EQ22',),
    'EQ23': tuple(f'EQ23[{i}]' for i in range(1, 5)),
    'EQ24': tuple(f'EQ24[{i}]' for i in range(1, 4)),
    'EQ25': ('EQ25',),
    'EQ26': tuple(f'EQ26[{i}]' for i in range(1, 5)),
    'EQ27': tuple(f'EQ27[{i}]' for i in range(1, 5)),
    'EQ28': ('EQ28[1]', 'EQ28[2]'),
    'EQ29': tuple(f'EQ29[{i}]' for i in range(1, 4)),
    'EQ30': ('EQ30[1]', 'EQ30[2]'),
    'EQ31': ('EQ31[1]', 'EQ31[2]'),
}


def kyfan_report(ineq_id, stats, tol=DEFAULT_TOLERANCE):
    key = str(ineq_id).strip().upper()
    if key not in _BUILDERS:
        raise UnsupportedOperation(f'unknown Ky Fan inequality id {ineq_id!r}')
    if key in STRICT_IDS and stats.all_equal:
        raise HypothesisViolation(f'{key} needs a sample whose values are not all equal')
    return _BUILDERS[key](stats, _quantities(stats), tol)


def classic_slacks(stats, tol=DEFAULT_TOLERANCE):
    """Reports for Ky Fan's inequality and its two additive analogues"""
    return tuple(kyfan_report(key, stats, tol) for key in ('EQ18', 'EQ19', 'EQ20'))


def refinement_slacks(stats, tol=DEFAULT_TOLERANCE):
    """Reports for the refinements and inverses; the strict ones need a non-constant sample"""
    keys = [f'EQ{i}' for i in range(21, 32)]
    if stats.all_equal:
        keys = ['EQ21', 'EQ22']
    return tuple(kyfan_report(key, stats, tol) for key in keys)


def describe_kyfan():
    return [
        {
            'id': key,
            'arity': Arity.KYFAN.value,
            'hypothesis': 'values in (0, 1/2]' + ('; not all equal' if key in STRICT_IDS else ''),
            'equality': 'n <= 2 or all values equal' if key == 'EQ20'
                        else ('all values equal' if key not in STRICT_IDS else 'none'),
            'direction': 'fixed',
            'links': list(KYFAN_LINKS[key]),
        }
        for key in KYFAN_IDS
    ]


def _probe_quad(stats):
    if stats.all_equal:
        raise HypothesisViolation('the quad (A\', G\', A, G) is degenerate for an all-equal sample')
    try:
        return OrderedQuad(stats.A_prime, stats.G_prime, stats.A, stats.G)
    except InvalidInput as e:
        raise HypothesisViolation(f"(A', G', A, G) is not an ordered quad: {e}") from e


def ky_fan_f_probe(stats, x):
    """f(x) = (A'^x - G'^x)/(A^x - G^x)"""
    return eval_f(_probe_quad(stats), x)


def bridge_slacks(stats, tol=DEFAULT_TOLERANCE):
    """
    Pairs of (Ky Fan link, the same quantity rebuilt from the catalog on the
    quad (A', G', A, G)).  Both entries of a pair should agree to rounding.
    """
    quad = _probe_quad(stats)
    q = _quantities(stats)
    n = float(stats.n)
    reports = {
        key: kyfan_report(key, stats, tol)
        for key in ('EQ23', 'EQ24', 'EQ25', 'EQ26', 'EQ27', 'EQ29', 'EQ30')
    }

    def link(name):
        key = name.split('[')[0]
        return next(item.slack for item in reports[key].links if item.name == name)

    eq8_1 = slack_eq8(quad, tol).links[0].slack
    eq9 = slack_eq9(quad, tol)
    # ln(S/T) with S = ln(G(a,b)/G(c,d)) and T = ln(I(a,b)/I(c,d))
    log_s_over_t = math.log(eq9.members['ln(G(a,b)/G(c,d))/ln(I(a,b)/I(c,d))'])
    eq14 = chain_eq14(quad, tol).members
    log_g_ratio = math.log(eq14['G(a,b)/G(c,d)'])
    log_l_ratio = math.log(eq14['L(a,b)/L(c,d)'])
    log_i_ratio = math.log(eq14['I(a,b)/I(c,d)'])
    log_a_ratio = math.log(eq14['A(a,b)/A(c,d)'])
    # g(0) = ln r, g(1) = ln rho, g(n) = ln((A'^n - G'^n)/(A^n - G^n))
    g0, g1, gn = (eval_g(quad, x) for x in (0.0, 1.0, n))

    return {
        'EQ23[1]': (link('EQ23[1]'), math.log1p(eq8_1)),
        'EQ24[3]': (link('EQ24[3]'), math.log1p(eq8_1 / (1.0 + q.half_log))),
        'EQ25': (link('EQ25'), g0 - eval_g(quad, -n)),
        'EQ26[1]': (link('EQ26[1]'), min(g0 - gn + n * log_g_ratio, g0 - g1 + log_g_ratio)),
        'EQ26[2]': (link('EQ26[2]'), eq9.links[0].slack),
        'EQ26[3]': (link('EQ26[3]'), -max(g1, -log_s_over_t)),
        'EQ26[4]': (link('EQ26[4]'), -min(g1, -log_s_over_t)),
        'EQ27[1]': (link('EQ27[1]'), log_s_over_t),
        'EQ27[2]': (link('EQ27[2]'), g1 - g0 - log_s_over_t),
        'EQ29[1]': (link('EQ29[1]'), log_l_ratio - log_a_ratio),
        'EQ30[1]': (link('EQ30[1]'), log_i_ratio - g1),
        'EQ30[2]': (link('EQ30[2]'), log_l_ratio - log_i_ratio),
    }


def evaluate_kyfan(ineq_id, sample, tol=DEFAULT_TOLERANCE):
    if not isinstance(sample, KyFanSample):
        sample = KyFanSample(tuple(sample))
    return kyfan_report(ineq_id, compute_stats(sample), tol)

