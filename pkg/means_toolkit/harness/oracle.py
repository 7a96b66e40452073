"""
High-precision reference values for the binary64 kernels.

Each op is evaluated twice with mpmath, at digits+10 and digits+20 working
precision; the difference of the two runs plus one unit in the last
requested digit is reported as the error bound.  Inputs are converted from
binary64 exactly, so the oracle sees the same real numbers as the fast path.
"""
import logging
from dataclasses import dataclass

import mpmath

from means_toolkit.config import DEFAULT_ORACLE_DIGITS, MIN_ORACLE_DIGITS
from means_toolkit.errors import InvalidInput, UnsupportedOperation
from means_toolkit.models.means_core import (
    PExponent,
    PKind,
    PositivePair,
    evaluate_mean,
)
from means_toolkit.models.ratio_functions import (
    OrderedQuad,
    eval_f,
    eval_f_prime,
    eval_g,
    eval_g_prime,
)

logger = logging.getLogger(__name__)

OP_TAGS = ('A', 'G', 'H', 'L', 'I', 'Lp', 'f', 'g', "f'", "g'")

_ALIASES = {
    "f′": "f'", 'fp': "f'", 'f_prime': "f'", 'fprime': "f'",
    "g′": "g'", 'gp': "g'", 'g_prime': "g'", 'gprime': "g'",
    'lp': 'Lp', 'LP': 'Lp',
}

MEAN_OPS = frozenset(('A', 'G', 'H', 'L', 'I', 'Lp'))

# published relative-error bounds of the binary64 path
WELL_SEPARATED_BOUND = 1e-13
NEAR_DEGENERATE_BOUND = 1e-10


def normalize_op(op_tag):
    tag = str(op_tag).strip()
    tag = _ALIASES.get(tag, tag)
    if tag not in OP_TAGS:
        raise UnsupportedOperation(f'unsupported oracle op {op_tag!r}; expected one of {", ".join(OP_TAGS)}')
    return tag


@dataclass(frozen=True)
class OracleValue:
    op: str
    value: mpmath.mpf
    error_bound: mpmath.mpf
    digits: int


@dataclass(frozen=True)
class OracleComparison:
    op: str
    inputs: dict
    fast: float
    oracle: str
    rel_err: float
    bound: float
    oracle_error_bound: float

    @property
    def passed(self):
        return self.rel_err <= self.bound

    def to_dict(self):
        return {
            'op': self.op,
            'inputs': dict(self.inputs),
            'fast': self.fast,
            'oracle': self.oracle,
            'rel_err': self.rel_err,
            'bound': self.bound,
            'oracle_error_bound': self.oracle_error_bound,
            'passed': self.passed,
        }


def _mp(value):
    return mpmath.mpf(float(value))


def _mp_log_mean(a, b):
    if a == b:
        return a
    return (a - b) / (mpmath.log(a) - mpmath.log(b))


def _mp_identric(a, b):
    if a == b:
        return a
    return mpmath.exp((a * mpmath.log(a) - b * mpmath.log(b)) / (a - b) - 1)


def _mp_lp(a, b, p):
    if a == b:
        return a
    if p.kind is PKind.ZERO_LIMIT:
        return _mp_identric(a, b)
    if p.kind is PKind.MINUS_ONE_LIMIT:
        return _mp_log_mean(a, b)
    pv = _mp(p.value)
    q = pv + 1
    return ((mpmath.power(a, q) - mpmath.power(b, q)) / (q * (a - b))) ** (1 / pv)


def _mp_mean(op, inputs):
    a, b = _mp(inputs['a']), _mp(inputs['b'])
    if op == 'A':
        return (a + b) / 2
    if op == 'G':
        return mpmath.sqrt(a * b)
    if op == 'H':
        return 2 * a * b / (a + b)
    if op == 'L':
        return _mp_log_mean(a, b)
    if op == 'I':
        return _mp_identric(a, b)
    return _mp_lp(a, b, PExponent(float(inputs['p'])))


def _mp_power_diff(u, v, x):
    return mpmath.power(u, x) - mpmath.power(v, x)


def _mp_log_slope(u, v, x):
    """d/dx ln(u^x - v^x)"""
    ux, vx = mpmath.power(u, x), mpmath.power(v, x)
    return (ux * mpmath.log(u) - vx * mpmath.log(v)) / (ux - vx)


def _mp_ratio(op, inputs):
    a, b, c, d = (_mp(inputs[k]) for k in 'abcd')
    x = _mp(inputs['x'])
    if x == 0:
        f = mpmath.log(a / b) / mpmath.log(c / d)
        g_prime = (mpmath.log(a) + mpmath.log(b) - mpmath.log(c) - mpmath.log(d)) / 2
    else:
        f = _mp_power_diff(a, b, x) / _mp_power_diff(c, d, x)
        g_prime = _mp_log_slope(a, b, x) - _mp_log_slope(c, d, x)
    if op == 'f':
        return f
    if op == 'g':
        return mpmath.log(f)
    if op == "f'":
        return f * g_prime
    return g_prime


def _mp_eval(op, inputs):
    if op in MEAN_OPS:
        return _mp_mean(op, inputs)
    return _mp_ratio(op, inputs)


def oracle_eval(op_tag, inputs, digits=DEFAULT_ORACLE_DIGITS):
    """Reference value of op_tag at inputs with an error bound below 10^(1-digits) relative"""
    op = normalize_op(op_tag)
    if digits < MIN_ORACLE_DIGITS:
        raise InvalidInput(f'oracle needs at least {MIN_ORACLE_DIGITS} digits, got {digits!r}')
    _validate_inputs(op, inputs)
    with mpmath.workdps(digits + 10):
        coarse = _mp_eval(op, inputs)
    with mpmath.workdps(digits + 20):
        fine = _mp_eval(op, inputs)
        bound = abs(fine - coarse) + mpmath.mpf(10) ** (1 - digits) * abs(fine)
    return OracleValue(op=op, value=fine, error_bound=bound, digits=digits)


def _validate_inputs(op, inputs):
    keys = ('a', 'b') if op in MEAN_OPS else ('a', 'b', 'c', 'd', 'x')
    if op == 'Lp':
        keys = keys + ('p',)
    missing = [k for k in keys if k not in inputs]
    if missing:
        raise InvalidInput(f'op {op} needs inputs {", ".join(missing)}')
    # the fast-path types enforce the domain for both paths
    _fast_args(op, inputs)


def _fast_args(op, inputs):
    if op in MEAN_OPS:
        pair = PositivePair(float(inputs['a']), float(inputs['b']))
        p = PExponent(float(inputs['p'])) if op == 'Lp' else None
        return pair, p
    quad = OrderedQuad(*(float(inputs[k]) for k in 'abcd'))
    return quad, float(inputs['x'])


_FAST_RATIO = {'f': eval_f, 'g': eval_g, "f'": eval_f_prime, "g'": eval_g_prime}


def fast_eval(op_tag, inputs):
    op = normalize_op(op_tag)
    first, second = _fast_args(op, inputs)
    if op in MEAN_OPS:
        return evaluate_mean(op, first, second).value
    return _FAST_RATIO[op](first, second)


def is_near_degenerate(op, inputs):
    """Inputs close to a removable singularity or limit get the looser bound"""
    a, b = float(inputs['a']), float(inputs['b'])
    if abs(a / b - 1.0) < 1e-4:
        return True
    if op not in MEAN_OPS:
        c, d = float(inputs['c']), float(inputs['d'])
        return abs(c / d - 1.0) < 1e-4 or abs(float(inputs['x'])) < 1e-6
    if op == 'Lp':
        p = float(inputs['p'])
        return abs(p) < 1e-3 or abs(p + 1.0) < 1e-3
    return False


def compare(op_tag, inputs, digits=DEFAULT_ORACLE_DIGITS):
    """Fast binary64 value against the oracle"""
    op = normalize_op(op_tag)
    inputs = {k: float(v) for k, v in inputs.items()}
    reference = oracle_eval(op, inputs, digits)
    fast = fast_eval(op, inputs)
    with mpmath.workdps(digits + 20):
        scale = abs(reference.value)
        if op in ('g', "g'"):
            # g and g' cross zero; measure their error against max(|value|, 1)
            scale = max(scale, mpmath.mpf(1))
        diff = abs(_mp(fast) - reference.value)
        rel_err = float(diff / scale) if scale != 0 else float(diff)
        oracle_text = mpmath.nstr(reference.value, min(digits, 25))
    bound = NEAR_DEGENERATE_BOUND if is_near_degenerate(op, inputs) else WELL_SEPARATED_BOUND
    logger.debug('oracle %s %s: rel_err=%r bound=%r', op, inputs, rel_err, bound)
    return OracleComparison(
        op=op,
        inputs=inputs,
        fast=fast,
        oracle=oracle_text,
        rel_err=rel_err,
        bound=bound,
        oracle_error_bound=float(reference.error_bound),
    )
