"""
Random sweeps over the inequality registry and the oracle.

A sweep evaluates each requested id on samples 0..N-1 of its input stream.
Chunks of indices may run in worker processes; partial summaries are merged
with a reduction that does not depend on completion order, so the report is
the same for any worker count.
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from means_toolkit.config import DEFAULT_ORACLE_DIGITS, DEFAULT_TOLERANCE
from means_toolkit.errors import HypothesisViolation, InvalidInput
from means_toolkit.harness import sampling
from means_toolkit.harness.oracle import MEAN_OPS, compare, normalize_op
from means_toolkit.models import inequality_catalog as catalog
from means_toolkit.models.inequality_catalog import Arity, Verdict
from means_toolkit.models.kyfan import KYFAN_IDS, evaluate_kyfan

logger = logging.getLogger(__name__)

ALL_IDS = tuple(catalog.REGISTRY) + KYFAN_IDS

SAMPLING_NOTE = (
    'min margins depend on the sampling distribution: quads and pairs log-uniform over '
    'the configured range, p and q uniform in [-3, 3], Ky Fan values uniform in (1e-6, 1/2]'
)


def resolve_ids(ids):
    """Expand 'ALL' and aliases; keeps first-seen order without duplicates"""
    if isinstance(ids, str):
        ids = [part for part in ids.split(',') if part.strip()]
    resolved = []
    for raw in ids:
        key = str(raw).strip().upper()
        if key == 'ALL':
            candidates = ALL_IDS
        elif key in KYFAN_IDS:
            candidates = (key,)
        else:
            candidates = (catalog.resolve_id(key),)
        for candidate in candidates:
            if candidate not in resolved:
                resolved.append(candidate)
    if not resolved:
        raise InvalidInput('no inequality ids given')
    return tuple(resolved)


@dataclass(frozen=True)
class SweepConfig:
    ids: tuple = ALL_IDS
    samples: int = 1000
    seed: int = 42
    sign_constraint: sampling.SignConstraint = sampling.SignConstraint.ANY
    value_range: tuple = sampling.DEFAULT_RANGE
    kyfan_n_range: tuple = sampling.DEFAULT_KYFAN_N_RANGE
    sequence_n_range: tuple = sampling.DEFAULT_SEQUENCE_N_RANGE
    tolerance: float = DEFAULT_TOLERANCE
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'ids', resolve_ids(self.ids))
        object.__setattr__(self, 'sign_constraint', sampling.SignConstraint.parse(self.sign_constraint))
        if int(self.samples) < 1:
            raise InvalidInput(f'samples must be at least 1, got {self.samples!r}')
        if int(self.workers) < 1:
            raise InvalidInput(f'workers must be at least 1, got {self.workers!r}')
        if not float(self.tolerance) > 0:
            raise InvalidInput(f'tolerance must be positive, got {self.tolerance!r}')
        lo, hi = self.value_range
        if not 0 < float(lo) < float(hi):
            raise InvalidInput(f'range must satisfy 0 < lo < hi, got {self.value_range!r}')
        for name in ('kyfan_n_range', 'sequence_n_range'):
            n_lo, n_hi = getattr(self, name)
            if not 1 <= int(n_lo) <= int(n_hi):
                raise InvalidInput(f'{name} must satisfy 1 <= lo <= hi, got {getattr(self, name)!r}')

    def echo(self):
        """Config as reported; the worker count is left out since it cannot change results"""
        return {
            'ids': list(self.ids),
            'samples': int(self.samples),
            'seed': int(self.seed),
            'sign_constraint': self.sign_constraint.value,
            'range': [float(v) for v in self.value_range],
            'kyfan_n_range': [int(v) for v in self.kyfan_n_range],
            'sequence_n_range': [int(v) for v in self.sequence_n_range],
            'tolerance': float(self.tolerance),
        }


@dataclass
class IdSummary:
    id: str
    samples_run: int = 0
    min_margin: float = math.inf
    argmin_index: int = -1
    argmin_inputs: dict = field(default_factory=dict)
    equality_cases: int = 0
    hypothesis_skips: int = 0
    violations: list = field(default_factory=list)

    def _key(self):
        margin = -math.inf if math.isnan(self.min_margin) else self.min_margin
        return (margin, self.argmin_index)

    def observe(self, index, inputs, report):
        self.samples_run += 1
        if report.verdict is Verdict.EQUALITY_CASE:
            self.equality_cases += 1
        elif report.verdict is Verdict.VIOLATED:
            failing = [link.name for link in report.links
                       if math.isnan(link.slack) or link.slack < link.tolerance]
            self.violations.append({
                'index': index,
                'inputs': inputs,
                'margin': report.margin,
                'links': failing,
            })
        margin = report.margin
        key = (-math.inf if math.isnan(margin) else margin, index)
        if self.argmin_index < 0 or key < self._key():
            self.min_margin = margin
            self.argmin_index = index
            self.argmin_inputs = inputs

    def merge(self, other):
        self.samples_run += other.samples_run
        self.equality_cases += other.equality_cases
        self.hypothesis_skips += other.hypothesis_skips
        self.violations.extend(other.violations)
        self.violations.sort(key=lambda v: v['index'])
        if other.argmin_index >= 0 and (self.argmin_index < 0 or other._key() < self._key()):
            self.min_margin = other.min_margin
            self.argmin_index = other.argmin_index
            self.argmin_inputs = other.argmin_inputs

    def to_dict(self):
        return {
            'samples_run': self.samples_run,
            'min_margin': self.min_margin,
            'argmin_index': self.argmin_index,
            'argmin_inputs': self.argmin_inputs,
            'equality_cases': self.equality_cases,
            'hypothesis_skips': self.hypothesis_skips,
            'violations': self.violations,
        }


@dataclass
class VerificationReport:
    seed: int
    config: dict
    summaries: dict
    wall_time: float = 0.0

    @property
    def total_violations(self):
        return sum(len(s.violations) for s in self.summaries.values())

    @property
    def passed(self):
        return self.total_violations == 0

    def to_dict(self, include_wall_time=True):
        data = {
            'seed': self.seed,
            'config': self.config,
            'sampling': SAMPLING_NOTE,
            'ids': {key: summary.to_dict() for key, summary in self.summaries.items()},
            'total_violations': self.total_violations,
        }
        if include_wall_time:
            data['wall_time_s'] = self.wall_time
        return data


def _arity(ineq_id):
    if ineq_id in KYFAN_IDS:
        return Arity.KYFAN
    return catalog.REGISTRY[ineq_id].arity


def draw_inputs(ineq_id, config, index):
    """Named inputs of sample `index` for an id; replaying them reproduces the report"""
    arity = _arity(ineq_id)
    seed = config.seed
    if arity is Arity.KYFAN:
        n = sampling.sample_kyfan_size(seed, index, config.kyfan_n_range)
        return {'x': list(sampling.sample_kyfan(seed, index, n).values)}
    if arity is Arity.SEQUENCE:
        return {'n': sampling.sample_sequence_n(seed, index, config.sequence_n_range)}
    if arity in (Arity.PAIR, Arity.XY):
        pair = sampling.sample_pair(seed, index, config.value_range)
        keys = ('a', 'b') if arity is Arity.PAIR else ('x', 'y')
        return dict(zip(keys, (pair.a, pair.b)))

    quad = sampling.sample_quad(seed, index, config.sign_constraint, config.value_range)
    inputs = {'a': quad.a, 'b': quad.b, 'c': quad.c, 'd': quad.d}
    if arity is Arity.QUAD_PQ:
        inputs['p'], inputs['q'] = sampling.sample_exponents(seed, index)
    return inputs


def evaluate_inputs(ineq_id, inputs, tol=DEFAULT_TOLERANCE):
    if ineq_id in KYFAN_IDS:
        return evaluate_kyfan(ineq_id, inputs['x'], tol)
    return catalog.evaluate(ineq_id, inputs, tol)


def _run_chunk(ineq_id, config, indices, collect_rows=False):
    summary = IdSummary(ineq_id)
    rows = []
    for index in indices:
        inputs = draw_inputs(ineq_id, config, index)
        try:
            report = evaluate_inputs(ineq_id, inputs, config.tolerance)
        except HypothesisViolation as e:
            logger.debug('%s sample %d skipped: %s', ineq_id, index, e)
            summary.hypothesis_skips += 1
            continue
        summary.observe(index, inputs, report)
        if collect_rows:
            rows.append((ineq_id, index, inputs, report.margin, report.verdict.value))
    return summary, rows


def _chunks(samples, workers):
    size = max(1, math.ceil(samples / (workers * 4)))
    return [range(start, min(start + size, samples)) for start in range(0, samples, size)]


def run_sweep(config, rows=None):
    """
    Run every id of the config over its sample stream.

    Chunks go to a process pool when `config.workers` > 1.  If `rows` is a
    list it receives one (id, index, inputs, margin, verdict) tuple per
    evaluated sample, sorted by id order then index.
    """
    started = time.perf_counter()
    logger.info('sweep of %d ids x %d samples (seed %d, %d workers)',
                len(config.ids), config.samples, config.seed, config.workers)
    summaries = {}
    chunks = _chunks(int(config.samples), int(config.workers))
    collect = rows is not None
    pool = ProcessPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for ineq_id in config.ids:
            if pool is None:
                partials = [_run_chunk(ineq_id, config, chunk, collect) for chunk in chunks]
            else:
                futures = [pool.submit(_run_chunk, ineq_id, config, chunk, collect) for chunk in chunks]
                partials = [future.result() for future in futures]

            summary = IdSummary(ineq_id)
            for partial, chunk_rows in partials:
                summary.merge(partial)
                if collect:
                    rows.extend(chunk_rows)
            summaries[ineq_id] = summary
            logger.info('%s: %d samples, min margin %r, %d violations',
                        ineq_id, summary.samples_run, summary.min_margin, len(summary.violations))
    finally:
        if pool is not None:
            pool.shutdown()

    return VerificationReport(
        seed=int(config.seed),
        config=config.echo(),
        summaries=summaries,
        wall_time=time.perf_counter() - started,
    )


def kyfan_sweep_config(samples, seed, n_range, workers=1, tolerance=DEFAULT_TOLERANCE):
    return SweepConfig(
        ids=KYFAN_IDS,
        samples=samples,
        seed=seed,
        kyfan_n_range=tuple(n_range),
        tolerance=tolerance,
        workers=workers,
    )


# ---------------------------------------------------------------------------
# Oracle sweeps

def _oracle_inputs(op, seed, index, stress):
    if op in MEAN_OPS:
        pair = sampling.sample_pair(seed, index)
        a, b = pair.a, pair.b
        if stress:
            rng = sampling.counter_rng(seed, 'oracle-stress', index)
            b = a / (1.0 + float(10.0 ** rng.uniform(-9, -5)))
        inputs = {'a': a, 'b': b}
        if op == 'Lp':
            if stress:
                rng = sampling.counter_rng(seed, 'oracle-p', index)
                centre = 0.0 if rng.random() < 0.5 else -1.0
                inputs['p'] = centre + float(rng.choice([-1.0, 1.0])) * float(10.0 ** rng.uniform(-7, -4))
            else:
                inputs['p'] = sampling.sample_exponents(seed, index)[0]
        return inputs

    quad = sampling.sample_quad(seed, index)
    x = sampling.sample_abscissa(seed, index)
    if stress:
        rng = sampling.counter_rng(seed, 'oracle-x', index)
        x = float(rng.choice([-1.0, 1.0])) * float(10.0 ** rng.uniform(-10, -6))
    return {'a': quad.a, 'b': quad.b, 'c': quad.c, 'd': quad.d, 'x': x}


def run_oracle_sweep(op_tag, samples, seed=42, digits=DEFAULT_ORACLE_DIGITS, stress=False):
    """Worst relative error of the fast path against the oracle over random inputs"""
    op = normalize_op(op_tag)
    worst = None
    failures = 0
    for index in range(int(samples)):
        result = compare(op, _oracle_inputs(op, seed, index, stress), digits)
        if not result.passed:
            failures += 1
        if worst is None or result.rel_err > worst.rel_err:
            worst = result
    return {
        'op': op,
        'samples': int(samples),
        'seed': int(seed),
        'stress': bool(stress),
        'max_rel_err': worst.rel_err,
        'worst': worst.to_dict(),
        'failures': failures,
    }
