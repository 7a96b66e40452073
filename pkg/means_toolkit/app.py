"""
Command-line front end.

    python -m means_toolkit.app means-eval --a 4 --b 2 --mean L
    python -m means_toolkit.app ineq-check --id EQ14 --a 4 --b 3 --c 2 --d 1
    python -m means_toolkit.app sweep --ids all --samples 100000 --seed 42 --out report.json

JSON goes to standard output, one-line summaries and logs to standard error.
Exit codes: 0 all checks hold, 1 a mathematical violation, 2 usage or
hypothesis errors.
"""
import argparse
import logging
import sys

import numpy as np

from means_toolkit.config import load_settings
from means_toolkit.errors import (
    ConfigurationError,
    HypothesisViolation,
    InvalidInput,
    MeansToolkitError,
    UnsupportedOperation,
)
from means_toolkit.harness import oracle
from means_toolkit.harness.sampling import SignConstraint
from means_toolkit.harness.sweep import (
    ALL_IDS,
    SweepConfig,
    kyfan_sweep_config,
    run_oracle_sweep,
    run_sweep,
)
from means_toolkit.models import inequality_catalog as catalog
from means_toolkit.models import kyfan
from means_toolkit.models.inequality_catalog import Verdict
from means_toolkit.models.means_core import MeanId, PositivePair, evaluate_mean
from means_toolkit.utils.helpers import (
    dumps,
    parse_float_list,
    parse_float_range,
    parse_int_range,
    write_json,
    write_sample_csv,
)

logger = logging.getLogger('means_toolkit')

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class UsageError(MeansToolkitError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse reports bad flags through UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def emit(obj):
    print(dumps(obj))


def _status(ok):
    return '✓' if ok else '✗'


def _exit_for(reports):
    return EXIT_VIOLATION if any(r.verdict is Verdict.VIOLATED for r in reports) else EXIT_OK


# Commands - Means

def cmd_means_eval(args, settings):
    pair = PositivePair(args.a, args.b)
    mean_id = MeanId(args.mean)
    if mean_id is MeanId.LP and args.p is None:
        raise UsageError('--p is required with --mean Lp')
    if mean_id is not MeanId.LP and args.p is not None:
        raise UsageError('--p is only accepted with --mean Lp')
    result = evaluate_mean(mean_id, pair, args.p)
    output = {'mean_id': result.mean_id.value, 'a': pair.a, 'b': pair.b, 'value': result.value}
    if args.p is not None:
        output['p'] = args.p
    emit(output)
    return EXIT_OK


# Commands - Inequalities

def cmd_ineq_list(args, settings):
    emit({'inequalities': catalog.list_inequalities() + kyfan.describe_kyfan()})
    return EXIT_OK


_INPUT_FLAGS = ('a', 'b', 'c', 'd', 'p', 'q', 'y', 'n')


def _check_inputs(args, key):
    inputs = {name: getattr(args, name) for name in _INPUT_FLAGS if getattr(args, name) is not None}
    if args.x is not None:
        if key in kyfan.KYFAN_IDS:
            inputs['x'] = parse_float_list(args.x)
        else:
            try:
                inputs['x'] = float(args.x)
            except ValueError:
                raise UsageError(f'--x must be a number for {key}, got {args.x!r}') from None
    return inputs


def _sequence_scan(args):
    if args.n_max < 1:
        raise UsageError('--n-max must be at least 1')
    summary = catalog.sequence_scan(np.arange(1, args.n_max + 1, dtype=np.int64))
    violations = sum(entry['violations'] for entry in summary.values())
    for name, entry in summary.items():
        print(f"{_status(entry['violations'] == 0)} {name} min slack {entry['min_slack']!r} "
              f"at n={entry['argmin_n']}", file=sys.stderr)
    emit({'id': 'EQ15_16_17', 'n_max': args.n_max, 'links': summary, 'total_violations': violations})
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_ineq_check(args, settings):
    tol = args.tol if args.tol is not None else settings.tolerance
    key = str(args.id).strip().upper()
    if key in kyfan.KYFAN_IDS:
        inputs = _check_inputs(args, key)
        if 'x' not in inputs:
            raise UsageError(f'{key} needs a sample through --x')
        report = kyfan.evaluate_kyfan(key, inputs['x'], tol)
    else:
        key = catalog.resolve_id(key)
        if key == 'EQ15_16_17' and args.n_max is not None:
            return _sequence_scan(args)
        report = catalog.evaluate(key, _check_inputs(args, key), tol)
    print(f'{_status(report.verdict is not Verdict.VIOLATED)} {report.id} {report.verdict.value} '
          f'margin {report.margin!r}', file=sys.stderr)
    emit(report)
    return _exit_for([report])


def _summary_line(summary):
    ok = not summary.violations
    return (f'{_status(ok)} {summary.id}: {summary.samples_run} samples, '
            f'min margin {summary.min_margin!r}, {summary.equality_cases} equality cases, '
            f'{summary.hypothesis_skips} skipped, {len(summary.violations)} violations')


def _finish_sweep(args, report, rows):
    for summary in report.summaries.values():
        print(_summary_line(summary), file=sys.stderr)
    print(f'{_status(report.passed)} {report.total_violations} violations '
          f'in {report.wall_time:.2f}s', file=sys.stderr)
    if args.csv:
        write_sample_csv(args.csv, rows)
        logger.info('sample rows written to %s', args.csv)
    if args.out:
        write_json(args.out, report)
        logger.info('report written to %s', args.out)
    else:
        emit(report)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_sweep(args, settings):
    config = SweepConfig(
        ids=args.ids,
        samples=args.samples,
        seed=args.seed if args.seed is not None else settings.seed,
        sign_constraint=SignConstraint.parse(args.sign),
        value_range=parse_float_range(args.range),
        kyfan_n_range=parse_int_range(args.kyfan_n_range),
        sequence_n_range=parse_int_range(args.sequence_n_range),
        tolerance=args.tol if args.tol is not None else settings.tolerance,
        workers=args.workers if args.workers is not None else settings.workers,
    )
    rows = [] if args.csv else None
    return _finish_sweep(args, run_sweep(config, rows), rows)


# Commands - Ky Fan

def cmd_kyfan_check(args, settings):
    tol = args.tol if args.tol is not None else settings.tolerance
    sample = kyfan.KyFanSample(tuple(parse_float_list(args.x)))
    stats = kyfan.compute_stats(sample)
    classic = kyfan.classic_slacks(stats, tol)
    refinements = kyfan.refinement_slacks(stats, tol)
    output = {'stats': stats, 'classic': classic, 'refinements': refinements}
    if not stats.all_equal:
        try:
            output['bridge'] = {
                name: {'kyfan': pair[0], 'catalog': pair[1]}
                for name, pair in kyfan.bridge_slacks(stats, tol).items()
            }
        except HypothesisViolation as e:
            logger.info('bridge skipped: %s', e)
    for report in classic + refinements:
        print(f'{_status(report.verdict is not Verdict.VIOLATED)} {report.id} {report.verdict.value}',
              file=sys.stderr)
    emit(output)
    return _exit_for(classic + refinements)


def cmd_kyfan_sweep(args, settings):
    config = kyfan_sweep_config(
        samples=args.samples,
        seed=args.seed if args.seed is not None else settings.seed,
        n_range=parse_int_range(args.n_range),
        workers=args.workers if args.workers is not None else settings.workers,
        tolerance=args.tol if args.tol is not None else settings.tolerance,
    )
    rows = [] if args.csv else None
    return _finish_sweep(args, run_sweep(config, rows), rows)


# Commands - Oracle

def cmd_oracle_compare(args, settings):
    digits = args.digits if args.digits is not None else settings.oracle_digits
    op = oracle.normalize_op(args.op)
    if args.samples:
        result = run_oracle_sweep(op, args.samples, args.seed if args.seed is not None else settings.seed,
                                  digits, stress=args.stress)
        print(f"{_status(result['failures'] == 0)} {op}: max rel_err {result['max_rel_err']!r} "
              f"over {result['samples']} samples", file=sys.stderr)
        emit(result)
        return EXIT_OK if result['failures'] == 0 else EXIT_VIOLATION

    inputs = {name: getattr(args, name) for name in ('a', 'b', 'c', 'd', 'x', 'p')
              if getattr(args, name) is not None}
    comparison = oracle.compare(op, inputs, digits)
    print(f'{_status(comparison.passed)} {op}: rel_err {comparison.rel_err!r} '
          f'(bound {comparison.bound!r})', file=sys.stderr)
    emit(comparison)
    return EXIT_OK if comparison.passed else EXIT_VIOLATION


def _add_common(parser):
    parser.add_argument('--tol', type=float, help='verdict tolerance (default MEANS_TOLERANCE)')


def _add_sweep_output(parser):
    parser.add_argument('--seed', type=int, help='sampling seed (default MEANS_SEED)')
    parser.add_argument('--workers', type=int, help='worker processes (default MEANS_WORKERS)')
    parser.add_argument('--out', help='write the JSON report here instead of standard output')
    parser.add_argument('--csv', help='also write one CSV row per evaluated sample')


def build_parser():
    parser = _Parser(prog='means-toolkit', description='Special means and inequality verifier')
    parser.add_argument('--verbose', '-v', action='store_true', help='log progress at INFO level')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('means-eval', help='evaluate one mean of a pair')
    p.add_argument('--a', type=float, required=True)
    p.add_argument('--b', type=float, required=True)
    p.add_argument('--mean', required=True, choices=[m.value for m in MeanId])
    p.add_argument('--p', type=float)
    p.set_defaults(handler=cmd_means_eval)

    p = commands.add_parser('ineq-list', help='list inequality ids with hypotheses')
    p.set_defaults(handler=cmd_ineq_list)

    p = commands.add_parser('ineq-check', help='evaluate one inequality at given inputs')
    p.add_argument('--id', required=True)
    for name in ('a', 'b', 'c', 'd', 'p', 'q', 'y'):
        p.add_argument(f'--{name}', type=float)
    p.add_argument('--x', help='number, or a comma-separated sample for EQ18..EQ31')
    p.add_argument('--n', type=int)
    p.add_argument('--n-max', type=int, help='check the sequence example for every n in 1..N')
    _add_common(p)
    p.set_defaults(handler=cmd_ineq_check)

    p = commands.add_parser('sweep', help='random sweep over inequality ids')
    p.add_argument('--ids', default='all', help="comma-separated ids or 'all'")
    p.add_argument('--samples', type=int, default=1000)
    p.add_argument('--sign', default='any', help='any, positive, negative or zero (sign of ad - bc)')
    p.add_argument('--range', default='0.001,1000', help='lo,hi of sampled a, b, c, d')
    p.add_argument('--kyfan-n-range', default='2..20')
    p.add_argument('--sequence-n-range', default='1..1000000')
    _add_sweep_output(p)
    _add_common(p)
    p.set_defaults(handler=cmd_sweep)

    p = commands.add_parser('kyfan-check', help='Ky Fan statistics and inequalities of one sample')
    p.add_argument('--x', required=True, help='comma-separated values in (0, 1/2] or a JSON array')
    _add_common(p)
    p.set_defaults(handler=cmd_kyfan_check)

    p = commands.add_parser('kyfan-sweep', help='random sweep over the Ky Fan inequalities')
    p.add_argument('--n-range', default='2..20')
    p.add_argument('--samples', type=int, default=1000)
    _add_sweep_output(p)
    _add_common(p)
    p.set_defaults(handler=cmd_kyfan_sweep)

    p = commands.add_parser('oracle-compare', help='fast binary64 value against the mpmath oracle')
    p.add_argument('--op', required=True, help=', '.join(oracle.OP_TAGS))
    for name in ('a', 'b', 'c', 'd', 'x', 'p'):
        p.add_argument(f'--{name}', type=float)
    p.add_argument('--digits', type=int, help='oracle digits (default MEANS_ORACLE_DIGITS)')
    p.add_argument('--samples', type=int, help='compare over this many random inputs instead')
    p.add_argument('--seed', type=int)
    p.add_argument('--stress', action='store_true', help='sample near the removable singularities')
    p.set_defaults(handler=cmd_oracle_compare)

    return parser


def _configure_logging(level):
    logging.basicConfig(
        level=level,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    logger.setLevel(level)


def main(argv=None) -> int:
    try:
        settings = load_settings()
        args = build_parser().parse_args(argv)
    except (ConfigurationError, UsageError) as e:
        emit({'error': str(e)})
        return EXIT_USAGE

    _configure_logging('INFO' if args.verbose else settings.log_level)

    try:
        return args.handler(args, settings)
    except UnsupportedOperation as e:
        if args.command == 'oracle-compare':
            emit({'error': str(e), 'valid_ops': list(oracle.OP_TAGS)})
        else:
            emit({'error': str(e), 'valid_ids': list(ALL_IDS)})
        return EXIT_USAGE
    except (InvalidInput, HypothesisViolation, UsageError) as e:
        emit({'error': str(e)})
        return EXIT_USAGE
    except MeansToolkitError as e:
        logger.error('%s', e)
        emit({'error': str(e)})
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
