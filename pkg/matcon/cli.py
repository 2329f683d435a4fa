#
# Command line front end for matcon
#
#   matcon gen --family minimal --n 8 --r half
#   matcon check '{"family": "minimal", "n": 4, "r": 2}' --alg classical
#   matcon bench --family minimal --n 32,64,128 --r half --alg classical,quantum --out counts.csv
#   matcon distinguish --n 12 --r 6 -T 10 --trials 100000
#   matcon adversary --n 8 --r 4
#   matcon fit counts.csv
#
# Results go to standard output (or --out); log messages go to standard error.
#

import argparse
import json
import logging
import sys

import numpy as np

from . import conf, __version__
from .bench import (FAMILIES, ALGORITHMS, fit_bench_exponents, format_instance, make_bench_instance,
                    parse_instance, plot_scaling_svg, read_bench_csv, records_to_json, resolve_rank,
                    run_algorithm, run_bench, write_bench_csv)
from .families import RemovedBaseMatroid, base_count
from .lowerbound import REMOVALS, adversary_parameters, estimate_distinguisher, minimum_probes
from .matroid_core import MatroidInvariantError, mask_from_elements
from .quantum import GroverCostModel

_log = logging.getLogger('matcon')

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INVARIANT = 3


def _int_list(text):
    """ '32,64,128' -> [32, 64, 128]; the empty string is the empty list """
    try:
        return [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma separated list of integers, got {!r}".format(text))


def _name_list(choices):
    def parse(text):
        names = [item.strip() for item in text.split(',') if item.strip()]
        for name in names:
            if name not in choices:
                raise argparse.ArgumentTypeError("{0!r} is not one of {1}".format(name, ", ".join(choices)))
        return names
    return parse


def _add_grover_arguments(parser):
    group = parser.add_argument_group('quantum cost model')
    group.add_argument('--grover-c', type=int, default=None,
                       help="scale constant for both success and emptiness search costs "
                            "(default conf.grover_c_success / conf.grover_c_fail)")
    group.add_argument('--grover-mode', choices=GroverCostModel.MODES, default=None,
                       help="idealized searches never err; sampled ones may miss solutions")
    group.add_argument('--grover-search-space', choices=GroverCostModel.SEARCH_SPACES, default=None,
                       help="search the whole opposite side, or only its undiscovered vertices")
    group.add_argument('--repetitions', type=int, default=None,
                       help="error amplification factor of emptiness checks")


def _model_from_args(args):
    return GroverCostModel(c_success=args.grover_c, c_fail=args.grover_c, repetitions=args.repetitions,
                           mode=args.grover_mode, search_space=args.grover_search_space)


def _emit(text, out):
    if out is None or out == '-':
        sys.stdout.write(text + '\n')
    else:
        with open(out, 'w') as fh:
            fh.write(text + '\n')
        _log.info("Wrote {}".format(out))


def build_parser():
    parser = argparse.ArgumentParser(prog='matcon',
                                     description="Query complexity experiments on matroid connectivity.")
    parser.add_argument('--version', action='version', version='matcon {}'.format(__version__))
    parser.add_argument('--verbose', '-v', action='store_true', help="log at DEBUG level")
    subparsers = parser.add_subparsers(dest='command', required=True)

    gen = subparsers.add_parser('gen', help="write an instance document")
    gen.add_argument('--family', choices=FAMILIES, required=True)
    gen.add_argument('--n', type=int, required=True, help="ground set size (vertices of the cycle, for graphic)")
    gen.add_argument('--r', default='half', help="rank: an integer, 'half' or 'third'")
    gen.add_argument('--removed', type=_int_list, default=None,
                     help="removed base as 1-based elements, e.g. 1,2 (removed_base only; default E0)")
    gen.add_argument('--out', default=None)

    check = subparsers.add_parser('check', help="decide connectivity of one instance")
    check.add_argument('instance', help="instance document: a file, inline JSON text, or - for stdin")
    check.add_argument('--alg', choices=ALGORITHMS, default='classical')
    check.add_argument('--seed', type=int, default=None)
    check.add_argument('--out', default=None)
    _add_grover_arguments(check)

    bench = subparsers.add_parser('bench', help="measure query counts over a grid of n")
    bench.add_argument('--family', choices=FAMILIES, default='minimal')
    bench.add_argument('--n', type=_int_list, required=True, help="comma separated n grid")
    bench.add_argument('--r', default='half', help="rank: an integer, 'half' or 'third'")
    bench.add_argument('--alg', type=_name_list(ALGORITHMS), default=['classical', 'quantum'],
                       help="comma separated deciders (default classical,quantum)")
    bench.add_argument('--seed', type=int, default=None, help="first seed")
    bench.add_argument('--trials', type=int, default=1, help="number of seeds per cell")
    bench.add_argument('--out', default=None)
    bench.add_argument('--format', choices=('csv', 'json'), default='csv')
    bench.add_argument('--svg', default=None, help="also write a log-log plot of cost against n")
    bench.add_argument('--no-timing', action='store_true', help="write elapsed_ms as 0")
    _add_grover_arguments(bench)

    dist = subparsers.add_parser('distinguish', help="Monte Carlo run of the probe distinguisher")
    dist.add_argument('--n', type=int, required=True)
    dist.add_argument('--r', default='half')
    dist.add_argument('-T', '--probes', type=int, default=None,
                      help="number of probed bases (default: the fewest reaching success 2/3)")
    dist.add_argument('--trials', type=int, default=10000)
    dist.add_argument('--seed', type=int, default=None)
    dist.add_argument('--guess', choices=('connected', 'coin'), default='connected')
    dist.add_argument('--removals', choices=REMOVALS, default='all',
                      help="deleted bases to draw from: every base, or only those leaving a matroid")

    adv = subparsers.add_parser('adversary', help="adversary parameters of the minimal matroid relation")
    adv.add_argument('--n', type=int, required=True)
    adv.add_argument('--r', default='half')
    adv.add_argument('--removals', choices=REMOVALS, default='all')

    fit = subparsers.add_parser('fit', help="fit scaling exponents to a bench CSV")
    fit.add_argument('csv', help="bench CSV written by 'matcon bench'")
    fit.add_argument('--format', choices=('text', 'json'), default='text')
    return parser


###########################################################################
#
#    Subcommands
#

def cmd_gen(args):
    r = resolve_rank(args.r, args.n)
    if args.removed is not None:
        if args.family != 'removed_base':
            raise ValueError("--removed only applies to the removed_base family")
        M = RemovedBaseMatroid(args.n, r, mask_from_elements([x - 1 for x in args.removed]))
    else:
        M = make_bench_instance(args.family, args.n, r)
    _emit(format_instance(M), args.out)


def cmd_check(args):
    source = sys.stdin.read() if args.instance == '-' else args.instance
    M = parse_instance(source)
    seed = conf.default_seed if args.seed is None else args.seed
    verdict = run_algorithm(M, args.alg, _model_from_args(args), np.random.default_rng(seed))
    result = {'instance': M.describe(), 'seed': seed}
    result.update(verdict.to_dict())
    result['classical_queries'] = verdict.ledger.classical
    result['quantum_charged'] = verdict.ledger.quantum_charged
    _emit(json.dumps(result, indent=1), args.out)


def cmd_bench(args):
    if args.trials < 1:
        raise ValueError("--trials must be at least 1; got {}".format(args.trials))
    first = conf.default_seed if args.seed is None else args.seed
    seeds = range(first, first + args.trials)
    records = run_bench(args.family, args.n, args.r, args.alg, seeds, _model_from_args(args),
                        timing=not args.no_timing)
    if args.format == 'json':
        _emit(records_to_json(records), args.out)
    elif args.out is None or args.out == '-':
        write_bench_csv(records, sys.stdout)
    else:
        write_bench_csv(records, args.out)
    if args.svg:
        plot_scaling_svg(records, args.svg, title="{} family".format(args.family))


def cmd_distinguish(args):
    r = resolve_rank(args.r, args.n)
    T = minimum_probes(args.n, r) if args.probes is None else args.probes
    seed = conf.default_seed if args.seed is None else args.seed
    result = estimate_distinguisher(args.n, r, T, args.trials, seed=seed, guess=args.guess,
                                    removals=args.removals)
    _emit(json.dumps({'n': args.n, 'r': r, 'N': base_count(args.n, r), 'T': T, 'trials': result.trials,
                      'seed': seed, 'guess': args.guess, 'removals': args.removals,
                      'empirical_success': result.empirical, 'predicted': result.predicted,
                      'interval_95': list(result.interval)}, indent=1), None)


def cmd_adversary(args):
    r = resolve_rank(args.r, args.n)
    params = adversary_parameters(args.n, r, args.removals)
    result = dict(params._asdict())
    result.update({'n': args.n, 'r': r, 'removals': args.removals})
    _emit(json.dumps(result, indent=1), None)


def cmd_fit(args):
    exponents = fit_bench_exponents(read_bench_csv(args.csv))
    if args.format == 'json':
        _emit(json.dumps([{'family': family, 'algorithm': algorithm, 'slope': slope}
                          for (family, algorithm), slope in sorted(exponents.items())], indent=1), None)
    else:
        for (family, algorithm), slope in sorted(exponents.items()):
            _emit("{0:<16s} {1:<10s} {2:.4f}".format(family, algorithm, slope), None)


_COMMANDS = {'gen': cmd_gen, 'check': cmd_check, 'bench': cmd_bench, 'distinguish': cmd_distinguish,
             'adversary': cmd_adversary, 'fit': cmd_fit}


def main(argv=None):
    """ Entry point of the matcon command; returns the process exit status """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit:
        return EXIT_INVALID if exit.code else EXIT_OK

    level = 'DEBUG' if args.verbose else conf.default_logging_level
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO),
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)

    try:
        _COMMANDS[args.command](args)
    except MatroidInvariantError as err:
        _log.error("Internal invariant violated: {}".format(err))
        return EXIT_INVARIANT
    except (ValueError, OSError) as err:
        _log.error(str(err))
        return EXIT_INVALID
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
