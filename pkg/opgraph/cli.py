# -*- coding: utf-8 -*-
"""
    cli
    ===
    Command line interface. Every subcommand reads and writes the text format of :mod:`opgraph.matrix_file`::

        opgraph random-system --dim-h 3 --dim-s 4 --seed 7 -o system.yml
        opgraph synthesize system.yml --kind geometric -o channel.yml
        opgraph extract channel.yml -o graph.yml
        opgraph verify system.yml --kind duan
        opgraph info channel.yml --strict
        opgraph suite suite.yml --processes 4

    Exit codes: 0 on success, 1 when a verification fails, 2 for usage errors and for files that cannot be read,
    parsed or validated. Diagnostics go to the error stream; results go to the output stream unless written to a file.
"""
import argparse
import logging
import sys

import numpy as np
import yaml

from . import __version__
from .config import Config
from .experiment.round_trip import RoundTripSuite
from .lib.exceptions import OpGraphException, StageError
from .lib.general_functions import start_logger, stop_logger
from .lib.numerics import is_hermitian
from .matrix_file import dump, emit, load
from .models.channel import QuantumChannel, random_channel, synthesize_channel
from .models.graph import graph_via_dual_complementary, operator_graph, verify_round_trip
from .models.operator_system import KINDS, DUAN, EffectBasis, OperatorSystem, effect_basis, failed_checks, \
    random_system

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

ROUTES = ('products', 'dual-complementary')


class UsageError(OpGraphException):
    pass


def _load(filename, expected):
    obj = load(filename)
    if not isinstance(obj, expected):
        raise UsageError('{} holds a {}, expected a {}'.format(filename, type(obj).__name__, expected.__name__))
    return obj


def _output(obj, filename):
    if filename is None:
        sys.stdout.write(emit(obj))
    else:
        dump(obj, filename)


def _summary(data):
    return yaml.safe_dump(data, sort_keys=True, default_flow_style=False)


def _synthesize(args):
    system = _load(args.system_file, OperatorSystem)
    basis = effect_basis(system, args.kind)
    if args.effects is not None:
        dump(basis, args.effects)
    _output(synthesize_channel(basis), args.output)
    return EXIT_OK


def _extract(args):
    channel = _load(args.channel_file, QuantumChannel)
    if args.route == 'products':
        graph = operator_graph(channel)
    else:
        graph = graph_via_dual_complementary(channel)
    logger.info('Operator graph of dimension {} from {} Kraus operators'.format(graph.dim, channel.kraus_count))
    _output(graph.system, args.output)
    return EXIT_OK


def _verify(args):
    system = _load(args.system_file, OperatorSystem)
    try:
        report = verify_round_trip(system, args.kind)
    except StageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_FAILED
    if not args.summary_only:
        print(report)
        print('---')
    sys.stdout.write(_summary(report.to_dict()))
    return EXIT_OK if report.verdict else EXIT_FAILED


def _random_system(args):
    _output(random_system(args.dim_h, args.dim_s, args.seed), args.output)
    return EXIT_OK


def _random_channel(args):
    _output(random_channel(args.dim_in, args.dim_out, args.kraus, args.seed), args.output)
    return EXIT_OK


def _plain(checks):
    return {name: bool(value) if isinstance(value, (bool, np.bool_)) else value for name, value in checks.items()}


def _info(args):
    obj = load(args.file)
    if isinstance(obj, OperatorSystem):
        info = {'kind': 'operator_system', 'dim_h': obj.dim_h, 'dim': obj.dim_complex, 'dim_real': obj.dim_real,
                'checks': {'invariants': not OperatorSystem.check_invariants(obj.dim_h, obj.herm_basis)}}
    elif isinstance(obj, EffectBasis):
        checks = obj.check()
        info = {'kind': 'effect_basis', 'dim_h': obj.dim_h, 'size': len(obj), 'construction': obj.kind,
                'checks': _plain(checks)}
    elif isinstance(obj, QuantumChannel):
        residual = obj.trace_residual()
        info = {'kind': 'channel', 'dim_in': obj.dim_in, 'dim_out': obj.dim_out, 'kraus_count': obj.kraus_count,
                'checks': {'trace_residual': residual,
                           'trace_preserving': bool(obj.is_trace_preserving()),
                           'completely_positive': bool(obj.is_completely_positive())}}
    else:
        info = {'kind': 'matrix', 'rows': obj.shape[0], 'cols': obj.shape[1],
                'checks': {'hermitian': bool(obj.shape[0] == obj.shape[1] and is_hermitian(obj))}}
    sys.stdout.write(_summary(info))
    failed = failed_checks(info['checks'])
    if args.strict and failed:
        print('Strict checks failed: {}'.format(', '.join(failed)), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def _suite(args):
    if args.config is None:
        suite = RoundTripSuite()
    else:
        suite = RoundTripSuite.from_file(args.config)
    if args.processes is not None:
        suite.settings['processes'] = args.processes
        suite.validate()
    result = suite.run()
    if not args.summary_only:
        print(result)
        print('---')
    sys.stdout.write(_summary(result.to_dict()))
    return EXIT_OK if result.verdict else EXIT_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog='opgraph',
        description='Operator systems, the channels that realize them as operator graphs, and the round trip between '
                    'the two.')
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Show info messages, twice for debug messages')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    p = subparsers.add_parser('synthesize', help='Channel whose operator graph is the given system')
    p.add_argument('system_file')
    p.add_argument('--kind', choices=KINDS, default=DUAN)
    p.add_argument('--effects', metavar='FILE', help='Also write the effect basis to this file')
    p.add_argument('-o', '--output', metavar='FILE')
    p.set_defaults(func=_synthesize)

    p = subparsers.add_parser('extract', help='Operator graph of a channel')
    p.add_argument('channel_file')
    p.add_argument('--route', choices=ROUTES, default='products',
                   help='Kraus products V_n* V_m, or images of the dual complementary channel')
    p.add_argument('-o', '--output', metavar='FILE')
    p.set_defaults(func=_extract)

    p = subparsers.add_parser('verify', help='Round trip system -> effects -> channel -> operator graph')
    p.add_argument('system_file')
    p.add_argument('--kind', choices=KINDS, default=DUAN)
    p.add_argument('--summary-only', action='store_true', help='Print only the YAML summary')
    p.set_defaults(func=_verify)

    p = subparsers.add_parser('random-system', help='Random operator system of a given dimension')
    p.add_argument('--dim-h', type=int, required=True)
    p.add_argument('--dim-s', type=int, required=True)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('-o', '--output', metavar='FILE')
    p.set_defaults(func=_random_system)

    p = subparsers.add_parser('random-channel', help='Random channel from a Gaussian isometry')
    p.add_argument('--dim-in', type=int, required=True)
    p.add_argument('--dim-out', type=int, required=True)
    p.add_argument('--kraus', type=int, required=True)
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('-o', '--output', metavar='FILE')
    p.set_defaults(func=_random_channel)

    p = subparsers.add_parser('info', help='Dimensions, kind and invariant checks of a file')
    p.add_argument('file')
    p.add_argument('--strict', action='store_true',
                   help='Exit with 1 if a check fails; channels are checked at {:g} n'.format(
                       Config.Tolerance.trace_preservation))
    p.set_defaults(func=_info)

    p = subparsers.add_parser('suite', help='Round trip on batches of random systems')
    p.add_argument('config', nargs='?', help='YAML file with a suite mapping')
    p.add_argument('--processes', type=int)
    p.add_argument('--summary-only', action='store_true', help='Print only the YAML summary')
    p.set_defaults(func=_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    start_logger(args.verbose)
    try:
        return args.func(args)
    except (OpGraphException, OSError) as e:
        print('opgraph: error: {}'.format(e), file=sys.stderr)
        return EXIT_ERROR
    finally:
        stop_logger()


if __name__ == '__main__':
    sys.exit(main())
