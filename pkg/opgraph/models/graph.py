# -*- coding: utf-8 -*-
"""
    graph
    =====
    Operator graphs of channels. The operator graph of a channel is the image of the dual of its complementary
    channel. For Kraus operators {V_k} it is span{V_n* V_m}, an operator system that plays the role of the
    confusability graph of a classical channel: two pure inputs can be told apart with certainty after the channel
    exactly when no element of the graph connects them.

    The module extracts graphs by two routes (the Kraus products directly, and the images of the matrix units under
    the dual complementary channel), checks the round trip system -> effect basis -> channel -> graph, and evaluates
    zero-error distinguishability.
"""
import logging
import time

import numpy as np

from .. import Q_
from ..config import Config
from ..lib.exceptions import OpGraphException, ParameterError, StageError
from ..lib.numerics import as_unit_vector, frobenius_norm
from .channel import synthesize_channel
from .operator_system import OperatorSystem, DUAN, KINDS, effect_basis, failed_checks

logger = logging.getLogger(__name__)

STAGES = ('effect_basis', 'synthesis', 'extraction', 'comparison')


class GraphExtraction(object):
    """ Operator graph of a channel together with the matrices it was generated from."""
    def __init__(self, system, raw_products):
        self._system = system
        self._raw_products = tuple(raw_products)

    @property
    def system(self):
        return self._system

    @property
    def raw_products(self):
        return self._raw_products

    @property
    def dim(self):
        """ Dimension of the graph over the complex numbers."""
        return self._system.dim_complex

    @property
    def dim_real(self):
        return self._system.dim_real

    def __repr__(self):
        return 'GraphExtraction(dim_h={}, dim={}, products={})'.format(
            self._system.dim_h, self.dim, len(self._raw_products))


def operator_graph(channel):
    """ span{V_n* V_m : 1 <= n, m <= kraus_count}

    :param QuantumChannel channel:
    :return: :class:`GraphExtraction` with the m^2 products, ordered by n and then m.
    """
    products = channel.kraus_products()
    m = channel.kraus_count
    raw = [products[i, j] for i in range(m) for j in range(m)]
    system = OperatorSystem.from_generators(channel.dim_in, raw)
    logger.debug('Operator graph of {} has dimension {}'.format(channel, system.dim))
    return GraphExtraction(system, raw)


def graph_via_dual_complementary(channel):
    """ Image of the dual complementary channel, spanned by the images of the matrix units |i><j| of the environment.

    :param QuantumChannel channel:
    :return: :class:`GraphExtraction` with the m^2 images.
    """
    m = channel.kraus_count
    images = []
    for i in range(m):
        for j in range(m):
            unit = np.zeros((m, m), dtype=complex)
            unit[i, j] = 1
            images.append(channel.dual_complementary_apply(unit))
    return GraphExtraction(OperatorSystem.from_generators(channel.dim_in, images), images)


def zero_error_distinguishable(phi, psi, graph):
    """ Whether the pure inputs phi and psi can be distinguished with certainty after a channel with this graph, i.e.
    whether <phi|E|psi> = 0 for every E in the graph.

    :param phi: unit vector of dimension n.
    :param psi: unit vector of dimension n.
    :param graph: :class:`OperatorSystem` or :class:`GraphExtraction`.
    """
    system = graph.system if isinstance(graph, GraphExtraction) else graph
    phi = as_unit_vector(phi, system.dim_h, 'first vector')
    psi = as_unit_vector(psi, system.dim_h, 'second vector')
    bra = phi.conj().T
    tolerance = Config.Tolerance.distinguishability
    return all(abs((bra @ E @ psi)[0, 0]) <= tolerance for E in system.herm_basis)


def confusability_pairs(vectors, graph):
    """ Pairs (i, j), i < j, of input vectors that can be confused after a channel with this graph.

    :param vectors: list of unit vectors.
    :param graph: :class:`OperatorSystem` or :class:`GraphExtraction`.
    """
    pairs = []
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if not zero_error_distinguishable(vectors[i], vectors[j], graph):
                pairs.append((i, j))
    return pairs


def kraus_orthogonality_residual(channel, basis):
    """ max_{k,l} ||V_k* V_l - delta_kl A_k||_F / max(1, ||A_k||_F) for a channel synthesized from ``basis``."""
    products = channel.kraus_products()
    worst = 0.0
    for k, A in enumerate(basis.effects):
        reference = max(1.0, frobenius_norm(A))
        for l in range(len(basis)):
            target = A if k == l else 0
            worst = max(worst, frobenius_norm(products[k, l] - target) / reference)
    return worst


class RoundTripReport(object):
    """ Outcome of :func:`verify_round_trip`.

    The verdict is true only when the effect basis passes every check, the channel is trace preserving, completely
    positive and has orthogonal Kraus operators, and its operator graph equals the original system.
    """
    def __init__(self, kind, system):
        self.kind = kind
        self.dim_h = system.dim_h
        self.system_dim = system.dim_complex
        self.system_dim_real = system.dim_real
        self.effect_checks = {}
        self.channel_checks = {}
        self.graph_dim = None
        self.graph_dim_real = None
        self.distance = None
        self.equal = False
        self.failed_stage = None
        self.elapsed = {}

    @property
    def verdict(self):
        if self.failed_stage is not None:
            return False
        channel_ok = all(self.channel_checks.get(name) for name in
                         ('trace_preserving', 'completely_positive', 'kraus_orthogonality'))
        return not failed_checks(self.effect_checks) and channel_ok and self.equal

    @property
    def total_elapsed(self):
        return sum(self.elapsed.values(), Q_(0, 's'))

    def to_dict(self):
        """ Machine-readable summary made of plain Python types."""
        return {
            'kind': self.kind,
            'dim_h': self.dim_h,
            'system_dim': self.system_dim,
            'system_dim_real': self.system_dim_real,
            'effect_checks': {k: _plain(v) for k, v in self.effect_checks.items()},
            'channel_checks': {k: _plain(v) for k, v in self.channel_checks.items()},
            'graph_dim': self.graph_dim,
            'graph_dim_real': self.graph_dim_real,
            'distance': _plain(self.distance),
            'equal': bool(self.equal),
            'failed_stage': self.failed_stage,
            'elapsed_s': {k: float(v.m_as('s')) for k, v in self.elapsed.items()},
            'verdict': bool(self.verdict),
        }

    def __str__(self):
        lines = ['Round trip ({}) on C^{}'.format(self.kind, self.dim_h),
                 '  system dimension: {} (real {})'.format(self.system_dim, self.system_dim_real)]
        lines.append('  effect basis:')
        for name, value in self.effect_checks.items():
            lines.append('    {}: {}'.format(name, value))
        lines.append('  channel:')
        for name, value in self.channel_checks.items():
            lines.append('    {}: {}'.format(name, value))
        if self.graph_dim is not None:
            lines.append('  graph dimension: {} (real {})'.format(self.graph_dim, self.graph_dim_real))
        if self.distance is not None:
            lines.append('  projector distance: {:.3e}'.format(self.distance))
        if self.failed_stage is not None:
            lines.append('  failed stage: {}'.format(self.failed_stage))
        lines.append('  elapsed: {:~}'.format(self.total_elapsed))
        lines.append('  verdict: {}'.format(self.verdict))
        return '\n'.join(lines)


def _plain(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _run_stage(report, stage, function, *args):
    start = time.perf_counter()
    try:
        return function(*args)
    except OpGraphException as e:
        report.failed_stage = stage
        err_str = 'Round trip stage {} failed: {}'.format(stage, e)
        logger.error(err_str)
        raise StageError(stage, err_str) from e
    finally:
        report.elapsed[stage] = Q_(time.perf_counter() - start, 's')


def verify_round_trip(system, kind=DUAN):
    """ Builds an effect basis of the system, synthesizes the channel and extracts its operator graph, checking every
    step.

    Failed checks end in a report with a false verdict; exceptions raised by a stage are re-raised as
    :class:`~opgraph.lib.exceptions.StageError` carrying the name of the stage.

    :param OperatorSystem system:
    :param str kind: ``'duan'`` or ``'geometric'``.
    :return: :class:`RoundTripReport`
    """
    if kind not in KINDS:
        err_str = 'Effect basis kind has to be one of {}, got {}'.format(KINDS, kind)
        logger.error(err_str)
        raise ParameterError(err_str)
    report = RoundTripReport(kind, system)

    def build_effects():
        basis = effect_basis(system, kind)
        report.effect_checks = basis.check(system)
        return basis

    basis = _run_stage(report, 'effect_basis', build_effects)
    if failed_checks(report.effect_checks):
        report.failed_stage = 'effect_basis'
        logger.warning('Effect basis failed: {}'.format(', '.join(failed_checks(report.effect_checks))))
        return report

    def synthesize():
        channel = synthesize_channel(basis)
        residual = kraus_orthogonality_residual(channel, basis)
        report.channel_checks = {
            'trace_preserving': channel.is_trace_preserving(),
            'trace_residual': channel.trace_residual(),
            'completely_positive': channel.is_completely_positive(),
            'kraus_orthogonality': residual <= Config.Tolerance.kraus_orthogonality,
            'kraus_orthogonality_residual': residual,
        }
        return channel

    channel = _run_stage(report, 'synthesis', synthesize)
    graph = _run_stage(report, 'extraction', operator_graph, channel)
    report.graph_dim = graph.dim
    report.graph_dim_real = graph.dim_real

    def compare():
        report.distance = graph.system.distance(system)
        report.equal = report.distance <= Config.Tolerance.equality

    _run_stage(report, 'comparison', compare)
    if not report.equal:
        logger.warning('Projector distance {:.3e} exceeds the tolerance {:g}'.format(
            report.distance, Config.Tolerance.equality))
    elif report.distance > Config.Tolerance.equality / 10:
        logger.warning('Projector distance {:.3e} is close to the tolerance'.format(report.distance))
    logger.info('Round trip ({}) on a system of dimension {}: verdict {}'.format(kind, system.dim, report.verdict))
    return report
