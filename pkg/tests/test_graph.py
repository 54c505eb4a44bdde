import numpy as np
import pytest
import yaml

from opgraph import Q_
from opgraph.lib.exceptions import DomainError, ParameterError, RejectedInputError, StageError
from opgraph.models import (DUAN, GEOMETRIC, GraphExtraction, OperatorSystem, QuantumChannel, confusability_pairs,
                            depolarizing_channel, effect_basis, graph_via_dual_complementary, identity_channel,
                            operator_graph, qc_map, random_channel, random_system, synthesize_channel,
                            verify_round_trip, zero_error_distinguishable)
from opgraph.models import graph as graph_module

KET_0 = np.array([1, 0])
KET_1 = np.array([0, 1])
KET_PLUS = np.array([1, 1]) / np.sqrt(2)


def classical_channel(transition):
    """ Kraus operators sqrt(p(y|x)) |y><x| of a classical channel with transition[x][y] = p(y|x)."""
    transition = np.asarray(transition, dtype=float)
    inputs, outputs = transition.shape
    kraus = []
    for x in range(inputs):
        for y in range(outputs):
            if transition[x, y] > 0:
                V = np.zeros((outputs, inputs))
                V[y, x] = np.sqrt(transition[x, y])
                kraus.append(V)
    return QuantumChannel(kraus)


def test_identity_channel_graph_is_trivial():
    graph = operator_graph(identity_channel(3))
    assert isinstance(graph, GraphExtraction)
    assert graph.dim == graph.dim_real == 1
    assert graph.system.equals(OperatorSystem.scalars(3))


def test_depolarizing_channel_graph_is_everything():
    graph = operator_graph(depolarizing_channel(2))
    assert graph.dim == 4
    assert graph.system.equals(OperatorSystem.full(2))
    assert len(graph.raw_products) == 16


def test_two_routes_agree(rng):
    for _ in range(100):
        n, dim_out = (int(k) for k in rng.integers(2, 5, size=2))
        m = int(rng.integers(max(1, -(-n // dim_out)), 5))
        channel = random_channel(n, dim_out, m, seed=int(rng.integers(2 ** 31)))
        direct = operator_graph(channel)
        dual = graph_via_dual_complementary(channel)
        assert direct.system.equals(dual.system)
        assert direct.dim == dual.dim <= min(n * n, m * m)


def test_classical_channel_graph():
    # Inputs 0 and 1 share output 1; input 2 is received without error.
    channel = classical_channel([[0.5, 0.5, 0.0],
                                 [0.0, 1.0, 0.0],
                                 [0.0, 0.0, 1.0]])
    graph = operator_graph(channel)
    kets = list(np.eye(3))
    assert confusability_pairs(kets, graph) == [(0, 1)]
    assert zero_error_distinguishable(kets[0], kets[2], graph)
    assert not zero_error_distinguishable(kets[0], kets[1], graph.system)


def test_zero_error_distinguishability():
    trivial = operator_graph(identity_channel(2))
    assert zero_error_distinguishable(KET_0, KET_1, trivial)
    assert not zero_error_distinguishable(KET_0, KET_PLUS, trivial)
    assert confusability_pairs([KET_0, KET_1, KET_PLUS], trivial) == [(0, 2), (1, 2)]
    full = operator_graph(depolarizing_channel(2))
    assert not zero_error_distinguishable(KET_0, KET_1, full)
    with pytest.raises(DomainError):
        zero_error_distinguishable(np.array([1, 1]), KET_0, trivial)


@pytest.mark.parametrize('kind', [DUAN, GEOMETRIC])
def test_round_trip_on_sz(sz_system, kind):
    report = verify_round_trip(sz_system, kind)
    assert report.verdict
    assert report.failed_stage is None
    assert report.distance <= 1e-8
    assert report.graph_dim == report.system_dim == 2
    assert report.channel_checks['kraus_orthogonality_residual'] <= 1e-8
    assert set(report.elapsed) == {'effect_basis', 'synthesis', 'extraction', 'comparison'}
    assert report.total_elapsed.dimensionality == Q_(1, 's').dimensionality


def test_round_trip_on_scalars():
    report = verify_round_trip(OperatorSystem.scalars(2))
    assert report.verdict
    assert report.system_dim == report.graph_dim == 1


@pytest.mark.parametrize('kind', [DUAN, GEOMETRIC])
@pytest.mark.parametrize('dim_h', [2, 3, 4])
def test_round_trip_on_random_systems(kind, dim_h):
    rng = np.random.default_rng(100 + dim_h)
    for _ in range(10):
        dim_s = int(rng.integers(1, dim_h ** 2 + 1))
        system = random_system(dim_h, dim_s, seed=int(rng.integers(2 ** 31)))
        report = verify_round_trip(system, kind)
        assert report.verdict, str(report)
        assert report.distance <= 1e-8


def test_report_summary_is_plain(sz_system):
    report = verify_round_trip(sz_system, GEOMETRIC)
    summary = report.to_dict()
    assert summary['verdict'] is True
    assert summary['effect_checks']['geometric_bounds'] is True
    assert yaml.safe_load(yaml.safe_dump(summary)) == summary
    text = str(report)
    assert 'verdict: True' in text
    assert 'geometric' in text


def test_round_trip_rejects_unknown_kind(sz_system):
    with pytest.raises(ParameterError):
        verify_round_trip(sz_system, 'spectral')


def test_failing_stage_is_named(sz_system, monkeypatch):
    def broken(basis):
        raise RejectedInputError('broken synthesis')

    monkeypatch.setattr(graph_module, 'synthesize_channel', broken)
    with pytest.raises(StageError) as info:
        verify_round_trip(sz_system)
    assert info.value.stage == 'synthesis'


def test_dual_complementary_on_diagonals_is_the_qc_map():
    system = random_system(3, 4, seed=17)
    basis = effect_basis(system, DUAN)
    channel = synthesize_channel(basis)
    d = len(basis)
    B = np.diag(np.arange(1, d + 1, dtype=float))
    assert np.abs(channel.dual_complementary_apply(B) - qc_map(basis, B)).max() < 1e-12


@pytest.mark.parametrize('dim_h', [2, 3])
def test_round_trip_on_full_systems(dim_h):
    report = verify_round_trip(OperatorSystem.full(dim_h), GEOMETRIC)
    assert report.verdict
    assert report.graph_dim == dim_h ** 2


def test_graph_contains_its_products_and_is_symmetric(rng):
    channel = random_channel(3, 3, 2, seed=4)
    graph = operator_graph(channel)
    assert graph.dim <= 4
    assert graph.system.contains(np.eye(3))
    assert all(graph.system.contains(P) for P in graph.raw_products)
    partial = OperatorSystem.from_generators(3, graph.raw_products[:2])
    assert all(graph.system.contains(B) for B in partial.herm_basis)
    for _ in range(10):
        phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        phi, psi = phi / np.linalg.norm(phi), psi / np.linalg.norm(psi)
        assert zero_error_distinguishable(phi, psi, graph) == zero_error_distinguishable(psi, phi, graph)


def test_dephasing_graph_keeps_the_computational_basis_apart(sz_system):
    assert zero_error_distinguishable(KET_0, KET_1, sz_system)
    assert not zero_error_distinguishable(KET_PLUS, KET_0, sz_system)


def random_unitary(n, seed):
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def test_rotated_dephasing_graph_ignores_rounding_noise():
    n = 3
    U = random_unitary(n, 1)
    kraus = [U @ np.diag(np.eye(n)[k]) @ U.conj().T for k in range(n)]
    channel = QuantumChannel(kraus)
    expected = OperatorSystem.from_generators(n, kraus)
    assert expected.dim == n
    for graph in (operator_graph(channel), graph_via_dual_complementary(channel)):
        assert graph.dim == n
        assert graph.system.equals(expected)


@pytest.mark.parametrize('blocks', [(1, 3), (2, 2), (1, 1, 2)])
def test_orthogonal_projectors_in_a_random_basis(blocks):
    n = sum(blocks)
    U = random_unitary(n, n + len(blocks))
    edges = np.cumsum((0,) + blocks)
    projectors = []
    for start, stop in zip(edges[:-1], edges[1:]):
        diagonal = np.zeros(n)
        diagonal[start:stop] = 1
        projectors.append(U @ np.diag(diagonal) @ U.conj().T)
    channel = QuantumChannel(projectors)
    expected = OperatorSystem.from_generators(n, projectors)
    assert expected.dim == len(blocks)
    for graph in (operator_graph(channel), graph_via_dual_complementary(channel)):
        assert graph.dim == len(blocks)
        assert graph.system.equals(expected)


def test_failed_comparison_is_logged_as_exceeding(sz_system, monkeypatch, caplog):
    full = OperatorSystem.full(2)
    monkeypatch.setattr(graph_module, 'operator_graph', lambda channel: GraphExtraction(full, []))
    report = verify_round_trip(sz_system)
    assert not report.verdict
    assert report.distance == pytest.approx(np.sqrt(2))
    assert 'exceeds the tolerance' in caplog.text
    assert 'close to the tolerance' not in caplog.text
