import os
from glob import glob

import numpy as np
import pytest
import yaml

from opgraph.config import Config
from opgraph.lib.exceptions import FormatParseError, ParameterError, ValidationError
from opgraph.matrix_file import dump, emit, load, parse, to_document
from opgraph.models import (GEOMETRIC, EffectBasis, OperatorSystem, QuantumChannel, effect_basis, random_channel,
                            random_system)

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')
GOOD_FIXTURES = sorted(f for f in glob(os.path.join(FIXTURES, '*.yml')) if not os.path.basename(f).startswith('bad_'))


def entry(M):
    M = np.asarray(M, dtype=complex)
    return {'re': M.real.tolist(), 'im': M.imag.tolist()}


def document(kind, **fields):
    doc = {'format': 'opgraph', 'version': '1.0', 'kind': kind}
    doc.update(fields)
    return yaml.safe_dump(doc)


def test_emit_identity_matrix():
    doc = yaml.safe_load(emit(np.eye(2)))
    assert doc['kind'] == 'matrix'
    assert doc['format'] == 'opgraph'
    assert doc['version'] == '1.0'
    assert (doc['rows'], doc['cols']) == (2, 2)
    assert doc['re'] == [[1.0, 0.0], [0.0, 1.0]]
    assert doc['im'] == [[0.0, 0.0], [0.0, 0.0]]


def test_emit_is_deterministic():
    channel = random_channel(2, 3, 2, seed=1)
    assert emit(channel) == emit(channel)
    text = emit(channel)
    assert text.index('dim_in') < text.index('dim_out') < text.index('kraus') < text.index('version')


def test_emitted_objects_read_back_exactly(rng):
    for k in range(100):
        seed = int(rng.integers(2 ** 31))
        channel = random_channel(3, 2, 3, seed=seed)
        loaded = parse(emit(channel))
        assert isinstance(loaded, QuantumChannel)
        assert np.abs(loaded.stack - channel.stack).max() <= Config.Tolerance.serialization

        system = random_system(3, 1 + k % 9, seed=seed)
        loaded = parse(emit(system))
        assert isinstance(loaded, OperatorSystem)
        assert loaded.dim == system.dim
        errors = [np.abs(A - B).max() for A, B in zip(loaded.herm_basis, system.herm_basis)]
        assert max(errors) <= Config.Tolerance.serialization

        basis = effect_basis(system, GEOMETRIC)
        loaded = parse(emit(basis))
        assert isinstance(loaded, EffectBasis)
        assert loaded.kind == GEOMETRIC
        assert max(np.abs(A - B).max() for A, B in zip(loaded.effects, basis.effects)) <= Config.Tolerance.serialization

        M = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
        assert np.abs(parse(emit(M)) - M).max() <= Config.Tolerance.serialization


def test_to_document_rejects_other_objects():
    with pytest.raises(ParameterError):
        to_document([1, 2])
    with pytest.raises(ParameterError):
        to_document(np.zeros(3))


def test_dump_and_load(tmp_path, sz_system):
    filename = str(tmp_path / 'system.yml')
    dump(sz_system, filename)
    assert load(filename).equals(sz_system)


@pytest.mark.parametrize('filename', GOOD_FIXTURES, ids=os.path.basename)
def test_fixtures_load(filename):
    load(filename)


def test_fixture_contents(paulis):
    assert load(os.path.join(FIXTURES, 'scalar_system.yml')).dim == 1
    assert np.array_equal(load(os.path.join(FIXTURES, 'pauli_y.yml')), paulis['y'])
    effects = load(os.path.join(FIXTURES, 'sz_duan_effects.yml'))
    assert np.abs(effects[0] - np.diag([1 / 2, 5 / 6])).max() < 1e-15


def test_non_square_matrix_is_a_parse_error():
    with pytest.raises(FormatParseError) as info:
        load(os.path.join(FIXTURES, 'bad_nonsquare_system.yml'))
    assert info.value.field == 'basis[0]'
    assert info.value.line == 1


def test_trace_preservation_is_checked_on_load():
    with pytest.raises(ValidationError) as info:
        load(os.path.join(FIXTURES, 'bad_tp_channel.yml'))
    assert info.value.invariant == 'trace preservation'


def test_load_tolerance_is_looser_than_construction():
    V = np.diag([1, np.sqrt(1 - 1e-7)])
    channel = parse(document('channel', dim_in=2, dim_out=2, kraus=[entry(V)]))
    assert not channel.is_trace_preserving()


def test_bad_field_is_located():
    text = "format: opgraph\nversion: '1.0'\nkind: channel\ndim_in: two\ndim_out: 2\n"
    with pytest.raises(FormatParseError) as info:
        parse(text)
    assert info.value.field == 'dim_in'
    assert info.value.line == 4
    assert 'line 4' in str(info.value)


@pytest.mark.parametrize('text', [
    'kind: [unclosed',
    '- 1\n- 2\n',
    "format: other\nversion: '1.0'\nkind: matrix\n",
    "format: opgraph\nversion: '2.0'\nkind: matrix\n",
    "format: opgraph\nversion: '1.0'\nkind: graph\n",
    "format: opgraph\nversion: '1.0'\nkind: channel\ndim_in: 2\n",
    "format: opgraph\nversion: '1.0'\nkind: channel\ndim_in: 2\ndim_out: 2\nkraus: []\n",
])
def test_malformed_documents(text):
    with pytest.raises(FormatParseError):
        parse(text)


def test_ragged_rows_are_a_parse_error():
    text = document('matrix', rows=2, cols=2, re=[[1.0, 0.0], [0.0]], im=[[0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(FormatParseError):
        parse(text)


def test_declared_dimension_has_to_match():
    text = document('operator_system', dim_h=2, dim=2, basis=[entry(np.eye(2) / np.sqrt(2))])
    with pytest.raises(FormatParseError) as info:
        parse(text)
    assert info.value.field == 'dim'


def test_invalid_system_names_the_invariant():
    text = document('operator_system', dim_h=2, dim=1, basis=[entry(np.eye(2))])
    with pytest.raises(ValidationError) as info:
        parse(text)
    assert info.value.invariant == 'orthonormality'


def test_invalid_effect_basis_names_the_invariant():
    text = document('effect_basis', dim_h=2, construction='duan',
                    effects=[entry(np.diag([1.2, 0.0])), entry(np.diag([-0.2, 1.0]))])
    with pytest.raises(ValidationError) as info:
        parse(text)
    assert info.value.invariant == 'positivity'


def test_non_finite_entries_are_rejected():
    text = document('matrix', rows=1, cols=1, re=[[float('nan')]], im=[[0.0]])
    with pytest.raises(ValidationError) as info:
        parse(text)
    assert info.value.invariant == 'finite entries'
