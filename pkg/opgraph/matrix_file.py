# -*- coding: utf-8 -*-
"""
    matrix_file
    ===========
    Text format for matrices, operator systems, effect bases and channels.

    Documents are YAML mappings written with sorted keys. Every document carries ``format``, ``version`` and ``kind``;
    complex matrices are stored as a mapping with the real and the imaginary parts as row-major nested lists::

        dim_in: 2
        dim_out: 2
        format: opgraph
        kind: channel
        kraus:
        - im:
          - [0.0, 0.0]
          - [0.0, 0.0]
          re:
          - [1.0, 0.0]
          - [0.0, 1.0]
        version: '1.0'

    Floats are written in the shortest form that reads back to the same double, so a document read back reproduces
    the object exactly.

    Structural invariants are checked when reading. Channels are accepted when ||sum V_k* V_k - I||_F is within
    ``Config.Tolerance.load_trace_preservation`` times the input dimension, which is looser than the tolerance used
    when channels are built in memory, so that files written with fewer digits by other programs still load.
"""
import logging

import numpy as np
import yaml

from .config import Config
from .lib.exceptions import FormatParseError, OpGraphException, ParameterError, ValidationError
from .lib.general_functions import read_text, write_text
from .models.channel import QuantumChannel, trace_preservation_residual
from .models.operator_system import EffectBasis, OperatorSystem, KINDS, failed_checks

logger = logging.getLogger(__name__)

MATRIX = 'matrix'
OPERATOR_SYSTEM = 'operator_system'
EFFECT_BASIS = 'effect_basis'
CHANNEL = 'channel'
DOCUMENT_KINDS = (MATRIX, OPERATOR_SYSTEM, EFFECT_BASIS, CHANNEL)


def _entry(M):
    M = np.asarray(M, dtype=complex)
    return {'re': M.real.tolist(), 'im': M.imag.tolist()}


def _header(kind):
    return {'format': Config.Format.name, 'version': Config.Format.version, 'kind': kind}


def to_document(obj):
    """ Dictionary of plain Python types describing a matrix, an operator system, an effect basis or a channel."""
    if isinstance(obj, OperatorSystem):
        doc = _header(OPERATOR_SYSTEM)
        doc.update({'dim_h': obj.dim_h, 'dim': obj.dim, 'basis': [_entry(B) for B in obj.herm_basis]})
    elif isinstance(obj, EffectBasis):
        doc = _header(EFFECT_BASIS)
        doc.update({'dim_h': obj.dim_h, 'construction': obj.kind, 'effects': [_entry(A) for A in obj.effects]})
    elif isinstance(obj, QuantumChannel):
        doc = _header(CHANNEL)
        doc.update({'dim_in': obj.dim_in, 'dim_out': obj.dim_out, 'kraus': [_entry(V) for V in obj.kraus]})
    elif isinstance(obj, np.ndarray) and obj.ndim == 2:
        doc = _header(MATRIX)
        doc.update({'rows': obj.shape[0], 'cols': obj.shape[1]})
        doc.update(_entry(obj))
    else:
        err_str = 'Cannot write objects of type {}'.format(type(obj).__name__)
        logger.error(err_str)
        raise ParameterError(err_str)
    return doc


def emit(obj):
    """ Canonical text of an object. Two calls on the same object give identical text.

    :param obj: :class:`numpy.ndarray` (2D), :class:`OperatorSystem`, :class:`EffectBasis` or :class:`QuantumChannel`.
    :return: str
    """
    return yaml.safe_dump(to_document(obj), sort_keys=True, default_flow_style=None)


def _key_lines(text):
    """ Line number of every top-level key, used to point at the location of a bad field."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {key.value: key.start_mark.line + 1 for key, _ in node.value}


class _Reader(object):
    def __init__(self, doc, lines):
        self.doc = doc
        self.lines = lines

    def fail(self, message, field):
        top = field.split('[')[0].split('.')[0]
        error = FormatParseError(message, field=field, line=self.lines.get(top))
        logger.error(str(error))
        raise error

    def get(self, key, kind):
        if key not in self.doc:
            self.fail('Missing field', key)
        value = self.doc[key]
        if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
            self.fail('Expected an integer, got {!r}'.format(value), key)
        if kind is int and value < 1:
            self.fail('Expected a positive integer, got {}'.format(value), key)
        if kind is not int and not isinstance(value, kind):
            expected = ' or '.join(k.__name__ for k in (kind if isinstance(kind, tuple) else (kind,)))
            self.fail('Expected {}, got {}'.format(expected, type(value).__name__), key)
        return value

    def matrix(self, entry, field, shape=None):
        if not isinstance(entry, dict) or 're' not in entry or 'im' not in entry:
            self.fail('Expected a mapping with re and im', field)
        try:
            re = np.array(entry['re'], dtype=float)
            im = np.array(entry['im'], dtype=float)
        except (TypeError, ValueError) as e:
            self.fail('Entries are not a rectangular array of numbers: {}'.format(e), field)
        if re.ndim != 2 or re.shape != im.shape or 0 in re.shape:
            self.fail('re and im have to be non-empty matrices of the same shape, got {} and {}'.format(
                re.shape, im.shape), field)
        if shape is not None and re.shape != tuple(shape):
            self.fail('Expected a {}x{} matrix, got {}x{}'.format(shape[0], shape[1], *re.shape), field)
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            error = ValidationError('entries of {} are not finite'.format(field), 'finite entries')
            logger.error(str(error))
            raise error
        return re + 1j * im

    def matrices(self, key, shape):
        entries = self.get(key, list)
        if not entries:
            self.fail('Expected at least one matrix', key)
        return [self.matrix(entry, '{}[{}]'.format(key, i), shape) for i, entry in enumerate(entries)]


def parse(text):
    """ Reads a document written by :func:`emit` or by hand.

    :param str text: the document.
    :return: :class:`numpy.ndarray`, :class:`OperatorSystem`, :class:`EffectBasis` or :class:`QuantumChannel`.
    :raises FormatParseError: if the text is not a well formed document.
    :raises ValidationError: if the object breaks one of its invariants.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        error = FormatParseError('Malformed YAML: {}'.format(getattr(e, 'problem', e)),
                                 line=mark.line + 1 if mark is not None else None)
        logger.error(str(error))
        raise error
    if not isinstance(doc, dict):
        error = FormatParseError('The document has to be a mapping')
        logger.error(str(error))
        raise error

    reader = _Reader(doc, _key_lines(text))
    if reader.get('format', str) != Config.Format.name:
        reader.fail('Unknown format {!r}'.format(doc['format']), 'format')
    version = str(reader.get('version', (str, float)))
    if version.split('.')[0] != Config.Format.version.split('.')[0]:
        reader.fail('Unsupported version {}'.format(version), 'version')
    kind = reader.get('kind', str)

    if kind == MATRIX:
        rows, cols = reader.get('rows', int), reader.get('cols', int)
        return reader.matrix(doc, 're', (rows, cols))
    elif kind == OPERATOR_SYSTEM:
        return _parse_operator_system(reader)
    elif kind == EFFECT_BASIS:
        return _parse_effect_basis(reader)
    elif kind == CHANNEL:
        return _parse_channel(reader)
    reader.fail('Unknown kind {!r}, expected one of {}'.format(kind, DOCUMENT_KINDS), 'kind')


def _parse_operator_system(reader):
    dim_h = reader.get('dim_h', int)
    basis = reader.matrices('basis', (dim_h, dim_h))
    if 'dim' in reader.doc and reader.doc['dim'] != len(basis):
        reader.fail('Declared dimension {} but the basis has {} elements'.format(reader.doc['dim'], len(basis)),
                    'dim')
    failed = OperatorSystem.check_invariants(dim_h, basis)
    if failed:
        error = ValidationError('the basis is not a valid operator system basis', failed[0])
        logger.error(str(error))
        raise error
    return OperatorSystem(dim_h, basis)


def _parse_effect_basis(reader):
    dim_h = reader.get('dim_h', int)
    construction = reader.get('construction', str)
    if construction not in KINDS:
        reader.fail('Unknown construction {!r}, expected one of {}'.format(construction, KINDS), 'construction')
    basis = EffectBasis(reader.matrices('effects', (dim_h, dim_h)), construction)
    failed = failed_checks(basis.check())
    if failed:
        error = ValidationError('the effects do not form an effect basis', failed[0].replace('_', ' '))
        logger.error(str(error))
        raise error
    return basis


def _parse_channel(reader):
    dim_in, dim_out = reader.get('dim_in', int), reader.get('dim_out', int)
    kraus = reader.matrices('kraus', (dim_out, dim_in))
    residual = trace_preservation_residual(kraus)
    tolerance = Config.Tolerance.load_trace_preservation
    if residual > tolerance * dim_in:
        error = ValidationError('||sum V_k* V_k - I||_F = {:.3e}'.format(residual), 'trace preservation')
        logger.error(str(error))
        raise error
    try:
        return QuantumChannel(kraus, tp_tol=tolerance)
    except OpGraphException as e:
        error = ValidationError(str(e), 'kraus operators')
        logger.error(str(error))
        raise error from e


def load(filename):
    """ Reads a document from a file."""
    obj = parse(read_text(filename))
    logger.info('Loaded {} from {}'.format(type(obj).__name__, filename))
    return obj


def dump(obj, filename):
    """ Writes the canonical text of an object to a file."""
    write_text(filename, emit(obj))
    logger.info('Wrote {} to {}'.format(type(obj).__name__, filename))
