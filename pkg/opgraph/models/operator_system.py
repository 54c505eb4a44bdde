# -*- coding: utf-8 -*-
"""
    operator_system
    ===============
    Operator systems on a finite-dimensional Hilbert space H of dimension n, i.e. subspaces S of the n x n matrices that
    contain the identity and are closed under the adjoint, and the effect bases that feed channel synthesis.

    An :class:`OperatorSystem` is stored through a Hilbert-Schmidt orthonormal basis of Hermitian matrices. Its real
    span is S_sa, the Hermitian part of S, and its complex span is S itself. Both have the same dimension d, so
    ``dim_complex == dim_real``.

    Two constructions turn a system into effects {A_k} with 0 <= A_k <= I and sum(A_k) = I that span S:

    - :func:`duan_effect_basis` shifts every non-identity direction into the positive cone, scales the shifted
      operators down and completes the sum to the identity with the first effect.
    - :func:`geometric_effect_sequence` places the directions in the ball of radius 1/2 around the identity and
      scales the k-th one by 2^-k, so that the norms decay geometrically and the series of effects converges
      absolutely. Here it stops after d terms.

    Both return exactly d effects, with the completing effect first.
"""
import logging

import numpy as np

from ..config import Config
from ..lib.exceptions import DimensionError, DomainError, ParameterError
from ..lib.numerics import (as_matrix, check_shape, check_square, frobenius_norm, hermitian_part, antihermitian_part,
                            hermitian_coordinates, from_hermitian_coordinates, orthonormalize_hs, operator_norm,
                            relative_tolerance, scale, spectrum_bounds)

logger = logging.getLogger(__name__)

DUAN = 'duan'
GEOMETRIC = 'geometric'
KINDS = (DUAN, GEOMETRIC)


class OperatorSystem(object):
    """
    Finite-dimensional operator system. It is immutable: the basis is stored as read-only arrays.

    :param int dim_h: dimension n of the Hilbert space.
    :param herm_basis: Hilbert-Schmidt orthonormal Hermitian n x n matrices whose span contains the identity.
    """
    def __init__(self, dim_h, herm_basis):
        dim_h = int(dim_h)
        basis = [as_matrix(B, 'basis element').copy() for B in herm_basis]
        for B in basis:
            check_shape(B, (dim_h, dim_h), 'basis element')
        failed = self.check_invariants(dim_h, basis)
        if failed:
            err_str = 'Operator system invariants failed: {}'.format(', '.join(failed))
            logger.error(err_str)
            raise DomainError(err_str)

        for B in basis:
            B.setflags(write=False)
        self._dim_h = dim_h
        self._basis = tuple(basis)
        self._coordinates = np.column_stack([hermitian_coordinates(B) for B in basis])
        self._coordinates.setflags(write=False)
        logger.debug('Created operator system of dimension {} on C^{}'.format(len(basis), dim_h))

    @classmethod
    def from_generators(cls, dim_h, gens, rank_tol=None):
        """ Smallest operator system containing the generators.

        The identity is adjoined first. A generator whose norm is at most ``Config.Tolerance.generator_floor`` times
        the largest norm among the generators and the identity is rounding noise and is skipped. Every other generator
        G contributes its Hermitian parts (G + G*)/2 and (G - G*)/(2i); a part is discarded when its norm is at most
        ``rank_tol`` times the norm of G, otherwise it is normalized before Gram-Schmidt.

        :param int dim_h: dimension n.
        :param gens: list of n x n matrices.
        :param float rank_tol: defaults to ``Config.Tolerance.rank``.
        """
        if rank_tol is None:
            rank_tol = Config.Tolerance.rank
        dim_h = int(dim_h)
        gens = [as_matrix(G, 'generator') for G in gens]
        for G in gens:
            check_shape(G, (dim_h, dim_h), 'generator')
        sizes = [frobenius_norm(G) for G in gens]
        floor = Config.Tolerance.generator_floor * max([np.sqrt(dim_h)] + sizes)
        candidates = [np.eye(dim_h, dtype=complex)]
        for G, size in zip(gens, sizes):
            if size <= floor:
                continue
            for part in (hermitian_part(G), antihermitian_part(G)):
                part_norm = frobenius_norm(part)
                if part_norm <= rank_tol * size:
                    continue
                candidates.append(part / part_norm)
        basis = [hermitian_part(B) for B in orthonormalize_hs(candidates, rank_tol)]
        return cls(dim_h, basis)

    @classmethod
    def scalars(cls, dim_h):
        """ The smallest operator system, the multiples of the identity."""
        return cls.from_generators(dim_h, [])

    @classmethod
    def full(cls, dim_h):
        """ All n x n matrices."""
        units = []
        for i in range(dim_h):
            for j in range(dim_h):
                unit = np.zeros((dim_h, dim_h), dtype=complex)
                unit[i, j] = 1
                units.append(unit)
        return cls.from_generators(dim_h, units)

    @staticmethod
    def check_invariants(dim_h, basis):
        """ Names of the invariants that a candidate basis breaks; an empty list means the basis is valid.

        :param int dim_h: dimension n.
        :param basis: list of n x n matrices.
        """
        if not basis:
            return ['non-empty basis']
        failed = []
        if len(basis) > dim_h ** 2:
            failed.append('dimension bound')
        if any(frobenius_norm(B - B.conj().T) > relative_tolerance(B) for B in basis):
            failed.append('hermiticity')
            return failed
        Q = np.column_stack([hermitian_coordinates(B) for B in basis])
        gram = Q.T @ Q
        if np.max(np.abs(gram - np.eye(len(basis)))) > Config.Tolerance.orthonormality:
            failed.append('orthonormality')
            return failed
        identity = hermitian_coordinates(np.eye(dim_h))
        residual = np.linalg.norm(identity - Q @ (Q.T @ identity))
        if residual > Config.Tolerance.membership * max(1.0, np.sqrt(dim_h)):
            failed.append('identity')
        return failed

    @property
    def dim_h(self):
        return self._dim_h

    @property
    def herm_basis(self):
        return self._basis

    @property
    def dim(self):
        """ Dimension d of the system over the complex numbers."""
        return len(self._basis)

    @property
    def dim_complex(self):
        return len(self._basis)

    @property
    def dim_real(self):
        """ Dimension of S_sa over the real numbers, which equals :attr:`dim_complex`."""
        return self._coordinates.shape[1]

    @property
    def coordinates(self):
        """ Real coordinates of the basis as the columns of an n^2 x d matrix."""
        return self._coordinates

    def projector(self):
        """ Orthogonal projector onto S_sa in the real coordinates, an n^2 x n^2 matrix."""
        return self._coordinates @ self._coordinates.T

    def _residual(self, H):
        v = hermitian_coordinates(H)
        return float(np.linalg.norm(v - self._coordinates @ (self._coordinates.T @ v)))

    def contains(self, M, tol=None):
        """ Whether M lies in the complex span of the system.

        M is split as H + iK with H, K Hermitian, and each part is projected onto S_sa.

        :param M: n x n matrix.
        :param float tol: relative tolerance, defaults to ``Config.Tolerance.membership``.
        """
        if tol is None:
            tol = Config.Tolerance.membership
        M = as_matrix(M)
        check_shape(M, (self._dim_h, self._dim_h))
        residual = np.hypot(self._residual(hermitian_part(M)), self._residual(antihermitian_part(M)))
        return bool(residual <= tol * scale(M))

    def distance(self, other):
        """ Frobenius norm of the difference between the projectors of two systems on the same space."""
        if not isinstance(other, OperatorSystem):
            err_str = 'Can only compare with another OperatorSystem, got {}'.format(type(other))
            logger.error(err_str)
            raise ParameterError(err_str)
        if other.dim_h != self._dim_h:
            err_str = 'Systems live on different spaces: C^{} and C^{}'.format(self._dim_h, other.dim_h)
            logger.error(err_str)
            raise DimensionError(err_str)
        return float(np.linalg.norm(self.projector() - other.projector()))

    def equals(self, other, tol=None):
        """ Whether two systems are the same subspace, up to a projector distance of ``tol``."""
        if tol is None:
            tol = Config.Tolerance.equality
        return self.distance(other) <= tol

    def non_identity_directions(self):
        """ Hilbert-Schmidt orthonormal Hermitian matrices that, together with the identity, span S_sa.

        A Householder reflection maps the identity direction onto the first coordinate of the stored basis; the
        remaining reflected basis vectors are orthogonal to the identity. When the identity is the first stored
        element, which is the case for every system built by :meth:`from_generators`, the directions are the stored
        elements themselves.

        :return: list of d - 1 matrices.
        """
        n = self._dim_h
        Q = self._coordinates
        q = Q.T @ hermitian_coordinates(np.eye(n) / np.sqrt(n))
        q /= np.linalg.norm(q)
        w = q.copy()
        w[0] += 1.0 if q[0] >= 0 else -1.0
        reflection = np.eye(len(q)) - 2 * np.outer(w, w) / (w @ w)
        directions = []
        for column in reflection.T[1:]:
            directions.append(from_hermitian_coordinates(Q @ column, n))
        return directions

    def __repr__(self):
        return 'OperatorSystem(dim_h={}, dim={})'.format(self._dim_h, self.dim)


class EffectBasis(object):
    """
    Ordered list of effects. It does not validate the effects at construction, so that an invalid list can still be
    inspected with :meth:`check`; constructions that need a valid basis check it themselves.

    :param effects: list of Hermitian n x n matrices.
    :param str kind: ``'duan'`` or ``'geometric'``.
    :param OperatorSystem system: the system the effects are supposed to span, if known.
    """
    def __init__(self, effects, kind, system=None):
        if kind not in KINDS:
            err_str = 'Effect basis kind has to be one of {}, got {}'.format(KINDS, kind)
            logger.error(err_str)
            raise ParameterError(err_str)
        effects = [as_matrix(A, 'effect').copy() for A in effects]
        if not effects:
            err_str = 'An effect basis needs at least one effect'
            logger.error(err_str)
            raise ParameterError(err_str)
        check_square(effects[0], 'effect')
        for A in effects:
            check_shape(A, effects[0].shape, 'effect')
            A.setflags(write=False)
        if system is not None and system.dim_h != effects[0].shape[0]:
            err_str = 'Effects act on C^{} but the system on C^{}'.format(effects[0].shape[0], system.dim_h)
            logger.error(err_str)
            raise DimensionError(err_str)
        self._effects = tuple(effects)
        self._kind = kind
        self._system = system

    @property
    def effects(self):
        return self._effects

    @property
    def kind(self):
        return self._kind

    @property
    def system(self):
        return self._system

    @property
    def dim_h(self):
        return self._effects[0].shape[0]

    def __len__(self):
        return len(self._effects)

    def __getitem__(self, item):
        return self._effects[item]

    def span(self):
        """ Operator system spanned by the effects."""
        return OperatorSystem.from_generators(self.dim_h, self._effects)

    def check(self, system=None):
        """ Evaluates the invariants of the basis.

        :param OperatorSystem system: system to compare the span with, defaults to :attr:`system`. Without one the span
            check is skipped.
        :return: dictionary with boolean checks (``None`` when not applicable) and the numbers behind them.
        """
        if system is None:
            system = self._system
        n = self.dim_h
        identity = np.eye(n)

        lowest, highest, positive, bounded = np.inf, -np.inf, True, True
        for A in self._effects:
            try:
                low, high = spectrum_bounds(A)
            except DomainError:
                positive = bounded = False
                continue
            tolerance = relative_tolerance(A)
            positive = positive and low >= -tolerance
            bounded = bounded and high <= 1 + tolerance
            lowest, highest = min(lowest, low), max(highest, high)

        sum_residual = frobenius_norm(sum(self._effects) - identity)
        checks = {
            'positivity': positive,
            'upper_bound': bounded,
            'sum_to_identity': sum_residual <= Config.Tolerance.sum_to_identity * n,
            'span': None,
            'geometric_bounds': None,
            'min_eigenvalue': float(lowest),
            'max_eigenvalue': float(highest),
            'sum_residual': sum_residual,
            'span_distance': None,
        }
        if system is not None and positive and bounded:
            distance = self.span().distance(system)
            checks['span_distance'] = distance
            checks['span'] = distance <= Config.Tolerance.equality
        elif system is not None:
            checks['span'] = False
        if self._kind == GEOMETRIC:
            checks['geometric_bounds'] = positive and bounded and self._geometric_bounds()
        return checks

    def _geometric_bounds(self):
        """ ||A_k|| < 2^-(k-1) for k >= 2 and ||I - A_1|| < 1, strictly, in operator norm."""
        first = self._effects[0]
        if operator_norm(np.eye(self.dim_h) - first) >= 1:
            return False
        for k, A in enumerate(self._effects[1:], start=2):
            if operator_norm(A) >= 2.0 ** -(k - 1):
                return False
        return True

    def __repr__(self):
        return 'EffectBasis(kind={}, dim_h={}, size={})'.format(self._kind, self.dim_h, len(self))


def failed_checks(checks):
    """ Names of the boolean checks of :meth:`EffectBasis.check` that are False."""
    return [name for name, value in checks.items() if isinstance(value, (bool, np.bool_)) and not value]


def duan_effect_basis(system):
    """ Effect basis of a system built by shifting and scaling a Hermitian basis.

    With directions B_2, ..., B_d normalized to operator norm 1, F_k = I + alpha B_k is at least (1 - alpha) I. The
    effects are A_k = beta F_k with beta = 1/(2 lambda_max(sum F_k)), and A_1 = I - sum A_k, which is then at
    least I/2.

    :param OperatorSystem system:
    :return: :class:`EffectBasis` of kind ``'duan'`` with ``system.dim`` effects.
    """
    n = system.dim_h
    identity = np.eye(n, dtype=complex)
    if system.dim == 1:
        return EffectBasis([identity], DUAN, system)

    alpha = Config.Duan.alpha
    shifted = [identity + alpha * B / operator_norm(B) for B in system.non_identity_directions()]
    _, top = spectrum_bounds(sum(shifted))
    beta = 1 / (Config.Duan.beta_margin * top)
    effects = [beta * F for F in shifted]
    first = identity - sum(effects)
    logger.debug('Duan effect basis: alpha = {}, beta = {:.6g}'.format(alpha, beta))
    return EffectBasis([first] + effects, DUAN, system)


def geometric_effect_sequence(system):
    """ Effect sequence with geometrically decaying norms.

    Every direction B_k is moved into {B : ||B - I|| <= 1/2} as I + B_k/(2 ||B_k||), divided by 2^k, and the
    identity is completed by A_1 = I - sum_{k >= 2} A_k. Then ||A_k|| <= (3/2)/2^k < 2^-(k-1) and ||I - A_1|| < 1.

    :param OperatorSystem system:
    :return: :class:`EffectBasis` of kind ``'geometric'`` with ``system.dim`` effects.
    """
    n = system.dim_h
    identity = np.eye(n, dtype=complex)
    radius = Config.Geometric.radius
    effects = []
    for k, B in enumerate(system.non_identity_directions(), start=2):
        ball_point = identity + radius * B / operator_norm(B)
        effects.append(ball_point / 2.0 ** k)
    first = identity - sum(effects) if effects else identity
    return EffectBasis([first] + effects, GEOMETRIC, system)


def effect_basis(system, kind=DUAN):
    """ Dispatches to :func:`duan_effect_basis` or :func:`geometric_effect_sequence`."""
    if kind == DUAN:
        return duan_effect_basis(system)
    elif kind == GEOMETRIC:
        return geometric_effect_sequence(system)
    err_str = 'Effect basis kind has to be one of {}, got {}'.format(KINDS, kind)
    logger.error(err_str)
    raise ParameterError(err_str)


def qc_map(basis, B):
    """ The unital completely positive map B -> sum_k <k|B|k> A_k from d x d matrices to n x n matrices.

    Its image is the span of the effects, so composing any channel construction with it reproduces the system.

    :param EffectBasis basis:
    :param B: d x d matrix.
    """
    B = as_matrix(B)
    check_shape(B, (len(basis), len(basis)))
    return sum(B[k, k] * A for k, A in enumerate(basis.effects))


def random_system(dim_h, dim_s, seed=None):
    """ Random operator system of a prescribed dimension.

    The identity is joined by dim_s - 1 Hermitian parts of complex Gaussian matrices. The draw is repeated, up to
    ``Config.Random.max_attempts`` times, in the unlikely case that the generators are numerically dependent.

    :param int dim_h: dimension n of the Hilbert space.
    :param int dim_s: dimension of the system, between 1 and n^2.
    :param int seed: seed of :func:`numpy.random.default_rng`.
    """
    if dim_h < 1 or not 1 <= dim_s <= dim_h ** 2:
        err_str = 'Cannot draw a system of dimension {} on C^{}'.format(dim_s, dim_h)
        logger.error(err_str)
        raise ParameterError(err_str)
    rng = np.random.default_rng(seed)
    for attempt in range(Config.Random.max_attempts):
        gens = []
        for _ in range(dim_s - 1):
            X = rng.standard_normal((dim_h, dim_h)) + 1j * rng.standard_normal((dim_h, dim_h))
            gens.append(hermitian_part(X))
        system = OperatorSystem.from_generators(dim_h, gens)
        if system.dim == dim_s:
            return system
        logger.warning('Random system came out with dimension {} instead of {}, drawing again'.format(
            system.dim, dim_s))
    err_str = 'Could not draw a system of dimension {} on C^{} in {} attempts'.format(
        dim_s, dim_h, Config.Random.max_attempts)
    logger.error(err_str)
    raise ParameterError(err_str)
