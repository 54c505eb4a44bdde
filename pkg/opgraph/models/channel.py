# -*- coding: utf-8 -*-
"""
    channel
    =======
    Quantum channels in Kraus form, rho -> sum_k V_k rho V_k*, with V_k : H -> K and sum_k V_k* V_k = I.

    A channel is stored as its stack of Kraus operators, never as a Stinespring isometry or a superoperator. The
    isometry V : H -> K (x) E, |phi> -> sum_k V_k|phi> (x) |k>, is available through :meth:`QuantumChannel.stinespring`
    for cross-checks, with E the environment of dimension equal to the number of Kraus operators.

    Beyond the channel itself this module provides its dual (the unital map of the Heisenberg picture), the
    complementary channel into the environment and the dual of the complementary channel, whose image is the operator
    graph.

    :func:`synthesize_channel` builds from an effect basis {A_k} on C^n the channel with output space K = H^(+)d, the
    direct sum of d copies of H, and Kraus operators V_k = i_k A_k^(1/2), where i_k embeds H as the k-th summand.
    Then V_k* V_l = delta_kl A_k.
"""
import logging

import numpy as np

from ..config import Config
from ..lib.exceptions import DomainError, ParameterError, RejectedInputError
from ..lib.numerics import (as_matrix, check_shape, frobenius_norm, partial_trace, psd_sqrt, relative_tolerance,
                            spectrum_bounds, SECOND)
from .operator_system import failed_checks

logger = logging.getLogger(__name__)


def trace_preservation_residual(kraus):
    """ ||sum_k V_k* V_k - I||_F for a stack or a list of Kraus operators of equal shape."""
    stack = np.asarray(kraus, dtype=complex)
    total = np.einsum('kai,kaj->ij', stack.conj(), stack)
    return frobenius_norm(total - np.eye(stack.shape[2]))


class QuantumChannel(object):
    """
    Channel given by its Kraus operators, all of shape dim_out x dim_in. It is immutable.

    :param kraus: list of Kraus operators.
    :param float tp_tol: trace preservation tolerance per unit of input dimension, defaults to
        ``Config.Tolerance.trace_preservation``.
    """
    def __init__(self, kraus, tp_tol=None):
        ops = [as_matrix(V, 'Kraus operator') for V in kraus]
        if not ops:
            err_str = 'A channel needs at least one Kraus operator'
            logger.error(err_str)
            raise RejectedInputError(err_str)
        for V in ops[1:]:
            check_shape(V, ops[0].shape, 'Kraus operator')
        for k, V in enumerate(ops):
            if not np.any(V):
                err_str = 'Kraus operator {} is zero'.format(k)
                logger.error(err_str)
                raise RejectedInputError(err_str)

        stack = np.stack(ops)
        if tp_tol is None:
            tp_tol = Config.Tolerance.trace_preservation
        residual = trace_preservation_residual(stack)
        if residual > tp_tol * stack.shape[2]:
            err_str = 'Kraus operators are not trace preserving: ||sum V_k* V_k - I||_F = {:.3e}'.format(residual)
            logger.error(err_str)
            raise DomainError(err_str)

        stack.setflags(write=False)
        self._stack = stack
        logger.debug('Created channel C^{} -> C^{} with {} Kraus operators'.format(
            self.dim_in, self.dim_out, self.kraus_count))

    @property
    def dim_in(self):
        return self._stack.shape[2]

    @property
    def dim_out(self):
        return self._stack.shape[1]

    @property
    def kraus_count(self):
        return self._stack.shape[0]

    @property
    def kraus(self):
        """ Kraus operators as a tuple of read-only matrices."""
        return tuple(self._stack)

    @property
    def stack(self):
        """ Kraus operators as a read-only array of shape (kraus_count, dim_out, dim_in)."""
        return self._stack

    def trace_residual(self):
        return trace_preservation_residual(self._stack)

    def apply(self, rho):
        """ sum_k V_k rho V_k*

        :param rho: dim_in x dim_in matrix.
        """
        rho = as_matrix(rho, 'input operator')
        check_shape(rho, (self.dim_in, self.dim_in), 'input operator')
        V = self._stack
        return np.einsum('kai,ij,kbj->ab', V, rho, V.conj())

    def dual_apply(self, B):
        """ Dual channel sum_k V_k* B V_k, characterized by Tr(rho Phi*(B)) = Tr(Phi(rho) B).

        :param B: dim_out x dim_out matrix.
        """
        B = as_matrix(B, 'output observable')
        check_shape(B, (self.dim_out, self.dim_out), 'output observable')
        V = self._stack
        return np.einsum('kai,ab,kbj->ij', V.conj(), B, V)

    def complementary(self):
        """ Complementary channel into the environment, rho -> Tr_K(V rho V*).

        Its Kraus operators are W_j = (<j| (x) I_E) V for every basis vector |j> of K: the k-th row of W_j is the j-th
        row of V_k. Zero W_j are dropped. The entries of the output are Tr(V_n rho V_m*).

        :return: :class:`QuantumChannel` from C^dim_in to C^kraus_count.
        """
        rows = np.transpose(self._stack, (1, 0, 2))
        kept = [W for W in rows if np.any(W)]
        return QuantumChannel(kept)

    def dual_complementary_apply(self, B):
        """ Dual of the complementary channel, B -> V*(I_K (x) B)V = sum_{n,m} B_mn V_m* V_n.

        Computed from the Kraus operators, without building V.

        :param B: kraus_count x kraus_count matrix.
        """
        B = as_matrix(B, 'environment observable')
        check_shape(B, (self.kraus_count, self.kraus_count), 'environment observable')
        V = self._stack
        return np.einsum('mn,mai,naj->ij', B, V.conj(), V)

    def kraus_products(self):
        """ Array P of shape (m, m, dim_in, dim_in) with P[n, m] = V_n* V_m."""
        V = self._stack
        return np.einsum('nai,maj->nmij', V.conj(), V)

    def stinespring(self):
        """ Isometry V : C^dim_in -> C^dim_out (x) C^kraus_count with V|phi> = sum_k V_k|phi> (x) |k>."""
        return np.transpose(self._stack, (1, 0, 2)).reshape(self.dim_out * self.kraus_count, self.dim_in)

    def choi(self):
        """ Choi matrix sum_{i,j} |i><j| (x) Phi(|i><j|), built with the unnormalized maximally entangled vector.

        :return: (dim_in * dim_out) square matrix.
        """
        vectors = np.transpose(self._stack, (0, 2, 1)).reshape(self.kraus_count, self.dim_in * self.dim_out)
        return vectors.T @ vectors.conj()

    def is_completely_positive(self, tol=None):
        """ Whether the Choi matrix is positive semidefinite within the relative tolerance."""
        choi = self.choi()
        lowest, _ = spectrum_bounds(choi)
        return lowest >= -relative_tolerance(choi, tol)

    def is_trace_preserving(self, tol=None):
        """ Whether tracing the output out of the Choi matrix gives the identity, within ``tol`` times dim_in."""
        if tol is None:
            tol = Config.Tolerance.trace_preservation
        reduced = partial_trace(self.choi(), self.dim_in, self.dim_out, SECOND)
        return frobenius_norm(reduced - np.eye(self.dim_in)) <= tol * self.dim_in

    def __repr__(self):
        return 'QuantumChannel(dim_in={}, dim_out={}, kraus_count={})'.format(
            self.dim_in, self.dim_out, self.kraus_count)


def synthesize_channel(basis):
    """ Channel whose Kraus operators are V_k = i_k A_k^(1/2) for an effect basis {A_k}.

    The output space has dimension d * n. The k-th Kraus operator is zero except for its k-th n x n block of rows,
    which holds the square root of A_k.

    :param EffectBasis basis: valid effect basis.
    :raises RejectedInputError: if the basis fails one of its invariants.
    """
    failed = failed_checks(basis.check())
    if failed:
        err_str = 'Effect basis rejected, failed checks: {}'.format(', '.join(failed))
        logger.error(err_str)
        raise RejectedInputError(err_str)
    n = basis.dim_h
    d = len(basis)
    kraus = []
    for k, A in enumerate(basis.effects):
        V = np.zeros((d * n, n), dtype=complex)
        V[k * n:(k + 1) * n, :] = psd_sqrt(A)
        kraus.append(V)
    logger.info('Synthesized channel C^{} -> C^{} from {} effects'.format(n, d * n, d))
    return QuantumChannel(kraus)


def random_channel(dim_in, dim_out, kraus_count, seed=None):
    """ Random channel from a Gaussian isometry.

    A (kraus_count * dim_out) x dim_in complex Gaussian matrix is orthonormalized by a QR decomposition, with the
    phases of the diagonal of R moved into Q so that the isometry does not depend on the conventions of the QR
    routine, and sliced into kraus_count blocks.

    :param int seed: seed of :func:`numpy.random.default_rng`; the same seed gives the same channel.
    """
    if min(dim_in, dim_out, kraus_count) < 1 or kraus_count * dim_out < dim_in:
        err_str = 'Cannot fit an isometry from C^{} into {} blocks of C^{}'.format(dim_in, kraus_count, dim_out)
        logger.error(err_str)
        raise ParameterError(err_str)
    rng = np.random.default_rng(seed)
    shape = (kraus_count * dim_out, dim_in)
    G = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    Q, R = np.linalg.qr(G)
    phases = np.diag(R) / np.abs(np.diag(R))
    Q = Q * phases
    return QuantumChannel([Q[k * dim_out:(k + 1) * dim_out, :] for k in range(kraus_count)])


def identity_channel(dim):
    return QuantumChannel([np.eye(dim)])


def depolarizing_channel(dim):
    """ Completely depolarizing channel with Kraus operators |i><j| / sqrt(n)."""
    kraus = []
    for i in range(dim):
        for j in range(dim):
            V = np.zeros((dim, dim), dtype=complex)
            V[i, j] = 1 / np.sqrt(dim)
            kraus.append(V)
    return QuantumChannel(kraus)
