# -*- coding: utf-8 -*-
"""
    numerics
    ========
    Dense complex linear algebra that the rest of opgraph is built on: Hermitian spectra, square roots of positive
    matrices, tensor products, partial traces and the Hilbert-Schmidt geometry of matrix spaces.

    Matrices are plain :class:`numpy.ndarray` objects of complex dtype; vectors are column matrices. Every function is
    pure and returns new arrays.

    Tolerances are relative to the size of the input. A factor ``t`` taken from :class:`~opgraph.config.Config` is
    applied as ``t * max(1, ||A||_F)``, see :func:`relative_tolerance`.

    .. note:: Hermitian matrices are also handled through their real coordinates (:func:`hermitian_coordinates`).
        The map is an isometry from the real space of Hermitian n x n matrices, with the Hilbert-Schmidt inner product,
        to R^(n^2). Questions about real spans of Hermitian matrices become ordinary questions about real vectors.
"""
import logging
from typing import NamedTuple

import numpy as np

from ..config import Config
from .exceptions import DimensionError, DomainError, NotPSDError, ParameterError

logger = logging.getLogger(__name__)

FIRST = 'first'
SECOND = 'second'


class HermitianEig(NamedTuple):
    """ Spectral decomposition of a Hermitian matrix. Eigenvalues are sorted in ascending order and the eigenvectors
    are the columns of a unitary matrix."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        """ Returns U diag(eigenvalues) U*."""
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def as_matrix(A, name='matrix'):
    """ Converts the input to a complex 2D array and checks that it is a valid matrix.

    :param A: array-like with two dimensions.
    :param str name: how to call the argument in error messages.
    :return: complex :class:`numpy.ndarray`.
    """
    M = np.asarray(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        err_str = 'The {} has to be a non-empty 2D array, got shape {}'.format(name, M.shape)
        logger.error(err_str)
        raise DimensionError(err_str)
    if not np.all(np.isfinite(M)):
        err_str = 'The {} has non-finite entries'.format(name)
        logger.error(err_str)
        raise DomainError(err_str)
    return M


def check_square(A, name='matrix'):
    if A.shape[0] != A.shape[1]:
        err_str = 'The {} has to be square, got shape {}'.format(name, A.shape)
        logger.error(err_str)
        raise DimensionError(err_str)


def check_shape(A, shape, name='matrix'):
    if A.shape != tuple(shape):
        err_str = 'The {} has shape {}, expected {}'.format(name, A.shape, tuple(shape))
        logger.error(err_str)
        raise DimensionError(err_str)


def frobenius_norm(A):
    return float(np.linalg.norm(A))


def scale(A):
    """ max(1, ||A||_F), the reference size used by relative tolerances."""
    return max(1.0, frobenius_norm(A))


def relative_tolerance(A, factor=None):
    if factor is None:
        factor = Config.Tolerance.relative
    return factor * scale(A)


def dagger(A):
    return np.conj(A).T


def hermitian_part(A):
    """ (A + A*)/2"""
    A = np.asarray(A, dtype=complex)
    return (A + dagger(A)) / 2


def antihermitian_part(A):
    """ (A - A*)/(2i), which is Hermitian. A = hermitian_part(A) + 1j * antihermitian_part(A)."""
    A = np.asarray(A, dtype=complex)
    return (A - dagger(A)) / 2j


def is_hermitian(A, tol=None):
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        return False
    return frobenius_norm(A - dagger(A)) <= relative_tolerance(A, tol)


def hs_inner(A, B):
    """ Hilbert-Schmidt inner product Tr(A* B). It is linear in the second argument.

    :param A: matrix
    :param B: matrix of the same shape as A
    :return: complex
    """
    A = as_matrix(A, 'first argument')
    B = as_matrix(B, 'second argument')
    check_shape(B, A.shape, 'second argument')
    return complex(np.vdot(A, B))


def eig_hermitian(A):
    """ Eigen-decomposition of a Hermitian matrix.

    The input is symmetrized before handing it to LAPACK, so deviations from Hermiticity inside the tolerance are
    averaged out instead of propagated.

    :param A: square matrix, Hermitian within ``Config.Tolerance.relative``.
    :return: :class:`HermitianEig` with ascending eigenvalues.
    :raises DomainError: if A is not Hermitian.
    """
    A = as_matrix(A)
    check_square(A)
    asymmetry = frobenius_norm(A - dagger(A))
    if asymmetry > relative_tolerance(A):
        err_str = 'Matrix is not Hermitian: ||A - A*||_F = {:.3e}'.format(asymmetry)
        logger.error(err_str)
        raise DomainError(err_str)
    eigenvalues, eigenvectors = np.linalg.eigh(hermitian_part(A))
    return HermitianEig(eigenvalues, eigenvectors)


def spectrum_bounds(A):
    """ Smallest and largest eigenvalue of a Hermitian matrix."""
    eigenvalues = eig_hermitian(A).eigenvalues
    return float(eigenvalues[0]), float(eigenvalues[-1])


def operator_norm(A):
    """ Operator norm of a Hermitian matrix, i.e. the largest absolute eigenvalue."""
    eigenvalues = eig_hermitian(A).eigenvalues
    return float(np.max(np.abs(eigenvalues)))


def psd_sqrt(A):
    """ Square root of a positive semidefinite matrix.

    Eigenvalues in [-tau, 0), with tau the relative tolerance of A, are clipped to zero.

    :param A: Hermitian positive semidefinite matrix.
    :return: the Hermitian positive semidefinite R with R @ R = A.
    :raises NotPSDError: if an eigenvalue is below -tau.
    """
    A = as_matrix(A)
    eig = eig_hermitian(A)
    tolerance = relative_tolerance(A)
    lowest = eig.eigenvalues[0]
    if lowest < -tolerance:
        err_str = 'Matrix is not positive semidefinite, smallest eigenvalue {:.3e}'.format(lowest)
        logger.error(err_str)
        raise NotPSDError(err_str)
    roots = np.sqrt(np.clip(eig.eigenvalues, 0, None))
    R = HermitianEig(roots, eig.eigenvectors).reconstruct()
    return hermitian_part(R)


def tensor(A, B):
    """ Kronecker product. Entry (i_A * rows_B + i_B, j_A * cols_B + j_B) is A[i_A, j_A] * B[i_B, j_B]."""
    return np.kron(as_matrix(A), as_matrix(B))


def partial_trace(M, dim_first, dim_second, traced_factor=SECOND):
    """ Partial trace of an operator on a product space.

    :param M: square matrix of size dim_first * dim_second, with the layout of :func:`tensor`.
    :param int dim_first: dimension of the first factor.
    :param int dim_second: dimension of the second factor.
    :param str traced_factor: ``'first'`` or ``'second'``, the factor that is traced out.
    :return: operator on the remaining factor.
    """
    M = as_matrix(M)
    size = dim_first * dim_second
    if M.shape != (size, size):
        err_str = 'Cannot take a partial trace of a {} matrix over dimensions ({}, {})'.format(
            M.shape, dim_first, dim_second)
        logger.error(err_str)
        raise DimensionError(err_str)
    T = M.reshape(dim_first, dim_second, dim_first, dim_second)
    if traced_factor == SECOND:
        return np.einsum('ijkj->ik', T)
    elif traced_factor == FIRST:
        return np.einsum('ijil->jl', T)
    err_str = 'traced_factor has to be {} or {}, got {}'.format(FIRST, SECOND, traced_factor)
    logger.error(err_str)
    raise ParameterError(err_str)


def orthonormalize_hs(mats, rank_tol):
    """ Modified Gram-Schmidt with one reorthogonalization pass under the Hilbert-Schmidt inner product.

    Inputs are processed in order. An input is dropped when its residual after projection has norm at most
    ``rank_tol * max(1, largest input norm)``.

    :param mats: list of matrices of equal shape.
    :param float rank_tol: positive relative rank tolerance.
    :return: list of orthonormal matrices spanning the same subspace.
    """
    if rank_tol <= 0:
        err_str = 'rank_tol has to be positive, got {}'.format(rank_tol)
        logger.error(err_str)
        raise ParameterError(err_str)
    mats = [as_matrix(M) for M in mats]
    if not mats:
        return []
    for M in mats[1:]:
        check_shape(M, mats[0].shape)
    threshold = rank_tol * max(1.0, max(frobenius_norm(M) for M in mats))

    basis = []
    for M in mats:
        v = M.copy()
        for _ in range(2):
            for e in basis:
                v -= np.vdot(e, v) * e
        norm = frobenius_norm(v)
        if norm <= threshold:
            continue
        basis.append(v / norm)
    logger.debug('Orthonormalized {} matrices into {}'.format(len(mats), len(basis)))
    return basis


def hermitian_coordinates(H):
    """ Real coordinates of a Hermitian matrix: the diagonal, then sqrt(2) Re H_ij and sqrt(2) Im H_ij for i < j.

    Only the diagonal and the upper triangle are read.
    """
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    upper = np.triu_indices(n, k=1)
    off_diagonal = np.sqrt(2) * H[upper]
    return np.concatenate([H.diagonal().real, off_diagonal.real, off_diagonal.imag])


def from_hermitian_coordinates(v, n):
    """ Inverse of :func:`hermitian_coordinates`."""
    v = np.asarray(v, dtype=float)
    if v.shape != (n * n,):
        err_str = 'Expected {} coordinates, got shape {}'.format(n * n, v.shape)
        logger.error(err_str)
        raise DimensionError(err_str)
    upper = np.triu_indices(n, k=1)
    count = len(upper[0])
    H = np.zeros((n, n), dtype=complex)
    H[np.diag_indices(n)] = v[:n]
    values = (v[n:n + count] + 1j * v[n + count:]) / np.sqrt(2)
    H[upper] = values
    H[upper[1], upper[0]] = values.conj()
    return H


def as_unit_vector(phi, dim, name='vector'):
    """ Converts a vector to a column matrix and checks that it has unit norm."""
    v = np.asarray(phi, dtype=complex)
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    if v.shape != (dim, 1):
        err_str = 'The {} has shape {}, expected a column of size {}'.format(name, v.shape, dim)
        logger.error(err_str)
        raise DimensionError(err_str)
    deviation = abs(np.linalg.norm(v) - 1)
    if deviation > Config.Tolerance.unit_vector:
        err_str = 'The {} is not a unit vector, its norm deviates from 1 by {:.3e}'.format(name, deviation)
        logger.error(err_str)
        raise DomainError(err_str)
    return v
