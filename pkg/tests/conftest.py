import numpy as np
import pytest

from opgraph.config import Config
from opgraph.models import OperatorSystem


@pytest.fixture
def paulis():
    return {
        'i': np.eye(2, dtype=complex),
        'x': np.array([[0, 1], [1, 0]], dtype=complex),
        'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
        'z': np.array([[1, 0], [0, -1]], dtype=complex),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20180613)


@pytest.fixture
def random_density(rng):
    def density(n):
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = G @ G.conj().T
        return rho / np.trace(rho)
    return density


@pytest.fixture
def random_matrix(rng):
    def matrix(rows, cols=None):
        cols = rows if cols is None else cols
        return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return matrix


@pytest.fixture
def sz_system(paulis):
    """ span{I, sigma_z} on C^2."""
    return OperatorSystem.from_generators(2, [paulis['z']])


@pytest.fixture(autouse=True)
def restore_config():
    """ Tests may change tolerances; put them back afterwards."""
    saved = dict(vars(Config.Tolerance))
    yield
    for key, value in saved.items():
        if not key.startswith('__'):
            setattr(Config.Tolerance, key, value)
