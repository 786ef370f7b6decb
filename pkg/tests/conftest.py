import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# Single-site operators in the packaged bit convention: bit set <-> s = +1,
# so Z must have eigenvalue +1 on index 1.
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])
PAULI_Z = np.array([[-1.0, 0.0], [0.0, 1.0]])
PAULI_Y = 1j * PAULI_X @ PAULI_Z          # [[0, i], [-i, 0]] in this ordering
IDENTITY = np.eye(2)


def site_operator(op, i, L):
    """Kronecker embedding of a single-site operator; site 0 is the least
    significant bit, hence the last kron factor."""
    out = np.eye(1)
    for k in reversed(range(L)):
        out = np.kron(out, op if k == i else IDENTITY)
    return out


def kron_hamiltonian(L, lam, theta):
    """Independent dense assembly of the rotated TFIM from explicit
    Kronecker products of 2x2 matrices."""
    c, s = np.cos(theta), np.sin(theta)
    sx = [site_operator(PAULI_X, i, L) for i in range(L)]
    sz = [site_operator(PAULI_Z, i, L) for i in range(L)]
    xt = [c * sx[i] + s * sz[i] for i in range(L)]
    zt = [c * sz[i] - s * sx[i] for i in range(L)]
    h = np.zeros((2**L, 2**L))
    for i in range(L - 1):
        h -= zt[i] @ zt[i + 1]
    for i in range(L):
        h -= lam * xt[i]
    return h


def i_sigma_y(j, L):
    """Matrix of i*sigma^y_j in the packaged bit convention."""
    return site_operator(1j * PAULI_Y, j, L)
