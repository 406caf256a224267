"""Dense operator blocks for the two-level-system + single-mode Hilbert space.

Composite basis ordering: linear index = 2 * n_fock + qubit, i.e. the qubit
index toggles fastest.  Mode operators therefore embed as ``kron(op, eye(2))``
and qubit operators as ``kron(eye(n), op)``.
"""

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def annihilation(dim):
    """Bosonic annihilation operator as a dense (dim, dim) matrix."""
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1)


def number(dim):
    """Photon-number operator diag(0, 1, ..., dim-1)."""
    return np.diag(np.arange(dim, dtype=float))


def quadrature(dim):
    """Field quadrature a + a^dagger."""
    a = annihilation(dim)
    return a + a.T


def mode_embed(op):
    """Embed a mode operator into the composite space."""
    return np.kron(op, np.eye(2))


def qubit_embed(op, n_fock_states):
    """Embed a 2x2 qubit operator into the composite space."""
    return np.kron(np.eye(n_fock_states), op)


def parity(n_fock_states):
    """Composite parity sigma_x * (-1)^(photon number)."""
    return np.kron(np.diag((-1.0) ** np.arange(n_fock_states)), SIGMA_X)
