"""Shared dense oracles, built from explicit Kronecker products only.

Deliberately independent of every builder in the package: site i is bit i
(site 0 = least significant), bit value 0 means z = +1.
"""

import numpy as np

SX = np.array([[0.0, 1.0], [1.0, 0.0]])


def op_at(op, i, L):
    """Single-site operator embedded at site i of an L-site ring."""
    return np.kron(np.eye(1 << (L - 1 - i)), np.kron(op, np.eye(1 << i)))


def zdiag(i, L):
    """Diagonal of Z_i as a length-2^L vector."""
    return np.kron(np.ones(1 << (L - 1 - i)), np.kron([1.0, -1.0], np.ones(1 << i)))


def classical_diag(L, h, mu=1.0):
    d = np.zeros(1 << L)
    for i in range(L):
        d += 0.5 * mu * zdiag(i, L) * zdiag((i + 1) % L, L) - h * zdiag(i, L)
    return d


def dense_ising(L, t, h, mu=1.0):
    """H = sum_i (mu/2) Z_i Z_{i+1} - t X_i - h Z_i on a periodic ring."""
    H = np.diag(classical_diag(L, h, mu))
    for i in range(L):
        H -= t * op_at(SX, i, L)
    return H


def dense_effective(L, t, h, mu=1.0):
    """Same diagonal, hopping restricted by the Z_{i-1} X_i Z_{i+1} projector."""
    H = np.diag(classical_diag(L, h, mu))
    for i in range(L):
        Xi = op_at(SX, i, L)
        zz = zdiag((i - 1) % L, L) * zdiag((i + 1) % L, L)
        # Z's commute with X_i, so diag(zz) @ Xi is the three-site term
        H -= 0.5 * t * (Xi - zz[:, None] * Xi)
    return H
