"""Small-matrix complex linear algebra helpers (2x2 / 4x4 / 8x8).

All matrices are dense numpy arrays in the computational basis
{|00>, |01>, |10>, |11>}, row-major, with qubit 0 as the left tensor
factor.
"""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

PAULIS = (I2, SX, SY, SZ)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product restricted to results of dimension <= 8."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[0] * b.shape[0]
    if n > 8:
        raise ValueError(f"kron result dimension {n} exceeds 8")
    return np.kron(a, b)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def unitarity_residual(m: np.ndarray) -> float:
    m = np.asarray(m, dtype=complex)
    return frob(dagger(m) @ m - np.eye(m.shape[0]))


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_residual(m) <= tol


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over phi of ||a - e^{i phi} b||_F; zero iff equal up to global phase.

    The minimizer is phi = arg tr(a^dag b); evaluating the norm at that
    phase directly avoids the sqrt(8 - 2|tr|) cancellation noise near zero.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    t = np.trace(dagger(a) @ b)
    phi = -np.angle(t) if abs(t) > 0 else 0.0
    return frob(a - np.exp(1j * phi) * b)


def _check_symmetric_unitary(m: np.ndarray, tol: float) -> None:
    if frob(m - m.T) > tol:
        raise ValueError(f"matrix is not symmetric (residual {frob(m - m.T):.2e})")
    if unitarity_residual(m) > tol:
        raise ValueError("matrix is not unitary")


def sym_unitary_eig(m: np.ndarray, tol: float = 1e-8):
    """Eigendecomposition of a symmetric unitary matrix with a real
    orthogonal eigenbasis.

    Returns (angles, o) with m = o @ diag(exp(1j * angles)) @ o.T,
    o real orthogonal.

    A symmetric unitary m splits as m = A + iB with A, B real symmetric
    and commuting; both are diagonalized simultaneously by the eigenbasis
    of A + tB for almost every t.  We use a fixed irrational t and fall
    back to random draws if a degeneracy of A + tB spoils the result.
    """
    m = np.asarray(m, dtype=complex)
    _check_symmetric_unitary(m, tol)
    a = m.real.copy()
    b = m.imag.copy()
    a = (a + a.T) / 2
    b = (b + b.T) / 2
    rng = np.random.default_rng(7)
    t = np.sqrt(2.0)  # fixed irrational mixing weight
    for _ in range(20):
        _, o = np.linalg.eigh(a + t * b)
        da = np.einsum("ij,ik,kj->j", o, a, o)
        db = np.einsum("ij,ik,kj->j", o, b, o)
        angles = np.arctan2(db, da)
        rec = o @ np.diag(np.exp(1j * angles)) @ o.T
        if frob(rec - m) <= 1e-9:
            return angles, o
        t = rng.uniform(0.1, 3.0)
    raise ValueError(f"failed to diagonalize symmetric unitary (residual {frob(rec - m):.2e})")
