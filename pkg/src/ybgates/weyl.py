"""Geometric (Weyl chamber) representation of two-qubit gates.

Canonical coordinates (a1, a2, a3) live in the tetrahedron
pi - a2 >= a1 >= a2 >= a3 >= 0 with vertices O = [0,0,0],
A1 = [pi,0,0], A2 = [pi/2,pi/2,0], A3 = [pi/2,pi/2,pi/2].  On the
a3 = 0 base the identification [a1,a2,0] ~ [pi-a1,a2,0] is resolved
by taking a1 <= pi/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    I2,
    SX,
    SY,
    SZ,
    dagger,
    frob,
    is_unitary,
    kron,
    phase_distance,
    sym_unitary_eig,
    unitarity_residual,
)

CHAMBER_TOL = 1e-7

# Magic (Bell) basis columns:
# (|00>+|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2, i(|00>-|11>)/sqrt2
_MAGIC = np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=complex,
) / np.sqrt(2)

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
ISWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def magic_basis() -> np.ndarray:
    """The fixed basis change making every core gate diagonal."""
    return _MAGIC.copy()


def core_gate(a) -> np.ndarray:
    """exp(i/2 (a1 XX + a2 YY + a3 ZZ)) for arbitrary finite angles."""
    a1, a2, a3 = (float(x) for x in a)
    h = a1 * kron(SX, SX) + a2 * kron(SY, SY) + a3 * kron(SZ, SZ)
    # The three terms commute; diagonalize in the magic basis instead of expm.
    d = np.array(
        [a1 - a2 + a3, a1 + a2 - a3, -a1 - a2 - a3, -a1 + a2 + a3]
    )
    u = _MAGIC @ np.diag(np.exp(0.5j * d)) @ dagger(_MAGIC)
    assert frob(h @ u - u @ h) < 1e-9 * (1 + frob(h))
    return u


def _magic_phases_to_a(d: np.ndarray):
    """Invert the linear map (a0, a) -> magic-basis diagonal phases."""
    d1, d2, d3, d4 = d
    a0 = (d1 + d2 + d3 + d4) / 4
    a1 = (d1 + d2 - d3 - d4) / 2
    a2 = (-d1 + d2 - d3 + d4) / 2
    a3 = (d1 - d2 - d3 + d4) / 2
    return a0, np.array([a1, a2, a3])


@dataclass(frozen=True)
class LambdaSpectrum:
    """Multiset of the four unit-modulus local invariants."""

    values: tuple

    def sorted_angles(self) -> np.ndarray:
        return np.sort(np.angle(np.asarray(self.values)))

    def close_to(self, other: "LambdaSpectrum", tol: float = 1e-8) -> bool:
        # sorting complex values can split nearly-equal pairs, so compare
        # as multisets instead
        return _multiset_close(np.asarray(self.values), np.asarray(other.values), tol)


def _multiset_close(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    b = list(b)
    for x in a:
        hit = None
        for k, y in enumerate(b):
            if abs(x - y) <= tol:
                hit = k
                break
        if hit is None:
            return False
        b.pop(hit)
    return True


def _su4_normalize(u: np.ndarray) -> np.ndarray:
    det = np.linalg.det(u)
    return u * det ** (-0.25)


def lambda_spectrum(u: np.ndarray) -> LambdaSpectrum:
    """Eigenvalues of m = U_Q^T U_Q for the SU(4)-normalized gate."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, 1e-8):
        raise ValueError("lambda_spectrum requires a unitary input")
    v = _su4_normalize(u)
    uq = dagger(_MAGIC) @ v @ _MAGIC
    m = uq.T @ uq
    angles, _ = sym_unitary_eig(m)
    return LambdaSpectrum(tuple(np.exp(1j * angles)))


# ---------------------------------------------------------------------------
# Weyl chamber canonicalization
# ---------------------------------------------------------------------------

def _in_chamber(a, tol: float = 1e-12) -> bool:
    a1, a2, a3 = a
    ok = (
        math.pi - a2 >= a1 - tol
        and a1 >= a2 - tol
        and a2 >= a3 - tol
        and a3 >= -tol
    )
    if ok and a3 <= CHAMBER_TOL:
        ok = a1 <= math.pi / 2 + tol
    return ok


def _canonical_moves(raw):
    """Reduce a raw coordinate triple to the chamber, returning the move list.

    Moves are ('shift', i, n) for a_i -> a_i + n*pi, ('swap', i, j) and
    ('flip', i, j) for pairwise sign flips; they act right-to-left on the
    stored coordinates so a decomposition tracker can replay them.
    """
    a = [float(x) for x in raw]
    moves = []

    def shift_into_range(i):
        n = math.floor(a[i] / math.pi)
        if n != 0:
            a[i] -= n * math.pi
            moves.append(("shift", i, -n))

    def sort_desc():
        for i, j in ((0, 1), (1, 2), (0, 1)):
            if a[i] < a[j]:
                a[i], a[j] = a[j], a[i]
                moves.append(("swap", i, j))

    for i in range(3):
        shift_into_range(i)
    sort_desc()
    if a[0] + a[1] > math.pi:
        # (a1, a2) -> (pi - a1, pi - a2) via a pairwise flip plus shifts
        a[0], a[1] = -a[0], -a[1]
        moves.append(("flip", 0, 1))
        a[0] += math.pi
        moves.append(("shift", 0, 1))
        a[1] += math.pi
        moves.append(("shift", 1, 1))
        sort_desc()
    if a[2] <= CHAMBER_TOL and a[0] > math.pi / 2:
        a[0], a[2] = -a[0], -a[2]
        moves.append(("flip", 0, 2))
        a[0] += math.pi
        moves.append(("shift", 0, 1))
        sort_desc()
    return np.array(a), moves


def canonicalize(raw) -> np.ndarray:
    """Chamber representative of the Weyl orbit of a raw coordinate triple."""
    a, _ = _canonical_moves(raw)
    return a


def weyl_orbit(raw) -> list:
    """All images of a point under the 24-element Weyl group, reduced mod pi.

    Brute-force oracle: coordinate permutations x pairwise sign flips,
    each coordinate then shifted into [0, pi).
    """
    import itertools

    a = np.asarray(raw, dtype=float)
    out = []
    for perm in itertools.permutations(range(3)):
        p = a[list(perm)]
        for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
            q = p * signs
            out.append(np.mod(q, math.pi))
    return out


# ---------------------------------------------------------------------------
# KAK decomposition
# ---------------------------------------------------------------------------

# Single-qubit Clifford conjugators implementing coordinate transpositions:
# (c x c) core(a) (c x c)^dag permutes the corresponding Pauli axes.
_C_SWAP = {
    (0, 1): (SX + SY) / np.sqrt(2),  # X<->Y
    (0, 2): (SX + SZ) / np.sqrt(2),  # X<->Z (Hadamard)
    (1, 2): (SY + SZ) / np.sqrt(2),  # Y<->Z
}
# Third Pauli axis for a pairwise sign flip of axes (i, j).
_FLIP_AXIS = {(0, 1): SZ, (0, 2): SY, (1, 2): SX}
_AXIS_PAULI = (SX, SY, SZ)


@dataclass
class KakDecomposition:
    """U = e^{i phase} (v1 x v2) core_gate(a) (v3 x v4), a canonical."""

    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    v4: np.ndarray
    a: np.ndarray
    phase: float

    def reconstruct(self) -> np.ndarray:
        return (
            cmath.exp(1j * self.phase)
            * kron(self.v1, self.v2)
            @ core_gate(self.a)
            @ kron(self.v3, self.v4)
        )


def _factor_local(k: np.ndarray):
    """Split a tensor-product unitary into (a, b, phase) with det a = det b = 1."""
    f = k.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    u, s, vh = np.linalg.svd(f)
    if s[1] > 1e-7:
        raise ValueError(f"matrix is not a tensor product (s1 = {s[1]:.2e})")
    a = (u[:, 0] * np.sqrt(s[0])).reshape(2, 2)
    b = (vh[0, :] * np.sqrt(s[0])).reshape(2, 2)
    alpha = np.sqrt(np.linalg.det(a) + 0j)
    beta = np.sqrt(np.linalg.det(b) + 0j)
    a = a / alpha
    b = b / beta
    phase = cmath.phase(alpha * beta)
    # Fix the residual sign so a x b reproduces k exactly.
    if frob(cmath.exp(1j * phase) * kron(a, b) - k) > frob(
        cmath.exp(1j * (phase + math.pi)) * kron(a, b) - k
    ):
        phase += math.pi
    return a, b, phase


def _magic_kak_raw(u: np.ndarray):
    """Raw magic-basis KAK: U = e^{i a0} K1 core(a_raw) K2 with K's local."""
    v = _su4_normalize(np.asarray(u, dtype=complex))
    ubar = dagger(_MAGIC) @ v @ _MAGIC
    m = ubar.T @ ubar
    angles, p = sym_unitary_eig(m)
    if np.linalg.det(p) < 0:
        p = p.copy()
        p[:, 0] = -p[:, 0]
    half = angles / 2
    d = np.exp(1j * half)
    left = ubar @ p @ np.diag(1 / d)
    if np.linalg.det(left).real < 0:
        half = half.copy()
        half[0] += math.pi
        d = np.exp(1j * half)
        left = ubar @ p @ np.diag(1 / d)
    if frob(left.imag) > 1e-6:
        raise ValueError("KAK factor failed to be real orthogonal")
    left = left.real
    k1 = _MAGIC @ left @ dagger(_MAGIC)
    k2 = _MAGIC @ p.T @ dagger(_MAGIC)
    a0, a_raw = _magic_phases_to_a(half)
    phase = a0 + cmath.phase(np.linalg.det(np.asarray(u, dtype=complex)) ** 0.25)
    return k1, a_raw, k2, phase


def kak_decompose(u: np.ndarray) -> KakDecomposition:
    """Cartan decomposition with the core coordinates in the Weyl chamber."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, 1e-8):
        raise ValueError("kak_decompose requires a unitary input")
    k1, a_raw, k2, phase = _magic_kak_raw(u)
    a, moves = _canonical_moves(a_raw)
    # Replay the canonicalization moves on the local factors.
    for move in moves:
        kind = move[0]
        if kind == "shift":
            _, i, n = move
            # core(a_old) = core(a_new) (i sigma x sigma)^{-n} up to phase
            s = _AXIS_PAULI[i]
            g = kron(s, s)
            if n % 2 == 1 or n % 2 == -1:
                k2 = g @ k2
            phase += -n * math.pi / 2
        elif kind == "swap":
            _, i, j = move
            c = _C_SWAP[(min(i, j), max(i, j))]
            g = kron(c, c)
            k1 = k1 @ g
            k2 = dagger(g) @ k2
        elif kind == "flip":
            _, i, j = move
            s = _FLIP_AXIS[(min(i, j), max(i, j))]
            g = kron(s, I2)
            k1 = k1 @ g
            k2 = g @ k2
    v1, v2, p1 = _factor_local(k1)
    v3, v4, p2 = _factor_local(k2)
    phase = float((phase + p1 + p2) % (2 * math.pi))
    dec = KakDecomposition(v1, v2, v3, v4, a, phase)
    resid = phase_distance(dec.reconstruct(), u)
    if resid > 1e-8:
        raise ValueError(f"KAK reconstruction residual {resid:.2e} exceeds 1e-8")
    return dec


def extract_nonlocal(u: np.ndarray) -> np.ndarray:
    """Canonical chamber coordinates of a two-qubit unitary."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, 1e-8):
        raise ValueError("extract_nonlocal requires a unitary input")
    _, a_raw, _, _ = _magic_kak_raw(u)
    return canonicalize(a_raw)


def locally_equivalent(u: np.ndarray, v: np.ndarray, tol: float = 1e-7) -> bool:
    au = extract_nonlocal(u)
    av = extract_nonlocal(v)
    return bool(np.max(np.abs(au - av)) <= tol)


# ---------------------------------------------------------------------------
# Entangling power
# ---------------------------------------------------------------------------

def entangling_power(u: np.ndarray) -> float:
    """Closed-form average output linear entropy over Haar product inputs."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, 1e-8):
        raise ValueError("entangling_power requires a unitary input")
    v = _su4_normalize(u)
    uq = dagger(_MAGIC) @ v @ _MAGIC
    tr = np.trace(uq.T @ uq)
    ep = (2 / 9) * (1 - abs(tr) ** 2 / 16)
    return float(min(max(ep, 0.0), 2 / 9))


def entangling_power_from_point(a) -> float:
    a1, a2, a3 = (float(x) for x in a)
    c = math.cos(a1) ** 2 * math.cos(a2) ** 2 * math.cos(a3) ** 2
    s = math.sin(a1) ** 2 * math.sin(a2) ** 2 * math.sin(a3) ** 2
    return (2 / 9) * (1 - (c + s))


def haar_product_state(rng) -> np.ndarray:
    """Haar-random product state |psi1> x |psi2> from normalized Gaussians."""
    parts = []
    for _ in range(2):
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        parts.append(z / np.linalg.norm(z))
    return np.kron(parts[0], parts[1])


def entangling_power_mc(u: np.ndarray, n: int, seed: int = 0) -> float:
    """Monte-Carlo estimate of the average output linear entropy."""
    if n < 1:
        raise ValueError("n must be >= 1")
    u = np.asarray(u, dtype=complex)
    rng = np.random.default_rng(seed)
    n = int(n)
    z = rng.standard_normal((2, n, 2)) + 1j * rng.standard_normal((2, n, 2))
    z /= np.linalg.norm(z, axis=2, keepdims=True)
    psi = np.einsum("ni,nj->nij", z[0], z[1]).reshape(n, 4) @ u.T
    m = psi.reshape(n, 2, 2)
    rho = m @ np.conj(m).transpose(0, 2, 1)
    purity = np.einsum("nij,nji->n", rho, rho).real
    return float(np.mean(1.0 - purity))


def min_cnot_count(a, tol: float = CHAMBER_TOL) -> int:
    """Minimal CNOTs needed for a canonical chamber point."""
    a1, a2, a3 = (float(x) for x in a)
    if max(a1, a2, a3) <= tol:
        return 0
    if abs(a1 - math.pi / 2) <= tol and a2 <= tol and a3 <= tol:
        return 1
    if a3 <= tol:
        return 2
    return 3


# ---------------------------------------------------------------------------
# Chamber location tags
# ---------------------------------------------------------------------------

def chamber_location(a, tol: float = CHAMBER_TOL) -> str:
    """Vertex / edge / face / interior tag of a canonical chamber point."""
    a1, a2, a3 = (float(x) for x in a)
    pi = math.pi

    def near(x, y):
        return abs(x - y) <= tol

    if near(a1, 0) and near(a2, 0) and near(a3, 0):
        return "O"
    if near(a1, pi) and near(a2, 0) and near(a3, 0):
        return "A1"
    if near(a1, pi / 2) and near(a2, pi / 2) and near(a3, 0):
        return "A2"
    if near(a1, pi / 2) and near(a2, pi / 2) and near(a3, pi / 2):
        return "A3"
    if near(a2, 0) and near(a3, 0):
        return "mid OA1" if near(a1, pi / 2) else "OA1"
    if near(a1, a2) and near(a3, 0):
        return "OA2"
    if near(a1, a2) and near(a2, a3):
        return "OA3"
    if near(a1 + a2, pi) and near(a3, 0):
        return "A1A2"
    if near(a2, a3) and near(a1 + a2, pi):
        return "A1A3"
    if near(a1, pi / 2) and near(a2, pi / 2):
        return "A2A3"
    if near(a3, 0):
        return "OA1A2"
    if near(a1, a2):
        return "OA2A3"
    if near(a1 + a2, pi):
        return "A1A2A3"
    if near(a2, a3):
        return "OA1A3"
    return "interior"
