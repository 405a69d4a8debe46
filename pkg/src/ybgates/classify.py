"""Clifford, matchgate, and dual-unitary classification of two-qubit gates.

Numeric predicates operate on the raw 4x4 matrix; symbolic predictors
evaluate the closed-form parameter conditions of the braid and
Yang-Baxter gate families.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .baxterize import YbSpec
from .braid import BraidSpec, derived_angles
from .linalg import I2, PAULIS, SX, SZ, dagger, frob, kron

CLIFFORD_TOL = 1e-8

_PAULI_NAMES = ("I", "X", "Y", "Z")
_GENERATORS = (
    ("XI", kron(SX, I2)),
    ("ZI", kron(SZ, I2)),
    ("IX", kron(I2, SX)),
    ("IZ", kron(I2, SZ)),
)
_PHASES = (1, 1j, -1, -1j)

_X_POSITIONS = {(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)}


_PAULI_STACK = np.stack(
    [kron(PAULIS[i], PAULIS[j]) for i, j in itertools.product(range(4), repeat=2)]
)
_PAULI_LABELS = [a + b for a, b in itertools.product(_PAULI_NAMES, repeat=2)]


def _nearest_pauli_string(m: np.ndarray):
    """Best (name, phase, residual) approximation of m by phase * Pauli string."""
    t = np.einsum("kji,ji->k", _PAULI_STACK.conj(), m) / 4
    # the best signed Pauli maximizes the phase-aligned overlap
    k = int(np.argmax(np.maximum(np.abs(t.real), np.abs(t.imag))))
    ph = min(_PHASES, key=lambda c: abs(t[k] - c))
    r = frob(m - ph * _PAULI_STACK[k])
    return _PAULI_LABELS[k], ph, r


def clifford_table(u: np.ndarray):
    """Conjugation images U P U^dag of the four Pauli generators.

    Each entry maps the generator name to (pauli string, phase, residual)
    of the nearest signed Pauli.
    """
    u = np.asarray(u, dtype=complex)
    table = {}
    for name, p in _GENERATORS:
        table[name] = _nearest_pauli_string(u @ p @ dagger(u))
    return table


def is_clifford(u: np.ndarray, tol: float = CLIFFORD_TOL) -> bool:
    """True iff U maps every Pauli generator to a signed Pauli string."""
    return all(r <= tol for _, _, r in clifford_table(u).values())


def matchgate_dets(u: np.ndarray):
    """(outer-block determinant, inner-block determinant) of an X-shaped gate."""
    u = np.asarray(u, dtype=complex)
    outer = u[0, 0] * u[3, 3] - u[0, 3] * u[3, 0]
    inner = u[1, 1] * u[2, 2] - u[1, 2] * u[2, 1]
    return outer, inner


def x_shape_residual(u: np.ndarray) -> float:
    """Frobenius norm of the entries outside the X pattern."""
    u = np.asarray(u, dtype=complex)
    off = [u[i, j] for i in range(4) for j in range(4) if (i, j) not in _X_POSITIONS]
    return float(np.linalg.norm(off))


def is_matchgate(u: np.ndarray, tol: float = CLIFFORD_TOL) -> bool:
    """True iff U is X-shaped with equal outer and inner block determinants.

    Both determinants pick up the same factor under a global phase, so
    the test is phase invariant.
    """
    if x_shape_residual(u) > tol:
        return False
    outer, inner = matchgate_dets(u)
    return abs(outer - inner) <= tol


def reshuffle(u: np.ndarray) -> np.ndarray:
    """The partially transposed gate u~[mn,ij] = u[jn,im]."""
    t = np.asarray(u, dtype=complex).reshape(2, 2, 2, 2)
    return t.transpose(3, 1, 2, 0).reshape(4, 4)


def dual_unitarity_residual(u: np.ndarray) -> float:
    ut = reshuffle(u)
    return frob(ut @ dagger(ut) - np.eye(4))


def is_dual_unitary(u: np.ndarray, tol: float = CLIFFORD_TOL) -> bool:
    """True iff the reshuffled gate is unitary as well."""
    return dual_unitarity_residual(u) <= tol


# ---------------------------------------------------------------------------
# Symbolic condition evaluation
# ---------------------------------------------------------------------------

LATTICE_TOL = 1e-9


def on_lattice(x: float, step: float, offset: float = 0.0, tol: float = LATTICE_TOL) -> bool:
    """True iff x is within tol of offset + k * step for integer k."""
    d = (x - offset) / step
    return abs(d - round(d)) * step <= tol


def _iswap_locus(mu: float, phi: float, cot: bool, tol: float = LATTICE_TOL) -> bool:
    """tanh(mu/2) = +-tan(phi/2) (or +-cot with cot=True)."""
    t = math.tanh(mu / 2)
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    if cot:
        c, s = s, c
    # cross-multiplied to dodge tan poles
    return min(abs(t * c - s), abs(t * c + s)) <= tol


def predict_conditions(spec) -> dict:
    """Symbolic Clifford / matchgate / dual-unitary verdicts for a gate spec."""
    if isinstance(spec, BraidSpec):
        return _predict_braid(spec)
    if isinstance(spec, YbSpec):
        return _predict_yb(spec)
    raise TypeError(f"unsupported spec type {type(spec).__name__}")


def _predict_braid(spec: BraidSpec) -> dict:
    f = spec.family
    ang = derived_angles(spec)
    if f == "I":
        cl = all(on_lattice(ang[k], math.pi / 2) for k in ("phi_1", "phi_2", "phi_3"))
        return {
            "clifford": cl,
            "matchgate": on_lattice(ang["phi_3"], math.pi, math.pi / 2),
            "dual_unitary": True,
        }
    if f == "II":
        cl = all(on_lattice(ang[k], math.pi / 2) for k in ("phi_1", "phi_2"))
        return {
            "clifford": cl,
            "matchgate": on_lattice(ang["phi_2"], math.pi, math.pi / 2),
            "dual_unitary": True,
        }
    if f == "III":
        p1, p2 = spec.phi
        return {
            "clifford": on_lattice(p1, math.pi / 4) and on_lattice(p2, math.pi, math.pi / 2),
            "matchgate": False,
            "dual_unitary": True,
        }
    (p1,) = spec.phi
    return {
        "clifford": on_lattice(p1, math.pi),
        "matchgate": True,
        "dual_unitary": False,
    }


def _predict_yb(spec: YbSpec) -> dict:
    f, kind = spec.family, spec.kind
    if f == "IV":
        (p1,) = spec.phi
        return {
            "clifford": on_lattice(p1, math.pi) and on_lattice(spec.chi, math.pi / 4),
            "matchgate": True,
            "dual_unitary": False,
        }
    if f in ("I", "II"):
        phi, omega = spec.phase_params()
        mu = spec.mu
        swap_like = abs(mu) <= LATTICE_TOL or on_lattice(phi, math.pi)
        if kind == 1:
            return {
                "clifford": on_lattice(omega, math.pi) and swap_like,
                "matchgate": on_lattice(phi, math.pi, math.pi / 2),
                "dual_unitary": False,
            }
        locus = _iswap_locus(mu, phi, cot=(kind == 3))
        return {
            "clifford": on_lattice(omega, math.pi) and (swap_like or locus),
            "matchgate": locus,
            "dual_unitary": True,
        }
    # family III
    p1, p2 = spec.phi
    mu = spec.mu
    cl2 = on_lattice(p2, math.pi, math.pi / 2)
    if kind == 1:
        return {
            "clifford": cl2 and (abs(mu) <= LATTICE_TOL or on_lattice(p1, math.pi / 2)),
            "matchgate": False,
            "dual_unitary": False,
        }
    return {
        "clifford": cl2 and (abs(mu) <= LATTICE_TOL or on_lattice(p1, math.pi / 2)),
        "matchgate": False,
        "dual_unitary": True,
    }


@dataclass
class ClassificationReport:
    is_clifford: bool
    clifford_table: dict
    is_matchgate: bool
    matchgate_dets: tuple
    is_dual_unitary: bool
    dual_residual: float
    predicted: dict | None = None


def classify_gate(u: np.ndarray, spec=None, tol: float = CLIFFORD_TOL) -> ClassificationReport:
    """Full numeric classification, with symbolic predictions when a spec is given."""
    return ClassificationReport(
        is_clifford=is_clifford(u, tol),
        clifford_table=clifford_table(u),
        is_matchgate=is_matchgate(u, tol),
        matchgate_dets=matchgate_dets(u),
        is_dual_unitary=is_dual_unitary(u, tol),
        dual_residual=dual_unitarity_residual(u),
        predicted=predict_conditions(spec) if spec is not None else None,
    )
