"""Two-qubit circuit synthesis over the gate set {Rz, H, S, Sdg, T, Tdg, CNOT}.

Circuits are ordered gate lists in application order (the leftmost
diagram gate comes first); qubit 0 is the left tensor factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import I2, I4, dagger, frob, kron, phase_distance
from .weyl import kak_decompose, min_cnot_count

_SINGLE_KINDS = ("H", "S", "SDG", "T", "TDG", "RZ")
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_T = np.diag([1, cmath.exp(0.25j * math.pi)]).astype(complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta)])


def rx_matrix(theta: float) -> np.ndarray:
    return _H @ rz_matrix(theta) @ _H


def cnot_matrix(control: int, target: int) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        bits = [(i >> 1) & 1, i & 1]
        if bits[control]:
            bits[target] ^= 1
        m[(bits[0] << 1) | bits[1], i] = 1
    return m


@dataclass(frozen=True)
class GateOp:
    kind: str
    qubits: tuple
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind == "CNOT":
            c, t = self.qubits
            if c == t:
                raise ValueError("CNOT control and target must differ")
        elif self.kind in _SINGLE_KINDS:
            (q,) = self.qubits
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if any(q not in (0, 1) for q in self.qubits):
            raise ValueError(f"qubit indices must be 0 or 1, got {self.qubits}")
        if self.kind == "RZ":
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError("RZ needs a finite angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    def matrix(self) -> np.ndarray:
        """4x4 matrix of the op with qubit 0 as the left tensor factor."""
        if self.kind == "CNOT":
            return cnot_matrix(*self.qubits)
        m = {
            "H": _H,
            "S": _S,
            "SDG": dagger(_S),
            "T": _T,
            "TDG": dagger(_T),
            "RZ": rz_matrix(self.angle) if self.kind == "RZ" else None,
        }[self.kind]
        (q,) = self.qubits
        return kron(m, I2) if q == 0 else kron(I2, m)


@dataclass
class Circuit:
    ops: list = field(default_factory=list)
    phase: float = 0.0

    @property
    def cnot_count(self) -> int:
        return sum(1 for op in self.ops if op.kind == "CNOT")


def evaluate(c: Circuit) -> np.ndarray:
    """Unitary of the circuit, including its declared global phase."""
    u = I4.copy()
    for op in c.ops:
        u = op.matrix() @ u
    return cmath.exp(1j * c.phase) * u


def verify_circuit(c: Circuit, target: np.ndarray) -> float:
    return phase_distance(evaluate(c), target)


def _wrap(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    t = math.fmod(theta, 2 * math.pi)
    if t > math.pi:
        t -= 2 * math.pi
    elif t <= -math.pi:
        t += 2 * math.pi
    return t


def euler_zxz(v: np.ndarray, tol: float = 1e-12):
    """Angles (alpha, beta, gamma, phase) with V = e^{i phase} Rz(a) Rx(b) Rz(g).

    When the middle angle is 0 or pi within tol, gamma is set to 0 and
    folded into alpha.
    """
    v = np.asarray(v, dtype=complex)
    det = np.linalg.det(v)
    w = v / cmath.sqrt(det)
    cb, sb = abs(w[0, 0]), abs(w[0, 1])
    beta = 2 * math.atan2(sb, cb)
    if sb <= tol:
        alpha, beta, gamma = -2 * cmath.phase(w[0, 0]), 0.0, 0.0
    elif cb <= tol:
        alpha, beta, gamma = 2 * (cmath.phase(w[1, 0]) + math.pi / 2), math.pi, 0.0
    else:
        half_sum = -cmath.phase(w[0, 0])
        half_diff = cmath.phase(w[1, 0]) + math.pi / 2
        alpha = half_sum + half_diff
        gamma = half_sum - half_diff
    alpha, gamma = _wrap(alpha), _wrap(gamma)
    rec = rz_matrix(alpha) @ rx_matrix(beta) @ rz_matrix(gamma)
    t = np.trace(dagger(rec) @ v)
    phase = cmath.phase(t)
    if frob(v - cmath.exp(1j * phase) * rec) > 1e-10:
        raise ValueError("single-qubit Euler decomposition failed")
    return alpha, beta, gamma, phase


def _emit_rz(ops: list, q: int, theta: float) -> None:
    theta = _wrap(theta)
    if abs(theta) > 1e-14:
        ops.append(GateOp("RZ", (q,), theta))


def _emit_local(ops: list, q: int, v: np.ndarray) -> float:
    """Append ops realizing the 2x2 unitary v on qubit q; returns its phase."""
    alpha, beta, gamma, phase = euler_zxz(v)
    _emit_rz(ops, q, gamma)
    if abs(beta) > 1e-14:
        ops.append(GateOp("H", (q,)))
        _emit_rz(ops, q, beta)
        ops.append(GateOp("H", (q,)))
    _emit_rz(ops, q, alpha)
    return phase


def synth_zz(theta: float) -> Circuit:
    """Circuit for exp(-i theta/2 Z x Z) with two CNOTs."""
    if not math.isfinite(theta):
        raise ValueError("angle must be finite")
    ops = [GateOp("CNOT", (0, 1)), GateOp("RZ", (1,), _wrap(theta)), GateOp("CNOT", (0, 1))]
    return Circuit(ops)


def _core_template(a, n: int) -> list:
    """Gate skeleton realizing the nonlocal class of chamber point a with n CNOTs."""
    a1, a2, a3 = (float(x) for x in a)
    if n == 0:
        return []
    if n == 1:
        return [GateOp("CNOT", (0, 1))]
    if n == 2:
        # CNOT (Rx(-a1) x Rz(-a2)) CNOT = exp(i/2 (a1 XX + a2 ZZ))
        ops = [GateOp("CNOT", (0, 1)), GateOp("H", (0,))]
        _emit_rz(ops, 0, -a1)
        ops.append(GateOp("H", (0,)))
        _emit_rz(ops, 1, -a2)
        ops.append(GateOp("CNOT", (0, 1)))
        return ops
    ops = [GateOp("CNOT", (0, 1)), GateOp("H", (0,)), GateOp("S", (0,))]
    _emit_rz(ops, 0, -a2)
    _emit_rz(ops, 1, -a1)
    ops.append(GateOp("CNOT", (0, 1)))
    _emit_rz(ops, 1, a3)
    ops.append(GateOp("H", (1,)))
    ops.append(GateOp("CNOT", (1, 0)))
    ops.append(GateOp("SDG", (0,)))
    ops.append(GateOp("S", (1,)))
    ops.append(GateOp("H", (0,)))
    ops.append(GateOp("H", (1,)))
    return ops


def synth_general(u: np.ndarray) -> Circuit:
    """Minimal-CNOT circuit for an arbitrary two-qubit unitary.

    The CNOT skeleton matching the canonical chamber point is dressed
    with single-qubit corrections computed by comparing the Cartan
    decompositions of the target and of the bare skeleton.
    """
    u = np.asarray(u, dtype=complex)
    ku = kak_decompose(u)
    n = min_cnot_count(ku.a)
    core_ops = _core_template(ku.a, n)
    km = kak_decompose(evaluate(Circuit(core_ops)))
    ops: list = []
    phase = ku.phase - km.phase
    phase += _emit_local(ops, 0, dagger(km.v3) @ ku.v3)
    phase += _emit_local(ops, 1, dagger(km.v4) @ ku.v4)
    ops.extend(core_ops)
    tail: list = []
    phase += _emit_local(tail, 0, ku.v1 @ dagger(km.v1))
    phase += _emit_local(tail, 1, ku.v2 @ dagger(km.v2))
    ops.extend(tail)
    c = Circuit(ops, _wrap(phase))
    res = verify_circuit(c, u)
    if res > 1e-7:
        raise ValueError(f"synthesis reconstruction failed (residual {res:.2e})")
    return c


def synth_riv(phi1: float, chi: float) -> Circuit:
    """Two-CNOT circuit for the spectral-deformed corner-exchange gate."""
    for v in (phi1, chi):
        if not math.isfinite(v):
            raise ValueError("parameters must be finite")
    ops: list = []
    _emit_rz(ops, 0, phi1 / 2)
    _emit_rz(ops, 1, phi1 / 2)
    ops.append(GateOp("S", (0,)))
    ops.append(GateOp("H", (0,)))
    ops.append(GateOp("H", (1,)))
    ops.append(GateOp("CNOT", (0, 1)))
    _emit_rz(ops, 1, 2 * chi)
    ops.append(GateOp("CNOT", (0, 1)))
    ops.append(GateOp("H", (0,)))
    ops.append(GateOp("H", (1,)))
    ops.append(GateOp("SDG", (0,)))
    _emit_rz(ops, 0, -phi1 / 2)
    _emit_rz(ops, 1, -phi1 / 2)
    from .baxterize import YbSpec, build_yb

    target = build_yb(YbSpec("IV", 1, chi, (phi1,)))
    c = Circuit(ops)
    t = np.trace(dagger(evaluate(c)) @ target)
    c.phase = cmath.phase(t) if abs(t) > 0 else 0.0
    res = verify_circuit(c, target)
    if res > 1e-10:
        raise ValueError(f"synthesis reconstruction failed (residual {res:.2e})")
    return c
