"""The four X-type two-qubit braid gate families and their invariants."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import I2, frob, kron
from .weyl import canonicalize

FAMILIES = ("I", "II", "III", "IV")
_PARAM_COUNT = {"I": 4, "II": 3, "III": 2, "IV": 1}


@dataclass(frozen=True)
class BraidSpec:
    family: str
    phi: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown braid family {self.family!r}")
        object.__setattr__(self, "phi", tuple(float(p) for p in self.phi))
        want = _PARAM_COUNT[self.family]
        if len(self.phi) != want:
            raise ValueError(
                f"family {self.family} takes {want} parameters, got {len(self.phi)}"
            )


def build_braid(spec: BraidSpec) -> np.ndarray:
    """Explicit matrix of the braid gate in the computational basis."""
    f = spec.family
    phi = spec.phi
    e = lambda t: cmath.exp(1j * t)
    if f == "I":
        p1, p2, p3, p4 = phi
        return np.array(
            [
                [e(p1), 0, 0, 0],
                [0, 0, e(p2), 0],
                [0, e(p3), 0, 0],
                [0, 0, 0, e(p4)],
            ],
            dtype=complex,
        )
    if f == "II":
        p1, p2, p3 = phi
        return np.array(
            [
                [0, 0, 0, e(p2)],
                [0, e(p1), 0, 0],
                [0, 0, e(p1), 0],
                [e(p3), 0, 0, 0],
            ],
            dtype=complex,
        )
    if f == "III":
        p1, p2 = phi
        c, s = math.cos(p1), math.sin(p1)
        return np.array(
            [
                [c, 0, 0, s * e(p2)],
                [0, -1j * s, -c, 0],
                [0, -c, -1j * s, 0],
                [-s * e(-p2), 0, 0, c],
            ],
            dtype=complex,
        )
    # family IV
    (p1,) = phi
    return np.array(
        [
            [1, 0, 0, e(p1)],
            [0, 1, 1, 0],
            [0, -1, 1, 0],
            [-e(-p1), 0, 0, 1],
        ],
        dtype=complex,
    ) / math.sqrt(2)


def braid_residual(b: np.ndarray) -> float:
    """Frobenius norm of (B x 1)(1 x B)(B x 1) - (1 x B)(B x 1)(1 x B)."""
    b = np.asarray(b, dtype=complex)
    b1 = kron(b, I2)
    b2 = kron(I2, b)
    return frob(b1 @ b2 @ b1 - b2 @ b1 @ b2)


def derived_angles(spec: BraidSpec) -> dict:
    """Angle combinations entering the closed-form invariants."""
    f = spec.family
    if f == "I":
        p1, p2, p3, p4 = spec.phi
        return {
            "phi_1": 0.5 * (-p1 - p2 + p3 + p4),
            "phi_2": 0.5 * (-p1 + p2 - p3 + p4),
            "phi_3": 0.5 * (-p1 + p2 + p3 - p4),
            "omega": 0.5 * (p2 - p3),
        }
    if f == "II":
        p1, p2, p3 = spec.phi
        return {
            "phi_1": 0.5 * (-p2 + p3),
            "phi_2": 0.5 * (-p2 + 2 * p1 - p3),
        }
    return {}


def braid_nonlocal_closed(spec: BraidSpec) -> np.ndarray:
    """Closed-form canonical chamber point of the braid gate."""
    f = spec.family
    pi = math.pi
    if f == "I":
        t = derived_angles(spec)["phi_3"]
        raw = (pi / 2, pi / 2, pi / 2 - t)
    elif f == "II":
        t = derived_angles(spec)["phi_2"]
        raw = (pi / 2, pi / 2, pi / 2 - t)
    elif f == "III":
        raw = (pi / 2, pi / 2, pi / 2 - 2 * spec.phi[0])
    else:
        raw = (pi / 2, 0.0, 0.0)
    return canonicalize(raw)


def braid_ep_closed(spec: BraidSpec) -> float:
    """Closed-form entangling power of the braid gate."""
    f = spec.family
    if f == "I":
        return (2 / 9) * math.sin(derived_angles(spec)["phi_3"]) ** 2
    if f == "II":
        return (2 / 9) * math.sin(derived_angles(spec)["phi_2"]) ** 2
    if f == "III":
        return (2 / 9) * math.sin(2 * spec.phi[0]) ** 2
    return 2 / 9
