import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from ybgates.linalg import frob, kron, unitarity_residual
from ybgates.weyl import (
    CNOT,
    ISWAP,
    SWAP,
    canonicalize,
    chamber_location,
    core_gate,
    entangling_power,
    entangling_power_from_point,
    entangling_power_mc,
    extract_nonlocal,
    kak_decompose,
    lambda_spectrum,
    locally_equivalent,
    magic_basis,
    min_cnot_count,
    weyl_orbit,
)

RNG = np.random.default_rng(7)
PI = math.pi


def in_chamber(a, tol=1e-9):
    a1, a2, a3 = a
    ok = PI - a2 >= a1 - tol and a1 >= a2 - tol and a2 >= a3 - tol and a3 >= -tol
    if a3 <= 1e-7:
        ok = ok and a1 <= PI / 2 + tol
    return ok


def random_local():
    return kron(unitary_group.rvs(2, random_state=RNG), unitary_group.rvs(2, random_state=RNG))


def test_magic_basis_unitary():
    q = magic_basis()
    assert unitarity_residual(q) < 1e-15


def test_core_gate_is_magic_diagonal():
    q = magic_basis()
    for _ in range(10):
        a = RNG.uniform(0, PI, 3)
        d = q.conj().T @ core_gate(a) @ q
        assert frob(d - np.diag(np.diag(d))) < 1e-12


def test_canonicalize_lands_in_chamber():
    for _ in range(300):
        raw = RNG.uniform(-8, 8, 3)
        assert in_chamber(canonicalize(raw))


def test_canonicalize_constant_on_orbit():
    """Oracle: every 24-group image of a point canonicalizes identically."""
    for _ in range(40):
        raw = RNG.uniform(-4, 4, 3)
        base = canonicalize(raw)
        for img in weyl_orbit(raw):
            assert np.allclose(canonicalize(img), base, atol=1e-9)


def test_canonicalize_matches_core_gate_equivalence():
    for _ in range(25):
        raw = RNG.uniform(-4, 4, 3)
        a = canonicalize(raw)
        assert locally_equivalent(core_gate(raw), core_gate(a))


def test_landmark_points():
    assert np.allclose(extract_nonlocal(CNOT), [PI / 2, 0, 0], atol=1e-9)
    assert np.allclose(extract_nonlocal(SWAP), [PI / 2, PI / 2, PI / 2], atol=1e-9)
    assert np.allclose(extract_nonlocal(ISWAP), [PI / 2, PI / 2, 0], atol=1e-9)
    assert np.allclose(extract_nonlocal(np.eye(4)), [0, 0, 0], atol=1e-9)


def test_kak_roundtrip_random():
    for _ in range(250):
        u = unitary_group.rvs(4, random_state=RNG)
        k = kak_decompose(u)
        assert frob(k.reconstruct() - u) < 1e-8
        assert in_chamber(k.a)
        for v in (k.v1, k.v2, k.v3, k.v4):
            assert unitarity_residual(v) < 1e-9


def test_kak_roundtrip_degenerate_landmarks():
    edges = [
        [0.4, 0, 0],
        [PI / 2, 0.4, 0.4],  # OA3 direction
        [PI / 2, 0.4, 0],
        [PI / 2, PI / 2, 0.4],
        [0.9, 0.9, 0.9],
    ]
    gates = [CNOT, SWAP, ISWAP, np.eye(4, dtype=complex)]
    gates += [core_gate(a) for a in edges]
    for u in gates:
        k = kak_decompose(u)
        assert frob(k.reconstruct() - u) < 1e-8


def test_extract_nonlocal_local_invariance():
    for _ in range(40):
        u = unitary_group.rvs(4, random_state=RNG)
        a = extract_nonlocal(u)
        b = extract_nonlocal(random_local() @ u @ random_local())
        assert np.allclose(a, b, atol=1e-7)


def test_lambda_spectrum_local_invariance():
    # determinant normalization leaves a fourth-root-of-unity ambiguity,
    # so the spectra match after one global phase from {1, i, -1, -i}
    from ybgates.weyl import LambdaSpectrum

    u = unitary_group.rvs(4, random_state=RNG)
    s1 = lambda_spectrum(u)
    s2 = lambda_spectrum(random_local() @ u @ random_local())
    assert any(
        s1.close_to(LambdaSpectrum(tuple(np.asarray(s2.values) * w)), tol=1e-7)
        for w in (1, 1j, -1, -1j)
    )


def test_entangling_power_formulas_agree():
    for _ in range(40):
        u = unitary_group.rvs(4, random_state=RNG)
        ep = entangling_power(u)
        ep2 = entangling_power_from_point(extract_nonlocal(u))
        assert ep == pytest.approx(ep2, abs=1e-9)
        assert 0 <= ep <= 2 / 9 + 1e-12


def test_entangling_power_landmarks():
    assert entangling_power(CNOT) == pytest.approx(2 / 9, abs=1e-12)
    assert entangling_power(SWAP) == pytest.approx(0.0, abs=1e-12)
    assert entangling_power(ISWAP) == pytest.approx(2 / 9, abs=1e-12)


def test_entangling_power_mc_matches_closed_form():
    for u in (CNOT, SWAP, unitary_group.rvs(4, random_state=RNG)):
        mc = entangling_power_mc(u, 100000, seed=5)
        assert mc == pytest.approx(entangling_power(u), abs=3e-3)


def test_entangling_power_mc_deterministic():
    u = unitary_group.rvs(4, random_state=RNG)
    assert entangling_power_mc(u, 1000, seed=9) == entangling_power_mc(u, 1000, seed=9)
    assert entangling_power_mc(u, 1000, seed=9) != entangling_power_mc(u, 1000, seed=10)


def test_min_cnot_count():
    assert min_cnot_count([0, 0, 0]) == 0
    assert min_cnot_count([PI / 2, 0, 0]) == 1
    assert min_cnot_count([PI / 2, PI / 2, 0]) == 2
    assert min_cnot_count([0.3, 0.1, 0]) == 2
    assert min_cnot_count([PI / 2, PI / 2, PI / 2]) == 3
    assert min_cnot_count([0.9, 0.5, 0.2]) == 3


def test_chamber_location_tags():
    assert chamber_location([0, 0, 0]) == "O"
    assert chamber_location([PI, 0, 0]) == "A1"
    assert chamber_location([PI / 2, PI / 2, 0]) == "A2"
    assert chamber_location([PI / 2, PI / 2, PI / 2]) == "A3"
    assert chamber_location([PI / 2, 0, 0]) == "mid OA1"
    assert chamber_location([PI / 2, PI / 2, 0.4]) == "A2A3"
    assert chamber_location([0.9, 0.5, 0.2]) == "interior"


def test_locally_equivalent():
    assert locally_equivalent(CNOT, random_local() @ CNOT @ random_local())
    assert not locally_equivalent(CNOT, SWAP)
