import math

import numpy as np
import pytest

from asbreak.unitaries import (
    cnot,
    haar_from_rng,
    haar_random,
    is_unitary,
    rng_for,
    u_theta,
    unitarity_defect,
)

X = np.array([[0, 1], [1, 0]])
Z = np.diag([1, -1])


def ket(bits):
    v = np.zeros(4)
    v[int(bits, 2)] = 1
    return v


def test_cnot_action():
    U = cnot()
    assert np.array_equal(U @ ket("10"), ket("11"))
    assert np.array_equal(U @ ket("00"), ket("00"))
    assert np.array_equal(U @ ket("11"), ket("10"))
    assert np.array_equal(U @ U, np.eye(4))


def test_u_theta_special_angles():
    np.testing.assert_allclose(u_theta(0.0), np.kron(Z, np.eye(2)), atol=1e-16)
    np.testing.assert_allclose(u_theta(math.pi / 2), np.kron(X, X), atol=1e-16)


@pytest.mark.parametrize("theta", [0.1, 0.9, 2.3, -1.7])
def test_u_theta_structure(theta):
    U = u_theta(theta)
    c, s = math.cos(theta), math.sin(theta)
    expected = np.array([[c, 0, 0, s], [0, c, s, 0], [0, s, -c, 0], [s, 0, 0, -c]])
    assert np.array_equal(U, expected)
    assert np.array_equal(U == 0, expected == 0)
    np.testing.assert_allclose(U @ U, np.eye(4), atol=1e-15)
    assert is_unitary(U)


def test_haar_deterministic_and_seed_sensitive():
    a, b = haar_random(4, seed=7), haar_random(4, seed=7)
    assert np.array_equal(a, b)
    assert not np.allclose(haar_random(4, seed=7), haar_random(4, seed=8))
    assert not np.allclose(haar_random(4, seed=7, index=0), haar_random(4, seed=7, index=1))


def test_haar_unitary_many():
    for i in range(1000):
        assert unitarity_defect(haar_random(4, 3, i)) < 1e-10


def test_haar_batch_shape():
    Us = haar_from_rng(3, rng_for(0), size=5)
    assert Us.shape == (5, 3, 3)
    assert all(unitarity_defect(U) < 1e-10 for U in Us)


def test_haar_trace_moment():
    # E|Tr U|^2 = 1 for Haar U(n)
    Us = haar_from_rng(4, rng_for(11), size=100_000)
    tr = np.trace(Us, axis1=1, axis2=2)
    assert abs(np.mean(np.abs(tr) ** 2) - 1) < 0.05


def test_haar_not_biased_like_plain_qr():
    # without the phase fix E[Tr U] != 0; Haar requires E[U_00] = 0
    Us = haar_from_rng(3, rng_for(5), size=50_000)
    assert abs(np.mean(Us[:, 0, 0])) < 0.02
    Z_ = rng_for(5).standard_normal((50_000, 3, 3)) + 1j * rng_for(6).standard_normal((50_000, 3, 3))
    Q, _ = np.linalg.qr(Z_)
    assert abs(np.mean(Q[:, 0, 0])) > 0.1


def test_haar_left_invariance_statistic():
    V = haar_random(4, 99)
    Us = haar_from_rng(4, rng_for(12), size=50_000)
    moved = np.einsum("ij,njk->nik", V, Us)
    m1 = np.mean(np.abs(np.trace(Us, axis1=1, axis2=2)) ** 2)
    m2 = np.mean(np.abs(np.trace(moved, axis1=1, axis2=2)) ** 2)
    assert abs(m1 - m2) < 0.06


def test_rng_rejects_negative():
    with pytest.raises(ValueError):
        rng_for(-1)
