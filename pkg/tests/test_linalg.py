import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from asbreak.errors import DimensionMismatch, NotHermitian
from asbreak.linalg import (
    dagger,
    eig_hermitian_desc,
    kron,
    partial_transpose_B,
    rank_with_tol,
)
from asbreak.states import PHI_PLUS, modified_werner, projector
from asbreak.unitaries import u_theta

from conftest import random_complex, random_hermitian

seeds = st.integers(0, 2**32 - 1)


def kron_oracle(A, B):
    """Kronecker product by explicit index arithmetic."""
    (m, n), (p, q) = A.shape, B.shape
    out = np.zeros((m * p, n * q), dtype=complex)
    for i in range(m):
        for j in range(n):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = A[i, j] * B[k, l]
    return out


def charpoly_faddeev_leverrier(A):
    """Characteristic polynomial coefficients (highest power first) without eigensolvers."""
    n = A.shape[0]
    coeffs = [1.0 + 0j]
    M = np.zeros_like(A)
    I = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + coeffs[-1] * I
        coeffs.append(-np.trace(A @ M) / k)
    return np.array(coeffs)


def test_kron_identity_and_basis_action():
    I2 = np.eye(2)
    assert np.array_equal(kron(I2, I2), np.eye(4))
    X = np.array([[0, 1], [1, 0]])
    ket00 = np.array([1, 0, 0, 0])
    assert np.array_equal(kron(X, I2) @ ket00, [0, 0, 1, 0])


def test_kron_matches_index_oracle(rng):
    A, B = random_complex(rng, (2, 3)), random_complex(rng, (3, 2))
    np.testing.assert_allclose(kron(A, B), kron_oracle(A, B), atol=1e-14)


def test_kron_mixed_product(rng):
    A, B, C, D = (random_complex(rng, (2, 2)) for _ in range(4))
    lhs = kron(A, B) @ kron(C, D)
    rhs = kron_oracle(A @ C, B @ D)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(seeds)
@settings(max_examples=30)
def test_kron_associative_and_bilinear(seed):
    rng = np.random.default_rng(seed)
    A, B, C, A2 = (random_complex(rng, (2, 2)) for _ in range(4))
    a = complex(rng.standard_normal(), rng.standard_normal())
    assert np.max(np.abs(kron(kron(A, B), C) - kron(A, kron(B, C)))) < 1e-12
    assert np.max(np.abs(kron(a * A + A2, B) - (a * kron(A, B) + kron(A2, B)))) < 1e-12


def test_dagger(rng):
    assert np.array_equal(dagger(np.eye(3)), np.eye(3))
    A = random_complex(rng, (3, 4))
    assert np.array_equal(dagger(dagger(A)), A)
    theta = 0.731
    assert np.array_equal(dagger(u_theta(theta)), u_theta(theta))


def test_eig_maximally_mixed():
    np.testing.assert_allclose(eig_hermitian_desc(np.eye(4) / 4), [0.25] * 4, atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.15, 1 / 3, 0.8, 1.0])
def test_eig_werner_spectrum(p):
    expected = [(1 + 3 * p) / 4] + [(1 - p) / 4] * 3
    np.testing.assert_allclose(eig_hermitian_desc(modified_werner(p, 0.4, 1.1)), expected,
                               atol=1e-14)


def test_eig_against_characteristic_polynomial(rng):
    H = random_hermitian(rng, 4)
    roots = np.sort(np.roots(charpoly_faddeev_leverrier(H)).real)[::-1]
    np.testing.assert_allclose(eig_hermitian_desc(H), roots, atol=1e-9)


@given(seeds, st.integers(2, 8))
@settings(max_examples=40)
def test_eig_sorted_and_trace_preserving(seed, n):
    H = random_hermitian(np.random.default_rng(seed), n)
    ev = eig_hermitian_desc(H)
    assert ev.shape == (n,)
    assert np.all(np.diff(ev) <= 0)
    assert abs(ev.sum() - np.trace(H).real) < 1e-10


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eig_hermitian_desc(np.array([[1, 1], [0, 1]]))
    # defects inside tolerance are symmetrised away
    H = np.diag([1.0, 0.0]).astype(complex)
    H[0, 1] = 1e-12
    assert eig_hermitian_desc(H).shape == (2,)


def test_partial_transpose_block_layout():
    rho = np.arange(16).reshape(4, 4)
    expected = np.array([[0, 4, 2, 6],
                         [1, 5, 3, 7],
                         [8, 12, 10, 14],
                         [9, 13, 11, 15]])
    assert np.array_equal(partial_transpose_B(rho, (2, 2)), expected)


def test_partial_transpose_bell_is_half_swap():
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    pt = partial_transpose_B(projector(PHI_PLUS), (2, 2))
    np.testing.assert_allclose(pt, swap / 2, atol=1e-15)
    assert abs(eig_hermitian_desc(pt)[-1] + 0.5) < 1e-14


def test_partial_transpose_product_and_identity(rng):
    a = random_hermitian(rng, 2) + 3 * np.eye(2)
    b = random_hermitian(rng, 3) + 3 * np.eye(3)
    rho = np.kron(a, b)
    np.testing.assert_allclose(partial_transpose_B(rho, (2, 3)), np.kron(a, b.T), atol=1e-14)
    np.testing.assert_allclose(eig_hermitian_desc(partial_transpose_B(rho, (2, 3))),
                               eig_hermitian_desc(rho), atol=1e-12)
    assert np.array_equal(partial_transpose_B(np.eye(4) / 4), np.eye(4) / 4)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4)]))
@settings(max_examples=30)
def test_partial_transpose_involution_trace(seed, dims):
    n = dims[0] * dims[1]
    rho = random_complex(np.random.default_rng(seed), (n, n))
    pt = partial_transpose_B(rho, dims)
    assert np.array_equal(partial_transpose_B(pt, dims), rho)
    assert np.trace(pt) == np.trace(rho)


def test_partial_transpose_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_transpose_B(np.eye(4), (2, 3))
    with pytest.raises(DimensionMismatch):
        partial_transpose_B(np.ones((2, 3)))


def test_rank():
    assert rank_with_tol(np.diag([1, 1, 1, 0]) / 3) == 3
    assert rank_with_tol(np.eye(4) / 4) == 4
    with pytest.raises(ValueError):
        rank_with_tol(np.eye(2), tol=0)


@given(seeds, st.integers(1, 6))
@settings(max_examples=30)
def test_rank_plus_nullity(seed, r):
    G = random_complex(np.random.default_rng(seed), (6, r))
    rho = G @ G.conj().T
    rho /= np.trace(rho).real
    rank = rank_with_tol(rho)
    nullity = int(np.count_nonzero(eig_hermitian_desc(rho) <= 1e-9))
    assert rank == r
    assert rank + nullity == 6
