"""Matrix primitives against small closed forms and loop/eig oracles."""
import numpy as np
import pytest

from jordan_trotter.linalg import NormKind, is_hermitian, mat_add, mat_exp, mat_mul, norm

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def rand_complex(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def eig_exp(h, z):
    """Exponential of a Hermitian matrix through its eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(z * w)) @ v.conj().T


def test_mat_add_identity_and_doubling():
    assert np.array_equal(mat_add(X, np.zeros((2, 2))), X)
    assert np.array_equal(mat_add(X, X), 2 * X)


def test_mat_add_matches_entrywise_loop():
    rng = np.random.default_rng(41)
    a, b = rand_complex(rng, 4), rand_complex(rng, 4)
    want = np.empty((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            want[i, j] = a[i, j] + b[i, j]
    assert np.array_equal(mat_add(a, b), want)


def test_mat_mul_identity_neutral():
    rng = np.random.default_rng(42)
    a = rand_complex(rng, 3)
    assert np.allclose(mat_mul(a, np.eye(3)), a, rtol=0, atol=0)


def test_mat_mul_pauli_xy_gives_iz():
    assert np.allclose(mat_mul(X, Y), 1j * Z, rtol=0, atol=1e-15)


def test_mat_mul_matches_triple_loop():
    rng = np.random.default_rng(43)
    a, b = rand_complex(rng, 6), rand_complex(rng, 6)
    want = np.zeros((6, 6), dtype=complex)
    for i in range(6):
        for j in range(6):
            acc = 0.0 + 0.0j
            for k in range(6):
                acc += a[i, k] * b[k, j]
            want[i, j] = acc
    assert np.max(np.abs(mat_mul(a, b) - want)) < 1e-13


def test_mat_exp_zero_is_identity():
    assert np.allclose(mat_exp(np.zeros((3, 3))), np.eye(3), rtol=0, atol=1e-15)


def test_mat_exp_pauli_z_quarter_period():
    got = mat_exp(-1j * (np.pi / 2) * Z)
    assert np.allclose(got, np.diag([-1j, 1j]), rtol=0, atol=1e-14)


def test_mat_exp_matches_eigendecomposition():
    h = Z + X
    got = mat_exp(-0.7j * h)
    assert norm(got - eig_exp(h, -0.7j), NormKind.OPERATOR2) < 1e-12


def test_mat_exp_matches_eigendecomposition_large_norm():
    # forces several squaring steps
    rng = np.random.default_rng(44)
    a = rand_complex(rng, 5)
    h = 40.0 * (a + a.conj().T) / 2
    rel = norm(mat_exp(1j * h) - eig_exp(h, 1j), NormKind.OPERATOR2)
    assert rel < 1e-10


def test_mat_exp_group_law():
    rng = np.random.default_rng(45)
    for _ in range(20):
        a = rand_complex(rng, 4)
        a /= norm(a, NormKind.OPERATOR2)
        s, t = rng.uniform(-1, 1, size=2)
        lhs = mat_mul(mat_exp(s * a), mat_exp(t * a))
        rhs = mat_exp((s + t) * a)
        assert norm(lhs - rhs, NormKind.OPERATOR2) < 1e-11


def test_mat_exp_unitary_for_hermitian_generator():
    rng = np.random.default_rng(46)
    for _ in range(20):
        a = rand_complex(rng, 4)
        h = (a + a.conj().T) / 2
        u = mat_exp(-1j * h)
        assert norm(u @ u.conj().T - np.eye(4), NormKind.OPERATOR2) < 1e-11


def test_norm_identity_values():
    assert norm(np.eye(2), NormKind.FROBENIUS) == pytest.approx(np.sqrt(2), rel=1e-15)
    assert norm(np.eye(2), NormKind.OPERATOR2) == pytest.approx(1.0, rel=1e-15)
    assert norm(X, NormKind.OPERATOR2) == pytest.approx(1.0, rel=1e-14)


def test_norm_operator_matches_gram_eigenvalue():
    rng = np.random.default_rng(47)
    for _ in range(20):
        a = rand_complex(rng, 5)
        want = np.sqrt(np.max(np.linalg.eigvalsh(a.conj().T @ a)))
        assert abs(norm(a, NormKind.OPERATOR2) - want) < 1e-10


def test_norm_submultiplicative():
    rng = np.random.default_rng(48)
    for _ in range(30):
        a, b = rand_complex(rng, 4), rand_complex(rng, 4)
        for kind in NormKind:
            assert norm(a @ b, kind) <= norm(a, kind) * norm(b, kind) * (1 + 1e-12)


def test_is_hermitian_cases():
    assert is_hermitian(Z)
    assert not is_hermitian(1j * Z)
    rng = np.random.default_rng(49)
    a = rand_complex(rng, 6)
    assert is_hermitian((a + a.conj().T) / 2, tol=1e-14)


def test_non_square_rejected():
    with pytest.raises(ValueError):
        norm(np.ones((2, 3)))
    with pytest.raises(ValueError):
        mat_exp(np.ones((2, 3)))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        mat_add(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        mat_mul(np.eye(2), np.eye(3))


def test_non_finite_rejected():
    bad = np.array([[np.nan, 0], [0, 1]], dtype=complex)
    with pytest.raises(ValueError):
        mat_exp(bad)
    with pytest.raises(ValueError):
        norm(np.array([[np.inf, 0], [0, 1]], dtype=complex))
