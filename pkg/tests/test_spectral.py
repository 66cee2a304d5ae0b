import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symdisc.geometry import Region
from symdisc.spectral import (
    MatrixPolynomial,
    constant_spectrum_path,
    descent_check,
    fitted_scalar,
    in_spectral_ball,
    path_check,
    path_eval,
    psi,
    random_matrix,
    spectral_radius,
    spectral_radius_psi,
    spectrum_action_check,
)
from symdisc.sympoly import multiset_distance, symmetrize


def test_psi_examples():
    assert np.allclose(psi(np.diag([0.5, -0.5])), [0, -0.25])
    assert np.allclose(psi([[0, 1], [0, 0]]), [0, 0])


@given(st.integers(1, 6), st.integers(0, 2 ** 32 - 1))
def test_psi_matches_eigenvalues(n, seed):
    W = random_matrix(n, np.random.default_rng(seed)) * 2
    z = symmetrize(np.linalg.eigvals(W))
    assert np.abs(psi(W) - z).max() <= 1e-8 * (1 + np.abs(z).max())


def test_psi_similarity_invariant(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        W = random_matrix(n, rng)
        X = random_matrix(n, rng) + 2 * np.eye(n)
        if np.linalg.cond(X) > 1e3:
            continue
        Z = X @ W @ np.linalg.inv(X)
        assert np.abs(psi(Z) - psi(W)).max() <= 1e-8 * (1 + np.abs(psi(W)).max())


def test_spectral_radius_examples():
    assert spectral_radius(np.diag([0.5, -0.5])) == pytest.approx(0.5)
    J = [[0.9, 1], [0, 0.9]]
    assert spectral_radius(J) == pytest.approx(0.9)
    assert spectral_radius_psi(J) == pytest.approx(0.9, abs=1e-12)


def test_spectral_radius_routes_agree(rng):
    for _ in range(100):
        W = random_matrix(int(rng.integers(1, 7)), rng) * rng.uniform(0.1, 3)
        assert spectral_radius_psi(W) == pytest.approx(spectral_radius(W), rel=1e-8)


def test_spectral_ball_examples():
    assert in_spectral_ball(np.zeros((3, 3))).region is Region.INTERIOR
    assert in_spectral_ball(np.eye(3)).region is not Region.INTERIOR


def test_spectral_ball_matches_radius(rng):
    for _ in range(500):
        W = random_matrix(int(rng.integers(1, 7)), rng, 2 * rng.uniform())
        r = spectral_radius(W)
        if abs(r - 1) > 1e-8:
            assert (in_spectral_ball(W).region is Region.INTERIOR) == (r < 1)


def test_path_diagonal_is_constant():
    W = np.diag([0.3, -0.2j, 0.5]).astype(complex)
    P = constant_spectrum_path(W)
    assert not np.any(P.generator)
    for t in (0, 0.3, 1, 2j):
        assert np.array_equal(path_eval(P, t), W)


def test_path_nilpotent():
    W = np.array([[0, 1], [0, 0]], dtype=complex)
    P = constant_spectrum_path(W)
    assert np.array_equal(P(0), np.zeros((2, 2)))
    assert np.array_equal(P(1), W)
    for t in (0.25, 0.5, 0.75, 1j):
        assert np.allclose(psi(P(t)), [0, 0])


def test_path_random(rng):
    grid = (0, 0.25, 0.5, 0.75, 1)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        W = random_matrix(n, rng) * rng.uniform(0.1, 3)
        r = path_check(W, grid)
        assert r["start_residual"] <= 1e-10 * r["norm"]
        assert r["end_residual"] <= 1e-8 * r["norm"]
        assert r["spectrum_drift"] <= 1e-7 * (1 + r["norm"])
        assert r["psi_drift"] <= 1e-8 * (1 + r["norm"]) ** n


def test_path_generator_is_skew_hermitian(rng):
    P = constant_spectrum_path(random_matrix(4, rng))
    assert np.abs(P.generator + P.generator.conj().T).max() <= 1e-12


def test_path_complex_parameter_keeps_spectrum(rng):
    W = random_matrix(3, rng)
    P = constant_spectrum_path(W)
    sigma = np.linalg.eigvals(W)
    for t in (0.5j, 1 + 1j, -2.0):
        assert multiset_distance(np.linalg.eigvals(P(t)), sigma) <= 1e-8


def test_matrix_polynomial_and_scalar():
    F = MatrixPolynomial((0, 0, 1))
    W = np.array([[0.2, 1], [0, 0.3]])
    assert np.allclose(F(W), W @ W)
    assert F.scalar(0.5) == 0.25
    X = np.array([[2, 1], [0, 1]], dtype=complex)
    G = MatrixPolynomial((0, 0, 1), X)
    assert np.allclose(G(W), X @ W @ W @ np.linalg.inv(X))


def test_descent_examples(rng):
    W = random_matrix(2, rng, 0.8)
    lam = np.linalg.eigvals(W)
    assert np.allclose(psi(MatrixPolynomial((0, 0, 1))(W)), symmetrize(lam ** 2))
    half = MatrixPolynomial((0, 0.5))
    assert np.allclose(np.sort_complex(np.linalg.eigvals(half(W))), np.sort_complex(0.5 * lam))
    rep = descent_check(MatrixPolynomial((0, 0.3, 0.4)), 3, 300, seed=2)
    assert rep["passed"] and rep["image_outside_ball"] == 0


def test_descent_reports_escapes():
    rep = descent_check(MatrixPolynomial((0, 3.0)), 2, 200, seed=1)
    assert rep["passed"] and rep["image_outside_ball"] > 0


def test_spectrum_action(rng):
    sq = MatrixPolynomial((0, 0, 1))
    assert spectrum_action_check(sq, lambda x: x ** 2, 3, 200, seed=1)["passed"]
    assert spectrum_action_check(MatrixPolynomial((0, 1)), lambda x: x, 3, 200, seed=1)["passed"]
    X = random_matrix(3, rng) + 2 * np.eye(3)
    conj = MatrixPolynomial((0, 0, 1), X)
    assert spectrum_action_check(conj, lambda x: x ** 2, 3, 200, seed=1)["passed"]
    rep = spectrum_action_check(conj, "unknown", 3, 200, seed=1)
    assert rep["passed"] and rep["fitted"]


def test_spectrum_action_detects_wrong_scalar():
    rep = spectrum_action_check(MatrixPolynomial((0, 0, 1)), lambda x: x ** 3, 2, 50, seed=1)
    assert not rep["passed"]


def test_fitted_scalar_recovers_polynomial():
    F = MatrixPolynomial((0.1, 0.3, 0.4j), np.array([[1, 2], [0, 1]], dtype=complex))
    B = fitted_scalar(F, 2)
    x = np.array([0.2, -0.5j])
    assert np.allclose(B(x), F.scalar(x))


def test_bad_matrices_rejected():
    with pytest.raises(ValueError):
        psi(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        psi([[np.nan]])
