"""The spectral ball: matrices with spectral radius below one.

A matrix is sent to the symmetrized polydisc by ``psi(W) = pi(sigma(W))``,
computed from characteristic-polynomial coefficients so that it never
depends on an eigensolver.  Eigenvalues are used only as an independent
oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import LinAlgError, expm, schur

from . import _backend
from .errors import DecompositionFailure
from .geometry import MembershipVerdict, classify, exhaustion
from .sympoly import DEFAULT_MARGIN, match_multisets, symmetrize, to_sympoint

DESCENT_TOL = 1e-7
ACTION_TOL = 1e-7


def as_matrix(W) -> np.ndarray:
    W = np.asarray(W, dtype=complex)
    if W.ndim != 2 or W.shape[0] != W.shape[1] or W.shape[0] == 0:
        raise ValueError("expected a non-empty square matrix")
    if not np.all(np.isfinite(W)):
        raise ValueError("matrix entries must be finite")
    return W


def psi(W) -> np.ndarray:
    """Symmetrized spectrum from the Faddeev-LeVerrier coefficients."""
    return to_sympoint(_backend.charpoly(as_matrix(W)))


def spectral_radius(W) -> float:
    return float(np.abs(np.linalg.eigvals(as_matrix(W))).max())


def spectral_radius_psi(W) -> float:
    """Spectral radius through ``exp(exhaustion(psi(W)))``."""
    return math.exp(exhaustion(psi(W)))


def in_spectral_ball(W, margin: float = DEFAULT_MARGIN) -> MembershipVerdict:
    return classify(psi(W), margin)


@dataclass(frozen=True)
class SpectrumPath:
    """``t -> exp(tY) S(t) exp(-tY)`` with ``S(t) = diag(lam) + t * upper``.

    ``path(0)`` is the diagonal matrix of eigenvalues and ``path(1)`` the
    original matrix; the spectrum is the same for every complex ``t``.
    """

    generator: np.ndarray
    eigenvalues: np.ndarray
    upper: np.ndarray
    unitary: np.ndarray

    def __call__(self, t) -> np.ndarray:
        return path_eval(self, t)


def _unitary_log(Q: np.ndarray) -> np.ndarray:
    # Q is normal, so its complex Schur form is diagonal up to rounding
    D, U = schur(Q, output="complex")
    d = np.diag(D)
    return (U * (1j * np.angle(d))) @ U.conj().T


def constant_spectrum_path(W) -> SpectrumPath:
    W = as_matrix(W)
    if not np.any(np.tril(W, -1)):
        # already triangular: no similarity needed
        return SpectrumPath(np.zeros_like(W), np.diag(W).copy(), np.triu(W, 1),
                            np.eye(W.shape[0], dtype=complex))
    try:
        T, Q = schur(W, output="complex")
    except (LinAlgError, ValueError) as exc:
        raise DecompositionFailure(str(exc)) from exc
    if not (np.all(np.isfinite(T)) and np.all(np.isfinite(Q))):
        raise DecompositionFailure("Schur form is not finite")
    return SpectrumPath(_unitary_log(Q), np.diag(T).copy(), np.triu(T, 1), Q)


def path_eval(P: SpectrumPath, t) -> np.ndarray:
    t = complex(t)
    S = np.diag(P.eigenvalues) + t * P.upper
    if not np.any(P.generator):
        return S
    E = expm(t * P.generator)
    Einv = expm(-t * P.generator)
    return E @ S @ Einv


@dataclass(frozen=True)
class MatrixPolynomial:
    """``F(W) = X (sum_k coeffs[k] W^k) X^-1``; ``X`` defaults to the identity."""

    coeffs: tuple
    conjugator: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if self.conjugator is not None:
            X = as_matrix(self.conjugator)
            object.__setattr__(self, "conjugator", X)

    def __call__(self, W) -> np.ndarray:
        W = as_matrix(W)
        n = W.shape[0]
        out = np.zeros_like(W)
        for c in reversed(self.coeffs):
            out = out @ W + c * np.eye(n)
        if self.conjugator is not None:
            X = self.conjugator
            out = X @ np.linalg.solve(X.T, out.T).T
        return out

    def scalar(self, lam):
        """The induced scalar map ``lam -> sum_k coeffs[k] lam^k``."""
        out = np.polyval(self.coeffs[::-1], np.asarray(lam, dtype=complex))
        return out if np.ndim(out) else complex(out)

    def to_dict(self) -> dict:
        d = {"type": "matrix-polynomial", "coeffs": list(self.coeffs)}
        if self.conjugator is not None:
            d["conjugator"] = self.conjugator
        return d


def random_matrix(n: int, rng, radius: float | None = None) -> np.ndarray:
    """Complex Gaussian matrix, rescaled to spectral radius ``radius`` if given."""
    G = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2 * n)
    if radius is not None:
        r = spectral_radius(G)
        if r > 0:
            G = G * (radius / r)
    return G


def random_ball_matrix(n: int, rng, rmax: float = 0.99) -> np.ndarray:
    return random_matrix(n, rng, rmax * rng.uniform())


def _percentiles(values) -> dict:
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return {}
    p = np.percentile(v, [50, 90, 99, 100])
    return {"p50": float(p[0]), "p90": float(p[1]), "p99": float(p[2]), "max": float(p[3])}


def _descent_residual(F, W):
    lam = np.linalg.eigvals(W)
    lhs = psi(F(W))
    rhs = psi(F(np.diag(lam)))
    scale = 1.0 + float(np.abs(rhs).max())
    return float(np.abs(lhs - rhs).max()) / scale


def descent_check(F: Callable, n: int, count: int = 1000, seed=None,
                  tol: float = DESCENT_TOL) -> dict:
    """Check ``psi(F(W)) == psi(F(diag(sigma(W))))`` on random ``W`` in the ball.

    Samples whose image leaves the ball are counted but do not fail the
    check.
    """
    rng = np.random.default_rng(seed)
    residuals, escapes = [], 0
    worst, worst_W = -1.0, None
    for _ in range(count):
        W = random_ball_matrix(n, rng)
        res = _descent_residual(F, W)
        if spectral_radius(F(W)) >= 1.0:
            escapes += 1
        residuals.append(res)
        if res > worst:
            worst, worst_W = res, W
    return {
        "n": n, "count": count, "tolerance": tol,
        "residuals": _percentiles(residuals),
        "image_outside_ball": escapes,
        "worst_witness": worst_W,
        "passed": bool(worst <= tol),
    }


def fitted_scalar(F: Callable, n: int) -> Callable:
    """Scalar candidate ``lam -> trace(F(lam I)) / n``."""
    eye = np.eye(n, dtype=complex)

    def B(lam):
        lam = np.asarray(lam, dtype=complex)
        out = np.array([np.trace(F(x * eye)) / n for x in lam.reshape(-1)])
        return out.reshape(lam.shape) if lam.ndim else complex(out[0])
    return B


def spectrum_action_check(F: Callable, B_expected, n: int, count: int = 1000,
                          seed=None, tol: float = ACTION_TOL) -> dict:
    """Test whether ``sigma(F(W))`` is ``B`` applied entrywise to ``sigma(W)``.

    ``B_expected="unknown"`` fits ``B`` from ``F`` acting on scalar
    matrices and reports how consistently that fit explains every sample.
    """
    fitted = isinstance(B_expected, str)
    if fitted and B_expected != "unknown":
        raise ValueError("B_expected must be callable or 'unknown'")
    B = fitted_scalar(F, n) if fitted else B_expected
    rng = np.random.default_rng(seed)
    dists, worst, witness = [], -1.0, None
    for _ in range(count):
        W = random_ball_matrix(n, rng)
        lam = np.linalg.eigvals(W)
        image = np.linalg.eigvals(F(W))
        target = np.asarray(B(lam), dtype=complex)
        _, d = match_multisets(target, image)
        d /= 1.0 + float(np.abs(target).max())
        dists.append(d)
        if d > worst:
            worst, witness = d, W
    return {
        "n": n, "count": count, "tolerance": tol, "fitted": fitted,
        "distances": _percentiles(dists),
        "worst_witness": witness,
        "passed": bool(worst <= tol),
    }


def path_check(W, grid=(0.0, 0.25, 0.5, 0.75, 1.0)) -> dict:
    """Endpoint and spectrum-constancy residuals of the constant-spectrum path."""
    W = as_matrix(W)
    P = constant_spectrum_path(W)
    norm = float(np.linalg.norm(W, 2))
    sigma = np.linalg.eigvals(W)
    start = float(np.abs(path_eval(P, 0.0) - np.diag(P.eigenvalues)).max())
    end = float(np.linalg.norm(path_eval(P, 1.0) - W, 2))
    drift = 0.0
    z0 = symmetrize(P.eigenvalues)
    psi_drift = 0.0
    for t in grid:
        M = path_eval(P, t)
        drift = max(drift, match_multisets(np.linalg.eigvals(M), sigma)[1])
        psi_drift = max(psi_drift, float(np.abs(psi(M) - z0).max()))
    return {"norm": norm, "start_residual": start, "end_residual": end,
            "spectrum_drift": drift, "psi_drift": psi_drift}
