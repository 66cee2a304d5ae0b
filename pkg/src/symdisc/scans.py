"""Randomized verification campaigns.

Every scan takes ``count`` and ``seed``, splits the work into fixed-size
chunks with seeds spawned from one ``SeedSequence``, and merges the chunk
results in order, so the report is identical for any thread count.  A
report is a plain dict with a boolean ``passed`` and enough of the worst
sample to replay it.
"""
from __future__ import annotations

import math

import numpy as np

from ._parallel import run_chunks
from .bergman import (
    closed2_values,
    jacobian_det,
    kernel_general,
    luqikeng_scan,
    transformation_check,
)
from .errors import NonConvergence
from .geometry import (
    AGREEMENT_BAND,
    Region,
    TestPolynomial,
    exhaustion,
    max_modulus_check,
    sample_roots,
)
from .maps import MoebiusMap, automorphism, inverse_automorphism, properness_scan
from .spectral import (
    MatrixPolynomial,
    descent_check,
    in_spectral_ball,
    path_check,
    psi,
    random_matrix,
    spectrum_action_check,
)
from .sympoly import (
    DEFAULT_MARGIN,
    Stability,
    from_sympoint,
    multiset_distance,
    roots_of,
    schur_stable,
    symmetrize,
)

CHUNK = 1000


def _chunks(count, seed, chunk=CHUNK):
    if count < 1:
        raise ValueError("count must be >= 1")
    sizes = [chunk] * (count // chunk)
    if count % chunk:
        sizes.append(count % chunk)
    return list(zip(np.random.SeedSequence(seed).spawn(len(sizes)), sizes))


def _disc(rng, shape, radius=1.0):
    return radius * np.sqrt(rng.uniform(size=shape)) * np.exp(2j * np.pi * rng.uniform(size=shape))


def _separation(lam):
    if lam.size < 2:
        return math.inf
    d = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _worst(parts, key):
    return max(parts, key=lambda p: p[key])


# -- polynomial core ---------------------------------------------------------

def _roundtrip_chunk(args):
    (ss, size), n_max, min_sep = args
    rng = np.random.default_rng(ss)
    worst, witness = 0.0, None
    for _ in range(size):
        n = int(rng.integers(1, n_max + 1))
        while True:
            lam = _disc(rng, n, 2.0)
            if _separation(lam) >= min_sep:
                break
        d = multiset_distance(roots_of(symmetrize(lam)), lam)
        if d >= worst:
            worst, witness = d, lam
    return {"worst": worst, "witness": witness}


def roundtrip_scan(n_max=8, count=10_000, seed=None, threads=1,
                   min_separation=1e-3, tol=1e-8) -> dict:
    """``roots_of(symmetrize(lam))`` against ``lam`` for separated tuples, ``|lam_j| <= 2``."""
    items = [(c, n_max, min_separation) for c in _chunks(count, seed)]
    parts = run_chunks(_roundtrip_chunk, items, threads)
    w = _worst(parts, "worst")
    return {"scan": "roundtrip", "n_max": n_max, "count": count, "tolerance": tol,
            "max_distance": w["worst"], "witness": w["witness"],
            "passed": bool(w["worst"] <= tol)}


def _random_test_poly(rng, n):
    kind = rng.integers(3)
    if kind == 0:
        lam = _disc(rng, n, 1.3)
    elif kind == 1:
        # roots straddling the unit circle at distances down to 1e-8
        mods = 1.0 + rng.choice([-1.0, 1.0], size=n) * 10.0 ** rng.uniform(-8, -1, size=n)
        lam = mods * np.exp(2j * np.pi * rng.uniform(size=n))
    else:
        return (rng.normal(size=n) + 1j * rng.normal(size=n)) / math.sqrt(2 * n)
    return from_sympoint(symmetrize(lam))


def _oracle_chunk(args):
    (ss, size), n_max, margin = args
    rng = np.random.default_rng(ss)
    band = max(10.0 * margin, AGREEMENT_BAND)
    out = {"schur_checked": 0, "schur_disagree": 0, "root_failures": 0,
           "psi_worst": 0.0, "ball_checked": 0, "ball_disagree": 0,
           "witnesses": []}
    for _ in range(size):
        n = int(rng.integers(1, n_max + 1))
        a = _random_test_poly(rng, n)
        try:
            rmax = float(np.abs(roots_of(from_sympoint(a))).max())
        except NonConvergence:
            out["root_failures"] += 1
            out["witnesses"].append({"kind": "roots", "coefficients": a})
            continue
        if abs(rmax - (1.0 - margin)) > band:
            out["schur_checked"] += 1
            inside = schur_stable(a, margin) is Stability.INSIDE
            if inside != (rmax < 1.0 - margin):
                out["schur_disagree"] += 1
                out["witnesses"].append({"kind": "schur-cohn", "coefficients": a,
                                         "max_root_modulus": rmax})

        W = random_matrix(n, rng, 2.0 * rng.uniform())
        ev = np.linalg.eigvals(W)
        z_eig = symmetrize(ev)
        err = float(np.abs(psi(W) - z_eig).max()) / (1.0 + float(np.abs(z_eig).max()))
        if err > out["psi_worst"]:
            out["psi_worst"] = err
            out["psi_witness"] = W
        r = float(np.abs(ev).max())
        if abs(r - 1.0) > band:
            out["ball_checked"] += 1
            interior = in_spectral_ball(W, margin).region is Region.INTERIOR
            if interior != (r < 1.0):
                out["ball_disagree"] += 1
                out["witnesses"].append({"kind": "spectral-ball", "matrix": W,
                                         "spectral_radius": r})
    return out


def oracle_equivalence_scan(n=6, count=10_000, seed=None, threads=1,
                            margin=DEFAULT_MARGIN, psi_tol=1e-8) -> dict:
    """Cross-check the coefficient-side routes against root and eigenvalue oracles.

    Degrees cycle over ``1..n``.  Polynomials or matrices whose root or
    spectral radius falls inside the fuzz band are skipped.
    """
    items = [(c, n, margin) for c in _chunks(count, seed)]
    parts = run_chunks(_oracle_chunk, items, threads)
    total = {k: sum(p[k] for p in parts)
             for k in ("schur_checked", "schur_disagree", "root_failures",
                       "ball_checked", "ball_disagree")}
    pw = _worst(parts, "psi_worst")
    witnesses = [w for p in parts for w in p["witnesses"]][:20]
    passed = (total["schur_disagree"] == 0 and total["root_failures"] == 0
              and total["ball_disagree"] == 0 and pw["psi_worst"] <= psi_tol)
    return {"scan": "oracle-equivalence", "n": n, "count": count, "margin": margin,
            **total, "psi_max_error": pw["psi_worst"],
            "psi_witness": pw.get("psi_witness"), "witnesses": witnesses,
            "passed": bool(passed)}


# -- kernel ------------------------------------------------------------------

def _generic_pairs(rng, size, min_sep):
    lam = np.empty((size, 2), dtype=complex)
    mu = np.empty((size, 2), dtype=complex)
    filled = 0
    while filled < size:
        a, b = _disc(rng, (size, 2)), _disc(rng, (size, 2))
        ok = (np.abs(a[:, 0] - a[:, 1]) >= min_sep) & (np.abs(b[:, 0] - b[:, 1]) >= min_sep)
        take = min(size - filled, int(ok.sum()))
        lam[filled:filled + take] = a[ok][:take]
        mu[filled:filled + take] = b[ok][:take]
        filled += take
    return lam, mu


def _formula_chunk(args):
    (ss, size), min_sep = args
    rng = np.random.default_rng(ss)
    lam, mu = _generic_pairs(rng, size, min_sep)
    z = np.stack([lam.sum(1), lam.prod(1)], axis=1)
    w = np.stack([mu.sum(1), mu.prod(1)], axis=1)
    closed = closed2_values(z, w)
    worst, witness = 0.0, None
    for i in range(size):
        g = kernel_general(lam[i], mu[i]).value
        rel = float(abs(g - closed[i]) / abs(closed[i]))
        if rel >= worst:
            worst, witness = rel, {"lambda": lam[i], "mu": mu[i], "general": g,
                                   "closed_form": closed[i]}
    return {"worst": worst, "witness": witness}


def formula_scan(count=10_000, seed=None, threads=1, min_separation=1e-3,
                 tol=1e-10) -> dict:
    """Determinant quotient against the n = 2 closed form on generic pairs."""
    items = [(c, min_separation) for c in _chunks(count, seed)]
    w = _worst(run_chunks(_formula_chunk, items, threads), "worst")
    return {"scan": "formula", "count": count, "min_separation": min_separation,
            "tolerance": tol, "max_relative_error": w["worst"],
            "witness": w["witness"], "passed": bool(w["worst"] <= tol)}


def _fd_jacobian(lam, h):
    n = lam.size
    J = np.empty((n, n), dtype=complex)
    for j in range(n):
        step = np.zeros(n, dtype=complex)
        step[j] = h
        J[:, j] = (symmetrize(lam + step) - symmetrize(lam - step)) / (2 * h)
    return J


def _jacobian_chunk(args):
    (ss, size), n = args
    rng = np.random.default_rng(ss)
    worst, witness = 0.0, None
    for _ in range(size):
        lam = _disc(rng, n)
        exact = jacobian_det(lam)
        fd = np.linalg.det(_fd_jacobian(lam, 1e-5))
        rel = float(abs(fd - exact) / abs(exact))
        if rel >= worst:
            worst, witness = rel, lam
    return {"worst": worst, "witness": witness}


def jacobian_scan(n, count=1000, seed=None, threads=1, tol=1e-6) -> dict:
    """Vandermonde product against a central-difference Jacobian determinant."""
    items = [(c, n) for c in _chunks(count, seed)]
    w = _worst(run_chunks(_jacobian_chunk, items, threads), "worst")
    return {"scan": "jacobian", "n": n, "count": count, "tolerance": tol,
            "max_relative_error": w["worst"], "witness": w["witness"],
            "passed": bool(w["worst"] <= tol)}


def luqikeng(count=100_000, seed=None, threads=1) -> dict:
    return {"scan": "luqikeng", "n": 2, **luqikeng_scan(count, seed, threads)}


def _transformation_chunk(args):
    (ss, size), n = args
    rng = np.random.default_rng(ss)
    out = {"kernel": 0.0, "roundtrip": 0.0, "composition": 0.0, "witness": None}
    for _ in range(size):
        h = MoebiusMap.random(rng)
        g = MoebiusMap.random(rng)
        lam, mu = _disc(rng, n, 0.95), _disc(rng, n, 0.95)
        res = transformation_check(h, lam, mu)
        if res >= out["kernel"]:
            out["kernel"] = res
            out["witness"] = {"alpha": h.alpha, "factor": h.factor,
                              "lambda": lam, "mu": mu}
        z = symmetrize(lam)
        scale = 1.0 + float(np.abs(z).max())
        back = inverse_automorphism(h, n)(automorphism(h, n)(z))
        out["roundtrip"] = max(out["roundtrip"], float(np.abs(back - z).max()) / scale)
        two = automorphism(g, n)(automorphism(h, n)(z))
        one = automorphism(g.compose(h), n)(z)
        out["composition"] = max(out["composition"],
                                 float(np.abs(two - one).max()) / (1.0 + float(np.abs(one).max())))
    return out


def transformation_scan(n, count=1000, seed=None, threads=1,
                        kernel_tol=1e-8, lift_tol=1e-9) -> dict:
    """Kernel transformation rule and lifted-automorphism group law."""
    items = [(c, n) for c in _chunks(count, seed)]
    parts = run_chunks(_transformation_chunk, items, threads)
    k = _worst(parts, "kernel")
    rt = max(p["roundtrip"] for p in parts)
    comp = max(p["composition"] for p in parts)
    return {"scan": "transformation", "n": n, "count": count,
            "kernel_residual": k["kernel"], "kernel_witness": k["witness"],
            "roundtrip_residual": rt, "composition_residual": comp,
            "passed": bool(k["kernel"] <= kernel_tol and rt <= lift_tol
                           and comp <= lift_tol)}


# -- geometry ----------------------------------------------------------------

def hyperconvexity_scan(n, count=1000, steps=20, seed=None) -> dict:
    """Exhaustion is negative inside and increases along rays ``r * omega``."""
    rng = np.random.default_rng(seed)
    inner = sample_roots("interior", n, count, rng=rng)
    values = np.array([exhaustion(symmetrize(lam)) for lam in inner])
    nonneg = int(np.sum(values >= 0))
    radii = np.linspace(0.05, 0.95, steps)
    bad_rays, witness = 0, None
    for _ in range(count):
        omega = _disc(rng, n)
        omega /= np.abs(omega).max()
        prof = np.array([exhaustion(symmetrize(r * omega)) for r in radii])
        if not np.all(np.diff(prof) > 0):
            bad_rays += 1
            witness = omega
    return {"scan": "hyperconvexity", "n": n, "count": count, "steps": steps,
            "max_interior_exhaustion": float(values.max()),
            "nonnegative_interior": nonneg, "non_monotone_rays": bad_rays,
            "ray_witness": witness,
            "passed": nonneg == 0 and bad_rays == 0}


def max_modulus_scan(n, functions=20, count=10_000, degree=3, seed=None) -> dict:
    """Interior versus Shilov maxima of random polynomial test functions."""
    ss = np.random.SeedSequence(seed)
    reports = []
    for child in ss.spawn(functions):
        rng = np.random.default_rng(child)
        f = TestPolynomial.random(n, degree, rng)
        rep = max_modulus_check(f, n, count, seed=rng.integers(2 ** 63))
        d = rep.as_dict()
        d["terms"] = [{"exponents": list(k), "coeff": v} for k, v in f.terms.items()]
        reports.append(d)
    return {"scan": "max-modulus", "n": n, "functions": functions,
            "count": count, "reports": reports,
            "passed": all(r["passed"] for r in reports)}


# -- maps and matrices ---------------------------------------------------------

def properness(B, n, epsilon_grid=(1e-1, 1e-2, 1e-3, 1e-4), count=500, seed=None) -> dict:
    rep = properness_scan(B, n, epsilon_grid, count, seed)
    return {"scan": "properness", "map": B.to_dict(), "count": count, **rep.as_dict()}


def path_scan(n_max=6, count=1000, seed=None, threads=1,
              end_tol=1e-8, drift_tol=1e-7) -> dict:
    """Endpoint and spectrum-constancy residuals over random matrices."""
    rng = np.random.default_rng(seed)
    worst = {"start": 0.0, "end": 0.0, "drift": 0.0}
    witness = None
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        W = random_matrix(n, rng) * rng.uniform(0.1, 3.0)
        r = path_check(W)
        rel = {"start": r["start_residual"] / r["norm"],
               "end": r["end_residual"] / r["norm"],
               "drift": r["spectrum_drift"] / (1.0 + r["norm"])}
        if rel["end"] > worst["end"] or rel["drift"] > worst["drift"]:
            witness = W
        worst = {k: max(worst[k], rel[k]) for k in worst}
    passed = worst["start"] <= end_tol and worst["end"] <= end_tol and worst["drift"] <= drift_tol
    return {"scan": "path", "n_max": n_max, "count": count,
            "start_residual": worst["start"], "end_residual": worst["end"],
            "spectrum_drift": worst["drift"], "witness": witness,
            "passed": bool(passed)}


DEFAULT_MATRIX_MAP = MatrixPolynomial((0.0, 0.3, 0.4))


def descent(n, count=1000, seed=None, F=DEFAULT_MATRIX_MAP) -> dict:
    return {"scan": "descent", "map": F.to_dict(), **descent_check(F, n, count, seed)}


def spectrum_action(n, count=1000, seed=None, F=DEFAULT_MATRIX_MAP, B=None) -> dict:
    target = F.scalar if B is None else B
    rep = spectrum_action_check(F, target, n, count, seed)
    return {"scan": "spectrum-action", "map": F.to_dict(), **rep}

