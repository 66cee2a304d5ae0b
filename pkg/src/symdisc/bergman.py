"""Bergman kernel of the symmetrized polydisc.

The kernel pulled back to root coordinates is the alternating sum of the
polydisc kernel over permutations, divided by the Jacobians of the
symmetrization map:

    K(pi(lam), pi(mu)) = det[(1 - lam_j conj(mu_k))^-2]
                         / (pi^n V(lam) conj(V(mu)))

with ``V(lam) = prod_{j<k} (lam_j - lam_k)``.  The quotient is 0/0 on the
critical set where two roots coincide, so three evaluation paths exist:

* ``kernel_general``  - the determinant quotient itself (generic points),
* ``kernel_closed2``  - a closed form for n = 2 in symmetrized coordinates,
* ``kernel_confluent`` - two-scale Richardson extrapolation of perturbed
  evaluations, for points near the critical set.

``kernel_permanent`` is an independent route (Borchardt's identity
``det(C*C) = det(C) per(C)`` for the Cauchy matrix ``C = 1/(1 - lam mu*)``)
that is regular everywhere; the test-suite uses it as an oracle.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import _backend
from ._parallel import run_chunks
from .errors import ConfluentInput, ExtrapolationUnstable
from .sympoly import as_tuple, roots_of, symmetrize

EPS = float(np.finfo(float).eps)
CONFLUENCE_THRESHOLD = 1e-4
PERTURBATION_SCALES = (1e-5, 2e-5)
# fixed direction for splitting coincident roots
PERTURBATION_DIRECTION = complex(math.cos(0.3), math.sin(0.3))
EXTRAPOLATION_TOL = 1e-6


class KernelPath(enum.Enum):
    GENERIC = "Generic"
    CONFLUENT = "Confluent"
    CLOSED_FORM2 = "ClosedForm2"


@dataclass(frozen=True)
class KernelValue:
    value: complex
    condition_estimate: float
    path: KernelPath

    def as_dict(self) -> dict:
        return {"value": self.value,
                "condition_estimate": self.condition_estimate,
                "path": self.path.value}


@dataclass(frozen=True)
class CriticalSetQuery:
    min_pair_separation: float
    threshold: float

    @property
    def confluent(self) -> bool:
        return self.min_pair_separation < self.threshold


def jacobian_det(lam) -> complex:
    """Determinant of the derivative of the symmetrization map at ``lam``."""
    lam = as_tuple(lam)
    out = 1 + 0j
    for j in range(lam.size):
        for k in range(j + 1, lam.size):
            out *= lam[j] - lam[k]
    return complex(out)


def critical_query(lam) -> CriticalSetQuery:
    lam = as_tuple(lam)
    thr = CONFLUENCE_THRESHOLD * (1.0 + float(np.abs(lam).max()))
    if lam.size < 2:
        return CriticalSetQuery(math.inf, thr)
    d = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(d, np.inf)
    return CriticalSetQuery(float(d.min()), thr)


def kernel_matrix(lam, mu) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    mu = np.asarray(mu, dtype=complex)
    return 1.0 / (1.0 - np.outer(lam, mu.conj())) ** 2


def _check_disc(*tuples):
    for t in tuples:
        if np.any(np.abs(t) >= 1.0):
            raise ValueError("root tuples must lie in the open unit polydisc")


def kernel_general(lam, mu) -> KernelValue:
    """Determinant formula at generic root tuples.

    Raises ``ConfluentInput`` if either tuple is within the confluence
    threshold of the critical set.
    """
    lam, mu = as_tuple(lam), as_tuple(mu)
    if lam.size != mu.size:
        raise ValueError("root tuples differ in length")
    _check_disc(lam, mu)
    ql, qm = critical_query(lam), critical_query(mu)
    if ql.confluent or qm.confluent:
        raise ConfluentInput(
            f"minimum root separation {min(ql.min_pair_separation, qm.min_pair_separation):.3e} "
            "is below the confluence threshold")
    n = lam.size
    m = kernel_matrix(lam, mu)
    det, growth = _backend.lu_det(m)
    jac = jacobian_det(lam) * jacobian_det(mu).conjugate()
    value = det / (math.pi ** n * jac)
    hadamard = float(np.prod(np.linalg.norm(m, axis=1)))
    cond = EPS * n * growth * hadamard / max(abs(det), np.finfo(float).tiny)
    for q, t in ((ql, lam), (qm, mu)):
        if n > 1:
            cond += EPS * n * n * (1.0 + float(np.abs(t).max())) / q.min_pair_separation
    return KernelValue(complex(value), float(cond), KernelPath.GENERIC)


def _closed2_parts(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z1, z2 = z[..., 0], z[..., 1]
    s, p = np.conj(w[..., 0]), np.conj(w[..., 1])
    num = 2.0 - z1 * s + 2.0 * z2 * p
    # prod_{i,j} (1 - lam_i conj(mu_j)) written in symmetric functions
    den = (1.0 - z1 * s + z2 * (s * s - 2.0 * p) + z1 * z1 * p
           - z1 * z2 * p * s + z2 * z2 * p * p)
    num_mag = 2.0 + np.abs(z1 * s) + 2.0 * np.abs(z2 * p)
    den_mag = (1.0 + np.abs(z1 * s) + np.abs(z2) * (np.abs(s) ** 2 + 2 * np.abs(p))
               + np.abs(z1) ** 2 * np.abs(p) + np.abs(z1 * z2 * p * s)
               + np.abs(z2 * p) ** 2)
    return num, den, num_mag, den_mag


def closed2_values(z, w) -> np.ndarray:
    """Vectorized n = 2 closed form over arrays of shape ``(..., 2)``."""
    num, den, _, _ = _closed2_parts(z, w)
    return num / (math.pi ** 2 * den * den)


def kernel_closed2(z, w) -> KernelValue:
    """Closed form for n = 2, evaluated directly in symmetrized coordinates.

    Numerator ``2 - z1 conj(w1) + 2 z2 conj(w2)`` over ``pi^2 D^2`` where
    ``D = prod (1 - lam_i conj(mu_j))`` is expanded in ``z`` and ``w`` so
    that no roots are needed and the formula is smooth across the
    critical set.
    """
    z, w = as_tuple(z), as_tuple(w)
    if z.size != 2 or w.size != 2:
        raise ValueError("closed form applies to n = 2 only")
    num, den, nm, dm = _closed2_parts(z, w)
    value = complex(num / (math.pi ** 2 * den * den))
    cond = 4 * EPS * (float(nm) / max(abs(num), 1e-300)
                      + 2.0 * float(dm) / max(abs(den), 1e-300))
    return KernelValue(value, float(cond), KernelPath.CLOSED_FORM2)


def _perturbation_offsets(t: np.ndarray) -> np.ndarray:
    # centred offsets (j - (m-1)/2) along a fixed direction for every cluster
    thr = CONFLUENCE_THRESHOLD * (1.0 + float(np.abs(t).max()))
    n = t.size
    labels = list(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(t[i] - t[j]) < thr and labels[i] != labels[j]:
                old, new = labels[j], labels[i]
                labels = [new if x == old else x for x in labels]
    off = np.zeros(n, dtype=complex)
    for lbl in set(labels):
        idx = [i for i in range(n) if labels[i] == lbl]
        m = len(idx)
        for r, i in enumerate(idx):
            off[i] = (r - (m - 1) / 2.0) * PERTURBATION_DIRECTION
    return off


def _kernel_mp(lam, mu) -> complex:
    # determinant quotient in enough precision to absorb the Vandermonde loss
    vl = abs(jacobian_det(lam)) or 1e-300
    vm = abs(jacobian_det(mu)) or 1e-300
    dps = 30 + int(math.ceil(max(0.0, -math.log10(vl) - math.log10(vm))))
    n = len(lam)
    with mpmath.workdps(dps):
        L = [mpmath.mpc(x.real, x.imag) for x in lam]
        M = [mpmath.mpc(x.real, -x.imag) for x in mu]
        mat = mpmath.matrix(n, n)
        for j in range(n):
            for k in range(n):
                mat[j, k] = 1 / (1 - L[j] * M[k]) ** 2
        det = mpmath.det(mat)
        vl_mp = mpmath.mpc(1)
        vm_mp = mpmath.mpc(1)
        for j in range(n):
            for k in range(j + 1, n):
                vl_mp *= L[j] - L[k]
                vm_mp *= M[j] - M[k]
        val = det / (mpmath.pi ** n * vl_mp * vm_mp)
        return complex(val)


def kernel_confluent(lam, mu, delegate: bool = True) -> KernelValue:
    """Analytic continuation of the determinant formula onto the critical set.

    Coincident roots (closer than the confluence threshold) are split by
    ``+-eps`` times centred offsets along a fixed direction; the average
    of the two signs is even in ``eps``, so two scales give a second-order
    Richardson extrapolation.  For n = 2 the closed form is used instead
    unless ``delegate`` is false.

    Raises
    ------
    ExtrapolationUnstable
        If the two scales disagree by more than ``EXTRAPOLATION_TOL``.
    """
    lam, mu = as_tuple(lam), as_tuple(mu)
    if lam.size != mu.size:
        raise ValueError("root tuples differ in length")
    _check_disc(lam, mu)
    if lam.size == 2 and delegate:
        return kernel_closed2(symmetrize(lam), symmetrize(mu))
    ol, om = _perturbation_offsets(lam), _perturbation_offsets(mu)

    def even_part(eps):
        plus = _kernel_mp(lam + eps * ol, mu + eps * om)
        minus = _kernel_mp(lam - eps * ol, mu - eps * om)
        return 0.5 * (plus + minus)

    e1, e2 = PERTURBATION_SCALES
    k1, k2 = even_part(e1), even_part(e2)
    scale = max(abs(k1), np.finfo(float).tiny)
    spread = abs(k1 - k2) / scale
    if spread > EXTRAPOLATION_TOL:
        raise ExtrapolationUnstable(
            f"perturbation scales disagree by {spread:.3e} (relative)")
    ratio = (e2 / e1) ** 2
    value = (ratio * k1 - k2) / (ratio - 1.0)
    cond = abs(value - k1) / max(abs(value), np.finfo(float).tiny) + 4 * EPS
    return KernelValue(complex(value), float(cond), KernelPath.CONFLUENT)


def kernel(lam, mu) -> KernelValue:
    """Route to the generic or confluent evaluation as appropriate."""
    lam, mu = as_tuple(lam), as_tuple(mu)
    if critical_query(lam).confluent or critical_query(mu).confluent:
        return kernel_confluent(lam, mu)
    return kernel_general(lam, mu)


def kernel_sym(z, w) -> KernelValue:
    """Kernel at symmetrized points; n = 2 uses the closed form."""
    z, w = as_tuple(z), as_tuple(w)
    if z.size == 2:
        return kernel_closed2(z, w)
    return kernel(roots_of(z), roots_of(w))


def kernel_permanent(lam, mu) -> complex:
    """Independent closed form ``per(C) / (pi^n prod(1 - lam_j conj(mu_k)))``.

    ``C = [1/(1 - lam_j conj(mu_k))]``.  Regular on the critical set.
    """
    lam, mu = as_tuple(lam), as_tuple(mu)
    c = 1.0 - np.outer(lam, mu.conj())
    return complex(_backend.permanent(1.0 / c) / (math.pi ** lam.size * np.prod(c)))


def lifted_jacobian(h, lam) -> complex:
    """Jacobian determinant of the lifted map at ``pi(lam)``.

    From ``f_h(pi(lam)) = pi(h(lam_1), ..., h(lam_n))`` and the chain rule:
    ``prod h'(lam_j) * V(h(lam)) / V(lam)``, with each factor
    ``(h(a) - h(b)) / (a - b)`` taken from ``h.divided_difference`` when
    available so that nothing cancels.
    """
    lam = as_tuple(lam)
    out = complex(np.prod(h.derivative(lam)))
    dd = getattr(h, "divided_difference", None)
    for j in range(lam.size):
        for k in range(j + 1, lam.size):
            if dd is not None:
                out *= dd(lam[j], lam[k])
            else:
                out *= (h(lam[j]) - h(lam[k])) / (lam[j] - lam[k])
    return out


def transformation_check(h, lam, mu) -> float:
    """Relative residual of the Bergman transformation rule under a disc automorphism."""
    lam, mu = as_tuple(lam), as_tuple(mu)
    hl, hm = np.asarray(h(lam), dtype=complex), np.asarray(h(mu), dtype=complex)
    lhs = (kernel(hl, hm).value * lifted_jacobian(h, lam)
           * lifted_jacobian(h, mu).conjugate())
    rhs = kernel(lam, mu).value
    return float(abs(lhs - rhs) / abs(rhs))


def _luqikeng_chunk(args):
    seed, size = args
    rng = np.random.default_rng(seed)

    def disc(shape):
        return np.sqrt(rng.uniform(size=shape)) * np.exp(2j * np.pi * rng.uniform(size=shape))

    lam = disc((size, 2))
    mu = disc((size, 2))
    # a quarter of the pairs sit on the slice mu_2 = 0, i.e. w_2 = 0
    mu[: size // 4, 1] = 0.0
    z = np.stack([lam.sum(1), lam.prod(1)], axis=1)
    w = np.stack([mu.sum(1), mu.prod(1)], axis=1)
    vals = closed2_values(z, w)
    mags = np.abs(vals)
    bad = ~np.isfinite(mags) | (mags <= 0.0)
    mags_ok = np.where(bad, np.inf, mags)
    i = int(np.argmin(mags_ok))
    return {"min": float(mags_ok[i]), "failures": int(bad.sum()),
            "z": z[i], "w": w[i], "lambda": lam[i], "mu": mu[i], "K": vals[i]}


def luqikeng_scan(count: int, seed=None, threads: int = 1,
                  chunk: int = 10_000) -> dict:
    """Search for zeros of the n = 2 kernel over random interior pairs."""
    if count < 1:
        raise ValueError("count must be >= 1")
    sizes = [chunk] * (count // chunk)
    if count % chunk:
        sizes.append(count % chunk)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    parts = run_chunks(_luqikeng_chunk, list(zip(seeds, sizes)), threads)
    best = min(parts, key=lambda r: r["min"])
    failures = sum(r["failures"] for r in parts)
    return {
        "count": count,
        "min_abs_K": best["min"],
        "argmin": {k: best[k] for k in ("z", "w", "lambda", "mu", "K")},
        "failures": failures,
        "passed": failures == 0 and best["min"] > 0.0,
    }
