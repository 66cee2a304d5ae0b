"""Complex-polynomial core.

Three coordinate systems describe the same object:

* a root tuple ``lam`` (unordered, length n),
* a symmetrized point ``z`` with ``z[k-1] = e_k(lam)``,
* monic coefficients ``a`` of ``t^n + a_1 t^(n-1) + ... + a_n``.

The sign convention ``a_k = (-1)^k z_k`` is fixed throughout the package;
nothing else stores alternating-sign coordinates.  All values are plain
``complex128`` numpy arrays.
"""
from __future__ import annotations

import enum

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _backend
from .errors import NonConvergence

DEFAULT_MARGIN = 1e-9
DEGENERACY_TOL = 1e-12
MAXITER = 500
# reconstruction error above which simple roots are polished as a set
RECON_POLISH = 1e-13


class Stability(enum.Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


_VERDICTS = (Stability.INSIDE, Stability.BOUNDARY, Stability.OUTSIDE)


def as_tuple(x) -> np.ndarray:
    """Validate a root tuple or symmetrized point and return it as an array."""
    arr = np.asarray(x, dtype=complex).reshape(-1)
    if arr.size == 0:
        raise ValueError("need at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def _signs(n: int) -> np.ndarray:
    return np.where(np.arange(1, n + 1) % 2 == 1, -1.0, 1.0)


def symmetrize(lam) -> np.ndarray:
    """Elementary symmetric functions ``(e_1(lam), ..., e_n(lam))``."""
    return _backend.esym(as_tuple(lam))


def from_sympoint(z) -> np.ndarray:
    """Monic coefficients ``a_k = (-1)^k z_k``."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    return z * _signs(z.size)


def to_sympoint(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex).reshape(-1)
    return a * _signs(a.size)


def poly_roots(a, tol: float = 1e-10, maxiter: int = MAXITER) -> np.ndarray:
    """Roots of the monic polynomial with coefficients ``a``.

    Aberth-Ehrlich simultaneous iteration started on the Cauchy-bound
    circle, followed by a guarded Newton polish and cluster refinement
    (see ``_refine_clusters``).

    Raises
    ------
    NonConvergence
        If the componentwise backward error of some root, or the relative
        coefficient reconstruction error, exceeds ``tol``.
    """
    a = as_tuple(a)
    # exact zero roots from vanishing trailing coefficients stay exact
    m = a.size
    while m > 0 and a[m - 1] == 0:
        m -= 1
    roots = np.zeros(a.size, dtype=complex)
    if m:
        core, _, _ = _backend.aberth(a[:m], tol, maxiter)
        if not np.all(np.isfinite(core)):
            raise NonConvergence("root iteration diverged", float("inf"))
        roots[:m] = _refine_clusters(a[:m], core)
    residual = _residual(a, roots)
    if residual > tol:
        raise NonConvergence("root iteration missed tolerance", residual)
    return roots


def _recon_error(a, roots):
    recon = from_sympoint(_backend.esym(roots))
    return float(np.max(np.abs(recon - a)) / (1.0 + np.max(np.abs(a))))


def _residual(a, roots):
    return max(_backward_error(a, roots), _recon_error(a, roots))


def _backward_error(a, roots):
    c = np.concatenate(([1.0 + 0j], a))
    vals = np.abs(np.polyval(c, roots))
    bound = np.polyval(np.abs(c), np.abs(roots))
    ratio = np.divide(vals, bound, out=np.zeros_like(vals), where=bound > 0)
    return float(np.max(ratio))


def _cluster_radii(c, x, m_max):
    # perturbation radius of an m-fold root at x: (eps B(x) m! / |p^(m)(x)|)^(1/m)
    eps = np.finfo(float).eps
    bound = np.polyval(np.abs(c), np.abs(x))
    out = {}
    d = c
    fact = 1.0
    for m in range(1, m_max + 1):
        d = np.polyder(d)
        fact *= m
        if m < 2:
            continue
        dm = np.abs(np.polyval(d, x))
        with np.errstate(divide="ignore"):
            out[m] = (eps * bound * fact / dm) ** (1.0 / m)
    return out


def cluster_partitions(roots, coeffs=None, factor: float = 8.0) -> list[list[list[int]]]:
    """Candidate groupings of numerically indistinguishable roots.

    A root of multiplicity m is resolved only to about
    ``(eps * B / |p^(m)|)**(1/m)``, where ``B`` bounds the rounding in
    evaluating ``p``.  Roots are merged in single-linkage order; every
    level of that hierarchy whose groups all have diameter below
    ``factor`` times the radius for their size is returned, finest first.
    Without ``coeffs`` the radius falls back to ``(eps * scale)**(1/m)``.
    """
    r = np.asarray(roots, dtype=complex).reshape(-1)
    n = r.size
    if n < 2:
        return []
    eps = np.finfo(float).eps
    c = None if coeffs is None else np.concatenate(([1.0 + 0j], np.asarray(coeffs, complex)))

    def radius(x, m):
        if c is None:
            return (eps * max(1.0, float(np.max(np.abs(x))))) ** (1.0 / m)
        return float(_cluster_radii(c, x, m)[m])

    # prefilter: a group of m around root i needs its (m-1)-th nearest
    # neighbour within reach of the radius evaluated at root i
    dist = np.abs(r[:, None] - r[None, :])
    near = np.sort(dist, axis=1)
    if c is None:
        radii = {m: np.full(n, radius(r, m)) for m in range(2, n + 1)}
    else:
        radii = _cluster_radii(c, r, n)
    if not any(np.any(near[:, m - 1] <= 2 * factor * radii[m]) for m in radii):
        return []

    label = list(range(n))
    pairs = sorted((dist[i, j], i, j) for i in range(n) for j in range(i + 1, n))
    out = []
    for _, i, j in pairs:
        li, lj = label[i], label[j]
        if li == lj:
            continue
        label = [li if x == lj else x for x in label]
        groups = {}
        for k, x in enumerate(label):
            groups.setdefault(x, []).append(k)
        parts = sorted(groups.values())
        ok = True
        for g in parts:
            if len(g) > 1:
                pts = r[g]
                diam = float(np.max(np.abs(pts[:, None] - pts[None, :])))
                x = pts if c is None else pts.mean()
                if diam > factor * radius(x, len(g)):
                    ok = False
                    break
        if ok:
            out.append(parts)
        if len(groups) == 1:
            break
    return out


def find_clusters(roots, coeffs=None, factor: float = 8.0) -> list[list[int]]:
    """Coarsest admissible grouping from ``cluster_partitions``."""
    n = np.asarray(roots).size
    parts = cluster_partitions(roots, coeffs, factor)
    return parts[-1] if parts else [[k] for k in range(n)]


def _newton_simple(c, x, steps=3):
    dc = np.polyder(c)
    fx = np.polyval(c, x)
    for _ in range(steps):
        d = np.polyval(dc, x)
        if fx == 0 or d == 0:
            break
        cand = x - fx / d
        fc = np.polyval(c, cand)
        if not abs(fc) < abs(fx):
            break
        x, fx = cand, fc
    return x


def _structured_polish(a, values, mult, iters=4):
    # Gauss-Newton on the distinct root values for a fixed multiplicity
    # pattern: minimise |coeffs(prod (t - y_j)^m_j) - a|.  Unlike the
    # roots themselves, this problem stays well conditioned at multiple
    # roots.  The absolute step can spoil the relative accuracy of tiny
    # simple roots, so each simple root finally keeps whichever of its
    # starting value, polished value or a Newton step on p fits best.
    y = np.array(values, dtype=complex)

    def expand(v):
        return np.repeat(v, mult)

    err = _recon_error(a, expand(y))
    for _ in range(iters):
        resid = from_sympoint(_backend.esym(expand(y))) - a
        J = np.empty((a.size, y.size), dtype=complex)
        for j, m in enumerate(mult):
            others = np.repeat(y, [mm - (i == j) for i, mm in enumerate(mult)])
            J[:, j] = -m * np.poly(others)
        trial = y + np.linalg.lstsq(J, -resid, rcond=None)[0]
        trial_err = _recon_error(a, expand(trial))
        if not trial_err < err:
            break
        y, err = trial, trial_err
    c = np.concatenate(([1.0 + 0j], a))
    out = expand(y)
    res = _residual(a, out)
    pos = np.cumsum([0] + list(mult))
    for j, m in enumerate(mult):
        if m > 1:
            continue
        for cand in (values[j], _newton_simple(c, y[j])):
            trial = out.copy()
            trial[pos[j]] = cand
            r = _residual(a, trial)
            if r < res:
                out, res = trial, r
    return out, res


def _refine_clusters(a, roots):
    # Each admissible grouping is a candidate multiplicity pattern; the
    # structured polish of the right pattern reaches rounding level while
    # wrong patterns cannot, so the smallest residual wins.  Roots that are
    # individually accurate can still disagree with the coefficients as a
    # set (ill-conditioned but simple roots); the all-simple pattern
    # handles that case.
    best, best_err = roots, _residual(a, roots)
    patterns = cluster_partitions(roots, a)
    if _recon_error(a, roots) > RECON_POLISH:
        patterns.append([[k] for k in range(roots.size)])
    for parts in patterns:
        values = [roots[g].mean() for g in parts]
        mult = [len(g) for g in parts]
        trial, err = _structured_polish(a, values, mult)
        if err < best_err:
            best, best_err = trial, err
    return best


def roots_of(z, tol: float = 1e-10) -> np.ndarray:
    """Root tuple ``lam`` with ``symmetrize(lam) == z`` (up to ``tol``)."""
    return poly_roots(from_sympoint(as_tuple(z)), tol)


def schur_stable(a, margin: float = DEFAULT_MARGIN,
                 degen_tol: float = DEGENERACY_TOL) -> Stability:
    """Decide whether every root of the monic polynomial lies in ``|t| < 1 - margin``.

    The polynomial is rescaled to ``p((1 - margin) t)`` and fed to the
    Schur-Cohn step-down recursion.  A reflection coefficient whose modulus
    is within ``degen_tol`` of 1 stops the recursion with ``BOUNDARY``.
    """
    if margin < 0:
        raise ValueError("margin must be non-negative")
    a = as_tuple(a)
    return _VERDICTS[_backend.schur_cohn(a, 1.0 - margin, degen_tol)]


def poly_multiply(p, q) -> np.ndarray:
    """Product of two monic polynomials given by their trailing coefficients.

    Either factor may be empty (the constant polynomial 1).
    """
    p = np.concatenate(([1.0 + 0j], np.asarray(p, dtype=complex).reshape(-1)))
    q = np.concatenate(([1.0 + 0j], np.asarray(q, dtype=complex).reshape(-1)))
    return np.convolve(p, q)[1:]


def combine(w, z) -> np.ndarray:
    """The splitting map ``(pi_k(lam), pi_{n-k}(mu)) -> pi_n(lam, mu)``."""
    return to_sympoint(poly_multiply(from_sympoint(w), from_sympoint(z)))


def match_multisets(x, y) -> tuple[np.ndarray, float]:
    """Optimal assignment between two equal-length complex multisets.

    Returns ``(perm, dist)`` with ``y[perm]`` aligned to ``x`` and ``dist``
    the largest matched distance.
    """
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    if x.size != y.size:
        raise ValueError("multisets differ in size")
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty_like(cols)
    perm[rows] = cols
    return perm, float(cost[rows, cols].max()) if x.size else 0.0


def multiset_distance(x, y) -> float:
    return match_multisets(x, y)[1]


def symmetrize_rows(lams) -> np.ndarray:
    """Row-wise ``symmetrize`` for a ``(count, n)`` batch of root tuples."""
    lams = np.asarray(lams, dtype=complex)
    count, n = lams.shape
    e = np.zeros((count, n + 1), dtype=complex)
    e[:, 0] = 1.0
    for m in range(n):
        r = lams[:, m]
        for k in range(m + 1, 0, -1):
            e[:, k] = e[:, k] + r * e[:, k - 1]
    return e[:, 1:]
