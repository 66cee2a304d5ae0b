"""Point-set geometry of the symmetrized polydisc.

A point ``z`` lies in the domain exactly when every root of
``t^n - z_1 t^(n-1) + ... + (-1)^n z_n`` lies in the open unit disc, so
every question here reduces to locating those roots.  Verdicts carry an
explicit fuzz band ``margin`` because the domain is open and floating
point is not.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import NonConvergence, NotInDomain
from .sympoly import (
    DEFAULT_MARGIN,
    Stability,
    as_tuple,
    combine,
    from_sympoint,
    roots_of,
    schur_stable,
    symmetrize,
    symmetrize_rows,
)

DEFAULT_EPSILON = 1e-3
# a root-modulus/Schur-Cohn disagreement wider than this is a genuine failure
AGREEMENT_BAND = 1e-9


class Region(enum.Enum):
    INTERIOR = "Interior"
    TOP_BOUNDARY = "TopBoundary"
    SHILOV = "ShilovBoundary"
    EXTERIOR = "Exterior"
    INDETERMINATE = "Indeterminate"

    @property
    def on_boundary(self) -> bool:
        return self in (Region.TOP_BOUNDARY, Region.SHILOV)


@dataclass(frozen=True)
class MembershipVerdict:
    region: Region
    max_root_modulus: float
    witness_roots: np.ndarray
    min_root_modulus: float = math.nan
    schur: Stability | None = None

    def as_dict(self) -> dict:
        return {
            "region": self.region.value,
            "max_root_modulus": self.max_root_modulus,
            "min_root_modulus": self.min_root_modulus,
            "schur_cohn": None if self.schur is None else self.schur.value,
            "witness_roots": self.witness_roots,
        }


def classify(z, margin: float = DEFAULT_MARGIN) -> MembershipVerdict:
    """Locate ``z`` relative to the domain, its boundary and the Shilov boundary.

    Interior needs both the Schur-Cohn certificate and a root modulus
    below ``1 - margin``.  If the two routes disagree by more than
    ``max(10 * margin, AGREEMENT_BAND)`` the verdict is Indeterminate.
    """
    if not 0.0 <= margin <= 0.1:
        raise ValueError("margin must lie in [0, 0.1]")
    z = as_tuple(z)
    try:
        roots = roots_of(z)
    except NonConvergence:
        return MembershipVerdict(Region.INDETERMINATE, math.nan,
                                 np.zeros(0, dtype=complex))
    mods = np.abs(roots)
    rmax, rmin = float(mods.max()), float(mods.min())
    sc = schur_stable(from_sympoint(z), margin)
    band = max(10.0 * margin, AGREEMENT_BAND)
    threshold = 1.0 - margin

    def verdict(region):
        return MembershipVerdict(region, rmax, roots, rmin, sc)

    if sc is Stability.INSIDE:
        if rmax < threshold:
            return verdict(Region.INTERIOR)
        if rmax > threshold + band:
            return verdict(Region.INDETERMINATE)
    elif rmax < threshold - band:
        return verdict(Region.INDETERMINATE)

    if rmax > 1.0 + margin:
        return verdict(Region.EXTERIOR)
    if rmin >= 1.0 - margin:
        return verdict(Region.SHILOV)
    return verdict(Region.TOP_BOUNDARY)


def exhaustion(z) -> float:
    """Largest ``log|lam_j|`` over the roots of ``z``; ``-inf`` at the origin.

    Negative exactly on the domain and zero on its boundary, which makes
    it the negative exhaustion function used for hyperconvexity.
    """
    z = as_tuple(z)
    if not np.any(z):
        return -math.inf
    rmax = float(np.abs(roots_of(z)).max())
    return math.log(rmax) if rmax > 0 else -math.inf


@dataclass(frozen=True)
class FiberSplit:
    near_group: np.ndarray
    far_group: np.ndarray
    gap: float

    def recombine(self) -> np.ndarray:
        return combine(self.near_group, self.far_group)


def fiber_split(z, center: complex, k: int, tol: float | None = None) -> FiberSplit:
    """Split the roots of ``z`` into the ``k`` nearest to ``center`` and the rest.

    Returns the symmetrized coordinates of each group.  The split is only
    defined when the k-th and (k+1)-th distances differ; otherwise
    ``NotInDomain`` is raised.
    """
    z = as_tuple(z)
    n = z.size
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}]")
    empty = np.zeros(0, dtype=complex)
    if k == 0:
        return FiberSplit(empty, z.copy(), math.inf)
    if k == n:
        return FiberSplit(z.copy(), empty, math.inf)
    roots = roots_of(z)
    dist = np.abs(roots - center)
    order = np.argsort(dist, kind="stable")
    gap = float(dist[order[k]] - dist[order[k - 1]])
    if tol is None:
        tol = 1e-9 * (1.0 + abs(center))
    if gap <= tol:
        raise NotInDomain(
            f"no strict gap between the {k}-th and {k + 1}-th root distances "
            f"(gap {gap:.3e})")
    return FiberSplit(symmetrize(roots[order[:k]]),
                      symmetrize(roots[order[k:]]), gap)


class SampleRegion(enum.Enum):
    INTERIOR = "interior"
    SHILOV = "shilov"
    NEAR_BOUNDARY = "near-boundary"


def sample_roots(region, n: int, count: int, seed=None,
                 epsilon: float = DEFAULT_EPSILON, rng=None) -> np.ndarray:
    """Root tuples, shape ``(count, n)``, drawn for the requested region.

    Interior tuples are uniform on the polydisc, Shilov tuples uniform on
    the torus, and near-boundary tuples have every modulus uniform in
    ``[1 - epsilon, 1)``.
    """
    region = SampleRegion(region)
    if count < 1 or n < 1:
        raise ValueError("need count >= 1 and n >= 1")
    if rng is None:
        rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(count, n))
    if region is SampleRegion.INTERIOR:
        radii = np.sqrt(rng.uniform(0.0, 1.0, size=(count, n)))
    elif region is SampleRegion.SHILOV:
        radii = np.ones((count, n))
    else:
        radii = 1.0 - epsilon * rng.uniform(0.0, 1.0, size=(count, n))
        radii = np.minimum(radii, np.nextafter(1.0, 0.0))
    return radii * np.exp(1j * angles)


def sample(region, n: int, count: int, seed=None,
           epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Symmetrized points, shape ``(count, n)``; deterministic given ``seed``."""
    return symmetrize_rows(sample_roots(region, n, count, seed, epsilon))


def sample_records(region, n, points):
    """JSON-lines records for a batch of sampled points."""
    tag = SampleRegion(region).value
    return [{"n": int(n), "z": row, "region": tag} for row in points]


@dataclass
class TestPolynomial:
    """Polynomial in the symmetrized coordinates ``z_1..z_n``.

    ``terms`` maps exponent tuples to complex coefficients.
    """
    __test__ = False

    n: int
    terms: Mapping[tuple, complex] = field(default_factory=dict)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        pts = z.reshape(-1, self.n)
        out = np.zeros(pts.shape[0], dtype=complex)
        for exps, c in self.terms.items():
            term = np.full(pts.shape[0], complex(c))
            for j, e in enumerate(exps):
                if e:
                    term = term * pts[:, j] ** e
            out += term
        return out if z.ndim > 1 else out[0]

    @classmethod
    def random(cls, n: int, degree: int, rng) -> "TestPolynomial":
        terms = {}
        for exps in np.ndindex(*([degree + 1] * n)):
            if sum(exps) <= degree:
                terms[tuple(int(e) for e in exps)] = complex(
                    rng.normal(), rng.normal())
        return cls(n, terms)


@dataclass(frozen=True)
class MaxModulusReport:
    n: int
    count: int
    interior_max: float
    shilov_max: float
    shilov_argmax: np.ndarray
    passed: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n, "count": self.count,
            "interior_max": self.interior_max,
            "shilov_max": self.shilov_max,
            "shilov_argmax": self.shilov_argmax,
            "passed": self.passed,
        }


def max_modulus_check(f, n: int, count: int = 10_000, seed=None) -> MaxModulusReport:
    """Compare ``max |f|`` over interior samples with the max over Shilov samples.

    ``f`` is any vectorized callable on ``(count, n)`` arrays of
    symmetrized points.  PASS iff the interior maximum does not exceed the
    Shilov maximum by more than ``1e-9 * max(1, shilov_max)``.
    """
    rng = np.random.default_rng(seed)
    inner = symmetrize_rows(sample_roots("interior", n, count, rng=rng))
    torus = symmetrize_rows(sample_roots("shilov", n, count, rng=rng))
    fi = np.abs(f(inner))
    fs = np.abs(f(torus))
    imax, j = float(fi.max()), int(np.argmax(fs))
    smax = float(fs[j])
    passed = imax <= smax + 1e-9 * max(1.0, smax)
    return MaxModulusReport(n, count, imax, smax, torus[j], passed)
