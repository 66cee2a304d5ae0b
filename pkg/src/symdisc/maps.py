"""Holomorphic self-maps of the symmetrized polydisc.

Any holomorphic ``psi`` of the unit disc into itself lifts to the
symmetrized polydisc by acting on each root: ``f_psi(pi(lam)) =
pi(psi(lam_1), ..., psi(lam_n))``.  The lifts of finite Blaschke
products are exactly the proper self-maps, and lifts of disc
automorphisms are the automorphisms.  This module provides the
constructive direction of that statement plus an empirical properness
scan.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import PoleHit
from .geometry import exhaustion, sample_roots
from .serialize import parse_complex
from .sympoly import as_tuple, poly_roots, roots_of, symmetrize, symmetrize_rows

DEFAULT_EPSILON_GRID = (1e-1, 1e-2, 1e-3, 1e-4)
CIRCLE_SAMPLES = 2 ** 10


def _as_array(lam):
    return np.asarray(lam, dtype=complex)


@dataclass(frozen=True)
class BlaschkeProduct:
    """``factor * prod_j (lam - a_j) / (1 - conj(a_j) lam)``."""

    zeros: tuple = ()
    factor: complex = 1.0 + 0j

    def __post_init__(self):
        zs = tuple(complex(a) for a in np.asarray(self.zeros, dtype=complex).reshape(-1))
        c = complex(self.factor)
        if any(abs(a) >= 1.0 - 1e-12 for a in zs):
            raise ValueError("Blaschke zeros must lie inside the unit disc")
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("Blaschke factor must be unimodular")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "factor", c)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, lam):
        return blaschke_eval(self, lam)

    def derivative(self, lam):
        lam = _as_array(lam)
        out = np.zeros_like(lam)
        for j, a in enumerate(self.zeros):
            term = (1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * lam) ** 2
            for i, b in enumerate(self.zeros):
                if i != j:
                    term = term * (lam - b) / (1.0 - np.conj(b) * lam)
            out = out + term
        return self.factor * out

    def preimages(self, w: complex) -> np.ndarray:
        """All ``d`` solutions of ``B(lam) = w`` (with multiplicity)."""
        num = np.array([self.factor])
        den = np.array([1.0 + 0j])
        for a in self.zeros:
            num = np.convolve(num, [1.0, -a])
            den = np.convolve(den, [-np.conj(a), 1.0])
        poly = num - w * den
        return poly_roots(poly[1:] / poly[0])

    def to_dict(self) -> dict:
        return {"type": "blaschke", "zeros": list(self.zeros), "factor": self.factor}

    @classmethod
    def from_dict(cls, d: dict) -> "BlaschkeProduct":
        if d.get("type", "blaschke") != "blaschke":
            raise ValueError(f"unsupported map type {d.get('type')!r}")
        zeros = [parse_complex(a) for a in d.get("zeros", [])]
        factor = parse_complex(d.get("factor", [1.0, 0.0]))
        return cls(tuple(zeros), factor)

    @classmethod
    def random(cls, degree: int, rng, radius: float = 0.9) -> "BlaschkeProduct":
        r = radius * np.sqrt(rng.uniform(size=degree))
        zeros = r * np.exp(2j * np.pi * rng.uniform(size=degree))
        return cls(tuple(zeros), complex(np.exp(2j * np.pi * rng.uniform())))


def blaschke_eval(B: BlaschkeProduct, lam):
    """Evaluate a finite Blaschke product, factor by factor."""
    lam = _as_array(lam)
    out = np.full(lam.shape, B.factor, dtype=complex)
    for a in B.zeros:
        den = 1.0 - np.conj(a) * lam
        if np.any(den == 0):
            raise PoleHit(f"evaluation at the pole 1/conj({a})")
        out = out * ((lam - a) / den)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class MoebiusMap:
    """Disc automorphism ``factor * (lam - alpha) / (1 - conj(alpha) lam)``."""

    alpha: complex = 0j
    factor: complex = 1.0 + 0j

    def __post_init__(self):
        a, c = complex(self.alpha), complex(self.factor)
        if abs(a) >= 1.0:
            raise ValueError("alpha must lie inside the unit disc")
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("factor must be unimodular")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "factor", c)

    @classmethod
    def rotation(cls, c: complex) -> "MoebiusMap":
        return cls(0j, c)

    @classmethod
    def random(cls, rng, radius: float = 0.9) -> "MoebiusMap":
        r = radius * math.sqrt(rng.uniform())
        a = r * np.exp(2j * np.pi * rng.uniform())
        return cls(complex(a), complex(np.exp(2j * np.pi * rng.uniform())))

    def __call__(self, lam):
        lam = _as_array(lam)
        out = self.factor * (lam - self.alpha) / (1.0 - np.conj(self.alpha) * lam)
        return out if out.ndim else complex(out)

    def derivative(self, lam):
        lam = _as_array(lam)
        return self.factor * (1.0 - abs(self.alpha) ** 2) / (1.0 - np.conj(self.alpha) * lam) ** 2

    def divided_difference(self, a: complex, b: complex) -> complex:
        """``(h(a) - h(b)) / (a - b)`` without cancellation."""
        ca = np.conj(self.alpha)
        return complex(self.factor * (1.0 - abs(self.alpha) ** 2)
                       / ((1.0 - ca * a) * (1.0 - ca * b)))

    def inverse(self) -> "MoebiusMap":
        c = self.factor
        return MoebiusMap(-c * self.alpha, np.conj(c))

    def _matrix(self):
        c, a = self.factor, self.alpha
        return np.array([[c, -c * a], [-np.conj(a), 1.0]], dtype=complex)

    def compose(self, inner: "MoebiusMap") -> "MoebiusMap":
        """The automorphism ``self o inner``."""
        (A, B), (C, D) = self._matrix() @ inner._matrix()
        return MoebiusMap(-B / A, A / D)

    def as_blaschke(self) -> BlaschkeProduct:
        return BlaschkeProduct((self.alpha,), self.factor)


@dataclass(frozen=True)
class DiscPolynomial:
    """Polynomial self-map of the disc, ``sum_k coeffs[k] lam^k``.

    The sup-norm on the closed disc is certified by sampling the unit
    circle at ``CIRCLE_SAMPLES`` points (maximum modulus principle).
    """

    coeffs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if self.sup_norm() > 1.0:
            raise ValueError("polynomial does not map the disc into itself")

    def sup_norm(self) -> float:
        theta = np.exp(2j * np.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES)
        return float(np.abs(np.polyval(self.coeffs[::-1] or (0,), theta)).max())

    def __call__(self, lam):
        out = np.polyval(self.coeffs[::-1] or (0,), _as_array(lam))
        return out if np.ndim(out) else complex(out)


def compose(outer: Callable, inner: Callable) -> Callable:
    def composed(lam):
        return outer(inner(lam))
    return composed


def lift_apply(psi: Callable, z, check: bool = True) -> np.ndarray:
    """Apply the lift of ``psi`` to a point of the closed domain."""
    roots = roots_of(as_tuple(z))
    if check and np.abs(roots).max() > 1.0 + 1e-9:
        raise ValueError("point lies outside the closed symmetrized polydisc")
    return symmetrize(np.asarray(psi(roots), dtype=complex))


@dataclass(frozen=True)
class LiftedMap:
    symbol: Callable
    n: int

    def __call__(self, z) -> np.ndarray:
        z = as_tuple(z)
        if z.size != self.n:
            raise ValueError(f"expected a point of dimension {self.n}")
        return lift_apply(self.symbol, z)


def automorphism(h: MoebiusMap, n: int) -> LiftedMap:
    return LiftedMap(h, n)


def inverse_automorphism(h: MoebiusMap, n: int) -> LiftedMap:
    return LiftedMap(h.inverse(), n)


def thm2_product_map(blaschkes: Sequence[Callable], lam) -> np.ndarray:
    """``pi(B_1(lam_1), ..., B_n(lam_n))`` for ordered polydisc coordinates."""
    lam = as_tuple(lam)
    if len(blaschkes) != lam.size:
        raise ValueError("need one Blaschke product per coordinate")
    return symmetrize([complex(B(x)) for B, x in zip(blaschkes, lam)])


def fiber_cardinality(B: BlaschkeProduct, n: int, target, tol: float = 1e-7) -> int:
    """Number of distinct points ``z`` with ``f_B(z) = target``.

    Enumerates one preimage under ``B`` per root of ``target`` and counts
    the distinct unordered results.
    """
    roots = roots_of(as_tuple(target))
    pre = [B.preimages(w) for w in roots]
    seen = []
    for choice in np.ndindex(*[len(p) for p in pre]):
        pt = symmetrize([pre[j][c] for j, c in enumerate(choice)])
        if not any(np.max(np.abs(pt - q)) <= tol * (1 + np.max(np.abs(q))) for q in seen):
            seen.append(pt)
    return len(seen)


@dataclass
class PropernessReport:
    n: int
    degree: int
    epsilons: list
    max_distance: list
    min_distance: list
    decay_ratios: list
    observed_constant: float
    fiber_cardinality: int | None
    passed: bool
    reason: str

    def as_dict(self) -> dict:
        return {
            "n": self.n, "degree": self.degree,
            "table": [{"epsilon": e, "max_d": a, "min_d": b}
                      for e, a, b in zip(self.epsilons, self.max_distance, self.min_distance)],
            "decay_ratios": self.decay_ratios,
            "observed_constant": self.observed_constant,
            "fiber_cardinality": self.fiber_cardinality,
            "passed": self.passed, "reason": self.reason,
        }


def properness_scan(B, n: int, epsilon_grid=DEFAULT_EPSILON_GRID,
                    count: int = 500, seed=None, min_decay: float = 2.0) -> PropernessReport:
    """Check that the lift of ``B`` pushes the boundary to the boundary.

    For each ``eps`` in the grid, points whose roots all have modulus in
    ``[1 - eps, 1)`` are mapped by the lift and the boundary distance
    proxy ``d = 1 - exp(exhaustion(f(z)))`` is recorded.  PASS iff every
    image lies strictly inside (``d > 0``) and ``max d`` shrinks by at
    least ``min_decay`` per decade of ``eps``.
    """
    eps_grid = sorted((float(e) for e in epsilon_grid), reverse=True)
    rng = np.random.default_rng(seed)
    degree = getattr(B, "degree", -1)
    max_d, min_d = [], []
    constant = 0.0
    for eps in eps_grid:
        lams = sample_roots("near-boundary", n, count, rng=rng, epsilon=eps)
        imgs = np.asarray(B(lams), dtype=complex).reshape(lams.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = (1.0 - np.abs(imgs)) / (1.0 - np.abs(lams))
        constant = max(constant, float(np.nanmax(ratio)))
        ds = []
        for z in symmetrize_rows(imgs):
            u = exhaustion(z)
            ds.append(1.0 - math.exp(u))
        max_d.append(float(max(ds)))
        min_d.append(float(min(ds)))

    ratios = [a / b if b > 0 else math.inf for a, b in zip(max_d, max_d[1:])]
    if min(min_d) <= 0.0:
        passed, reason = False, "some interior point is mapped onto the boundary or outside"
    elif any(r < min_decay for r in ratios):
        passed, reason = False, f"boundary distance decays by less than {min_decay}x per decade"
    else:
        passed, reason = True, "boundary distance decays monotonically"

    cardinality = None
    if isinstance(B, BlaschkeProduct) and B.degree >= 1:
        probe = sample_roots("interior", n, 1, rng=rng)[0] * 0.5
        try:
            cardinality = fiber_cardinality(B, n, symmetrize(B(probe)))
        except Exception:
            cardinality = None
    return PropernessReport(n, degree, eps_grid, max_d, min_d, ratios,
                            constant, cardinality, passed, reason)
