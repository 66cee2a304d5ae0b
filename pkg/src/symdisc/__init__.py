"""Numerical toolkit for the symmetrized polydisc.

Membership and boundary classification, the Bergman kernel, proper
self-maps lifted from Blaschke products, and the spectral ball.
"""
from ._backend import BACKEND
from .bergman import KernelPath, KernelValue, kernel, kernel_closed2, kernel_general, kernel_sym
from .errors import (
    ConfluentInput,
    DecompositionFailure,
    ExtrapolationUnstable,
    NonConvergence,
    NotInDomain,
    PoleHit,
    SymdiscError,
)
from .geometry import Region, classify, exhaustion, fiber_split, sample
from .maps import BlaschkeProduct, LiftedMap, MoebiusMap, lift_apply
from .spectral import constant_spectrum_path, in_spectral_ball, psi, spectral_radius
from .sympoly import Stability, roots_of, schur_stable, symmetrize

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "KernelPath", "KernelValue", "kernel", "kernel_closed2",
    "kernel_general", "kernel_sym", "ConfluentInput", "DecompositionFailure",
    "ExtrapolationUnstable", "NonConvergence", "NotInDomain", "PoleHit",
    "SymdiscError", "Region", "classify", "exhaustion", "fiber_split", "sample",
    "BlaschkeProduct", "LiftedMap", "MoebiusMap", "lift_apply",
    "constant_spectrum_path", "in_spectral_ball", "psi", "spectral_radius",
    "Stability", "roots_of", "schur_stable", "symmetrize",
]
