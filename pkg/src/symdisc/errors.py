"""Exception types raised across the package."""


class SymdiscError(Exception):
    """Base class for all package errors."""


class NonConvergence(SymdiscError):
    """Root iteration did not reach the requested backward error."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class NotInDomain(SymdiscError):
    """Point lies outside the domain of a partially defined map."""


class ConfluentInput(SymdiscError):
    """Root tuple too close to the critical set for the generic kernel path."""


class ExtrapolationUnstable(SymdiscError):
    """Two perturbation scales disagreed beyond tolerance."""


class PoleHit(SymdiscError):
    """Blaschke product evaluated at one of its poles."""


class DecompositionFailure(SymdiscError):
    """Schur decomposition or matrix logarithm failed."""
