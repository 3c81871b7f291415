"""Exception types shared across the package."""


class SpinBathError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SpinBathError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class NonPositiveTransitionFrequency(DomainError):
    """kappa >= (eps1+eps2)/2 pushes the lower transition frequency to zero or below.

    Negative-frequency thermal occupations change the physics; the model
    refuses such parameters instead of silently evaluating them.
    """


class InvalidState(SpinBathError, ValueError):
    """Density-matrix or initial-state data violates its invariants."""


class BasisMismatch(InvalidState):
    """A state tagged with the wrong basis was passed to a basis-specific operation."""


class UnsupportedCoherence(InvalidState):
    """The analytic propagators cover coherence only in the (3,4) eigenbasis block.

    States outside that family must be evolved with the numerical integrator.
    """


class SingularS(SpinBathError, ValueError):
    """The mode matrix S is numerically singular (pathological rates)."""


class StepTooLarge(SpinBathError, ValueError):
    """Integrator step exceeds the stability margin for the given generator."""


class NumericalFailure(SpinBathError, RuntimeError):
    """An eigensolver or other numerical kernel failed or produced garbage."""
