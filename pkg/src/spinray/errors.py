"""Exception types raised across the package."""

from __future__ import annotations


class SpinrayError(Exception):
    """Base class for all spinray errors."""


class DegenerateKernelError(SpinrayError):
    """The transport kernel collapsed: the computed step direction has
    vanishing norm, so the foliation by light rays breaks down at this
    state (strong inhomogeneity relative to the color p)."""

    def __init__(self, message: str, arc_parameter: float | None = None):
        super().__init__(message)
        self.arc_parameter = arc_parameter


class SpinCurvatureSingularityError(SpinrayError):
    """The curvature coupling denominator p^2 + s^2 Ein(U, U) is too close
    to zero for the general-metric transport model."""

    def __init__(self, message: str, arc_parameter: float | None = None):
        super().__init__(message)
        self.arc_parameter = arc_parameter


class TotalReflectionRequiredError(SpinrayError):
    """Refraction was requested past the critical angle; only the mirror
    branch exists there."""


class NotIncomingError(SpinrayError):
    """The ray does not travel toward the interface from side 1."""


class OutOfDomainError(SpinrayError):
    """A field was queried where it is not defined (outside the sampled
    grid interior, or where the index magnitude falls below 1e-9)."""


class SceneError(SpinrayError):
    """A scene or sweep document failed to parse or validate.  The message
    carries the JSON path of the offending entry."""
