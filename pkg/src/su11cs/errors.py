"""Exception hierarchy shared by all modules."""


class SU11Error(Exception):
    """Base class for every error raised by this package."""


class DomainError(SU11Error, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SupportRangeError(DomainError):
    """An argument is mathematically valid but beyond the documented support range."""


class ConvergenceError(SU11Error, RuntimeError):
    """A truncation could not be certified before hitting the hard cap."""


class TruncationError(SU11Error, RuntimeError):
    """A truncated-operator computation leaks too much probability past its top level."""


class LabelMismatchError(SU11Error, ValueError):
    """An operator and a state were built for different representations."""


class QuadratureWarning(UserWarning):
    """Successive quadrature refinements disagree by more than the acceptance threshold."""
