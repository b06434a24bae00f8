"""
Exception hierarchy shared by all packages.
"""


class RevMatchError(Exception):
    """Base class for every error raised by this project."""


class WidthMismatchError(RevMatchError, ValueError):
    """Two objects that must share a bit width do not."""


class WidthLimitError(RevMatchError, ValueError):
    """A width exceeds a configured exhaustive-computation limit."""


class CircuitFormatError(RevMatchError, ValueError):
    """Malformed .real circuit text."""


class DimacsFormatError(RevMatchError, ValueError):
    """Malformed DIMACS CNF text."""


class InvalidInverseError(RevMatchError, ValueError):
    """The inverse handed to an oracle does not invert its forward circuit."""


class InverseUnavailableError(RevMatchError):
    """An inverse query was requested but no inverse circuit is available."""


class StateLimitError(RevMatchError, ValueError):
    """A simulated state would exceed the support limit."""


class WitnessShapeError(RevMatchError, ValueError):
    """A witness does not carry exactly the maps its equivalence demands."""


class AmbiguityError(RevMatchError):
    """A randomized matcher saw colliding output sequences; retry with a fresh seed."""


class PromiseViolationError(RevMatchError):
    """Oracle answers cannot come from circuits satisfying the stated promise."""


class MissingKeyError(PromiseViolationError):
    """A one-hot response of C2 never appeared among the responses of C1."""


class NoPartnerError(PromiseViolationError):
    """A wire of C1 matched no wire of C2 in the swap-test pairing phase."""


class NoAlgorithmError(RevMatchError):
    """No algorithm exists for the requested equivalence and inverse availability."""


class UnsatError(RevMatchError):
    """An extracted candidate assignment does not satisfy the formula."""
