"""Exception taxonomy shared across the package.

Every error raised by the library is a subclass of :class:`CheegerForgeError`,
so callers (notably the CLI) can map failures to exit codes in one place.
"""


class CheegerForgeError(Exception):
    """Base class for all library errors."""


class InvalidParameter(CheegerForgeError):
    """A numeric parameter is outside its admissible range."""


class InvalidInput(CheegerForgeError):
    """Malformed input data (bad JSON payload, wrong shapes, ...)."""


class InvalidGeometry(InvalidInput):
    """A chain/polygon fails a structural requirement (closure, orientation,
    simplicity, chord/curvature feasibility)."""


class EmptyRegion(CheegerForgeError):
    """An operation that needs a nonempty region received/produced none."""


class NotConnected(CheegerForgeError):
    """A region expected to be connected has several components."""


class FallbackRequired(CheegerForgeError):
    """The exact geometric route cannot certify its result; the caller should
    escalate to the raster oracle."""


class NoSolution(CheegerForgeError):
    """The requested free parameter has no admissible value (e.g. polygon
    side counts below the self-Cheeger threshold)."""


class NumericalFailure(CheegerForgeError):
    """An iteration failed to bracket/converge within its budget."""


class DeltaTooLarge(CheegerForgeError):
    """A perturbation amplitude exceeds the geometric safety bound."""


class InsufficientScales(CheegerForgeError):
    """Too few dyadic scales for a meaningful box-counting fit."""


class ResolutionTooCoarse(CheegerForgeError):
    """The raster step cannot resolve the domain."""
