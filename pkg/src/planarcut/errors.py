"""Exception hierarchy shared across the package."""


class PlanarCutError(Exception):
    """Base class for all package errors."""


class GraphFormatError(PlanarCutError):
    """Malformed graph input (file syntax, schema, or structural validation).

    ``location`` is a dotted/indexed path into the offending document,
    e.g. ``rotations.17[3]``, or ``line 4 col 12`` for syntax errors.
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class PreconditionError(PlanarCutError):
    """An operation was called outside its stated preconditions.

    Covers horizon violations (a ball reaching the host's rim), bad
    parameters and degenerate inputs.  Maps to CLI exit code 2.
    """


class ConstructionError(PlanarCutError):
    """The enclosing-domain construction could not be completed.

    Raised when no admissible base pair exists on the contour even though
    close sphere vertices exist, i.e. the construction as specified does
    not apply to the host.  Never returned silently.
    """


class VerificationError(PlanarCutError):
    """A constructed result failed its independent post-verification.

    Carries the failing report for diagnosis.  Maps to CLI exit code 1.
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class RenderError(PlanarCutError):
    """No usable straight-line layout could be produced for the host."""
