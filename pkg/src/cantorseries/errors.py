"""Exception hierarchy shared by every module of the package."""


class CantorError(Exception):
    """Base class for all package errors."""


class SpecError(CantorError, ValueError):
    """A base sequence, digit rule or series violates its construction rules."""


class IndexBeyondExplicitList(CantorError, IndexError):
    """A query went past the end of a finite, explicitly listed sequence."""


class PrecisionUnreachable(CantorError):
    """Requested enclosure width could not be reached within the depth limit."""


class HorizonExhausted(CantorError):
    """No index within the scan horizon satisfied the divisibility condition."""


class UndecidedAtDepth(CantorError):
    """A certified enclosure was too wide to decide a comparison.

    The partial report, when one exists, is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionNotCertified(CantorError):
    """A hypothesis required by an operation could not be certified."""
