"""Exception hierarchy.

Everything raised on purpose derives from :class:`SBError`, so callers (and
the CLI's exit-code mapping) can catch one base class.
"""


class SBError(Exception):
    """Base class for all errors raised by sbham."""


class InvalidParams(SBError, ValueError):
    pass


class InvalidWord(SBError, ValueError):
    pass


class OutOfRange(SBError, IndexError):
    pass


class ParamsMismatch(SBError, ValueError):
    pass


class CapacityExceeded(SBError):
    """A state space, table or search range is larger than the configured cap."""


class InvalidPermutation(SBError, ValueError):
    pass


class UnsupportedParity(SBError, ValueError):
    pass


class EmptySample(SBError, ValueError):
    pass


class InvalidArgument(SBError, ValueError):
    pass


class CheckpointRejected(SBError):
    pass


class FormatError(SBError, ValueError):
    """Malformed choice-set document or cycle/sequence text."""


class CertificateError(SBError):
    """A candidate Hamiltonian cycle string failed verification."""

    reason = "invalid"


class WrongLength(CertificateError, ValueError):
    reason = "wrong_length"


class BadDigit(CertificateError, ValueError):
    reason = "bad_digit"


class RepeatedWindow(CertificateError):
    reason = "repeated_window"

    def __init__(self, index, first_index=None):
        self.index = index
        self.first_index = first_index
        msg = f"window at position {index} repeats"
        if first_index is not None:
            msg += f" the window at position {first_index}"
        super().__init__(msg)


class InvalidStep(CertificateError):
    reason = "invalid_step"

    def __init__(self, index, detail=""):
        self.index = index
        msg = f"step from window {index} to window {index + 1} is neither a save nor a bump arc"
        if detail:
            msg = f"step from window {index}: {detail}"
        super().__init__(msg)


class InconsistentSuffix(CertificateError):
    reason = "inconsistent_suffix"

    def __init__(self, suffix):
        self.suffix = suffix
        super().__init__(f"suffix {suffix!r} is saved at one window and bumped at another")
