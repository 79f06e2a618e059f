"""Exception hierarchy shared by the library and the CLI exit codes."""


class NormalHilbertError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(NormalHilbertError, ValueError):
    """Malformed or mathematically invalid input (CLI exit code 2)."""

    exit_code = 2


class NotMPrimaryError(InputError):
    """An ideal or region has infinite colength in the semigroup."""


class StabilizationError(NormalHilbertError):
    """A stabilization search ran off the end of its grid or cap (exit code 3)."""

    exit_code = 3


class InvariantViolation(NormalHilbertError):
    """A computed quantity broke a mathematical invariant (exit code 1)."""

    exit_code = 1


class IngestedSourceError(NormalHilbertError):
    """Module-theoretic operation requested on an ingested Hilbert table."""

    exit_code = 2
