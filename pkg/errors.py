class CdmcError(Exception):
    """
    Base class for every error the toolkit raises on purpose.

    `exit_code` is what `main` returns when the error escapes a command.
    """

    exit_code: int = 1


class UsageError(CdmcError, ValueError):
    """Bad arguments, flags or configuration values."""

    exit_code = 2


class DataError(CdmcError, ValueError):
    """Missing, malformed or inconsistent input data."""

    exit_code = 3


class NumericalError(CdmcError, ArithmeticError):
    """Non-finite values or a diverged optimization."""

    exit_code = 4
