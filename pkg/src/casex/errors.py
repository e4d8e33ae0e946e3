"""Exception types shared across the package."""


class CaseXError(Exception):
    """Base class for all package errors."""


class ValidationError(CaseXError, ValueError):
    """Bad user input: unknown preset, malformed file, invariant violation."""


class DegenerateAxisError(CaseXError, ValueError):
    """A combined field vanishes, so its quantization axis is undefined."""


class NumericError(CaseXError, ArithmeticError):
    """Non-finite matrix entries or an eigensolver that failed to converge."""
