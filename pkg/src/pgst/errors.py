"""Exception types raised across the package."""


class PGSTError(Exception):
    """Base class for all package errors."""


class DomainError(PGSTError, ValueError):
    """An argument lies outside the domain of the operation."""


class WitnessError(PGSTError, ValueError):
    """A supplied factorisation n + 1 = m * p does not hold."""


class InvalidInputError(PGSTError, ValueError):
    """The operation does not apply to this chain (e.g. a witness for a PGST length)."""


class UnsupportedSizeError(PGSTError, ValueError):
    """The requested size exceeds what the routine supports."""


class ConvergenceError(PGSTError, RuntimeError):
    """A search ended without reaching its target."""
