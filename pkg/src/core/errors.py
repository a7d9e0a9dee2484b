# src/core/errors.py
# This is the exception hierarchy for the toolkit.


class LiederError(ValueError):
    """Base class for every error raised on bad mathematical input."""


class DimensionMismatchError(LiederError):
    pass


class InvalidDataError(LiederError):
    """Input violates an axiom the caller promised (Jacobi, Leibniz, rep axioms)."""


class NotACocycleError(LiederError):
    pass


class InvalidWitnessError(LiederError):
    pass


class ClosureError(LiederError):
    """An obstruction cochain that must be closed was not. Indicates corrupt data."""


class NotNilpotentError(LiederError):
    pass


class ParseError(LiederError):
    pass
