"""Exception and warning types shared across the package."""

from __future__ import annotations


class CslwalkError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(CslwalkError, ValueError):
    """A precondition on inputs was violated (rejected, not silently fixed)."""


class ConvergenceError(CslwalkError, RuntimeError):
    """A numerical routine failed to reach its target tolerance.

    The achieved error estimate, when known, is carried in ``achieved``.
    """

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class ValidityWarning(UserWarning):
    """A soft validity condition failed (result returned, but flagged).

    Used for regime checks the caller is responsible for, e.g. requesting
    free-molecular drag when the mean free path is not large compared to the
    body, or an equilibrium packet width outside its derivation's range.
    """
