"""Exception types shared across the package."""
from __future__ import annotations


class LatticeDivError(Exception):
    """Base class for all package errors."""


class InputError(LatticeDivError):
    """Malformed or out-of-range input data."""


class ConfigurationError(LatticeDivError):
    """A requested combination of options cannot be honoured."""


class InfeasibleError(LatticeDivError):
    """The instance has no feasible solution."""


class ResourceLimitError(LatticeDivError):
    """An enumeration or search exceeded its configured cap."""


class ContractViolationError(LatticeDivError):
    """An internal invariant failed; indicates a bug, not bad input."""


class SolverError(LatticeDivError):
    """The numeric solver did not converge within its budget."""

    def __init__(self, message: str, best_value: int | None = None):
        super().__init__(message)
        self.best_value = best_value
