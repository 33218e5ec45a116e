"""Exception hierarchy for spoly_lab."""

from __future__ import annotations


class SpolyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SpolyError, ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedExactnessError(SpolyError, ValueError):
    """An exact (tol = 0) decision was requested for a set that only supports tolerances."""


class DegenerateSampleError(SpolyError):
    """Sample points fail to separate the polynomial space, or an LP is unbounded."""


class InadmissibleWeightError(SpolyError, ValueError):
    """The weight is +inf on every sample point."""


class SolverError(SpolyError, RuntimeError):
    """A numerical solver failed to converge within its iteration limit."""


class ConfigError(SpolyError, ValueError):
    """An experiment configuration failed validation.

    ``field`` names the offending key so the CLI can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
