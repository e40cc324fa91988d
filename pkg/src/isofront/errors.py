"""Exception hierarchy shared across the package.

Exit codes used by the CLI: 1 = invalid configuration, 2 = budget
violation, 3 = internal consistency failure.
"""


class IsofrontError(Exception):
    """Base class for all package errors."""


class ConfigError(IsofrontError):
    """Invalid configuration or input data (CLI exit code 1)."""


class BudgetError(IsofrontError):
    """A proved a-priori bound was exceeded at runtime (CLI exit code 2)."""


class ConsistencyError(IsofrontError):
    """Internal bookkeeping disagrees with an independent recomputation
    (CLI exit code 3)."""


class DomainError(ConfigError):
    """A state left the physical domain (non-positive specific volume)."""


class SolverError(IsofrontError):
    """Root finder failed to converge; carries the last residual."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual
