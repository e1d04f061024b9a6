"""Exception hierarchy shared across the package."""


class SavingsDynamicsError(Exception):
    """Base class for all package errors."""


class DomainError(SavingsDynamicsError):
    """An argument lies outside the domain of the requested map."""


class ParameterError(SavingsDynamicsError):
    """Process or construction parameters violate their constraints."""


class SingularRateError(ParameterError):
    """The closed form divides by the interest rate; r = 0 is not allowed."""


class DegenerateProcessError(ParameterError):
    """Both deposits are zero, so no absorbing bound exists."""


class PrecisionUnreachableError(ParameterError):
    """The requested tolerance needs a truncation order beyond the cap."""


class ConfigError(SavingsDynamicsError):
    """Bad CLI configuration (flags or config file)."""
