"""Exception hierarchy for the character-sum laboratory."""

from typing import Any, Optional


class CharmaxError(Exception):
    """Base class for all laboratory errors."""

    pass


class DomainError(CharmaxError, ValueError):
    """An argument lies outside the domain of an operation."""

    pass


class BudgetExceededError(CharmaxError):
    """A configured resource ceiling was hit.

    The partial result computed before the ceiling, if any, is kept on ``partial``.
    """

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message)
        self.partial = partial


class ToleranceUnreachableError(CharmaxError):
    """A requested tolerance cannot be certified within the configured limits."""

    pass


class QuadratureDisagreementError(CharmaxError):
    """Two independent quadrature schemes disagree beyond tolerance."""

    pass


class TableFormatError(CharmaxError):
    """A table file is malformed or fails its checksum."""

    pass


class IncompleteTableError(CharmaxError):
    """A statistic was requested on a partial sweep table."""

    pass


class CoverageGapError(CharmaxError):
    """Tables pooled for G_N do not cover every modulus up to N."""

    pass


class ConfigError(CharmaxError):
    """Invalid configuration value or override file."""

    pass
