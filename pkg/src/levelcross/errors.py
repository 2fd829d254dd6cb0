"""Exception hierarchy.

The CLI maps these onto exit codes: configuration problems -> 1,
data/ingestion problems -> 2, numerical failures -> 3.
"""


class LevelCrossError(Exception):
    """Base class for all package errors."""


class ConfigError(LevelCrossError):
    """Invalid configuration, parameters, or usage."""


class InvalidSpec(ConfigError):
    """Generator specification violates its constraints."""


class NonPositiveSigma(ConfigError):
    """Scale parameter must be strictly positive."""


class TooFewReports(ConfigError):
    """Ranking requires at least two reports."""


class DataError(LevelCrossError):
    """Problem with input data."""


class ParseError(DataError):
    """Malformed input row. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NonPositivePrice(ParseError):
    """Price value is zero or negative (strict policy only)."""


class TooShort(DataError):
    """Series shorter than the minimum the operation needs."""


class NumericalError(LevelCrossError):
    """Numerical procedure failed on otherwise valid input."""


class DegenerateSeries(NumericalError):
    """Series has no usable variation (e.g. constant values)."""


class LevelOutOfRange(NumericalError):
    """Requested level lies outside the analyzed grid."""
