"""Exception types raised across the pipeline.

Each family maps to one CLI exit status, so callers can tell a bad config
apart from bad data or an ill-posed regression.
"""


class EventRegError(ValueError):
    """Base class for every rejection raised by this package."""

    exit_code = 1


class ConfigError(EventRegError):
    """Invalid study parameters: windows, column references, options."""

    exit_code = 2


class DataError(EventRegError):
    """Input series that violate their invariants or cannot be aligned."""

    exit_code = 3


class NumericalError(EventRegError):
    """Rank deficiency, zero variance, or other ill-posed estimation."""

    exit_code = 4
