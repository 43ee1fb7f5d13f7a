"""Event-study and sentiment regressions for election-type market shocks.

Pipeline: dated price series -> log returns aligned on common trading days
-> market model on an estimation window -> abnormal returns and CARs ->
event-dummy / conditional / sentiment regressions with HC1 inference ->
journal-style tables.
"""

from .errors import ConfigError, DataError, EventRegError, NumericalError
from .event_frame import EventSpec, FramedPanel, frame, slice_window
from .inference import (
    DesignMatrix,
    RegressionResult,
    conditional_event_regression,
    event_car,
    event_dummy_regression,
    hc_standard_errors,
    ols_fit,
    sentiment_regression,
    student_t_pvalue,
)
from .market_model import (
    CarSeries,
    MarketModelFit,
    abnormal_returns,
    cumulative_abnormal_return,
    fit_market_model,
)
from .reporting import ResultTable, regression_table, render_table, significance_stars
from .series_store import (
    AlignedPanel,
    DatedSeries,
    align,
    log_levels,
    log_returns,
    parse_csv_series,
    render_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedPanel",
    "CarSeries",
    "ConfigError",
    "DataError",
    "DatedSeries",
    "DesignMatrix",
    "EventRegError",
    "EventSpec",
    "FramedPanel",
    "MarketModelFit",
    "NumericalError",
    "RegressionResult",
    "ResultTable",
    "abnormal_returns",
    "align",
    "conditional_event_regression",
    "cumulative_abnormal_return",
    "event_car",
    "event_dummy_regression",
    "fit_market_model",
    "frame",
    "hc_standard_errors",
    "log_levels",
    "log_returns",
    "ols_fit",
    "parse_csv_series",
    "regression_table",
    "render_csv",
    "render_table",
    "sentiment_regression",
    "significance_stars",
    "slice_window",
    "student_t_pvalue",
]
