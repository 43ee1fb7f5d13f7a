from .models import (
    EVENT,
    EventSample,
    conditional_event_regression,
    event_car,
    event_dummy_regression,
    event_sample,
    sentiment_regression,
)
from .ols import (
    COV_TYPES,
    INTERCEPT,
    DesignMatrix,
    RegressionResult,
    hc_standard_errors,
    ols_fit,
)
from .tdist import regularized_incomplete_beta, student_t_pvalue

__all__ = [
    "COV_TYPES",
    "DesignMatrix",
    "EVENT",
    "EventSample",
    "INTERCEPT",
    "RegressionResult",
    "conditional_event_regression",
    "event_car",
    "event_dummy_regression",
    "event_sample",
    "hc_standard_errors",
    "ols_fit",
    "regularized_incomplete_beta",
    "sentiment_regression",
    "student_t_pvalue",
]
