"""Event-dummy, conditional and sentiment regressions built on :func:`ols_fit`.

The event regressions take the daily abnormal-return series over the
estimation and event windows (market model fitted on the estimation window
only) and regress it on an indicator of the flagged event days.  The dummy
coefficient is then the mean daily abnormal effect on those days; the
implied window CAR (coefficient times number of flagged days) is reported
in ``RegressionResult.extras``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import DataError, NumericalError
from ..event_frame import EventSpec, FramedPanel, slice_window
from ..market_model import CarSeries, MarketModelFit, abnormal_returns, fit_market_model
from .ols import DesignMatrix, RegressionResult, ols_fit

EVENT = "Event"


@dataclass(frozen=True, eq=False)
class EventSample:
    """Abnormal returns over estimation and event windows for one asset."""

    fit: MarketModelFit
    offsets: np.ndarray
    ars: np.ndarray
    rows: np.ndarray  # positions of the sample rows in the framed panel

    def event_car(self, spec: EventSpec) -> CarSeries:
        start, end = spec.event_window
        mask = (self.offsets >= start) & (self.offsets <= end)
        return CarSeries(self.ars[mask], (start, end))


def event_sample(framed: FramedPanel, asset: str, benchmark: str, spec: EventSpec) -> EventSample:
    """Fit the market model on the estimation window and compute ARs on both windows."""
    est = slice_window(framed, *spec.estimation_window)
    slice_window(framed, *spec.event_window)
    fit = fit_market_model(
        est.column(asset), est.column(benchmark), window=spec.estimation_window
    )
    idx = framed.day_index
    in_est = (idx >= spec.estimation_window[0]) & (idx <= spec.estimation_window[1])
    in_evt = (idx >= spec.event_window[0]) & (idx <= spec.event_window[1])
    rows = np.flatnonzero(in_est | in_evt)
    panel = framed.panel
    ars = abnormal_returns(fit, panel.column(asset)[rows], panel.column(benchmark)[rows])
    return EventSample(fit, idx[rows], ars, rows)


def event_car(framed: FramedPanel, asset: str, benchmark: str, spec: EventSpec) -> CarSeries:
    """Abnormal returns and running CAR over the event window."""
    return event_sample(framed, asset, benchmark, spec).event_car(spec)


def _dummy(sample: EventSample, spec: EventSpec, flagged: Iterable[int]) -> tuple[np.ndarray, frozenset]:
    flagged = spec.check_flagged(flagged)
    if not flagged:
        raise NumericalError("degenerate event dummy: no flagged offsets (zero variance)")
    return np.isin(sample.offsets, sorted(flagged)).astype(np.float64), flagged


def _with_event_extras(res: RegressionResult, sample: EventSample, flagged: frozenset) -> RegressionResult:
    on = np.isin(sample.offsets, sorted(flagged))
    extras = {
        "alpha_hat": sample.fit.alpha_hat,
        "beta_hat": sample.fit.beta_hat,
        "flagged_days": float(len(flagged)),
        "implied_window_car": res.coef(EVENT) * len(flagged),
        "observed_window_car": float(np.sum(sample.ars[on])),
    }
    return replace(res, extras=extras)


def event_dummy_regression(
    framed: FramedPanel,
    asset: str,
    benchmark: str,
    spec: EventSpec,
    flagged: Iterable[int],
    cov_type: str = "HC1",
) -> RegressionResult:
    """Regress daily abnormal returns on (Constant, Event)."""
    sample = event_sample(framed, asset, benchmark, spec)
    dummy, flagged = _dummy(sample, spec, flagged)
    X = DesignMatrix.from_columns({EVENT: dummy})
    return _with_event_extras(ols_fit(X, sample.ars, cov_type), sample, flagged)


def conditional_event_regression(
    framed: FramedPanel,
    asset: str,
    benchmark: str,
    spec: EventSpec,
    flagged: Iterable[int],
    controls: Sequence[str],
    cov_type: str = "HC1",
) -> RegressionResult:
    """Regress daily abnormal returns on (Constant, Event, controls...).

    Control columns are used as they appear in the panel; transform them
    (log returns by default) before framing.
    """
    panel = framed.panel
    missing = [c for c in controls if c not in panel.columns]
    if missing:
        raise DataError(f"missing control column(s): {', '.join(missing)}")
    sample = event_sample(framed, asset, benchmark, spec)
    dummy, flagged = _dummy(sample, spec, flagged)
    cols = {EVENT: dummy}
    cols.update({c: panel.column(c)[sample.rows] for c in controls})
    X = DesignMatrix.from_columns(cols)
    return _with_event_extras(ols_fit(X, sample.ars, cov_type), sample, flagged)


def sentiment_regression(
    stock_returns,
    sentiment,
    controls: Mapping[str, np.ndarray] | None = None,
    sentiment_name: str = "Sentiment",
    cov_type: str = "HC1",
) -> RegressionResult:
    """Regress daily stock returns on a public-interest series and optional controls.

    All inputs must already share one date index (see ``series_store.align``).
    """
    y = np.asarray(stock_returns, dtype=np.float64)
    cols = {sentiment_name: np.asarray(sentiment, dtype=np.float64)}
    for name, col in (controls or {}).items():
        if name in cols:
            raise DataError(f"control {name!r} clashes with the sentiment regressor name")
        cols[name] = np.asarray(col, dtype=np.float64)
    for name, col in cols.items():
        if col.shape != y.shape:
            raise DataError(
                f"regressor {name!r} has {col.size} values but returns have {y.size}; align first"
            )
    return ols_fit(DesignMatrix.from_columns(cols), y, cov_type)
