"""Single-index market model, abnormal returns and cumulative abnormal returns."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericalError


@dataclass(frozen=True)
class MarketModelFit:
    """OLS fit of asset returns on benchmark returns over an estimation window.

    ``benchmark_mean`` and ``benchmark_ss`` (centered sum of squares) are
    kept so that classical standard errors of the two estimates can be
    recovered without the raw data.
    """

    alpha_hat: float
    beta_hat: float
    residual_variance: float
    n_obs: int
    benchmark_mean: float
    benchmark_ss: float
    window: tuple[int, int] | None = None

    @property
    def beta_se(self) -> float:
        return math.sqrt(self.residual_variance / self.benchmark_ss)

    @property
    def alpha_se(self) -> float:
        return math.sqrt(
            self.residual_variance * (1.0 / self.n_obs + self.benchmark_mean**2 / self.benchmark_ss)
        )

    def predict(self, benchmark_returns) -> np.ndarray:
        return self.alpha_hat + self.beta_hat * np.asarray(benchmark_returns, dtype=np.float64)


def _pair(asset_returns, benchmark_returns) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(asset_returns, dtype=np.float64)
    x = np.asarray(benchmark_returns, dtype=np.float64)
    if y.ndim != 1 or x.ndim != 1 or y.shape != x.shape:
        raise DataError(
            f"asset and benchmark returns differ in length ({y.size} vs {x.size})"
        )
    return y, x


def fit_market_model(
    asset_returns, benchmark_returns, window: tuple[int, int] | None = None
) -> MarketModelFit:
    """Least-squares intercept and slope of asset on benchmark returns.

    Residual variance uses the n - 2 denominator.
    """
    y, x = _pair(asset_returns, benchmark_returns)
    n = y.size
    if n < 3:
        raise DataError(f"market model needs at least 3 observations, got {n}")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(x))):
        raise DataError("market model inputs contain non-finite returns")
    if np.all(x == x[0]):
        raise NumericalError("zero-variance benchmark: market-model slope is undefined")

    x_mean = x.mean()
    y_mean = y.mean()
    dx = x - x_mean
    sxx = float(dx @ dx)
    if sxx <= 0.0:
        raise NumericalError("zero-variance benchmark: market-model slope is undefined")
    beta = float(dx @ (y - y_mean)) / sxx
    alpha = float(y_mean - beta * x_mean)
    resid = y - alpha - beta * x
    return MarketModelFit(
        alpha_hat=alpha,
        beta_hat=beta,
        residual_variance=float(resid @ resid) / (n - 2),
        n_obs=n,
        benchmark_mean=float(x_mean),
        benchmark_ss=sxx,
        window=window,
    )


def abnormal_returns(fit: MarketModelFit, asset_returns, benchmark_returns) -> np.ndarray:
    """AR_t = R_t - alpha_hat - beta_hat * R_M,t, elementwise."""
    y, x = _pair(asset_returns, benchmark_returns)
    if y.size < 1:
        raise DataError("abnormal returns need at least one observation")
    return y - fit.alpha_hat - fit.beta_hat * x


@dataclass(frozen=True, eq=False)
class CarSeries:
    """Abnormal returns over an event window [start, end] and their running sum."""

    ars: np.ndarray
    window: tuple[int, int]

    def __post_init__(self):
        ars = np.array(self.ars, dtype=np.float64)
        ars.setflags(write=False)
        object.__setattr__(self, "ars", ars)
        start, end = (int(w) for w in self.window)
        object.__setattr__(self, "window", (start, end))
        if start > end:
            raise DataError(f"CAR window start {start} > end {end}")
        if ars.shape != (end - start + 1,):
            raise DataError(
                f"CAR window [{start}, {end}] needs {end - start + 1} abnormal returns, got {ars.size}"
            )

    @classmethod
    def starting_at(cls, ars, start_offset: int) -> "CarSeries":
        return cls(ars, (start_offset, start_offset + len(ars) - 1))

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(self.window[0], self.window[1] + 1)

    @property
    def running(self) -> np.ndarray:
        """Cumulative sum from the window start through each offset."""
        return np.cumsum(self.ars)

    def ar(self, offset: int) -> float:
        return cumulative_abnormal_return(self, offset, offset)

    def car(self, a: int | None = None, b: int | None = None) -> float:
        return cumulative_abnormal_return(
            self, self.window[0] if a is None else a, self.window[1] if b is None else b
        )


def cumulative_abnormal_return(cars: CarSeries, a: int, b: int) -> float:
    """Sum of abnormal returns over offsets a..b inside the series window."""
    start, end = cars.window
    if a > b:
        raise DataError(f"CAR bounds reversed: {a} > {b}")
    if a < start or b > end:
        raise DataError(f"CAR bounds [{a}, {b}] outside window [{start}, {end}]")
    return float(np.sum(cars.ars[a - start : b - start + 1]))
