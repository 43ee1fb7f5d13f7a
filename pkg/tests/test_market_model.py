import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eventreg.errors import DataError, NumericalError
from eventreg.market_model import (
    CarSeries,
    abnormal_returns,
    cumulative_abnormal_return,
    fit_market_model,
)
from eventreg.synthlab import Xoshiro256


def bench(n=110, seed=3):
    return np.random.default_rng(seed).normal(0, 0.01, n)


def test_perfect_fit_identity():
    x = bench()
    fit = fit_market_model(x, x)
    assert fit.alpha_hat == pytest.approx(0, abs=1e-15)
    assert fit.beta_hat == pytest.approx(1, abs=1e-12)
    assert fit.residual_variance == pytest.approx(0, abs=1e-30)


def test_noiseless_affine_recovery():
    x = bench()
    fit = fit_market_model(0.002 + 1.5 * x, x)
    assert abs(fit.alpha_hat - 0.002) <= 1e-12
    assert abs(fit.beta_hat - 1.5) <= 1e-12
    assert fit.n_obs == 110


def test_constant_benchmark_rejected():
    with pytest.raises(NumericalError, match="zero-variance"):
        fit_market_model([0.01, 0.02, 0.03], [0.005] * 3)


def test_length_checks():
    with pytest.raises(DataError, match="differ in length"):
        fit_market_model([0.1, 0.2, 0.3], [0.1, 0.2])
    with pytest.raises(DataError, match="at least 3"):
        fit_market_model([0.1, 0.2], [0.1, 0.3])


def test_refit_is_bit_identical():
    x = bench()
    y = 0.001 + 0.8 * x + bench(seed=9)
    a, b = fit_market_model(y, x), fit_market_model(y, x)
    assert a == b


def test_residual_variance_uses_n_minus_2():
    x = np.array([0.0, 1.0, 2.0, 3.0])
    y = np.array([0.0, 1.0, 1.0, 3.0])
    fit = fit_market_model(y, x)
    resid = y - fit.alpha_hat - fit.beta_hat * x
    assert fit.residual_variance == pytest.approx(resid @ resid / 2)


@pytest.mark.parametrize(
    "alpha, beta, r, rm, expected",
    [(0.0, 1.0, 0.02, 0.005, 0.015), (0.001, 2.0, 0.001, 0.0, 0.0)],
)
def test_abnormal_return_arithmetic(alpha, beta, r, rm, expected):
    fit = fit_market_model(alpha + beta * bench(), bench())
    ar = abnormal_returns(fit, [r], [rm])
    assert ar[0] == pytest.approx(expected, abs=1e-12)


def test_event_window_from_fitted_model_gives_zero_ars():
    x = bench(130)
    y = 0.0003 + 0.9 * x
    fit = fit_market_model(y[:110], x[:110])
    np.testing.assert_allclose(abnormal_returns(fit, y[110:], x[110:]), 0.0, atol=1e-15)


def test_abnormal_returns_length_mismatch():
    fit = fit_market_model(bench(), bench(seed=4))
    with pytest.raises(DataError):
        abnormal_returns(fit, [0.1, 0.2], [0.1])


def test_car_examples():
    cars = CarSeries([0.01, -0.02, 0.005], (-1, 1))
    assert cumulative_abnormal_return(cars, -1, 1) == pytest.approx(-0.005, abs=1e-15)
    assert cumulative_abnormal_return(cars, 0, 0) == -0.02
    assert list(cars.offsets) == [-1, 0, 1]
    with pytest.raises(DataError, match="reversed"):
        cumulative_abnormal_return(cars, 1, 0)
    with pytest.raises(DataError, match="outside"):
        cumulative_abnormal_return(cars, -2, 0)


def test_car_series_length_invariant():
    with pytest.raises(DataError):
        CarSeries([0.1, 0.2], (-5, 5))


ar_vectors = arrays(np.float64, st.integers(1, 40), elements=st.floats(-0.5, 0.5))


@given(ar_vectors, st.integers(-20, 5), st.data())
def test_running_sum_matches_window_sums(ars, start, data):
    cars = CarSeries.starting_at(ars, start)
    tau = data.draw(st.integers(cars.window[0], cars.window[1]))
    assert abs(cars.running[tau - start] - cars.car(start, tau)) <= 1e-12


def test_car_split_additivity_default_window():
    ars = bench(11, seed=5)
    cars = CarSeries(ars, (-5, 5))
    assert abs(cars.car(-5, 5) - (cars.car(-5, 0) + cars.car(1, 5))) <= 1e-12


def test_estimation_residuals_sum_zero_and_orthogonal():
    for seed in range(20):
        x = bench(110, seed)
        y = 0.0005 + 1.3 * x + bench(110, seed + 100)
        fit = fit_market_model(y, x)
        e = y - fit.alpha_hat - fit.beta_hat * x
        assert abs(e.sum()) < 1e-10 * len(e)
        assert abs(e @ x) < 1e-10 * len(e)


@settings(max_examples=60)
@given(st.floats(0.01, 100) | st.floats(-100, -0.01), st.floats(-1, 1), st.integers(0, 10_000))
def test_affine_benchmark_rescaling_leaves_ars_unchanged(c, d, seed):
    x = bench(121, seed % 50)
    y = 0.0005 + 1.3 * x + bench(121, seed % 50 + 1)
    ar1 = abnormal_returns(fit_market_model(y[:110], x[:110]), y, x)
    z = c * x + d
    ar2 = abnormal_returns(fit_market_model(y[:110], z[:110]), y, z)
    np.testing.assert_allclose(ar1, ar2, rtol=0, atol=1e-10)


def test_noisy_recovery_within_four_standard_errors():
    hits = 0
    trials = 200
    for seed in range(trials):
        rng = Xoshiro256(seed)
        x = 0.01 * np.array(rng.normals(110))
        y = 0.0005 + 1.3 * x + 0.01 * np.array(rng.normals(110))
        fit = fit_market_model(y, x)
        hits += (
            abs(fit.alpha_hat - 0.0005) <= 4 * fit.alpha_se
            and abs(fit.beta_hat - 1.3) <= 4 * fit.beta_se
        )
    assert hits / trials >= 0.99
