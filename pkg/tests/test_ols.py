import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eventreg.errors import DataError, NumericalError
from eventreg.inference import DesignMatrix, hc_standard_errors, ols_fit, student_t_pvalue
from eventreg.synthlab import oracle_ols


def random_instance(seed, n=None, k=None):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(10, 51))
    k = k or int(rng.integers(2, 7))
    X = np.column_stack([np.ones(n), rng.normal(size=(n, k - 1)) * rng.uniform(0.01, 10, k - 1)])
    y = X @ rng.normal(size=k) + rng.standard_t(3, size=n) * rng.uniform(0.1, 2)
    return DesignMatrix([f"x{j}" for j in range(k)], X), y


def test_noiseless_line():
    x = np.arange(5.0)
    res = ols_fit(DesignMatrix.from_columns({"x": x}), 1 + 2 * x)
    np.testing.assert_allclose(res.coefficients, [1, 2], atol=1e-14)
    assert res.r2 == 1.0
    np.testing.assert_allclose(res.residuals, 0, atol=1e-14)
    assert res.names == ("Constant", "x")


def test_matches_oracle_n30_k3():
    X, y = random_instance(2024, 30, 3)
    got = ols_fit(X, y).coefficients
    want = oracle_ols(X, y)
    np.testing.assert_allclose(got, want, rtol=1e-9)


def test_duplicated_column_rejected():
    x = np.arange(6.0)
    with pytest.raises(NumericalError, match="rank deficiency.*'a'.*'b'"):
        DesignMatrix(["Constant", "a", "b"], np.column_stack([np.ones(6), x, x]))


def test_collinear_columns_named():
    rng = np.random.default_rng(0)
    a, c = rng.normal(size=20), rng.normal(size=20)
    X = DesignMatrix.from_columns({"a": a, "b": 2 * a - 1, "c": c})
    with pytest.raises(NumericalError) as info:
        ols_fit(X, rng.normal(size=20))
    msg = str(info.value)
    assert "'a'" not in msg and "a, b" in msg.replace("Constant, ", "")
    assert "c" not in msg.split("columns:")[1]


def test_constant_regressor_rank_deficient_with_intercept():
    X = DesignMatrix.from_columns({"s": np.full(10, 3.0)})
    with pytest.raises(NumericalError, match="Constant, s"):
        ols_fit(X, np.arange(10.0))


def test_zero_column_rejected():
    X = DesignMatrix.from_columns({"z": np.zeros(10)})
    with pytest.raises(NumericalError, match="all-zero"):
        ols_fit(X, np.arange(10.0))


def test_design_invariants():
    with pytest.raises(NumericalError, match="more observations"):
        DesignMatrix.from_columns({"x": [1.0, 2.0]})
    with pytest.raises(DataError, match="intercept"):
        DesignMatrix(["a", "b"], np.arange(12.0).reshape(6, 2))
    with pytest.raises(DataError, match="non-finite"):
        DesignMatrix.from_columns({"x": [1.0, np.nan, 2.0, 3.0]})
    X = DesignMatrix.from_columns({"x": np.arange(5.0)})
    with pytest.raises(DataError, match="length"):
        ols_fit(X, np.arange(4.0))


SIX = np.array(
    [[1.0, 0.3, -1.2], [1.0, 1.1, 0.4], [1.0, -0.7, 2.2], [1.0, 2.5, -0.3], [1.0, 0.0, 1.0], [1.0, -1.9, -2.0]]
)
SIX_Y = np.array([0.5, 2.1, -0.4, 3.3, 0.9, -2.2])


def brute_force_hc1(X, e):
    n, k = X.shape
    xtx = sum(np.outer(X[i], X[i]) for i in range(n))
    bread = np.linalg.inv(xtx)
    meat = sum(e[i] ** 2 * np.outer(X[i], X[i]) for i in range(n))
    cov = bread @ meat @ bread * n / (n - k)
    return np.sqrt([cov[j, j] for j in range(k)])


def test_hc1_matches_brute_force_sandwich():
    X = DesignMatrix(["Constant", "a", "b"], SIX)
    res = ols_fit(X, SIX_Y)
    np.testing.assert_allclose(res.robust_se, brute_force_hc1(SIX, res.residuals), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(
        hc_standard_errors(X, res.residuals), brute_force_hc1(SIX, res.residuals), rtol=1e-12
    )


def test_hc_zero_residuals_and_homogeneity():
    X = DesignMatrix(["Constant", "a", "b"], SIX)
    assert np.all(hc_standard_errors(X, np.zeros(6)) == 0)
    e = ols_fit(X, SIX_Y).residuals
    base = hc_standard_errors(X, e)
    for c in (-3.0, 0.5, 7.0):
        np.testing.assert_allclose(hc_standard_errors(X, c * e), abs(c) * base, rtol=1e-13)


def test_other_covariance_types():
    X = DesignMatrix(["Constant", "a", "b"], SIX)
    res = ols_fit(X, SIX_Y)
    e = res.residuals
    n, k = SIX.shape
    bread = np.linalg.inv(SIX.T @ SIX)
    lev = np.einsum("ij,jk,ik->i", SIX, bread, SIX)
    for kind, w in {
        "HC0": e**2,
        "HC2": e**2 / (1 - lev),
        "HC3": e**2 / (1 - lev) ** 2,
        "nonrobust": np.full(n, e @ e / (n - k)),
    }.items():
        want = np.sqrt(np.diag(bread @ (SIX.T * w) @ SIX @ bread))
        np.testing.assert_allclose(hc_standard_errors(X, e, kind), want, rtol=1e-11)
    with pytest.raises(ValueError, match="unknown covariance"):
        hc_standard_errors(X, e, "HC9")


def test_result_fields_consistent():
    X, y = random_instance(5)
    res = ols_fit(X, y)
    assert res.dof == res.n - res.k
    np.testing.assert_allclose(res.t_stats, res.coefficients / res.robust_se)
    for t, p in zip(res.t_stats, res.p_values):
        assert p == student_t_pvalue(t, res.dof)
    ssr = res.residuals @ res.residuals
    sst = ((y - y.mean()) ** 2).sum()
    assert res.r2 == pytest.approx(1 - ssr / sst, abs=1e-14)
    assert res.adj_r2 == pytest.approx(1 - (1 - res.r2) * (res.n - 1) / (res.n - res.k), abs=1e-14)
    assert res.coef("x1") == res.coefficients[1]
    with pytest.raises(KeyError):
        res.coef("nope")


@pytest.mark.parametrize("seed", range(25))
def test_invariants_on_seeded_instances(seed):
    X, y = random_instance(seed)
    res = ols_fit(X, y)
    n = res.n
    assert 0.0 <= res.r2 <= 1.0 and res.adj_r2 <= res.r2
    assert abs(res.residuals.sum()) < 1e-9 * n
    xte = X.values.T @ res.residuals
    assert np.max(np.abs(xte)) < 1e-9 * n * np.max(np.abs(X.values))
    assert np.all((res.p_values >= 0) & (res.p_values <= 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.floats(1e-3, 1e3) | st.floats(-1e3, -1e-3))
def test_regressor_scaling_invariance(seed, c):
    X, y = random_instance(seed)
    j = 1 + seed % (X.shape[1] - 1)
    vals = X.values.copy()
    vals[:, j] *= c
    a, b = ols_fit(X, y), ols_fit(DesignMatrix(X.names, vals), y)
    assert b.coefficients[j] == pytest.approx(a.coefficients[j] / c, rel=1e-9)
    # Coefficient scales by 1/c and its SE by 1/|c|: t keeps magnitude, takes sign(c).
    assert abs(np.sign(c) * b.t_stats[j] - a.t_stats[j]) <= 1e-9 * max(1.0, abs(a.t_stats[j]))
    assert abs(b.p_values[j] - a.p_values[j]) <= 1e-9
    assert abs(b.r2 - a.r2) <= 1e-12 and abs(b.adj_r2 - a.adj_r2) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_nested_model_monotonicity(seed):
    X, y = random_instance(seed, k=4)
    rng = np.random.default_rng(seed + 1)
    bigger = DesignMatrix((*X.names, "noise"), np.column_stack([X.values, rng.normal(size=X.shape[0])]))
    small, big = ols_fit(X, y), ols_fit(bigger, y)
    assert big.r2 >= small.r2 - 1e-12
    # Exact bound: the adjusted gain is the R² gain times at most (n-1)/(n-k_big).
    n, kb = big.n, big.k
    assert big.adj_r2 - small.adj_r2 <= (big.r2 - small.r2) * (n - 1) / (n - kb) + 1e-12


def test_noise_regressor_can_raise_adj_r2_more_than_r2_in_small_samples():
    # Counterexample to the naive "adjusted gain <= raw gain" rule.
    X, y = random_instance(1927, k=4)
    rng = np.random.default_rng(1928)
    bigger = DesignMatrix((*X.names, "noise"), np.column_stack([X.values, rng.normal(size=X.shape[0])]))
    small, big = ols_fit(X, y), ols_fit(bigger, y)
    assert big.adj_r2 - small.adj_r2 > big.r2 - small.r2


def test_zero_standard_error_conventions():
    # Response reproduced exactly by the intercept: coefficient stays, slope is 0 with SE 0.
    X = DesignMatrix.from_columns({"x": np.arange(8.0)})
    res = ols_fit(X, np.full(8, 2.0))
    assert res.r2 == 1.0
    assert res.p_values[1] == 1.0 or res.robust_se[1] > 0
