"""Least squares with heteroskedasticity-consistent standard errors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import DataError, NumericalError
from .tdist import student_t_pvalue

INTERCEPT = "Constant"
RCOND_THRESHOLD = 1e-12
COV_TYPES = ("HC0", "HC1", "HC2", "HC3", "nonrobust")


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """Regressor matrix whose first column is an intercept of ones."""

    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "names", tuple(self.names))
        if vals.ndim != 2:
            raise DataError("design matrix must be two-dimensional")
        n, k = vals.shape
        if len(self.names) != k:
            raise DataError(f"design matrix has {k} columns but {len(self.names)} names")
        if len(set(self.names)) != k:
            raise DataError(f"design matrix column names are not unique: {self.names}")
        if n <= k:
            raise NumericalError(f"need more observations than regressors (n={n}, k={k})")
        if not np.all(np.isfinite(vals)):
            raise DataError("design matrix contains non-finite entries")
        if k == 0 or not np.all(vals[:, 0] == 1.0):
            raise DataError("design matrix must lead with an intercept column of ones")
        for i in range(k):
            for j in range(i + 1, k):
                if np.array_equal(vals[:, i], vals[:, j]):
                    raise NumericalError(
                        f"rank deficiency: columns {self.names[i]!r} and {self.names[j]!r} are identical"
                    )

    @classmethod
    def from_columns(cls, columns: Mapping[str, np.ndarray], n: int | None = None) -> "DesignMatrix":
        """Build ``[1, columns...]`` with the intercept named ``Constant``."""
        cols = [np.asarray(v, dtype=np.float64) for v in columns.values()]
        if n is None:
            if not cols:
                raise DataError("cannot infer row count without regressors")
            n = cols[0].size
        for name, col in zip(columns, cols):
            if col.shape != (n,):
                raise DataError(f"regressor {name!r} has {col.size} values, expected {n}")
        return cls((INTERCEPT, *columns), np.column_stack([np.ones(n), *cols]))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class RegressionResult:
    names: tuple[str, ...]
    coefficients: np.ndarray
    robust_se: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    r2: float
    adj_r2: float
    n: int
    k: int
    residuals: np.ndarray
    cov_type: str = "HC1"
    extras: Mapping[str, float] = field(default_factory=dict)

    @property
    def dof(self) -> int:
        return self.n - self.k

    def _index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no regressor {name!r} (have {', '.join(self.names)})") from None

    def coef(self, name: str) -> float:
        return float(self.coefficients[self._index(name)])

    def pvalue(self, name: str) -> float:
        return float(self.p_values[self._index(name)])

    def tstat(self, name: str) -> float:
        return float(self.t_stats[self._index(name)])

    def se(self, name: str) -> float:
        return float(self.robust_se[self._index(name)])


@dataclass(frozen=True)
class _Factor:
    # X = (Q R) diag(scale); scale equilibrates column norms.
    q: np.ndarray
    r: np.ndarray
    scale: np.ndarray


def _dependent_columns(names, scaled: np.ndarray) -> list[str]:
    _, s, vt = np.linalg.svd(scaled, full_matrices=False)
    null = vt[-1]
    return [n for n, w in zip(names, np.abs(null)) if w > 1e-6 * np.abs(null).max()]


def _factor(X: DesignMatrix) -> _Factor:
    vals = X.values
    scale = np.sqrt(np.einsum("ij,ij->j", vals, vals))
    zero = [n for n, s in zip(X.names, scale) if s == 0.0]
    if zero:
        raise NumericalError(f"rank deficiency: all-zero column(s) {', '.join(zero)}")
    scaled = vals / scale
    q, r = np.linalg.qr(scaled)
    sv = np.linalg.svd(r, compute_uv=False)
    # Reciprocal condition number of the (equilibrated) normal equations R'R.
    rcond = (sv[-1] / sv[0]) ** 2 if sv[0] > 0 else 0.0
    if rcond < RCOND_THRESHOLD:
        cols = _dependent_columns(X.names, scaled)
        raise NumericalError(
            f"rank deficiency (reciprocal condition {rcond:.3g} < {RCOND_THRESHOLD:g}); "
            f"linearly dependent columns: {', '.join(cols)}"
        )
    return _Factor(q, r, scale)


def _hc_from_factor(f: _Factor, residuals: np.ndarray, kind: str) -> np.ndarray:
    if kind not in COV_TYPES:
        raise ValueError(f"unknown covariance type {kind!r}; choose from {COV_TYPES}")
    n, k = f.q.shape
    e2 = residuals * residuals
    if kind == "HC0":
        w = e2
    elif kind == "HC1":
        w = e2 * (n / (n - k))
    elif kind == "nonrobust":
        w = np.full(n, e2.sum() / (n - k))
    else:
        lev = np.einsum("ij,ij->i", f.q, f.q)
        room = 1.0 - lev
        # Leverage-one rows are fitted exactly; they carry no residual information.
        safe = room > 1e-10
        power = 1 if kind == "HC2" else 2
        w = np.where(safe, e2 / np.where(safe, room, 1.0) ** power, 0.0)
    # (X'X)^{-1} X' = diag(1/scale) R^{-1} Q'
    m = np.linalg.solve(f.r, f.q.T) / f.scale[:, None]
    cov_diag = np.einsum("ji,i,ji->j", m, w, m)
    return np.sqrt(np.maximum(cov_diag, 0.0))


def hc_standard_errors(X: DesignMatrix, residuals, kind: str = "HC1") -> np.ndarray:
    """Sandwich standard errors (X'X)^-1 X' diag(w) X (X'X)^-1.

    ``kind="HC1"`` weights squared residuals by n/(n-k).  HC0, HC2, HC3 and
    the classical homoskedastic ``"nonrobust"`` estimate are also available.
    """
    e = np.asarray(residuals, dtype=np.float64)
    if e.shape != (X.shape[0],):
        raise DataError(f"residuals have length {e.size}, design has {X.shape[0]} rows")
    return _hc_from_factor(_factor(X), e, kind)


def _t_and_p(coefs: np.ndarray, se: np.ndarray, dof: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.empty_like(coefs)
    p = np.empty_like(coefs)
    for j, (b, s) in enumerate(zip(coefs, se)):
        if s > 0:
            t[j] = b / s
        elif b == 0:
            t[j] = 0.0
        else:
            t[j] = math.copysign(math.inf, b)
        p[j] = student_t_pvalue(float(t[j]), dof)
    return t, p


def ols_fit(X: DesignMatrix, y, cov_type: str = "HC1") -> RegressionResult:
    """Ordinary least squares via Householder QR of the equilibrated design.

    Inference uses the requested sandwich covariance (HC1 by default) and
    two-sided Student-t p-values with n - k degrees of freedom.
    """
    n, k = X.shape
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (n,):
        raise DataError(f"response has length {y.size}, design has {n} rows")
    if not np.all(np.isfinite(y)):
        raise DataError("response contains non-finite values")

    f = _factor(X)
    coefs = np.linalg.solve(f.r, f.q.T @ y) / f.scale
    resid = y - X.values @ coefs
    ssr = float(resid @ resid)
    centered = y - y.mean()
    sst = float(centered @ centered)
    if sst > 0:
        r2 = min(1.0, max(0.0, 1.0 - ssr / sst))
    else:
        r2 = 1.0  # constant response, reproduced exactly by the intercept
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - k)

    se = _hc_from_factor(f, resid, cov_type)
    t, p = _t_and_p(coefs, se, n - k)
    for arr in (coefs, se, t, p, resid):
        arr.setflags(write=False)
    return RegressionResult(
        names=X.names,
        coefficients=coefs,
        robust_se=se,
        t_stats=t,
        p_values=p,
        r2=r2,
        adj_r2=adj_r2,
        n=n,
        k=k,
        residuals=resid,
        cov_type=cov_type,
    )
