"""Independent least-squares oracle in exact rational arithmetic.

The normal equations X'X b = X'y are accumulated with ``fractions.Fraction``
(every float is a dyadic rational, so products and sums are exact) and
solved by Gaussian elimination with full pivoting.  The only rounding is
the final conversion of each coefficient back to float.  This shares no
code path with the QR-based production solver.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import NumericalError
from ..inference.ols import DesignMatrix


def _normal_equations(x: np.ndarray, y: np.ndarray) -> tuple[list[list[Fraction]], list[Fraction]]:
    n, k = x.shape
    xf = [[Fraction(float(v)) for v in row] for row in x]
    yf = [Fraction(float(v)) for v in y]
    a = [[sum((xf[i][r] * xf[i][c] for i in range(n)), Fraction(0)) for c in range(k)] for r in range(k)]
    b = [sum((xf[i][r] * yf[i] for i in range(n)), Fraction(0)) for r in range(k)]
    return a, b


def solve_full_pivot(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a square system exactly; raises on an exactly singular matrix."""
    k = len(b)
    a = [row[:] + [rhs] for row, rhs in zip(a, b)]
    perm = list(range(k))  # perm[j] = original unknown held in column j
    for step in range(k):
        pr, pc, best = step, step, Fraction(0)
        for r in range(step, k):
            for c in range(step, k):
                if abs(a[r][c]) > best:
                    pr, pc, best = r, c, abs(a[r][c])
        if best == 0:
            raise NumericalError("oracle: normal equations are exactly singular")
        a[step], a[pr] = a[pr], a[step]
        if pc != step:
            for row in a:
                row[step], row[pc] = row[pc], row[step]
            perm[step], perm[pc] = perm[pc], perm[step]
        pivot = a[step][step]
        for r in range(step + 1, k):
            factor = a[r][step] / pivot
            if factor:
                for c in range(step, k + 1):
                    a[r][c] -= factor * a[step][c]
    z = [Fraction(0)] * k
    for r in range(k - 1, -1, -1):
        acc = a[r][k] - sum((a[r][c] * z[c] for c in range(r + 1, k)), Fraction(0))
        z[r] = acc / a[r][r]
    out = [Fraction(0)] * k
    for j, orig in enumerate(perm):
        out[orig] = z[j]
    return out


def oracle_ols(X, y) -> np.ndarray:
    """Least-squares coefficients of ``y`` on ``X`` (DesignMatrix or 2-D array)."""
    x = X.values if isinstance(X, DesignMatrix) else np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2 or y.shape != (x.shape[0],):
        raise NumericalError(f"oracle: shapes do not match ({x.shape} vs {y.shape})")
    a, b = _normal_equations(x, y)
    return np.array([float(v) for v in solve_full_pivot(a, b)])
