from datetime import date, timedelta

import numpy as np
import pytest

from eventreg.series_store import AlignedPanel


def business_days(start: date, n: int) -> list[date]:
    out, d = [], start
    while len(out) < n:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


@pytest.fixture
def make_panel():
    def _make(n: int, columns: dict | None = None, start: date = date(2016, 1, 4)) -> AlignedPanel:
        dates = business_days(start, n)
        if columns is None:
            rng = np.random.default_rng(0)
            columns = {"asset": rng.normal(0, 0.01, n), "benchmark": rng.normal(0, 0.01, n)}
        return AlignedPanel(dates, columns)

    return _make
