"""Dated series: CSV ingestion, log transforms and calendar alignment.

Dates are exchange-local calendar days (``datetime.date``); values are
float64.  Every container here is immutable once built.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DataError

logger = logging.getLogger(__name__)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def _check_dates(dates: Sequence[date], name: str) -> None:
    for prev, cur in zip(dates, dates[1:]):
        if cur <= prev:
            kind = "duplicate" if cur == prev else "out-of-order"
            raise DataError(
                f"series {name!r}: dates not strictly increasing "
                f"({kind} date {cur.isoformat()} after {prev.isoformat()})"
            )


@dataclass(frozen=True, eq=False)
class DatedSeries:
    """Ordered (date, value) observations for one instrument or indicator.

    ``skipped`` counts input rows whose value cell was empty; it is
    bookkeeping only and does not take part in equality.
    """

    name: str
    dates: tuple[date, ...]
    values: np.ndarray
    skipped: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.ndim != 1 or len(self.values) != len(self.dates):
            raise DataError(f"series {self.name!r}: dates and values differ in length")
        if len(self.dates) == 0:
            raise DataError(f"series {self.name!r}: zero usable rows")
        _check_dates(self.dates, self.name)
        bad = np.flatnonzero(~np.isfinite(self.values))
        if bad.size:
            d = self.dates[bad[0]].isoformat()
            raise DataError(f"series {self.name!r}: non-finite value at {d}")

    def __len__(self) -> int:
        return len(self.dates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DatedSeries):
            return NotImplemented
        return (
            self.name == other.name
            and self.dates == other.dates
            and np.array_equal(self.values, other.values)
        )

    def rename(self, name: str) -> "DatedSeries":
        return DatedSeries(name, self.dates, self.values)


@dataclass(frozen=True, eq=False)
class AlignedPanel:
    """Named value columns sharing one strictly increasing date index.

    ``dropped`` records, per column, how many observations alignment
    discarded to reach the common dates.
    """

    dates: tuple[date, ...]
    columns: Mapping[str, np.ndarray]
    dropped: Mapping[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        cols = {str(k): _frozen(v) for k, v in self.columns.items()}
        if len(cols) != len(self.columns):
            raise DataError("panel column names must be unique")
        for name, col in cols.items():
            if col.shape != (len(self.dates),):
                raise DataError(
                    f"panel column {name!r} has {col.size} values for {len(self.dates)} dates"
                )
        _check_dates(self.dates, "panel")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "dropped", dict(self.dropped))

    def __len__(self) -> int:
        return len(self.dates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlignedPanel):
            return NotImplemented
        return (
            self.dates == other.dates
            and list(self.columns) == list(other.columns)
            and all(np.array_equal(self.columns[k], other.columns[k]) for k in self.columns)
        )

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise DataError(
                f"panel has no column {name!r} (available: {', '.join(self.columns)})"
            ) from None

    def series(self, name: str) -> DatedSeries:
        return DatedSeries(name, self.dates, self.column(name))

    def to_series(self) -> list[DatedSeries]:
        return [self.series(name) for name in self.columns]

    def select(self, names: Iterable[str]) -> "AlignedPanel":
        return AlignedPanel(self.dates, {n: self.column(n) for n in names})

    def take(self, rows) -> "AlignedPanel":
        """Subset rows by integer index array or slice."""
        idx = np.arange(len(self.dates))[rows]
        return AlignedPanel(
            [self.dates[i] for i in idx],
            {k: v[idx] for k, v in self.columns.items()},
        )

    def between(self, start: date | None = None, end: date | None = None) -> "AlignedPanel":
        """Restrict to dates in the closed range [start, end]."""
        keep = [
            i
            for i, d in enumerate(self.dates)
            if (start is None or d >= start) and (end is None or d <= end)
        ]
        if not keep:
            raise DataError(
                f"no observations between {start or '-inf'} and {end or '+inf'}"
            )
        return self.take(np.array(keep))


def parse_csv_series(text: str, value_column: str, name: str | None = None) -> DatedSeries:
    """Read one value column of a CSV with a leading ISO-8601 ``date`` column.

    Rows whose value cell is empty are skipped and tallied in
    ``DatedSeries.skipped``.  Any other malformed row is rejected with its
    line number.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("CSV input is empty (no header row)") from None
    if not header or header[0].lower() != "date":
        raise DataError(f"first CSV column must be 'date', got {header[:1]}")
    if value_column not in header[1:]:
        raise DataError(
            f"CSV has no column {value_column!r} (available: {', '.join(header[1:])})"
        )
    col = header.index(value_column)

    dates: list[date] = []
    values: list[float] = []
    skipped = 0
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            day = date.fromisoformat(row[0].strip())
        except ValueError:
            raise DataError(f"line {lineno}: unparseable date {row[0]!r}") from None
        cell = row[col].strip() if col < len(row) else ""
        if not cell:
            skipped += 1
            continue
        try:
            value = float(cell)
        except ValueError:
            raise DataError(
                f"line {lineno}: unparseable value {cell!r} in column {value_column!r}"
            ) from None
        if not math.isfinite(value):
            raise DataError(f"line {lineno}: non-finite value {cell!r} in column {value_column!r}")
        dates.append(day)
        values.append(value)

    label = name or value_column
    if not dates:
        raise DataError(f"series {label!r}: zero usable rows")
    if skipped:
        logger.warning("series %r: skipped %d row(s) with empty values", label, skipped)
    return DatedSeries(label, dates, values, skipped=skipped)


def csv_columns(text: str) -> list[str]:
    """Value-column names declared in a CSV header (everything after ``date``)."""
    first = text.splitlines()[0] if text else ""
    header = next(csv.reader([first]), [])
    return [h.strip() for h in header[1:]]


def render_csv(data: DatedSeries | AlignedPanel) -> str:
    """Write a series or panel in the ingestion CSV schema.

    Values use ``repr`` so that re-parsing restores identical floats.
    """
    panel = (
        AlignedPanel(data.dates, {data.name: data.values})
        if isinstance(data, DatedSeries)
        else data
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", *panel.names])
    for i, d in enumerate(panel.dates):
        writer.writerow([d.isoformat(), *(repr(float(panel.columns[n][i])) for n in panel.names)])
    return buf.getvalue()


def _require_positive(series: DatedSeries) -> None:
    bad = np.flatnonzero(series.values <= 0)
    if bad.size:
        d = series.dates[bad[0]].isoformat()
        raise DataError(
            f"series {series.name!r}: non-positive value {series.values[bad[0]]!r} at {d}"
        )


def log_returns(series: DatedSeries) -> DatedSeries:
    """Daily log returns ln(P_t / P_{t-1}), dated at the later observation."""
    if len(series) < 2:
        raise DataError(f"series {series.name!r}: need at least 2 observations for returns")
    _require_positive(series)
    logs = np.log(series.values)
    return DatedSeries(series.name, series.dates[1:], np.diff(logs))


def log_levels(series: DatedSeries) -> DatedSeries:
    _require_positive(series)
    return DatedSeries(series.name, series.dates, np.log(series.values))


def align(series_list: Sequence[DatedSeries]) -> AlignedPanel:
    """Restrict every series to the dates all of them share.

    Missing days are never filled; the number of observations each series
    lost is reported in ``AlignedPanel.dropped``.
    """
    if not series_list:
        raise DataError("align needs at least one series")
    names = [s.name for s in series_list]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise DataError(f"duplicate series names: {', '.join(dupes)}")

    common = set(series_list[0].dates)
    for s in series_list[1:]:
        common &= set(s.dates)
    if not common:
        ranges = "; ".join(
            f"{s.name}: {s.dates[0].isoformat()}..{s.dates[-1].isoformat()}" for s in series_list
        )
        raise DataError(f"series share no common dates ({ranges})")

    dates = sorted(common)
    columns, dropped = {}, {}
    for s in series_list:
        keep = np.array([d in common for d in s.dates])
        columns[s.name] = s.values[keep]
        dropped[s.name] = int(len(s) - keep.sum())
        if dropped[s.name]:
            logger.info("align: dropped %d observation(s) of %r", dropped[s.name], s.name)
    return AlignedPanel(dates, columns, dropped)
