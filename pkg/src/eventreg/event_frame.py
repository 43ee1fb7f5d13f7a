"""Event-relative trading-day indexing and window slicing.

Offsets count panel rows (trading days) from the event day, not calendar
days.  Day 0 is the event date itself, or with ``snap_forward`` the first
trading date after it.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterable

import numpy as np

from .errors import ConfigError, DataError
from .series_store import AlignedPanel

MIN_ESTIMATION_LENGTH = 10


@dataclass(frozen=True)
class EventSpec:
    """Event date plus estimation and event windows in trading-day offsets.

    Defaults give a 110-day estimation window [-115, -6] followed by an
    11-day event window [-5, +5].
    """

    event_date: date
    estimation_window: tuple[int, int] = (-115, -6)
    event_window: tuple[int, int] = (-5, 5)

    def __post_init__(self):
        est_start, est_end = (int(v) for v in self.estimation_window)
        evt_start, evt_end = (int(v) for v in self.event_window)
        object.__setattr__(self, "estimation_window", (est_start, est_end))
        object.__setattr__(self, "event_window", (evt_start, evt_end))
        if est_start > est_end:
            raise ConfigError(f"estimation window start {est_start} > end {est_end}")
        if evt_start > evt_end:
            raise ConfigError(f"event window start {evt_start} > end {evt_end}")
        if est_end >= evt_start:
            raise ConfigError(
                f"window overlap: estimation end {est_end} must precede event start {evt_start}"
            )
        if self.estimation_length < MIN_ESTIMATION_LENGTH:
            raise ConfigError(
                f"estimation window has {self.estimation_length} days; "
                f"need at least {MIN_ESTIMATION_LENGTH}"
            )

    @property
    def estimation_length(self) -> int:
        return self.estimation_window[1] - self.estimation_window[0] + 1

    @property
    def event_length(self) -> int:
        return self.event_window[1] - self.event_window[0] + 1

    @property
    def event_offsets(self) -> range:
        return range(self.event_window[0], self.event_window[1] + 1)

    def check_flagged(self, flagged: Iterable[int]) -> frozenset[int]:
        flagged = frozenset(int(f) for f in flagged)
        outside = sorted(flagged - set(self.event_offsets))
        if outside:
            raise ConfigError(
                f"flagged offsets {outside} fall outside event window {list(self.event_window)}"
            )
        return flagged


@dataclass(frozen=True, eq=False)
class FramedPanel:
    panel: AlignedPanel
    day_index: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.day_index, dtype=np.int64)
        idx.setflags(write=False)
        object.__setattr__(self, "day_index", idx)
        if idx.shape != (len(self.panel),):
            raise DataError("day_index must have one offset per panel row")
        if np.count_nonzero(idx == 0) != 1:
            raise DataError("framed panel must contain exactly one day-0 row")

    @property
    def event_day(self) -> date:
        return self.panel.dates[int(np.flatnonzero(self.day_index == 0)[0])]

    def __len__(self) -> int:
        return len(self.panel)


def frame(panel: AlignedPanel, event_date: date, snap_forward: bool = False) -> FramedPanel:
    """Index panel rows by trading days relative to ``event_date``."""
    if len(panel) == 0:
        raise DataError("cannot frame an empty panel")
    if event_date > panel.dates[-1]:
        raise DataError(
            f"event date {event_date.isoformat()} is after the last panel date "
            f"{panel.dates[-1].isoformat()}"
        )
    if event_date in panel.dates:
        zero = panel.dates.index(event_date)
    elif snap_forward:
        zero = next(i for i, d in enumerate(panel.dates) if d > event_date)
    else:
        raise DataError(
            f"event date {event_date.isoformat()} is not a trading date in the panel "
            "(enable snap_forward to use the next trading date)"
        )
    return FramedPanel(panel, np.arange(len(panel)) - zero)


def slice_window(framed: FramedPanel, start_offset: int, end_offset: int) -> AlignedPanel:
    """Rows with offsets in [start_offset, end_offset], inclusive."""
    if start_offset > end_offset:
        raise ConfigError(f"window start {start_offset} > end {end_offset}")
    first, last = int(framed.day_index[0]), int(framed.day_index[-1])
    missing = max(0, first - start_offset) + max(0, end_offset - last)
    if missing:
        raise DataError(
            f"insufficient history for window [{start_offset}, {end_offset}]: "
            f"{missing} row(s) missing (panel covers [{first}, {last}])"
        )
    rows = np.flatnonzero((framed.day_index >= start_offset) & (framed.day_index <= end_offset))
    return framed.panel.take(rows)


def window_offsets(framed: FramedPanel, start_offset: int, end_offset: int) -> np.ndarray:
    slice_window(framed, start_offset, end_offset)  # validates coverage
    return np.arange(start_offset, end_offset + 1)
