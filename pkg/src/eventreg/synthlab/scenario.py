"""Seeded synthetic return panels with known market-model truth."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Mapping

import numpy as np

from ..config import (
    event_spec_from,
    parse_float,
    parse_int,
    parse_offsets,
    read_ini,
    split_list,
)
from ..errors import ConfigError
from ..event_frame import EventSpec
from ..series_store import AlignedPanel
from .rng import Xoshiro256

EPOCH = date(2016, 1, 4)  # a Monday


def weekdays(start: date, n: int) -> list[date]:
    """``n`` consecutive Monday-to-Friday dates from ``start`` (skipping to a weekday first)."""
    out = []
    d = start
    while len(out) < n:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


def previous_weekday(d: date) -> date:
    d -= timedelta(days=1)
    while d.weekday() >= 5:
        d -= timedelta(days=1)
    return d


@dataclass(frozen=True)
class SynthScenario:
    """Ground truth for one synthetic study.

    Asset returns are ``alpha + beta * benchmark + sum(loading * control)
    + sum(loading * log_sentiment) + noise_sd * z`` plus ``injected_effect``
    on every flagged offset.  The estimation window starts on the first
    generated day, so day 0 sits ``-estimation_window[0]`` rows in.
    """

    seed: int = 7
    n_days: int = 121
    alpha: float = 0.0005
    beta: float = 1.3
    noise_sd: float = 0.01
    flagged: frozenset[int] = frozenset(range(1, 6))
    injected_effect: float = -0.01
    assets: tuple[str, ...] = ("asset",)
    benchmark: str = "benchmark"
    benchmark_sd: float = 0.01
    control_loadings: Mapping[str, float] = field(default_factory=dict)
    control_sd: float = 0.01
    sentiment_loadings: Mapping[str, float] = field(default_factory=dict)
    estimation_window: tuple[int, int] = (-115, -6)
    event_window: tuple[int, int] = (-5, 5)

    def __post_init__(self):
        object.__setattr__(self, "flagged", frozenset(int(f) for f in self.flagged))
        object.__setattr__(self, "assets", tuple(self.assets))
        object.__setattr__(self, "control_loadings", dict(self.control_loadings))
        object.__setattr__(self, "sentiment_loadings", dict(self.sentiment_loadings))
        if self.noise_sd < 0 or self.benchmark_sd <= 0 or self.control_sd <= 0:
            raise ConfigError("noise_sd must be >= 0 and benchmark_sd, control_sd > 0")
        if not self.assets:
            raise ConfigError("scenario needs at least one asset")
        names = [self.benchmark, *self.assets, *self.control_loadings, *self.sentiment_loadings]
        if len(set(names)) != len(names):
            raise ConfigError(f"scenario column names collide: {names}")
        spec = EventSpec(EPOCH, self.estimation_window, self.event_window)
        spec.check_flagged(self.flagged)
        need = self.event_window[1] - self.estimation_window[0] + 1
        if self.n_days < need:
            raise ConfigError(
                f"n_days={self.n_days} too small: windows [{self.estimation_window[0]}, "
                f"{self.event_window[1]}] need {need} days"
            )

    @property
    def day0_row(self) -> int:
        return -self.estimation_window[0]

    @property
    def dates(self) -> list[date]:
        return weekdays(EPOCH, self.n_days)

    @property
    def event_date(self) -> date:
        return self.dates[self.day0_row]

    @property
    def event_spec(self) -> EventSpec:
        return EventSpec(self.event_date, self.estimation_window, self.event_window)

    def truth(self) -> dict:
        return {
            "seed": self.seed,
            "n_days": self.n_days,
            "alpha": self.alpha,
            "beta": self.beta,
            "noise_sd": self.noise_sd,
            "injected_effect": self.injected_effect,
            "flagged": sorted(self.flagged),
            "assets": list(self.assets),
            "benchmark": self.benchmark,
            "control_loadings": dict(self.control_loadings),
            "sentiment_loadings": dict(self.sentiment_loadings),
            "event_date": self.event_date.isoformat(),
            "estimation_window": list(self.estimation_window),
            "event_window": list(self.event_window),
        }


def generate_panel(scenario: SynthScenario) -> AlignedPanel:
    """Daily returns for benchmark, assets and controls, plus log-sentiment levels.

    Draw order is fixed: all benchmark variates, then each control, then
    each sentiment series, then each asset's noise, column by column.
    """
    sc = scenario
    n = sc.n_days
    rng = Xoshiro256(sc.seed)
    bench = sc.benchmark_sd * np.array(rng.normals(n))
    controls = {name: sc.control_sd * np.array(rng.normals(n)) for name in sc.control_loadings}
    log_sent = {name: 3.0 + 0.5 * np.array(rng.normals(n)) for name in sc.sentiment_loadings}

    offsets = np.arange(n) - sc.day0_row
    shift = np.where(np.isin(offsets, sorted(sc.flagged)), sc.injected_effect, 0.0)
    systematic = sc.alpha + sc.beta * bench
    for name, load in sc.control_loadings.items():
        systematic = systematic + load * controls[name]
    for name, load in sc.sentiment_loadings.items():
        systematic = systematic + load * log_sent[name]

    columns = {sc.benchmark: bench}
    for name in sc.assets:
        noise = np.array(rng.normals(n))
        columns[name] = systematic + sc.noise_sd * noise + shift
    columns.update(controls)
    columns.update({name: np.exp(v) for name, v in log_sent.items()})
    return AlignedPanel(sc.dates, columns)


def price_panel(scenario: SynthScenario, returns: AlignedPanel, base: float = 100.0) -> AlignedPanel:
    """Turn generated returns into price levels starting one weekday earlier.

    Sentiment columns are already levels and keep their values; their
    first row repeats the first observation so every column is dated alike.
    """
    dates = [previous_weekday(returns.dates[0]), *returns.dates]
    cols = {}
    for name, values in returns.columns.items():
        if name in scenario.sentiment_loadings:
            cols[name] = np.concatenate([[values[0]], values])
        else:
            cols[name] = base * np.exp(np.concatenate([[0.0], np.cumsum(values)]))
    return AlignedPanel(dates, cols)


def _loadings(raw: str, key: str) -> dict[str, float]:
    out = {}
    for item in split_list(raw):
        name, sep, val = item.rpartition(":")
        if not sep or not name.strip():
            raise ConfigError(f"{key}: expected name:loading pairs, got {item!r}")
        out[name.strip()] = parse_float(val, key)
    return out


def load_scenario(text: str, source: str = "<scenario>") -> SynthScenario:
    """Read a ``[scenario]`` section in the study-config INI dialect."""
    cp = read_ini(text, source)
    if not cp.has_section("scenario"):
        raise ConfigError(f"{source}: missing [scenario] section")
    s = cp["scenario"]
    kw: dict = {}
    for key in ("seed", "n_days"):
        if key in s:
            kw[key] = parse_int(s[key], f"scenario.{key}")
    for key in ("alpha", "beta", "noise_sd", "injected_effect", "benchmark_sd", "control_sd"):
        if key in s:
            kw[key] = parse_float(s[key], f"scenario.{key}")
    if "flagged" in s:
        kw["flagged"] = parse_offsets(s["flagged"], "scenario.flagged")
    if "assets" in s:
        kw["assets"] = tuple(split_list(s["assets"]))
    if "benchmark" in s:
        kw["benchmark"] = s["benchmark"].strip()
    if "controls" in s:
        kw["control_loadings"] = _loadings(s["controls"], "scenario.controls")
    if "sentiment" in s:
        kw["sentiment_loadings"] = _loadings(s["sentiment"], "scenario.sentiment")
    spec = event_spec_from(s, EPOCH, "scenario.")
    kw["estimation_window"] = spec.estimation_window
    kw["event_window"] = spec.event_window
    return SynthScenario(**kw)


def truth_json(scenario: SynthScenario) -> str:
    return json.dumps(scenario.truth(), indent=2, sort_keys=True) + "\n"


def study_config_text(scenario: SynthScenario, prices_file: str = "prices.csv") -> str:
    """A study config that runs the event-study (and sentiment) pipeline on a bundle."""
    sc = scenario
    lines = [
        "[data]",
        f"file = {prices_file}",
        f"benchmark = {sc.benchmark}",
        f"assets = {', '.join(sc.assets)}",
    ]
    if sc.control_loadings:
        lines.append(f"controls = {', '.join(sc.control_loadings)}")
    if sc.sentiment_loadings:
        lines.append(f"sentiment = {', '.join(sc.sentiment_loadings)}")
    flagged = "; ".join(
        f"{min(s)}..{max(s)}" if len(s) > 1 else str(min(s))
        for s in (frozenset({0}), frozenset(range(1, 6)))
        if s <= set(range(sc.event_window[0], sc.event_window[1] + 1))
    )
    lines += [
        "",
        "[event]",
        f"date = {sc.event_date.isoformat()}",
        f"est_start = {sc.estimation_window[0]}",
        f"est_end = {sc.estimation_window[1]}",
        f"evt_start = {sc.event_window[0]}",
        f"evt_end = {sc.event_window[1]}",
        f"flagged = {flagged}",
        "",
        "[output]",
        "format = markdown",
        "dir = out",
        "",
    ]
    return "\n".join(lines)

