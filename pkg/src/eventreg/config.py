"""INI-style study configuration shared by the CLI and scenario loader.

Example::

    [data]
    file = prices.csv
    benchmark = benchmark
    assets = Brazil, Russia, India, China, South Africa
    controls = WTI, GOLD, Silver, Bitcoin
    sentiment = Google Trends, Twitter, polls

    [files]
    Google Trends = trends.csv

    [transforms]
    Google Trends = log_levels

    [event]
    date = 2016-11-08
    est_start = -115
    est_end = -6
    evt_start = -5
    evt_end = 5
    flagged = 0; 1..5

    [sample]
    start = 2015-08-01
    end = 2016-12-31

    [output]
    format = markdown
    dir = out

Keys are case-sensitive, order never matters, and file paths are resolved
relative to the config file's directory.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Mapping

from .errors import ConfigError
from .event_frame import EventSpec

TRANSFORMS = ("log_returns", "log_levels", "none")
DEFAULT_FLAGGED = (frozenset({0}), frozenset(range(1, 6)))


def read_ini(text: str, source: str = "<config>") -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cp


def split_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def parse_int(raw: str, key: str) -> int:
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def parse_float(raw: str, key: str) -> float:
    try:
        return float(raw.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def parse_date(raw: str, key: str) -> date:
    try:
        return date.fromisoformat(raw.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an ISO date (YYYY-MM-DD), got {raw!r}") from None


def parse_bool(raw: str, key: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def parse_offsets(raw: str, key: str) -> frozenset[int]:
    """``"0"``, ``"1..5"``, ``"-2, 0, 3..4"`` -> set of integer offsets."""
    out: set[int] = set()
    for part in split_list(raw):
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = parse_int(lo, key), parse_int(hi, key)
            if lo > hi:
                raise ConfigError(f"{key}: empty offset range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            out.add(parse_int(part, key))
    return frozenset(out)


def parse_offset_sets(raw: str, key: str) -> tuple[frozenset[int], ...]:
    """Semicolon-separated offset sets, e.g. ``"0; 1..5"``."""
    sets = tuple(parse_offsets(part, key) for part in raw.split(";") if part.strip())
    if not sets or any(not s for s in sets):
        raise ConfigError(f"{key}: every flagged set needs at least one offset")
    return sets


def format_offsets(offsets: frozenset[int]) -> str:
    """Bracketed window label, e.g. ``[0 ; 0]`` or ``[+1; +5]``."""
    lo, hi = min(offsets), max(offsets)
    sign = lambda v: f"+{v}" if v > 0 else str(v)  # noqa: E731
    if offsets != frozenset(range(lo, hi + 1)):
        return "{" + ", ".join(sign(v) for v in sorted(offsets)) + "}"
    if lo == hi:
        return f"[{sign(lo)} ; {sign(hi)}]"
    return f"[{sign(lo)}; {sign(hi)}]"


def event_spec_from(section: Mapping[str, str], event_date: date, prefix: str = "") -> EventSpec:
    defaults = EventSpec(event_date)
    get = lambda k, d: parse_int(section[k], prefix + k) if k in section else d  # noqa: E731
    return EventSpec(
        event_date,
        (get("est_start", defaults.estimation_window[0]), get("est_end", defaults.estimation_window[1])),
        (get("evt_start", defaults.event_window[0]), get("evt_end", defaults.event_window[1])),
    )


@dataclass(frozen=True)
class StudyConfig:
    base_dir: Path
    default_file: Path | None
    files: Mapping[str, Path]
    benchmark: str
    assets: tuple[str, ...]
    controls: tuple[str, ...]
    sentiment: tuple[str, ...]
    transforms: Mapping[str, str]
    spec: EventSpec | None
    flagged_sets: tuple[frozenset[int], ...] = DEFAULT_FLAGGED
    snap_forward: bool = False
    sample_start: date | None = None
    sample_end: date | None = None
    format: str = "markdown"
    out_dir: Path = Path("out")
    cov_type: str = "HC1"
    labels: Mapping[str, str] = field(default_factory=dict)

    def file_for(self, column: str) -> Path:
        if column in self.files:
            return self.files[column]
        if self.default_file is None:
            raise ConfigError(f"no input file configured for column {column!r}")
        return self.default_file

    def transform_for(self, column: str, role: str) -> str:
        default = "log_levels" if role == "sentiment" else "log_returns"
        return self.transforms.get(column, default)

    def label(self, column: str) -> str:
        return self.labels.get(column, column)


def _path(base: Path, raw: str) -> Path:
    p = Path(raw.strip())
    return p if p.is_absolute() else base / p


def load_study_config(path: str | Path) -> StudyConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_study_config(text, path.parent, source=str(path))


def parse_study_config(text: str, base_dir: Path, source: str = "<config>") -> StudyConfig:
    from .inference.ols import COV_TYPES
    from .reporting import FORMATS

    cp = read_ini(text, source)
    if not cp.has_section("data"):
        raise ConfigError(f"{source}: missing [data] section")
    data = cp["data"]
    files = {k: _path(base_dir, v) for k, v in (cp["files"].items() if cp.has_section("files") else [])}
    transforms = dict(cp["transforms"].items()) if cp.has_section("transforms") else {}
    for col, tr in transforms.items():
        if tr not in TRANSFORMS:
            raise ConfigError(f"transforms.{col}: unknown transform {tr!r}; choose from {TRANSFORMS}")
    labels = dict(cp["labels"].items()) if cp.has_section("labels") else {}

    assets = tuple(split_list(data.get("assets", "")))
    if not assets:
        raise ConfigError(f"{source}: data.assets must name at least one column")
    controls = tuple(split_list(data.get("controls", "")))
    sentiment = tuple(split_list(data.get("sentiment", "")))
    benchmark = data.get("benchmark", "benchmark").strip()
    columns = [benchmark, *assets, *controls, *sentiment]
    dupes = sorted({c for c in columns if columns.count(c) > 1})
    if dupes:
        raise ConfigError(f"{source}: columns named in more than one role: {', '.join(dupes)}")

    spec = None
    flagged = DEFAULT_FLAGGED
    snap = False
    if cp.has_section("event"):
        ev = cp["event"]
        if "date" not in ev:
            raise ConfigError(f"{source}: [event] needs a date")
        spec = event_spec_from(ev, parse_date(ev["date"], "event.date"), "event.")
        if "flagged" in ev:
            flagged = parse_offset_sets(ev["flagged"], "event.flagged")
        for fs in flagged:
            spec.check_flagged(fs)
        snap = parse_bool(ev.get("snap_forward", "false"), "event.snap_forward")

    sample = cp["sample"] if cp.has_section("sample") else {}
    out = cp["output"] if cp.has_section("output") else {}
    fmt = out.get("format", "markdown").strip()
    if fmt not in FORMATS:
        raise ConfigError(f"output.format: unknown format {fmt!r}; choose from {FORMATS}")
    cov = out.get("cov_type", "HC1").strip()
    if cov not in COV_TYPES:
        raise ConfigError(f"output.cov_type: unknown covariance {cov!r}; choose from {COV_TYPES}")
    start = parse_date(sample["start"], "sample.start") if "start" in sample else None
    end = parse_date(sample["end"], "sample.end") if "end" in sample else None
    if start and end and start > end:
        raise ConfigError(f"sample range is empty: {start} > {end}")

    return StudyConfig(
        base_dir=base_dir,
        default_file=_path(base_dir, data["file"]) if "file" in data else None,
        files=files,
        benchmark=benchmark,
        assets=assets,
        controls=controls,
        sentiment=sentiment,
        transforms=transforms,
        spec=spec,
        flagged_sets=flagged,
        snap_forward=snap,
        sample_start=start,
        sample_end=end,
        format=fmt,
        out_dir=_path(base_dir, out.get("dir", "out")),
        cov_type=cov,
        labels=labels,
    )
