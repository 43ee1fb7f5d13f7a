"""Command-line entry point: ``eventreg {event-study,sentiment,synth}``.

Tables go to files only; diagnostics go to stderr.  Nothing is written
unless the whole run succeeds.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Mapping, Sequence

from .config import StudyConfig, format_offsets, load_study_config
from .errors import ConfigError, DataError, EventRegError
from .event_frame import frame
from .inference import conditional_event_regression, event_dummy_regression, sentiment_regression
from .reporting import DEFAULT_NOTES, EXTENSIONS, FORMATS, ResultTable, regression_table, render_table
from .series_store import (
    AlignedPanel,
    align,
    csv_columns,
    log_levels,
    log_returns,
    parse_csv_series,
    render_csv,
)
from .synthlab import generate_panel, load_scenario, price_panel, study_config_text, truth_json

logger = logging.getLogger("eventreg")

_TRANSFORM = {"log_returns": log_returns, "log_levels": log_levels, "none": lambda s: s}


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def load_study_panel(cfg: StudyConfig, roles: Mapping[str, str]) -> AlignedPanel:
    """Read, align, transform and sample-restrict the columns in ``roles``.

    ``roles`` maps column name to role (benchmark/asset/control/sentiment).
    Columns are renamed to their display labels.  Levels are aligned first
    so every return spans the same pair of trading days across columns.
    """
    texts: dict[Path, str] = {}
    for col in roles:
        path = cfg.file_for(col)
        if path not in texts:
            texts[path] = _read(path)
        if col not in csv_columns(texts[path]):
            raise ConfigError(f"column {col!r} not found in {path}")
    labels = [cfg.label(c) for c in roles]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"display labels are not unique: {labels}")

    raw = [parse_csv_series(texts[cfg.file_for(c)], c, name=cfg.label(c)) for c in roles]
    levels = align(raw)
    transformed = [
        _TRANSFORM[cfg.transform_for(col, role)](levels.series(cfg.label(col)))
        for col, role in roles.items()
    ]
    panel = align(transformed)
    if cfg.sample_start or cfg.sample_end:
        panel = panel.between(cfg.sample_start, cfg.sample_end)
    return panel


def _heading(flagged: frozenset[int]) -> str:
    kind = "Event day" if len(flagged) == 1 else "Event window"
    return f"{kind} {format_offsets(flagged)}"


def _car_note(results: Mapping[str, Mapping[str, object]]) -> str:
    parts = []
    for heading in next(iter(results.values())):
        cars = ", ".join(
            f"{col} {results[col][heading].extras['implied_window_car']:.6f}" for col in results
        )
        parts.append(f"{heading}: {cars}")
    return " Implied window CAR (Event coefficient x flagged days): " + "; ".join(parts) + "."


def event_study_tables(cfg: StudyConfig) -> dict[str, ResultTable]:
    if cfg.spec is None:
        raise ConfigError("event-study needs an [event] section with a date")
    roles = {cfg.benchmark: "benchmark"}
    roles.update({a: "asset" for a in cfg.assets})
    roles.update({c: "control" for c in cfg.controls})
    panel = load_study_panel(cfg, roles)
    framed = frame(panel, cfg.spec.event_date, cfg.snap_forward)
    bench = cfg.label(cfg.benchmark)
    controls = [cfg.label(c) for c in cfg.controls]

    uncond: dict[str, dict] = {}
    cond: dict[str, dict] = {}
    for asset in cfg.assets:
        name = cfg.label(asset)
        uncond[name], cond[name] = {}, {}
        for flagged in cfg.flagged_sets:
            head = _heading(flagged)
            uncond[name][head] = event_dummy_regression(
                framed, name, bench, cfg.spec, flagged, cfg.cov_type
            )
            if controls:
                cond[name][head] = conditional_event_regression(
                    framed, name, bench, cfg.spec, flagged, controls, cfg.cov_type
                )

    notes = DEFAULT_NOTES.replace("HC1", cfg.cov_type)
    tables = {
        "event_study_unconditional": regression_table(
            "Event impact on abnormal returns: unconditional OLS regression results",
            uncond,
            notes + _car_note(uncond),
        )
    }
    if controls:
        tables["event_study_conditional"] = regression_table(
            "Event impact on abnormal returns: conditional OLS regression results",
            cond,
            notes + _car_note(cond),
        )
    return tables


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")


def sentiment_tables(cfg: StudyConfig) -> dict[str, ResultTable]:
    if not cfg.sentiment:
        raise ConfigError("sentiment study needs at least one series in data.sentiment")
    roles = {a: "asset" for a in cfg.assets}
    roles.update({c: "control" for c in cfg.controls})
    roles.update({s: "sentiment" for s in cfg.sentiment})
    panel = load_study_panel(cfg, roles)
    notes = DEFAULT_NOTES.replace("HC1", cfg.cov_type)
    controls = {cfg.label(c): panel.column(cfg.label(c)) for c in cfg.controls}

    tables = {}
    for source in cfg.sentiment:
        label = cfg.label(source)
        head = f"STR and {label}"
        x = panel.column(label)
        uncond, cond = {}, {}
        for asset in cfg.assets:
            name = cfg.label(asset)
            y = panel.column(name)
            uncond[name] = {head: sentiment_regression(y, x, None, label, cfg.cov_type)}
            if controls:
                cond[name] = {head: sentiment_regression(y, x, controls, label, cfg.cov_type)}
        slug = _slug(label)
        tables[f"sentiment_{slug}_unconditional"] = regression_table(
            f"Public interest and stock returns ({label}): unconditional OLS regression results",
            uncond,
            notes,
        )
        if controls:
            tables[f"sentiment_{slug}_conditional"] = regression_table(
                f"Public interest and stock returns ({label}): conditional OLS regression results",
                cond,
                notes,
            )
    return tables


def write_all(out_dir: Path, files: Mapping[str, str]) -> list[Path]:
    """Write every file or none: stage in a temp dir, then move into place."""
    out_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    with tempfile.TemporaryDirectory(dir=out_dir, prefix=".staging-") as tmp:
        for name, text in files.items():
            p = Path(tmp) / name
            p.write_bytes(text.encode("utf-8"))
            staged.append(p)
        written = []
        for p in staged:
            target = out_dir / p.name
            os.replace(p, target)
            written.append(target)
    return written


def _render_all(tables: Mapping[str, ResultTable], fmt: str) -> dict[str, str]:
    return {name + EXTENSIONS[fmt]: render_table(t, fmt) for name, t in tables.items()}


def run_event_study(cfg: StudyConfig) -> list[Path]:
    return write_all(cfg.out_dir, _render_all(event_study_tables(cfg), cfg.format))


def run_sentiment_study(cfg: StudyConfig) -> list[Path]:
    return write_all(cfg.out_dir, _render_all(sentiment_tables(cfg), cfg.format))


def synth_files(scenario_text: str, source: str = "<scenario>") -> dict[str, str]:
    scenario = load_scenario(scenario_text, source)
    returns = generate_panel(scenario)
    return {
        "prices.csv": render_csv(price_panel(scenario, returns)),
        "truth.json": truth_json(scenario),
        "study.ini": study_config_text(scenario, "prices.csv"),
    }


def run_synth(scenario_path: Path, out_dir: Path) -> list[Path]:
    return write_all(out_dir, synth_files(_read(scenario_path), str(scenario_path)))


def _study_config(args) -> StudyConfig:
    cfg = load_study_config(args.config)
    changes = {}
    if args.format:
        changes["format"] = args.format
    if args.out:
        changes["out_dir"] = Path(args.out)
    if getattr(args, "snap_forward", False):
        changes["snap_forward"] = True
    return replace(cfg, **changes)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventreg",
        description="Event-study and sentiment regressions with robust inference.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, type=Path, help="study or scenario config file")
        p.add_argument("--format", choices=FORMATS, help="table format (overrides config)")
        p.add_argument("--out", type=Path, help="output directory (overrides config)")

    ev = sub.add_parser("event-study", help="abnormal-return regressions around an event date")
    common(ev)
    ev.add_argument("--snap-forward", action="store_true",
                    help="use the next trading date when the event date is not one")
    common(sub.add_parser("sentiment", help="regress stock returns on public-interest series"))
    common(sub.add_parser("synth", help="write a synthetic price bundle with known truth"))
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "synth":
            out = args.out or args.config.parent / "synth_out"
            written = run_synth(args.config, out)
        elif args.command == "event-study":
            written = run_event_study(_study_config(args))
        else:
            written = run_sentiment_study(_study_config(args))
    except EventRegError as exc:
        print(f"eventreg {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"eventreg {args.command}: cannot write output: {exc}", file=sys.stderr)
        return DataError.exit_code
    for path in written:
        logger.info("wrote %s", path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
