"""Result tables: coefficient, significance stars and p-value per cell.

A table holds one column per asset (country) and one or more blocks of
rows, e.g. an "Event day [0 ; 0]" block and an "Event window [+1; +5]"
block, each ending with an "Adjusted R²" row.  Three renderings are
supported: markdown pipe tables, a flat CSV with one line per cell, and a
JSON document that parses back into an identical ``ResultTable``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DataError
from .inference.ols import RegressionResult

ADJ_R2 = "Adjusted R²"
FORMATS = ("markdown", "csv", "structured")
EXTENSIONS = {"markdown": ".md", "csv": ".csv", "structured": ".json"}
DEFAULT_NOTES = (
    "Heteroskedasticity-consistent (HC1) standard errors; p-values in parentheses. "
    "*, **, *** denote significance at the 10%, 5% and 1% levels."
)


def significance_stars(p: float) -> str:
    if not 0.0 <= p <= 1.0:
        raise DataError(f"p-value must lie in [0, 1], got {p!r}")
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.10:
        return "*"
    return ""


@dataclass(frozen=True)
class Cell:
    """A coefficient with its p-value, or a bare statistic when ``p_value`` is None."""

    value: float
    p_value: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise DataError(f"table cell value must be finite, got {self.value!r}")
        if self.p_value is not None:
            object.__setattr__(self, "p_value", float(self.p_value))
            if not 0.0 <= self.p_value <= 1.0:
                raise DataError(f"table cell p-value must lie in [0, 1], got {self.p_value!r}")

    @property
    def stars(self) -> str:
        return "" if self.p_value is None else significance_stars(self.p_value)


@dataclass(frozen=True)
class Block:
    heading: str
    rows: tuple[str, ...]
    cells: tuple[tuple[Cell, ...], ...]  # cells[row][column]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cells", tuple(tuple(r) for r in self.cells))
        if len(self.rows) != len(self.cells):
            raise DataError(f"block {self.heading!r}: {len(self.rows)} labels for {len(self.cells)} rows")
        if len(set(self.rows)) != len(self.rows):
            raise DataError(f"block {self.heading!r}: duplicate row labels")


@dataclass(frozen=True)
class ResultTable:
    title: str
    columns: tuple[str, ...]
    blocks: tuple[Block, ...]
    notes: str = DEFAULT_NOTES

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for block in self.blocks:
            for label, row in zip(block.rows, block.cells):
                if len(row) != len(self.columns):
                    raise DataError(
                        f"table {self.title!r}: row {label!r} has {len(row)} cells "
                        f"for {len(self.columns)} columns"
                    )

    def cell(self, heading: str, row: str, column: str) -> Cell:
        block = next(b for b in self.blocks if b.heading == heading)
        return block.cells[block.rows.index(row)][self.columns.index(column)]

    def row_sets(self) -> dict[str, tuple[str, ...]]:
        return {b.heading: b.rows for b in self.blocks}


def regression_table(
    title: str,
    results: Mapping[str, Mapping[str, RegressionResult]],
    notes: str | None = None,
) -> ResultTable:
    """Lay out ``results[column][heading]`` as a journal-style table.

    Every column must hold the same headings, each with the same regressors.
    """
    columns = tuple(results)
    if not columns:
        raise DataError(f"table {title!r}: no columns")
    headings = tuple(results[columns[0]])
    blocks = []
    for heading in headings:
        per_col = []
        for col in columns:
            if heading not in results[col]:
                raise DataError(f"table {title!r}: column {col!r} lacks block {heading!r}")
            per_col.append(results[col][heading])
        names = per_col[0].names
        for col, res in zip(columns, per_col):
            if res.names != names:
                raise DataError(
                    f"table {title!r}, block {heading!r}: column {col!r} has regressors "
                    f"{res.names}, expected {names}"
                )
        rows = [
            tuple(Cell(r.coefficients[j], r.p_values[j]) for r in per_col)
            for j in range(len(names))
        ]
        rows.append(tuple(Cell(r.adj_r2) for r in per_col))
        blocks.append(Block(heading, (*names, ADJ_R2), rows))
    if notes is None:
        cov = {r.cov_type for col in results.values() for r in col.values()}
        notes = DEFAULT_NOTES if cov == {"HC1"} else DEFAULT_NOTES.replace("HC1", "/".join(sorted(cov)))
    return ResultTable(title, columns, tuple(blocks), notes)


def _fmt_value(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _fmt_p(p: float) -> str:
    return f"{p:.4f}"


def cell_text(cell: Cell) -> str:
    if cell.p_value is None:
        return _fmt_value(cell.value)
    return f"{_fmt_value(cell.value)}{cell.stars} ({_fmt_p(cell.p_value)})"


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def _render_markdown(t: ResultTable) -> str:
    lines = [f"**{t.title}**", ""]
    lines.append("| | " + " | ".join(_md_escape(c) for c in t.columns) + " |")
    lines.append("|---|" + "---|" * len(t.columns))
    blanks = " |" * len(t.columns)
    for block in t.blocks:
        if block.heading:
            lines.append(f"| *{_md_escape(block.heading)}* |{blanks}")
        for label, row in zip(block.rows, block.cells):
            cells = " | ".join(cell_text(c) for c in row)
            lines.append(f"| {_md_escape(label)} | {cells} |")
    if t.notes:
        lines += ["", f"Notes: {t.notes}"]
    return "\n".join(lines) + "\n"


CSV_HEADER = ("column", "row", "coefficient", "p", "stars")
ROW_SEP = " :: "


def _render_csv(t: ResultTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for block in t.blocks:
        for label, row in zip(block.rows, block.cells):
            name = f"{block.heading}{ROW_SEP}{label}" if block.heading else label
            for col, cell in zip(t.columns, row):
                p = "" if cell.p_value is None else _fmt_p(cell.p_value)
                w.writerow([col, name, _fmt_value(cell.value), p, cell.stars])
    return buf.getvalue()


def _render_structured(t: ResultTable) -> str:
    doc = {
        "title": t.title,
        "columns": list(t.columns),
        "notes": t.notes,
        "blocks": [
            {
                "heading": b.heading,
                "rows": [
                    {
                        "label": label,
                        "cells": [{"value": c.value, "p_value": c.p_value} for c in row],
                    }
                    for label, row in zip(b.rows, b.cells)
                ],
            }
            for b in t.blocks
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def parse_structured(text: str) -> ResultTable:
    """Inverse of ``render_table(table, "structured")``."""
    try:
        doc = json.loads(text)
        blocks = tuple(
            Block(
                b["heading"],
                tuple(r["label"] for r in b["rows"]),
                tuple(tuple(Cell(c["value"], c["p_value"]) for c in r["cells"]) for r in b["rows"]),
            )
            for b in doc["blocks"]
        )
        return ResultTable(doc["title"], tuple(doc["columns"]), blocks, doc["notes"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise DataError(f"malformed structured table: {exc}") from None


_RENDERERS = {
    "markdown": _render_markdown,
    "csv": _render_csv,
    "structured": _render_structured,
}


def render_table(table: ResultTable, format: str = "markdown") -> str:
    try:
        renderer = _RENDERERS[format]
    except KeyError:
        raise DataError(f"unknown table format {format!r}; choose from {', '.join(FORMATS)}") from None
    if not any(block.rows for block in table.blocks) or not table.columns:
        raise DataError(f"table {table.title!r} has no rows")
    return renderer(table)
