"""Delimited reports with a rendered chart alongside.

Every report is a TSV of (label, value) rows plus a PNG bar chart of the
top rows, written into a caller-chosen directory.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

CHART_ROWS = 20


def write_report(
    rows: list[tuple[str, float]],
    directory: str | Path,
    stem: str,
    value_label: str = "score",
) -> tuple[Path, Path]:
    """Write <stem>.tsv and <stem>.png under ``directory``; returns both paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    tsv_path = directory / f"{stem}.tsv"
    png_path = directory / f"{stem}.png"

    with tsv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
        writer.writerow(["resource", value_label])
        for label, value in rows:
            writer.writerow([label, f"{value:.12g}"])

    top = rows[:CHART_ROWS]
    fig, ax = plt.subplots(figsize=(8, max(2.0, 0.4 * len(top) + 1.0)))
    if top:
        labels = [_shorten(label) for label, _ in top]
        values = [value for _, value in top]
        positions = range(len(top))
        ax.barh(positions, values, color="#33658a")
        ax.set_yticks(positions)
        ax.set_yticklabels(labels, fontsize=8)
        ax.invert_yaxis()
    else:
        ax.text(0.5, 0.5, "no results", ha="center", va="center")
        ax.set_axis_off()
    ax.set_xlabel(value_label)
    ax.set_title(stem)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return tsv_path, png_path


def _shorten(label: str, limit: int = 48) -> str:
    return label if len(label) <= limit else "…" + label[-(limit - 1):]
