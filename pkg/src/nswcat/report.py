"""Report files and figures for an experiment run.

Writes, under the chosen output directory:

* ``summary.tsv`` — one row per (representation, classifier) cell plus a
  MEAN row per representation.
* ``report_<rep>_<kind>.txt`` — key-value lines and the confusion matrix
  for one cell.
* ``per_class_<kind>.tsv`` — per-category accuracy with representation
  columns and AVG row/column.
* ``accuracy.png`` and ``per_class_<kind>.png`` — rendered figures of the
  same tables.

Output is byte-deterministic for a fixed experiment result.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import ExperimentResult

_KIND_TITLES = {
    "nb": "Naive Bayes",
    "knn": "kNN",
    "tree": "Tree",
    "forest": "Random Forest",
}

_PNG_METADATA = {"Software": None}  # drop the library banner for stable bytes


def _pct(value: Fraction | float) -> str:
    return f"{100.0 * float(value):.2f}"


def summary_tsv(result: ExperimentResult) -> str:
    lines = ["representation\tclassifier\tcorrect\ttotal\taccuracy_percent"]
    for rep in result.config.representations:
        for report in result.reports:
            if report.representation != rep:
                continue
            lines.append(
                f"{rep}\t{report.kind}\t{report.correct_count}\t"
                f"{report.total_count}\t{_pct(report.accuracy)}"
            )
        lines.append(f"{rep}\tMEAN\t\t\t{_pct(result.mean_accuracy[rep])}")
    return "\n".join(lines) + "\n"


def per_class_tsv(result: ExperimentResult, kind: str) -> str:
    reps = result.config.representations
    lines = ["category\t" + "\t".join(reps) + "\tAVG"]
    col_sums = [Fraction(0)] * len(reps)
    for name in result.class_names:
        row = [result.report_for(rep, kind).per_class_accuracy[name] for rep in reps]
        for i, v in enumerate(row):
            col_sums[i] += v
        avg = sum(row, Fraction(0)) / len(row)
        lines.append(name + "\t" + "\t".join(_pct(v) for v in row) + "\t" + _pct(avg))
    n = len(result.class_names)
    lines.append("AVG\t" + "\t".join(_pct(s / n) for s in col_sums) + "\t")
    return "\n".join(lines) + "\n"


def render_accuracy_figure(result: ExperimentResult, path: Path) -> None:
    """Grouped bars: accuracy per classifier, one series per representation."""
    kinds = result.config.kinds
    reps = result.config.representations
    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / len(reps)
    x = np.arange(len(kinds))
    for j, rep in enumerate(reps):
        values = [100.0 * float(result.report_for(rep, k).accuracy) for k in kinds]
        ax.bar(x + j * width, values, width, label=rep)
    ax.set_xticks(x + width * (len(reps) - 1) / 2)
    ax.set_xticklabels([_KIND_TITLES.get(k, k) for k in kinds])
    ax.set_ylabel("accuracy [%]")
    ax.set_ylim(0, 100)
    ax.set_title("Categorization accuracy by classifier and representation")
    ax.legend(title="representation")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def render_per_class_figure(result: ExperimentResult, kind: str, path: Path) -> None:
    """Per-category accuracy bars for one classifier kind."""
    reps = result.config.representations
    categories = result.class_names
    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / len(reps)
    x = np.arange(len(categories))
    for j, rep in enumerate(reps):
        report = result.report_for(rep, kind)
        values = [100.0 * float(report.per_class_accuracy[c]) for c in categories]
        ax.bar(x + j * width, values, width, label=rep)
    ax.set_xticks(x + width * (len(reps) - 1) / 2)
    ax.set_xticklabels(categories, rotation=20, ha="right")
    ax.set_ylabel("accuracy [%]")
    ax.set_ylim(0, 100)
    ax.set_title(f"Per-category accuracy ({_KIND_TITLES.get(kind, kind)})")
    ax.legend(title="representation")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def write_reports(result: ExperimentResult, out_dir: str | Path, figures: bool = True) -> list[Path]:
    """Write all report files (and figures) for one experiment result."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    path = out / "summary.tsv"
    path.write_text(summary_tsv(result), encoding="utf-8")
    written.append(path)

    for report in result.reports:
        path = out / f"report_{report.representation}_{report.kind}.txt"
        path.write_text(report.to_text(), encoding="utf-8")
        written.append(path)

    for kind in result.config.kinds:
        path = out / f"per_class_{kind}.tsv"
        path.write_text(per_class_tsv(result, kind), encoding="utf-8")
        written.append(path)

    if figures:
        path = out / "accuracy.png"
        render_accuracy_figure(result, path)
        written.append(path)
        for kind in result.config.kinds:
            path = out / f"per_class_{kind}.png"
            render_per_class_figure(result, kind, path)
            written.append(path)
    return written
