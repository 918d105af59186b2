"""The three document representations built from detected NSWs.

* ``freq`` (85 values): per-leaf occurrence counts in slots 0..55
  followed by a 29-value derived block (superclass totals, filled/empty
  type ratios, NSW-per-word coefficient and 19 cross-leaf group totals).
* ``stat`` (25 values): dispersion statistics of the 56 leaf counts —
  seven whole-vector measures, then six measures per superclass slice
  (STRING, NUMBER, STRING+NUMBER).
* ``union`` (110 values): the concatenation, frequency block first.

Conventions are fixed here once so independent oracles can agree:
population variance and standard deviation, quartiles by inclusive
linear interpolation, asymmetry as the third and flatness as the fourth
standardized central moment (not excess), and every zero-denominator
ratio defined as 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import LabeledDocument
from .errors import FeatureError
from .lexer import NSWOccurrence
from .taxonomy import GROUPS, LEAF_COUNT, SUPERCLASS_SLOTS, Taxonomy

REP_FREQ = "freq"
REP_STAT = "stat"
REP_UNION = "union"
REPRESENTATIONS = (REP_FREQ, REP_STAT, REP_UNION)

FREQ_WIDTH = 85
STAT_WIDTH = 25
UNION_WIDTH = FREQ_WIDTH + STAT_WIDTH
_WIDTHS = {REP_FREQ: FREQ_WIDTH, REP_STAT: STAT_WIDTH, REP_UNION: UNION_WIDTH}

DERIVED_GLOBALS = (
    "total_number_class",
    "total_string_class",
    "total_combined_class",
    "total_nsws",
    "total_words",
    "distinct_nsw_types",
    "empty_nsw_types",
    "filled_to_subclass_ratio",
    "filled_to_empty_ratio",
    "nsw_per_word",
)


def rep_width(representation: str) -> int:
    try:
        return _WIDTHS[representation]
    except KeyError:
        raise FeatureError(f"unknown representation {representation!r}; expected one of {REPRESENTATIONS}")


@dataclass(frozen=True)
class FrequencyVector:
    doc_id: str
    values: np.ndarray  # shape (85,), float64

    @property
    def leaf_counts(self) -> np.ndarray:
        return self.values[:LEAF_COUNT]


@dataclass(frozen=True)
class StatFeatures:
    doc_id: str
    values: np.ndarray  # shape (25,), float64


def derived_features(
    leaf_counts: Sequence[float] | np.ndarray, token_count: int, taxonomy: Taxonomy
) -> np.ndarray:
    """The 29 derived values: 10 globals then the 19 group totals."""
    counts = np.asarray(leaf_counts, dtype=np.float64)
    if counts.shape != (LEAF_COUNT,):
        raise FeatureError(f"expected {LEAF_COUNT} leaf counts, got shape {counts.shape}")
    if (counts < 0).any():
        raise FeatureError("leaf counts must be nonnegative")

    string_total = counts[SUPERCLASS_SLOTS["STRING"]].sum()
    number_total = counts[SUPERCLASS_SLOTS["NUMBER"]].sum()
    combined_total = counts[SUPERCLASS_SLOTS["COMBINED"]].sum()
    total = string_total + number_total + combined_total
    filled = int((counts > 0).sum())
    empty = LEAF_COUNT - filled

    out = np.empty(29, dtype=np.float64)
    out[0] = number_total
    out[1] = string_total
    out[2] = combined_total
    out[3] = total
    out[4] = token_count
    out[5] = filled
    out[6] = empty
    out[7] = filled / LEAF_COUNT
    out[8] = filled / empty if empty > 0 else 0.0
    out[9] = total / token_count if token_count > 0 else 0.0
    for i, group in enumerate(GROUPS):
        out[10 + i] = counts[list(taxonomy.group_members(group))].sum()
    return out


def frequency_vector(
    doc_id: str,
    occurrences: Iterable[NSWOccurrence],
    token_count: int,
    taxonomy: Taxonomy,
) -> FrequencyVector:
    """Count occurrences per leaf slot and append the derived block."""
    counts = np.zeros(LEAF_COUNT, dtype=np.float64)
    for occ in occurrences:
        if occ.doc_id != doc_id:
            raise FeatureError(
                f"occurrence from document {occ.doc_id!r} passed for {doc_id!r}"
            )
        counts[occ.type.id] += 1
    values = np.concatenate([counts, derived_features(counts, token_count, taxonomy)])
    return FrequencyVector(doc_id, values)


def _quartiles(values: np.ndarray) -> tuple[float, float]:
    """(q1, q3) by the inclusive linear-interpolation method."""
    a = np.sort(values)
    n = len(a)

    def at(p: float) -> float:
        pos = (n - 1) * p
        lo = int(pos)
        frac = pos - lo
        if lo + 1 < n:
            return float(a[lo] + frac * (a[lo + 1] - a[lo]))
        return float(a[lo])

    return at(0.25), at(0.75)


def _dispersion(values: np.ndarray) -> list[float]:
    """[mean, range, std, variance, cv, flatness, asymmetry] of a population."""
    x = np.asarray(values, dtype=np.float64)
    mean = float(x.mean())
    rng = float(x.max() - x.min())
    var = float(((x - mean) ** 2).mean())
    std = float(np.sqrt(var))
    cv = std / mean if mean != 0.0 else 0.0
    if std > 0.0:
        z = (x - mean) / std
        kurtosis = float((z**4).mean())
        skewness = float((z**3).mean())
    else:
        kurtosis = 0.0
        skewness = 0.0
    return [mean, rng, std, var, cv, kurtosis, skewness]


def _slice_stats(values: np.ndarray) -> list[float]:
    """[mean, q3, q1, iq, quartile-deviation coefficient, cv] of a slice."""
    x = np.asarray(values, dtype=np.float64)
    mean = float(x.mean())
    q1, q3 = _quartiles(x)
    iq = q3 - q1
    cqd = iq / (q3 + q1) if (q3 + q1) > 0.0 else 0.0
    var = float(((x - mean) ** 2).mean())
    std = float(np.sqrt(var))
    cv = std / mean if mean != 0.0 else 0.0
    return [mean, q3, q1, iq, cqd, cv]


def statistical_vector(freq: FrequencyVector) -> StatFeatures:
    """Dispersion statistics over the 56 leaf counts and their slices."""
    counts = freq.leaf_counts
    values = _dispersion(counts)
    values += _slice_stats(counts[SUPERCLASS_SLOTS["STRING"]])
    values += _slice_stats(counts[SUPERCLASS_SLOTS["NUMBER"]])
    values += _slice_stats(counts[0 : SUPERCLASS_SLOTS["NUMBER"].stop])
    return StatFeatures(freq.doc_id, np.array(values, dtype=np.float64))


def union_vector(freq: FrequencyVector, stat: StatFeatures) -> np.ndarray:
    if freq.doc_id != stat.doc_id:
        raise FeatureError(
            f"document mismatch: frequency vector {freq.doc_id!r} vs "
            f"statistics {stat.doc_id!r}"
        )
    return np.concatenate([freq.values, stat.values])


@dataclass(frozen=True)
class FeatureMatrix:
    """One row per document, in corpus order, with labels attached."""

    doc_ids: tuple[str, ...]
    labels: tuple[str, ...]
    representation: str
    values: np.ndarray  # shape (n_docs, width), float64

    def __post_init__(self):
        width = rep_width(self.representation)
        if self.values.ndim != 2 or self.values.shape[1] != width:
            raise FeatureError(
                f"{self.representation} rows must have width {width}, "
                f"got shape {self.values.shape}"
            )
        if len(self.doc_ids) != self.values.shape[0] or len(self.labels) != self.values.shape[0]:
            raise FeatureError("doc_ids, labels and rows must have equal length")

    def __len__(self) -> int:
        return len(self.doc_ids)

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def save(self, path: str | Path) -> None:
        """Tab-separated dump with full round-trip float precision."""
        width = self.width
        header = "doc_id\tlabel\t" + "\t".join(f"f{i}" for i in range(width))
        lines = [header]
        for doc_id, label, row in zip(self.doc_ids, self.labels, self.values):
            lines.append(
                doc_id + "\t" + label + "\t" + "\t".join(repr(float(v)) for v in row)
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_matrix(path: str | Path) -> FeatureMatrix:
    """Read a matrix written by :meth:`FeatureMatrix.save`, bit-exactly."""
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines:
        raise FeatureError(f"empty matrix file: {path}")
    header = lines[0].split("\t")
    width = len(header) - 2
    by_width = {FREQ_WIDTH: REP_FREQ, STAT_WIDTH: REP_STAT, UNION_WIDTH: REP_UNION}
    if header[:2] != ["doc_id", "label"] or width not in by_width:
        raise FeatureError(f"unrecognized matrix header in {path}")
    doc_ids, labels, rows = [], [], []
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split("\t")
        if len(parts) != width + 2:
            raise FeatureError(f"{path}:{lineno}: expected {width + 2} columns, got {len(parts)}")
        doc_ids.append(parts[0])
        labels.append(parts[1])
        rows.append([float(v) for v in parts[2:]])
    values = np.array(rows, dtype=np.float64) if rows else np.empty((0, width))
    return FeatureMatrix(tuple(doc_ids), tuple(labels), by_width[width], values)


def build_matrix(
    docs: Sequence[LabeledDocument],
    occurrences: Mapping[str, Sequence[NSWOccurrence]],
    representation: str,
    taxonomy: Taxonomy,
) -> FeatureMatrix:
    """Assemble the term-by-document matrix for one representation."""
    width = rep_width(representation)
    rows = np.empty((len(docs), width), dtype=np.float64)
    for i, doc in enumerate(docs):
        try:
            freq = frequency_vector(
                doc.id, occurrences.get(doc.id, ()), doc.token_count, taxonomy
            )
            if representation == REP_FREQ:
                rows[i] = freq.values
            elif representation == REP_STAT:
                rows[i] = statistical_vector(freq).values
            else:
                rows[i] = union_vector(freq, statistical_vector(freq))
        except FeatureError as exc:
            raise FeatureError(f"document {doc.id!r}: {exc}") from exc
    return FeatureMatrix(
        tuple(d.id for d in docs),
        tuple(d.label for d in docs),
        representation,
        rows,
    )
