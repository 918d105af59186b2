"""End-to-end evaluation: fold assignment, cross-validation, experiments.

Accuracy is the exact ratio of correct classifications to test cases,
pooled over all out-of-fold predictions.  Everything is deterministic
given (corpus, config, seed), including under parallel cell execution:
cells are pure functions and the writer emits them in config order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import classifiers
from .classifiers import Hyperparameters, TrainingSet
from .corpus import load_corpus
from .errors import HarnessError, NswcatError
from .features import REPRESENTATIONS, FeatureMatrix, build_matrix
from .lexer import extract_nsws, load_lexicon, load_rules
from .taxonomy import load_taxonomy


@dataclass(frozen=True)
class FoldAssignment:
    k: int
    assignment: np.ndarray  # per-document fold index, int64
    seed: int
    stratified: bool

    def fold_sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)


def kfold_split(
    labels: Sequence[str], k: int, seed: int, stratified: bool = True
) -> FoldAssignment:
    """Assign each document to one of ``k`` folds.

    Fold sizes differ by at most one; under stratification the same
    holds per class.  Deterministic given ``seed``.
    """
    if k < 2:
        raise HarnessError(f"k must be at least 2, got {k}")
    n = len(labels)
    if n < k:
        raise HarnessError(f"cannot split {n} documents into {k} folds")
    rng = np.random.default_rng(seed)
    assignment = np.empty(n, dtype=np.int64)
    if stratified:
        by_class: dict[str, list[int]] = {}
        for i, lab in enumerate(labels):
            by_class.setdefault(lab, []).append(i)
        for lab in sorted(by_class):
            if len(by_class[lab]) < k:
                raise HarnessError(
                    f"class {lab!r} has {len(by_class[lab])} member(s), "
                    f"fewer than k={k}; cannot stratify"
                )
        counter = 0
        for lab in sorted(by_class):
            idx = np.array(by_class[lab])
            rng.shuffle(idx)
            for i in idx:
                assignment[i] = counter % k
                counter += 1
    else:
        order = rng.permutation(n)
        for pos, i in enumerate(order):
            assignment[i] = pos % k
    return FoldAssignment(k, assignment, seed, stratified)


def accuracy(correct: int, total: int) -> Fraction:
    """Exact fraction of correct classifications over test cases."""
    if total <= 0:
        raise HarnessError("total number of test cases must be positive")
    if not 0 <= correct <= total:
        raise HarnessError(f"correct count {correct} outside 0..{total}")
    return Fraction(correct, total)


@dataclass(frozen=True)
class EvaluationReport:
    kind: str
    representation: str
    correct_count: int
    total_count: int
    per_class_accuracy: dict[str, Fraction]
    confusion: np.ndarray  # (true, predicted) counts, int64
    class_names: tuple[str, ...]
    seed: int
    hyperparameters: Hyperparameters

    @property
    def accuracy(self) -> Fraction:
        return accuracy(self.correct_count, self.total_count)

    def to_text(self) -> str:
        hp = self.hyperparameters
        lines = [
            f"kind: {self.kind}",
            f"representation: {self.representation}",
            f"correct: {self.correct_count}",
            f"total: {self.total_count}",
            f"accuracy: {self.correct_count}/{self.total_count}",
            f"accuracy_float: {float(self.accuracy)!r}",
            f"accuracy_percent: {100.0 * float(self.accuracy):.2f}",
            f"seed: {self.seed}",
            f"knn_k: {hp.knn_k}",
            f"knn_scale: {hp.knn_scale}",
            f"tree_min_leaf: {hp.tree_min_leaf}",
            f"tree_max_depth: {hp.tree_max_depth}",
            f"forest_trees: {hp.forest_trees}",
            "confusion:",
            "\t" + "\t".join(self.class_names),
        ]
        for i, name in enumerate(self.class_names):
            lines.append(name + "\t" + "\t".join(str(int(v)) for v in self.confusion[i]))
        lines.append("per_class_accuracy:")
        for name in self.class_names:
            frac = self.per_class_accuracy[name]
            lines.append(f"{name}\t{float(frac)!r}")
        return "\n".join(lines) + "\n"


def cross_validate(
    matrix: FeatureMatrix,
    kind: str,
    hyperparameters: Hyperparameters,
    folds: FoldAssignment,
) -> EvaluationReport:
    """Train on k-1 folds, predict the held-out fold, pool the confusion."""
    if len(matrix) != len(folds.assignment):
        raise HarnessError(
            f"fold assignment covers {len(folds.assignment)} documents, "
            f"matrix has {len(matrix)}"
        )
    class_names = matrix.class_names
    index = {name: i for i, name in enumerate(class_names)}
    confusion = np.zeros((len(class_names), len(class_names)), dtype=np.int64)
    labels = np.array([index[lab] for lab in matrix.labels])
    for fold in range(folds.k):
        test_mask = folds.assignment == fold
        train_mask = ~test_mask
        train_set = TrainingSet(
            matrix.values[train_mask],
            tuple(np.array(matrix.labels)[train_mask]),
            class_names,
        )
        try:
            model = classifiers.train(kind, train_set, hyperparameters)
        except NswcatError as exc:
            raise HarnessError(f"training failed in fold {fold}: {exc}") from exc
        predictions = model.predict_many(matrix.values[test_mask])
        for true_i, pred in zip(labels[test_mask], predictions):
            confusion[true_i, index[pred]] += 1

    per_class = {}
    for i, name in enumerate(class_names):
        row_sum = int(confusion[i].sum())
        per_class[name] = (
            Fraction(int(confusion[i, i]), row_sum) if row_sum else Fraction(0)
        )
    return EvaluationReport(
        kind=kind,
        representation=matrix.representation,
        correct_count=int(np.trace(confusion)),
        total_count=int(confusion.sum()),
        per_class_accuracy=per_class,
        confusion=confusion,
        class_names=class_names,
        seed=folds.seed,
        hyperparameters=hyperparameters,
    )


@dataclass(frozen=True)
class ExperimentConfig:
    representations: tuple[str, ...] = REPRESENTATIONS
    kinds: tuple[str, ...] = classifiers.KINDS
    k: int = 5
    seed: int = 0
    stratified: bool = True
    hyperparameters: Hyperparameters = field(default_factory=Hyperparameters)
    taxonomy_path: str | None = None
    lexicon_path: str | None = None
    rules_path: str | None = None
    jobs: int = 1
    figures: bool = True

    def __post_init__(self):
        for rep in self.representations:
            if rep not in REPRESENTATIONS:
                raise HarnessError(f"unknown representation {rep!r}")
        for kind in self.kinds:
            if kind not in classifiers.KINDS:
                raise HarnessError(f"unknown classifier kind {kind!r}")


@dataclass(frozen=True)
class ExperimentResult:
    reports: tuple[EvaluationReport, ...]
    mean_accuracy: dict[str, Fraction]  # per representation
    class_names: tuple[str, ...]
    config: ExperimentConfig

    def report_for(self, representation: str, kind: str) -> EvaluationReport:
        for r in self.reports:
            if r.representation == representation and r.kind == kind:
                return r
        raise KeyError((representation, kind))


def run_experiment(corpus_path: str | Path, config: ExperimentConfig) -> ExperimentResult:
    """Run the full pipeline: extract, featurize, cross-validate each cell."""
    try:
        taxonomy = load_taxonomy(config.taxonomy_path)
        lexicon = load_lexicon(config.lexicon_path, taxonomy)
        rules = load_rules(config.rules_path, taxonomy)
    except NswcatError as exc:
        raise HarnessError(f"configuration stage failed: {exc}") from exc

    try:
        corpus = load_corpus(corpus_path, lexicon.abbreviation_forms())
    except NswcatError as exc:
        raise HarnessError(f"corpus stage failed: {exc}") from exc

    try:
        occurrences = {doc.id: extract_nsws(doc, lexicon, rules) for doc in corpus}
    except NswcatError as exc:
        raise HarnessError(f"extraction stage failed: {exc}") from exc

    try:
        matrices = {
            rep: build_matrix(corpus.documents, occurrences, rep, taxonomy)
            for rep in config.representations
        }
    except NswcatError as exc:
        raise HarnessError(f"feature stage failed: {exc}") from exc

    folds = kfold_split(corpus.labels, config.k, config.seed, config.stratified)

    cells = [(rep, kind) for rep in config.representations for kind in config.kinds]

    def run_cell(cell: tuple[str, str]) -> EvaluationReport:
        rep, kind = cell
        try:
            return cross_validate(matrices[rep], kind, config.hyperparameters, folds)
        except NswcatError as exc:
            raise HarnessError(f"evaluation cell ({rep}, {kind}) failed: {exc}") from exc

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            reports = tuple(pool.map(run_cell, cells))
    else:
        reports = tuple(run_cell(c) for c in cells)

    mean_accuracy = {}
    for rep in config.representations:
        cell_reports = [r for r in reports if r.representation == rep]
        mean_accuracy[rep] = sum(
            (r.accuracy for r in cell_reports), Fraction(0)
        ) / len(cell_reports)

    class_names = matrices[config.representations[0]].class_names
    return ExperimentResult(reports, mean_accuracy, class_names, config)
