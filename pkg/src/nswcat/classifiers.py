"""Trainable multi-class classifiers behind a single interface.

Four kinds: Gaussian naive Bayes, k-nearest neighbors, an
information-gain threshold tree and a bagged random forest.  All
training is a pure function of (training set, hyperparameters, seed);
every tie anywhere (posterior, vote, distance) breaks toward the
earliest class in ``class_names``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ModelError
from .features import FeatureMatrix

KINDS = ("nb", "knn", "tree", "forest")

NB_VAR_SMOOTHING = 1e-9


@dataclass(frozen=True)
class Hyperparameters:
    knn_k: int = 5
    knn_scale: bool = False
    tree_min_leaf: int = 2
    tree_max_depth: int | None = None
    forest_trees: int = 100
    rng_seed: int = 0

    def __post_init__(self):
        if self.knn_k < 1 or self.tree_min_leaf < 1 or self.forest_trees < 1:
            raise ModelError("hyperparameters must be positive where typed positive")
        if self.tree_max_depth is not None and self.tree_max_depth < 1:
            raise ModelError("tree_max_depth must be positive when set")


@dataclass(frozen=True)
class TrainingSet:
    """Raw training data: one row per document plus its label."""

    values: np.ndarray
    labels: tuple[str, ...]
    class_names: tuple[str, ...]

    @classmethod
    def from_matrix(cls, matrix: FeatureMatrix) -> "TrainingSet":
        return cls(matrix.values, matrix.labels, matrix.class_names)


def _validate_features(values: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        r, c = np.argwhere(bad)[0]
        raise ModelError(f"non-finite feature value at row {int(r)}, column {int(c)}")


class Model:
    """Base predictor; concrete kinds fill in `_predict_indices`."""

    kind: str = ""

    def __init__(self, feature_width: int, class_names: tuple[str, ...],
                 hyperparameters: Hyperparameters):
        self.feature_width = feature_width
        self.class_names = class_names
        self.hyperparameters = hyperparameters

    def _check_width(self, vectors: np.ndarray) -> np.ndarray:
        v = np.asarray(vectors, dtype=np.float64)
        if v.ndim == 1:
            v = v[None, :]
        if v.shape[1] != self.feature_width:
            raise ModelError(
                f"feature width mismatch: model expects {self.feature_width}, got {v.shape[1]}"
            )
        return v

    def _predict_indices(self, vectors: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict(self, vector: Sequence[float] | np.ndarray) -> str:
        v = self._check_width(np.asarray(vector, dtype=np.float64))
        return self.class_names[int(self._predict_indices(v)[0])]

    def predict_many(self, vectors: np.ndarray) -> list[str]:
        v = self._check_width(vectors)
        return [self.class_names[int(i)] for i in self._predict_indices(v)]


class NaiveBayesModel(Model):
    kind = "nb"

    def __init__(self, feature_width, class_names, hyperparameters,
                 means: np.ndarray, variances: np.ndarray, log_priors: np.ndarray):
        super().__init__(feature_width, class_names, hyperparameters)
        self.means = means
        self.variances = variances
        self.log_priors = log_priors

    def _predict_indices(self, vectors: np.ndarray) -> np.ndarray:
        # log N(x | mean, var) summed over features, plus log prior.
        diff = vectors[:, None, :] - self.means[None, :, :]
        log_lik = -0.5 * (
            np.log(2.0 * np.pi * self.variances)[None, :, :]
            + diff**2 / self.variances[None, :, :]
        ).sum(axis=2)
        return np.argmax(log_lik + self.log_priors[None, :], axis=1)


class KNNModel(Model):
    kind = "knn"

    def __init__(self, feature_width, class_names, hyperparameters,
                 train_x: np.ndarray, train_y: np.ndarray,
                 scale_min: np.ndarray | None = None,
                 scale_range: np.ndarray | None = None):
        super().__init__(feature_width, class_names, hyperparameters)
        self.train_x = train_x
        self.train_y = train_y
        self.scale_min = scale_min
        self.scale_range = scale_range

    def _apply_scale(self, v: np.ndarray) -> np.ndarray:
        if self.scale_min is None:
            return v
        safe = np.where(self.scale_range > 0, self.scale_range, 1.0)
        return (v - self.scale_min) / safe

    def _predict_indices(self, vectors: np.ndarray) -> np.ndarray:
        k = min(self.hyperparameters.knn_k, len(self.train_x))
        x = self._apply_scale(self.train_x)
        q = self._apply_scale(vectors)
        out = np.empty(len(q), dtype=np.int64)
        n_classes = len(self.class_names)
        for i, row in enumerate(q):
            d = np.sqrt(((x - row) ** 2).sum(axis=1))
            # Stable neighbor order: distance first, training index second.
            order = np.lexsort((np.arange(len(d)), d))[:k]
            votes = np.bincount(self.train_y[order], minlength=n_classes)
            out[i] = int(np.argmax(votes))
        return out


@dataclass
class TreeNodes:
    """Flat array representation of a binary threshold tree."""

    feature: np.ndarray   # int32, -1 at leaves
    threshold: np.ndarray  # float64
    left: np.ndarray      # int32, -1 at leaves
    right: np.ndarray     # int32, -1 at leaves
    leaf_class: np.ndarray  # int32, -1 at internal nodes


class TreeModel(Model):
    kind = "tree"

    def __init__(self, feature_width, class_names, hyperparameters, nodes: TreeNodes):
        super().__init__(feature_width, class_names, hyperparameters)
        self.nodes = nodes

    def _predict_indices(self, vectors: np.ndarray) -> np.ndarray:
        out = np.empty(len(vectors), dtype=np.int64)
        nd = self.nodes
        for i, row in enumerate(vectors):
            node = 0
            while nd.leaf_class[node] < 0:
                node = nd.left[node] if row[nd.feature[node]] <= nd.threshold[node] else nd.right[node]
            out[i] = nd.leaf_class[node]
        return out


class ForestModel(Model):
    kind = "forest"

    def __init__(self, feature_width, class_names, hyperparameters,
                 trees: list[TreeNodes]):
        super().__init__(feature_width, class_names, hyperparameters)
        self.trees = trees

    def _predict_indices(self, vectors: np.ndarray) -> np.ndarray:
        n_classes = len(self.class_names)
        votes = np.zeros((len(vectors), n_classes), dtype=np.int64)
        proxy = TreeModel(self.feature_width, self.class_names, self.hyperparameters, self.trees[0])
        for nodes in self.trees:
            proxy.nodes = nodes
            pred = proxy._predict_indices(vectors)
            votes[np.arange(len(vectors)), pred] += 1
        return np.argmax(votes, axis=1)


def _entropy(counts: np.ndarray) -> np.ndarray:
    """Natural-log entropy for rows of class counts."""
    totals = counts.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / totals, 0.0)
        term = np.where(p > 0, p * np.log(p), 0.0)
    return -term.sum(axis=-1)


def _best_split(
    x: np.ndarray, y: np.ndarray, n_classes: int, features: np.ndarray, min_leaf: int
) -> tuple[int, float, float] | None:
    """Highest information-gain (feature, threshold) over candidates.

    Thresholds are midpoints between consecutive distinct sorted values;
    ties keep the first (lowest feature index, lowest threshold).
    """
    n = len(y)
    parent = float(_entropy(np.bincount(y, minlength=n_classes)[None, :])[0])
    best: tuple[int, float, float] | None = None
    for f in features:
        col = x[:, f]
        order = np.argsort(col, kind="stable")
        xs, ys = col[order], y[order]
        onehot = np.zeros((n, n_classes), dtype=np.int64)
        onehot[np.arange(n), ys] = 1
        left_counts = np.cumsum(onehot, axis=0)[:-1]
        sizes_left = np.arange(1, n)
        boundary = xs[1:] != xs[:-1]
        valid = boundary & (sizes_left >= min_leaf) & ((n - sizes_left) >= min_leaf)
        if not valid.any():
            continue
        right_counts = left_counts[-1][None, :] + onehot[-1][None, :] - left_counts
        h_left = _entropy(left_counts)
        h_right = _entropy(right_counts)
        gains = parent - (sizes_left * h_left + (n - sizes_left) * h_right) / n
        gains = np.where(valid, gains, -np.inf)
        i = int(np.argmax(gains))
        # Zero-gain splits are kept: an impure node with distinct rows must
        # keep splitting or it could never separate interaction patterns.
        cand = (int(f), float((xs[i] + xs[i + 1]) / 2.0), float(gains[i]))
        if best is None or cand[2] > best[2]:
            best = cand
    return best


def _grow_tree(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    min_leaf: int,
    max_depth: int | None,
    rng: np.random.Generator | None = None,
    max_features: int | None = None,
) -> TreeNodes:
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    leaf_class: list[int] = []

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        leaf_class.append(-1)
        return len(feature) - 1

    def majority(labels: np.ndarray) -> int:
        return int(np.argmax(np.bincount(labels, minlength=n_classes)))

    def build(idx: np.ndarray, depth: int) -> int:
        node = new_node()
        labels = y[idx]
        if (
            len(idx) < 2 * min_leaf
            or (max_depth is not None and depth >= max_depth)
            or (labels == labels[0]).all()
        ):
            leaf_class[node] = majority(labels)
            return node
        if max_features is not None and rng is not None:
            cand = np.sort(rng.choice(x.shape[1], size=max_features, replace=False))
        else:
            cand = np.arange(x.shape[1])
        split = _best_split(x[idx], labels, n_classes, cand, min_leaf)
        if split is None:
            leaf_class[node] = majority(labels)
            return node
        f, thr, _ = split
        mask = x[idx, f] <= thr
        feature[node] = f
        threshold[node] = thr
        left[node] = build(idx[mask], depth + 1)
        right[node] = build(idx[~mask], depth + 1)
        return node

    build(np.arange(len(y)), 0)
    return TreeNodes(
        np.array(feature, dtype=np.int32),
        np.array(threshold, dtype=np.float64),
        np.array(left, dtype=np.int32),
        np.array(right, dtype=np.int32),
        np.array(leaf_class, dtype=np.int32),
    )


def forest_feature_count(width: int) -> int:
    """Candidate features per split: square root of the feature width."""
    return max(1, int(round(math.sqrt(width))))


def train(
    kind: str,
    training_set: TrainingSet | FeatureMatrix,
    hyperparameters: Hyperparameters | None = None,
) -> Model:
    """Train one classifier kind; deterministic given ``rng_seed``."""
    if isinstance(training_set, FeatureMatrix):
        training_set = TrainingSet.from_matrix(training_set)
    hp = hyperparameters or Hyperparameters()
    x = np.asarray(training_set.values, dtype=np.float64)
    if x.ndim != 2 or len(x) == 0:
        raise ModelError("cannot train on an empty training set")
    if len(training_set.labels) != len(x):
        raise ModelError("labels and rows must have equal length")
    _validate_features(x)
    class_names = training_set.class_names
    unknown = sorted(set(training_set.labels) - set(class_names))
    if unknown:
        raise ModelError(f"labels missing from class_names: {unknown}")
    index = {name: i for i, name in enumerate(class_names)}
    y = np.array([index[lab] for lab in training_set.labels], dtype=np.int64)
    width = x.shape[1]
    n_classes = len(class_names)

    if kind == "nb":
        means = np.empty((n_classes, width))
        variances = np.empty((n_classes, width))
        priors = np.zeros(n_classes)
        global_var = x.var(axis=0)
        # Keeps every class-conditional variance positive so log-likelihoods
        # stay finite even for constant features.
        eps = NB_VAR_SMOOTHING * float(global_var.max())
        if eps <= 0.0:
            eps = 1e-12
        for c in range(n_classes):
            rows = x[y == c]
            if len(rows) == 0:
                means[c] = 0.0
                variances[c] = eps
                priors[c] = -np.inf
                continue
            means[c] = rows.mean(axis=0)
            variances[c] = np.maximum(rows.var(axis=0), eps)
            priors[c] = np.log(len(rows) / len(x))
        return NaiveBayesModel(width, class_names, hp, means, variances, priors)

    if kind == "knn":
        if hp.knn_scale:
            mins = x.min(axis=0)
            ranges = x.max(axis=0) - mins
            return KNNModel(width, class_names, hp, x.copy(), y, mins, ranges)
        return KNNModel(width, class_names, hp, x.copy(), y)

    if kind == "tree":
        nodes = _grow_tree(x, y, n_classes, hp.tree_min_leaf, hp.tree_max_depth)
        return TreeModel(width, class_names, hp, nodes)

    if kind == "forest":
        trees = []
        m = forest_feature_count(width)
        for i in range(hp.forest_trees):
            # Per-tree generator seeded as seed + index, so parallel and
            # serial builds produce identical forests.
            rng = np.random.default_rng(hp.rng_seed + i)
            bootstrap = rng.integers(0, len(x), size=len(x))
            trees.append(
                _grow_tree(
                    x[bootstrap], y[bootstrap], n_classes,
                    hp.tree_min_leaf, hp.tree_max_depth,
                    rng=rng, max_features=min(m, width),
                )
            )
        return ForestModel(width, class_names, hp, trees)

    raise ModelError(f"unknown classifier kind {kind!r}; expected one of {KINDS}")


def predict(model: Model, vector: Sequence[float] | np.ndarray) -> str:
    return model.predict(vector)
