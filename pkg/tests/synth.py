"""Seeded synthetic corpora for classifier and harness tests."""

import numpy as np

from nswcat.features import REP_FREQ, FREQ_WIDTH, FeatureMatrix


def make_nsw_blob_matrix(seed, n_classes=6, per_class=65, width=FREQ_WIDTH):
    """Count-style corpus with class-dependent leaf distributions.

    Each class elevates four of its own Poisson rates, but those same
    dimensions carry rare large spikes under every other class.  A
    threshold split sheds the spikes as a few-percent leak, while a
    per-dimension Gaussian fit inflates its variance so far that the
    class-conditional likelihoods flatten out, which keeps the forest
    comfortably ahead of naive Bayes.
    """
    rng = np.random.default_rng(seed)
    rows, labels = [], []
    class_names = [f"class{i}" for i in range(n_classes)]
    for c in range(n_classes):
        for _ in range(per_class):
            row = rng.poisson(1.5, size=width).astype(np.float64)
            for k in range(n_classes):
                for d in range(4):
                    dim = 8 * k + d
                    if k == c:
                        row[dim] = rng.poisson(9.0)
                    elif rng.random() < 0.04:
                        row[dim] = rng.poisson(50.0)
            rows.append(row)
            labels.append(class_names[c])
    return FeatureMatrix(
        tuple(f"doc{i:04d}" for i in range(len(rows))),
        tuple(labels),
        REP_FREQ,
        np.array(rows),
    )


def make_gaussian_blobs(seed, n_classes=3, per_class=100, width=8, sep=6.0):
    """Well-separated Gaussian blobs as raw arrays."""
    rng = np.random.default_rng(seed)
    centers = rng.normal(0.0, sep, size=(n_classes, width))
    x, labels = [], []
    for c in range(n_classes):
        x.append(centers[c] + rng.normal(0.0, 1.0, size=(per_class, width)))
        labels.extend([f"class{c}"] * per_class)
    return np.vstack(x), tuple(labels)
