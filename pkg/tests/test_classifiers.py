import numpy as np
import pytest

from nswcat.classifiers import (
    Hyperparameters,
    TrainingSet,
    forest_feature_count,
    train,
)
from nswcat.errors import ModelError, ModelFormatError
from nswcat.harness import kfold_split
from nswcat.model_io import deserialize_model, serialize_model

from synth import make_gaussian_blobs


def _set(x, labels, class_names=None):
    labels = tuple(labels)
    return TrainingSet(
        np.asarray(x, dtype=np.float64),
        labels,
        class_names or tuple(sorted(set(labels))),
    )


def _accuracy(model, x, labels):
    pred = model.predict_many(np.asarray(x, dtype=np.float64))
    return sum(p == t for p, t in zip(pred, labels)) / len(labels)


# ----------------------------------------------------------------- train


@pytest.mark.parametrize("kind", ["nb", "knn", "tree", "forest"])
def test_single_class_always_predicts_it(kind):
    ts = _set([[0.0, 1.0], [2.0, 3.0], [4.0, 0.0]], ["only"] * 3)
    model = train(kind, ts, Hyperparameters(forest_trees=5))
    assert model.predict([9.0, 9.0]) == "only"


def test_tree_separable_threshold_is_depth_one():
    x = [[0.0], [1.0], [2.0], [10.0], [11.0], [12.0]]
    ts = _set(x, ["a", "a", "a", "b", "b", "b"])
    model = train("tree", ts, Hyperparameters(tree_min_leaf=1))
    nodes = model.nodes
    assert nodes.leaf_class[0] == -1  # root splits
    assert nodes.leaf_class[nodes.left[0]] >= 0
    assert nodes.leaf_class[nodes.right[0]] >= 0
    assert _accuracy(model, x, ts.labels) == 1.0


def test_tree_full_training_accuracy_without_depth_limit():
    # Includes an interaction (xor) block that zero-gain splitting must solve.
    rng = np.random.default_rng(4)
    x = rng.integers(0, 2, size=(40, 6)).astype(float)
    labels = tuple(
        "odd" if (row[0] + row[1]) % 2 else "even" for row in x
    )
    uniq = {}
    keep = []
    for i, row in enumerate(map(tuple, x)):
        if row not in uniq:
            uniq[row] = labels[i]
            keep.append(i)
    x = x[keep]
    labels = tuple(labels[i] for i in keep)
    model = train("tree", _set(x, labels), Hyperparameters(tree_min_leaf=1))
    assert _accuracy(model, x, labels) == 1.0


def test_forest_deterministic_given_seed():
    x, labels = make_gaussian_blobs(seed=0, per_class=30)
    hp = Hyperparameters(forest_trees=10, rng_seed=99)
    m1 = train("forest", _set(x, labels), hp)
    m2 = train("forest", _set(x, labels), hp)
    q = np.random.default_rng(1).normal(size=(20, x.shape[1]))
    assert m1.predict_many(q) == m2.predict_many(q)


def test_forest_accuracy_on_separated_blobs():
    x, labels = make_gaussian_blobs(seed=2, n_classes=3, per_class=100)
    folds = kfold_split(labels, 2, seed=0)
    train_mask = folds.assignment == 0
    hp = Hyperparameters(forest_trees=30, rng_seed=0)
    model = train(
        "forest",
        _set(x[train_mask], tuple(np.array(labels)[train_mask])),
        hp,
    )
    held_x = x[~train_mask]
    held_y = tuple(np.array(labels)[~train_mask])
    assert _accuracy(model, held_x, held_y) >= 0.95


def test_forest_at_least_tree_on_average():
    diffs = []
    for seed in range(20):
        x, labels = make_gaussian_blobs(
            seed=seed, n_classes=3, per_class=40, width=6, sep=1.5
        )
        folds = kfold_split(labels, 2, seed=seed)
        tr = folds.assignment == 0
        tr_set = _set(x[tr], tuple(np.array(labels)[tr]))
        te_x, te_y = x[~tr], tuple(np.array(labels)[~tr])
        forest = train("forest", tr_set, Hyperparameters(forest_trees=25, rng_seed=seed))
        tree = train("tree", tr_set, Hyperparameters())
        diffs.append(_accuracy(forest, te_x, te_y) - _accuracy(tree, te_x, te_y))
    assert np.mean(diffs) >= 0.0


def test_nb_variance_smoothing_floor():
    x = np.array([[1.0, 5.0], [1.0, 7.0], [1.0, 9.0], [1.0, 11.0]])
    model = train("nb", _set(x, ["a", "a", "b", "b"]))
    eps = 1e-9 * float(x.var(axis=0).max())
    assert (model.variances >= eps).all()
    assert np.isfinite(
        model._predict_indices(np.array([[1.0, 8.0]]))
    ).all()


def test_nb_symmetric_tie_breaks_to_first_class():
    x = [[-1.0], [1.0]]
    model = train("nb", _set(x, ["a", "b"]))
    assert model.predict([0.0]) == "a"


def test_knn_memorizes_training_row():
    x = [[0.0, 0.0], [5.0, 5.0], [9.0, 0.0]]
    model = train("knn", _set(x, ["a", "b", "c"]), Hyperparameters(knn_k=1))
    assert model.predict([5.0, 5.0]) == "b"


def test_knn_scale_flag_neutralizes_feature_magnitude():
    x, labels = make_gaussian_blobs(seed=12, n_classes=3, per_class=20, width=4)
    q = np.random.default_rng(13).normal(size=(25, 4)) * 3
    x_big, q_big = x.copy(), q.copy()
    x_big[:, 2] *= 1000.0
    q_big[:, 2] *= 1000.0
    hp = Hyperparameters(knn_k=5, knn_scale=True)
    base = train("knn", _set(x, labels), hp)
    rescaled = train("knn", _set(x_big, labels), hp)
    assert base.predict_many(q) == rescaled.predict_many(q_big)


def test_knn_invariant_under_zero_column():
    x, labels = make_gaussian_blobs(seed=5, n_classes=3, per_class=20, width=4)
    q = np.random.default_rng(6).normal(size=(25, 4)) * 3
    base = train("knn", _set(x, labels), Hyperparameters(knn_k=5))
    x_aug = np.hstack([x, np.zeros((len(x), 1))])
    q_aug = np.hstack([q, np.zeros((len(q), 1))])
    aug = train("knn", _set(x_aug, labels), Hyperparameters(knn_k=5))
    assert base.predict_many(q) == aug.predict_many(q_aug)


def test_train_empty_set_rejected():
    with pytest.raises(ModelError, match="empty"):
        train("nb", _set(np.empty((0, 3)), []))


def test_train_non_finite_names_row_and_column():
    x = np.ones((3, 4))
    x[1, 2] = np.nan
    with pytest.raises(ModelError, match="row 1, column 2"):
        train("nb", _set(x, ["a", "b", "a"]))


def test_predict_width_mismatch():
    model = train("nb", _set([[0.0, 1.0], [1.0, 0.0]], ["a", "b"]))
    with pytest.raises(ModelError, match="width mismatch"):
        model.predict([1.0, 2.0, 3.0])


def test_unknown_kind():
    with pytest.raises(ModelError, match="unknown classifier kind"):
        train("svm", _set([[0.0]], ["a"]))


def test_forest_feature_count_rule():
    assert forest_feature_count(85) == 9
    assert forest_feature_count(110) == 10
    assert forest_feature_count(1) == 1


# ---------------------------------------------------------- serialization


@pytest.mark.parametrize("kind", ["nb", "knn", "tree", "forest"])
def test_serialize_round_trip_predictions(kind):
    x, labels = make_gaussian_blobs(seed=7, n_classes=3, per_class=25, width=5)
    hp = Hyperparameters(forest_trees=8, rng_seed=3, knn_k=3)
    model = train(kind, _set(x, labels), hp)
    clone = deserialize_model(serialize_model(model))
    q = np.random.default_rng(8).normal(size=(100, 5)) * 4
    assert model.predict_many(q) == clone.predict_many(q)
    assert clone.class_names == model.class_names
    assert clone.hyperparameters == model.hyperparameters


def test_serialize_stable_bytes():
    x, labels = make_gaussian_blobs(seed=9, per_class=10, width=3)
    model = train("tree", _set(x, labels))
    assert serialize_model(model) == serialize_model(model)


def test_deserialize_truncated_stream_reports_offset():
    x, labels = make_gaussian_blobs(seed=10, per_class=10, width=3)
    data = serialize_model(train("nb", _set(x, labels)))
    with pytest.raises(ModelFormatError, match="offset"):
        deserialize_model(data[: len(data) // 2])


def test_deserialize_bad_magic():
    with pytest.raises(ModelFormatError, match="magic.*offset 0"):
        deserialize_model(b"XXXX" + b"\x00" * 32)


def test_deserialize_trailing_garbage():
    x, labels = make_gaussian_blobs(seed=11, per_class=10, width=3)
    data = serialize_model(train("nb", _set(x, labels)))
    with pytest.raises(ModelFormatError, match="trailing"):
        deserialize_model(data + b"\x00")


def test_golden_model_fixture():
    """A stream saved by a prior version must load and predict identically."""
    from conftest import FIXTURES

    model = deserialize_model((FIXTURES / "model_nb_v1.bin").read_bytes())
    queries = np.array(
        [[float(i), float(j)] for i in range(-2, 3) for j in range(-2, 3)]
    )
    expected = (FIXTURES / "model_nb_v1.predictions.txt").read_text().split()
    assert model.predict_many(queries) == expected
