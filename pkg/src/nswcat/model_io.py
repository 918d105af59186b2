"""Versioned binary container for trained models.

Layout (little-endian throughout):

    magic    4 bytes  b"NSWM"
    version  u8       format version (currently 1)
    kind     u8       1=nb 2=knn 3=tree 4=forest
    width    u32      feature width
    classes  u16      class count, then per class: u16 length + UTF-8 name
    hyper    knn_k u32, knn_scale u8, tree_min_leaf u32,
             tree_max_depth i32 (-1 = unbounded), forest_trees u32,
             rng_seed i64
    payload  kind-specific arrays; each array is u8 ndim, u32 per dim,
             then raw float64/int32 data

Any structural problem raises :class:`ModelFormatError` naming the byte
offset where decoding failed.
"""

from __future__ import annotations

import io
import struct
from pathlib import Path

import numpy as np

from .classifiers import (
    ForestModel,
    Hyperparameters,
    KNNModel,
    Model,
    NaiveBayesModel,
    TreeModel,
    TreeNodes,
)
from .errors import ModelFormatError

MAGIC = b"NSWM"
FORMAT_VERSION = 1
_KIND_TAGS = {"nb": 1, "knn": 2, "tree": 3, "forest": 4}
_TAG_KINDS = {v: k for k, v in _KIND_TAGS.items()}
_DTYPE_TAGS = {np.dtype(np.float64): 1, np.dtype(np.int32): 2, np.dtype(np.int64): 3}
_TAG_DTYPES = {v: k for k, v in _DTYPE_TAGS.items()}


class _Writer:
    def __init__(self):
        self.buf = io.BytesIO()

    def raw(self, data: bytes) -> None:
        self.buf.write(data)

    def pack(self, fmt: str, *values) -> None:
        self.buf.write(struct.pack("<" + fmt, *values))

    def text(self, s: str) -> None:
        data = s.encode("utf-8")
        self.pack("H", len(data))
        self.raw(data)

    def array(self, a: np.ndarray) -> None:
        dtype = np.dtype(a.dtype)
        if dtype not in _DTYPE_TAGS:
            a = a.astype(np.float64)
            dtype = np.dtype(np.float64)
        self.pack("BB", _DTYPE_TAGS[dtype], a.ndim)
        for dim in a.shape:
            self.pack("I", dim)
        self.raw(np.ascontiguousarray(a).astype(dtype, copy=False).tobytes())

    def getvalue(self) -> bytes:
        return self.buf.getvalue()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def fail(self, why: str):
        raise ModelFormatError(f"{why} at offset {self.offset}")

    def raw(self, n: int) -> bytes:
        if self.offset + n > len(self.data):
            self.fail(f"truncated stream: needed {n} bytes")
        out = self.data[self.offset : self.offset + n]
        self.offset += n
        return out

    def unpack(self, fmt: str):
        size = struct.calcsize("<" + fmt)
        values = struct.unpack("<" + fmt, self.raw(size))
        return values if len(values) > 1 else values[0]

    def text(self) -> str:
        n = self.unpack("H")
        return self.raw(n).decode("utf-8")

    def array(self) -> np.ndarray:
        start = self.offset
        dtype_tag, ndim = self.unpack("BB")
        if dtype_tag not in _TAG_DTYPES:
            self.offset = start
            self.fail(f"unknown dtype tag {dtype_tag}")
        if ndim > 2:
            self.offset = start
            self.fail(f"unexpected array rank {ndim}")
        dtype = _TAG_DTYPES[dtype_tag]
        shape = tuple(self.unpack("I") for _ in range(ndim))
        count = 1
        for dim in shape:
            count *= dim
        raw = self.raw(count * dtype.itemsize)
        return np.frombuffer(raw, dtype=dtype).reshape(shape).copy()


def serialize_model(model: Model) -> bytes:
    w = _Writer()
    w.raw(MAGIC)
    w.pack("BB", FORMAT_VERSION, _KIND_TAGS[model.kind])
    w.pack("I", model.feature_width)
    w.pack("H", len(model.class_names))
    for name in model.class_names:
        w.text(name)
    hp = model.hyperparameters
    depth = -1 if hp.tree_max_depth is None else hp.tree_max_depth
    w.pack("IBIiIq", hp.knn_k, int(hp.knn_scale), hp.tree_min_leaf,
           depth, hp.forest_trees, hp.rng_seed)

    if isinstance(model, NaiveBayesModel):
        w.array(model.means)
        w.array(model.variances)
        w.array(model.log_priors)
    elif isinstance(model, KNNModel):
        w.pack("B", int(model.scale_min is not None))
        w.array(model.train_x)
        w.array(model.train_y.astype(np.int32))
        if model.scale_min is not None:
            w.array(model.scale_min)
            w.array(model.scale_range)
    elif isinstance(model, TreeModel):
        _write_tree(w, model.nodes)
    elif isinstance(model, ForestModel):
        w.pack("I", len(model.trees))
        for nodes in model.trees:
            _write_tree(w, nodes)
    else:
        raise ModelFormatError(f"cannot serialize model kind {model.kind!r}")
    return w.getvalue()


def _write_tree(w: _Writer, nodes: TreeNodes) -> None:
    w.array(nodes.feature)
    w.array(nodes.threshold)
    w.array(nodes.left)
    w.array(nodes.right)
    w.array(nodes.leaf_class)


def _read_tree(r: _Reader) -> TreeNodes:
    return TreeNodes(r.array(), r.array(), r.array(), r.array(), r.array())


def deserialize_model(data: bytes) -> Model:
    r = _Reader(data)
    if r.raw(4) != MAGIC:
        r.offset = 0
        r.fail("bad magic bytes")
    version, kind_tag = r.unpack("BB")
    if version != FORMAT_VERSION:
        r.offset = 4
        r.fail(f"unsupported format version {version}")
    if kind_tag not in _TAG_KINDS:
        r.offset = 5
        r.fail(f"unknown kind tag {kind_tag}")
    kind = _TAG_KINDS[kind_tag]
    width = r.unpack("I")
    n_classes = r.unpack("H")
    class_names = tuple(r.text() for _ in range(n_classes))
    knn_k, knn_scale, min_leaf, depth, trees, seed = r.unpack("IBIiIq")
    hp = Hyperparameters(
        knn_k=knn_k,
        knn_scale=bool(knn_scale),
        tree_min_leaf=min_leaf,
        tree_max_depth=None if depth < 0 else depth,
        forest_trees=trees,
        rng_seed=seed,
    )

    model: Model
    if kind == "nb":
        model = NaiveBayesModel(width, class_names, hp, r.array(), r.array(), r.array())
    elif kind == "knn":
        scaled = r.unpack("B")
        train_x = r.array()
        train_y = r.array().astype(np.int64)
        if scaled:
            model = KNNModel(width, class_names, hp, train_x, train_y, r.array(), r.array())
        else:
            model = KNNModel(width, class_names, hp, train_x, train_y)
    elif kind == "tree":
        model = TreeModel(width, class_names, hp, _read_tree(r))
    else:
        n_trees = r.unpack("I")
        model = ForestModel(width, class_names, hp, [_read_tree(r) for _ in range(n_trees)])

    if r.offset != len(data):
        r.fail(f"{len(data) - r.offset} unexpected trailing byte(s)")
    return model


def save_model(model: Model, path: str | Path) -> None:
    Path(path).write_bytes(serialize_model(model))


def load_model(path: str | Path) -> Model:
    return deserialize_model(Path(path).read_bytes())
