"""Portable model persistence.

A model file is a single JSON document: versioned, self-describing, no
executable content. Integers are 64-bit; floats are IEEE-754 binary64
written with shortest round-trip repr, so save -> load is value-exact and
loaded models predict identically.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..dataset import MinMaxScaler
from ..errors import ModelFormatError, ModelVersionError
from .base import ClassifierSpec, TrainedModel
from .forest import RandomForestModel
from .linear import LinearSVMModel, LogisticRegressionModel
from .naive_bayes import GaussianNBModel
from .neighbors import KNNModel
from .neural import NeuralNetModel
from .tree import DecisionTreeModel, TreeNode

MODEL_FORMAT = "cropcast-model"
MODEL_VERSION = 1


def _tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"counts": [int(c) for c in node.counts]}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _tree_to_dict(node.left),
        "right": _tree_to_dict(node.right),
    }


def _tree_from_dict(d: dict) -> TreeNode:
    if "counts" in d:
        return TreeNode(counts=np.array(d["counts"], dtype=np.int64))
    return TreeNode(
        feature=int(d["feature"]),
        threshold=float(d["threshold"]),
        left=_tree_from_dict(d["left"]),
        right=_tree_from_dict(d["right"]),
    )


def _params_payload(m: TrainedModel) -> dict:
    if isinstance(m, DecisionTreeModel):
        return {"tree": _tree_to_dict(m.root)}
    if isinstance(m, RandomForestModel):
        return {"trees": [_tree_to_dict(t) for t in m.trees]}
    if isinstance(m, GaussianNBModel):
        return {
            "means": m.means.tolist(),
            "variances": m.variances.tolist(),
            "log_priors": m.log_priors.tolist(),
        }
    if isinstance(m, LinearSVMModel):
        return {"weights": m.weights.tolist()}
    if isinstance(m, LogisticRegressionModel):
        return {"weights": m.weights.tolist(), "loss_history": m.loss_history}
    if isinstance(m, KNNModel):
        return {"x_train": m.x_train.tolist(), "y_train": m.y_train.tolist(), "k": m.k}
    if isinstance(m, NeuralNetModel):
        return {
            "w1": m.w1.tolist(),
            "b1": m.b1.tolist(),
            "w2": m.w2.tolist(),
            "b2": m.b2.tolist(),
            "loss_history": m.loss_history,
        }
    raise ModelFormatError(f"cannot serialize model kind {m.kind!r}")


def save_model(m: TrainedModel, sink) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "kind": m.kind,
        "labels": list(m.labels),
        "spec": {
            "kind": m.spec.kind,
            "seed": m.spec.seed,
            "hyperparameters": dict(m.spec.hyperparameters),
        },
        "scaler": {"min": m.scaler.mins.tolist(), "max": m.scaler.maxs.tolist()},
        "fit_seconds": m.fit_seconds,
        "params": _params_payload(m),
    }
    text = json.dumps(doc, sort_keys=True)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    else:
        sink.write(text)


def load_model(source) -> TrainedModel:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFormatError(f"not a model file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ModelFormatError("not a model file: missing format marker")
    version = doc.get("version")
    if version != MODEL_VERSION:
        raise ModelVersionError(found=version, supported=MODEL_VERSION)
    try:
        return _rebuild(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"corrupt model payload: {exc}") from None


def _rebuild(doc: dict) -> TrainedModel:
    spec = ClassifierSpec(
        kind=doc["spec"]["kind"],
        seed=doc["spec"]["seed"],
        hyperparameters=doc["spec"]["hyperparameters"],
    )
    labels = tuple(doc["labels"])
    scaler = MinMaxScaler(
        mins=np.array(doc["scaler"]["min"], dtype=np.float64),
        maxs=np.array(doc["scaler"]["max"], dtype=np.float64),
    )
    params = doc["params"]
    kind = doc["kind"]
    if kind == "dt":
        model = DecisionTreeModel(spec, labels, scaler, _tree_from_dict(params["tree"]))
    elif kind == "rf":
        model = RandomForestModel(spec, labels, scaler, [_tree_from_dict(t) for t in params["trees"]])
    elif kind == "nb":
        model = GaussianNBModel(
            spec,
            labels,
            scaler,
            np.array(params["means"], dtype=np.float64),
            np.array(params["variances"], dtype=np.float64),
            np.array(params["log_priors"], dtype=np.float64),
        )
    elif kind == "svm":
        model = LinearSVMModel(spec, labels, scaler, np.array(params["weights"], dtype=np.float64))
    elif kind == "lr":
        model = LogisticRegressionModel(
            spec,
            labels,
            scaler,
            np.array(params["weights"], dtype=np.float64),
            list(params["loss_history"]),
        )
    elif kind == "knn":
        model = KNNModel(
            spec,
            labels,
            scaler,
            np.array(params["x_train"], dtype=np.float64),
            np.array(params["y_train"], dtype=np.int64),
            int(params["k"]),
        )
    elif kind == "nn":
        model = NeuralNetModel(
            spec,
            labels,
            scaler,
            np.array(params["w1"], dtype=np.float64),
            np.array(params["b1"], dtype=np.float64),
            np.array(params["w2"], dtype=np.float64),
            np.array(params["b2"], dtype=np.float64),
            list(params["loss_history"]),
        )
    else:
        raise ModelFormatError(f"unknown model kind {kind!r}")
    model.fit_seconds = float(doc.get("fit_seconds", 0.0))
    return model
