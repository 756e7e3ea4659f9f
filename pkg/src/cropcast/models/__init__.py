from .base import (
    ClassifierSpec,
    RankedPrediction,
    TrainedModel,
    default_specs,
    fit,
    predict,
    predict_topk,
)
from .benchmark import BenchmarkReport, benchmark_suite, format_table
from .metrics import EvalReport, evaluate
from .store import load_model, save_model

__all__ = [
    "ClassifierSpec",
    "RankedPrediction",
    "TrainedModel",
    "EvalReport",
    "BenchmarkReport",
    "default_specs",
    "fit",
    "predict",
    "predict_topk",
    "evaluate",
    "benchmark_suite",
    "format_table",
    "save_model",
    "load_model",
]
