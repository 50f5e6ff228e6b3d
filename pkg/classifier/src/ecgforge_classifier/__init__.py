"""Evaluation harness for ecgforge heartbeat exports: a 1-D residual
network (269,061 trainable parameters), a seed-deterministic training
loop, and confusion-matrix reporting."""

from .ablation import AblationResult, ablation_downsampling
from .data import BatchGenerator, carve_validation
from .ecgb import LABEL_NAMES, load_dataset, read_csv, read_ecgb, read_ecgb_bytes
from .evaluate import EvalReport, evaluate, predict, report_from_predictions
from .model import (
    ConfigMismatch,
    HeartbeatResNet,
    ModelConfig,
    Swish,
    analytic_param_count,
    build_model,
    count_params,
)
from .train import EmptyDataset, History, NonFiniteLoss, TrainConfig, train, train_new

__version__ = "0.1.0"

__all__ = [
    "AblationResult",
    "BatchGenerator",
    "ConfigMismatch",
    "EmptyDataset",
    "EvalReport",
    "HeartbeatResNet",
    "History",
    "LABEL_NAMES",
    "ModelConfig",
    "NonFiniteLoss",
    "Swish",
    "TrainConfig",
    "ablation_downsampling",
    "analytic_param_count",
    "build_model",
    "carve_validation",
    "count_params",
    "evaluate",
    "load_dataset",
    "predict",
    "read_csv",
    "read_ecgb",
    "read_ecgb_bytes",
    "report_from_predictions",
    "train",
    "train_new",
]
