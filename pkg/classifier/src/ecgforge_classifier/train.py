"""Training loop: categorical cross-entropy + Adam, batch size 512,
early stopping on validation loss (patience 10, 10% of train carved out).
Single-process and seed-deterministic on CPU."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from .data import BatchGenerator, carve_validation
from .model import HeartbeatResNet, ModelConfig, build_model


class EmptyDataset(ValueError):
    pass


class NonFiniteLoss(RuntimeError):
    pass


@dataclass
class TrainConfig:
    batch_size: int = 512
    epochs: int = 50
    learning_rate: float = 1e-3
    seed: int = 0
    val_fraction: float = 0.1
    patience: int = 10          # early stopping on validation loss
    device: str = "cpu"

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class EpochStats:
    epoch: int
    train_loss: float
    train_acc: float
    val_loss: float
    val_acc: float
    seconds: float


@dataclass
class History:
    epochs: list[EpochStats] = field(default_factory=list)
    best_epoch: int = -1
    batch_input_mb: float = 0.0

    @property
    def seconds_per_epoch(self) -> float:
        if not self.epochs:
            return 0.0
        return float(np.mean([e.seconds for e in self.epochs]))


def batch_input_megabytes(batch_size: int, beat_len: int) -> float:
    """Input-tensor footprint of one batch (float32)."""
    return batch_size * beat_len * 4 / 1e6


def _evaluate_loss(model, samples, labels, batch_size, device):
    criterion = nn.CrossEntropyLoss(reduction="sum")
    total_loss = 0.0
    correct = 0
    model.eval()
    with torch.no_grad():
        for start in range(0, len(labels), batch_size):
            x = torch.from_numpy(samples[start : start + batch_size]).to(device)
            y = torch.from_numpy(labels[start : start + batch_size]).to(device)
            logits = model.logits(x.unsqueeze(1))
            total_loss += float(criterion(logits, y))
            correct += int((logits.argmax(-1) == y).sum())
    n = max(len(labels), 1)
    return total_loss / n, correct / n


def train(
    model: HeartbeatResNet,
    train_samples: np.ndarray,
    train_labels: np.ndarray,
    cfg: TrainConfig | None = None,
) -> tuple[HeartbeatResNet, History]:
    """Returns the model restored to its best-validation-loss state plus
    the per-epoch history."""
    cfg = cfg or TrainConfig()
    if len(train_labels) == 0:
        raise EmptyDataset("training set is empty")

    torch.manual_seed(cfg.seed)
    device = torch.device(cfg.device)
    model = model.to(device)

    (fit_x, fit_y), (val_x, val_y) = carve_validation(
        train_samples, train_labels.astype(np.int64), cfg.val_fraction, cfg.seed
    )
    if len(fit_y) == 0:
        fit_x, fit_y = train_samples, train_labels.astype(np.int64)
        val_x = np.empty((0, train_samples.shape[1]), dtype=np.float32)
        val_y = np.empty(0, dtype=np.int64)

    batches = BatchGenerator(fit_x, fit_y, cfg.batch_size, cfg.seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    criterion = nn.CrossEntropyLoss()

    history = History(
        batch_input_mb=batch_input_megabytes(cfg.batch_size, train_samples.shape[1])
    )
    best_val = math.inf
    best_state = None
    stale = 0

    for epoch in range(cfg.epochs):
        started = time.perf_counter()
        model.train()
        running_loss = 0.0
        correct = 0
        seen = 0
        for batch_x, batch_y in batches.epoch(epoch):
            x = torch.from_numpy(batch_x).to(device).unsqueeze(1)
            y = torch.from_numpy(batch_y).to(device)
            optimizer.zero_grad()
            logits = model.logits(x)
            loss = criterion(logits, y)
            if not torch.isfinite(loss):
                raise NonFiniteLoss(
                    f"loss became {float(loss.detach())} at epoch {epoch}, step "
                    f"{seen // cfg.batch_size}; lr={cfg.learning_rate}, "
                    f"batch={cfg.batch_size}"
                )
            loss.backward()
            optimizer.step()
            running_loss += float(loss.detach()) * len(batch_y)
            correct += int((logits.argmax(-1) == y).sum())
            seen += len(batch_y)

        if len(val_y):
            val_loss, val_acc = _evaluate_loss(
                model, val_x, val_y, cfg.batch_size, device
            )
        else:
            val_loss, val_acc = running_loss / seen, correct / seen

        history.epochs.append(
            EpochStats(
                epoch=epoch,
                train_loss=running_loss / seen,
                train_acc=correct / seen,
                val_loss=val_loss,
                val_acc=val_acc,
                seconds=time.perf_counter() - started,
            )
        )

        if val_loss < best_val:
            best_val = val_loss
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
            history.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale > cfg.patience:
                break

    if best_state is not None:
        model.load_state_dict(best_state)
    return model, history


def train_new(
    train_samples, train_labels,
    model_cfg: ModelConfig | None = None,
    cfg: TrainConfig | None = None,
):
    """Seed, build, and train: weight initialization happens inside the
    seeded region, so identical seeds give identical runs."""
    cfg = cfg or TrainConfig()
    torch.manual_seed(cfg.seed)
    return train(build_model(model_cfg), train_samples, train_labels, cfg)
