"""Test-set evaluation: row-normalized confusion matrix with supports,
accuracy, and per-class recall/precision/F1."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .ecgb import LABEL_NAMES, N_CLASSES


@dataclass
class EvalReport:
    confusion_counts: np.ndarray          # [actual, predicted] raw counts
    supports: np.ndarray                  # per actual class
    accuracy: float
    recall: np.ndarray
    precision: np.ndarray
    f1: np.ndarray
    epoch_seconds: float = 0.0
    batch_input_mb: float = 0.0

    @property
    def confusion_percent(self) -> np.ndarray:
        """Row-normalized percentages; rows with support sum to 100."""
        out = np.zeros_like(self.confusion_counts, dtype=np.float64)
        for i in range(N_CLASSES):
            if self.supports[i]:
                out[i] = self.confusion_counts[i] / self.supports[i] * 100.0
        return out

    def to_lines(self) -> list[str]:
        lines = [f"accuracy={self.accuracy * 100:.2f}"]
        percent = self.confusion_percent
        for i, name in enumerate(LABEL_NAMES):
            lines.append(
                f"class_{name}=recall:{self.recall[i] * 100:.2f},"
                f"precision:{self.precision[i] * 100:.2f},"
                f"f1:{self.f1[i] * 100:.2f},"
                f"support:{int(self.supports[i])},"
                f"diagonal:{percent[i, i]:.2f}"
            )
        if self.epoch_seconds:
            lines.append(f"seconds_per_epoch={self.epoch_seconds:.2f}")
        if self.batch_input_mb:
            lines.append(f"batch_input_mb={self.batch_input_mb:.3f}")
        return lines

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    def confusion_csv(self) -> str:
        """Header row + one row per actual class: percentages then support."""
        lines = ["actual," + ",".join(LABEL_NAMES) + ",support"]
        percent = self.confusion_percent
        for i, name in enumerate(LABEL_NAMES):
            cells = ",".join(f"{percent[i, j]:.2f}" for j in range(N_CLASSES))
            lines.append(f"{name},{cells},{int(self.supports[i])}")
        return "\n".join(lines) + "\n"


def report_from_predictions(labels: np.ndarray, predicted: np.ndarray) -> EvalReport:
    counts = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    for actual, pred in zip(labels, predicted):
        counts[actual, pred] += 1
    supports = counts.sum(axis=1)
    predicted_totals = counts.sum(axis=0)
    diagonal = np.diag(counts)

    with np.errstate(invalid="ignore", divide="ignore"):
        recall = np.where(supports > 0, diagonal / np.maximum(supports, 1), 0.0)
        precision = np.where(
            predicted_totals > 0, diagonal / np.maximum(predicted_totals, 1), 0.0
        )
        f1 = np.where(
            recall + precision > 0,
            2 * recall * precision / np.maximum(recall + precision, 1e-12),
            0.0,
        )
    accuracy = float(diagonal.sum() / max(len(labels), 1))
    return EvalReport(
        confusion_counts=counts,
        supports=supports,
        accuracy=accuracy,
        recall=recall,
        precision=precision,
        f1=f1,
    )


def predict(model, samples: np.ndarray, batch_size: int = 512,
            device: str = "cpu") -> np.ndarray:
    model.eval()
    out = []
    dev = torch.device(device)
    with torch.no_grad():
        for start in range(0, len(samples), batch_size):
            x = torch.from_numpy(samples[start : start + batch_size]).to(dev)
            out.append(model(x.unsqueeze(1)).argmax(-1).cpu().numpy())
    if not out:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(out)


def evaluate(model, samples: np.ndarray, labels: np.ndarray,
             batch_size: int = 512, device: str = "cpu") -> EvalReport:
    predicted = predict(model, samples, batch_size, device)
    return report_from_predictions(labels.astype(np.int64), predicted)
