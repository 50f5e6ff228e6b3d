"""Raw-vs-downsampled ablation: accuracy, seconds per epoch, and
input-memory per batch for two exports of the same build."""

from __future__ import annotations

from dataclasses import dataclass

from .evaluate import EvalReport, evaluate
from .model import ModelConfig
from .train import TrainConfig, train_new


@dataclass
class AblationRow:
    name: str
    accuracy: float
    seconds_per_epoch: float
    batch_input_mb: float
    beat_len: int


@dataclass
class AblationResult:
    raw: AblationRow
    downsampled: AblationRow

    @property
    def speedup_percent(self) -> float:
        if self.raw.seconds_per_epoch == 0:
            return 0.0
        return (
            (self.raw.seconds_per_epoch - self.downsampled.seconds_per_epoch)
            / self.raw.seconds_per_epoch * 100.0
        )

    @property
    def memory_ratio(self) -> float:
        if self.downsampled.batch_input_mb == 0:
            return 0.0
        return self.raw.batch_input_mb / self.downsampled.batch_input_mb

    @property
    def accuracy_delta(self) -> float:
        return self.downsampled.accuracy - self.raw.accuracy

    def to_text(self) -> str:
        lines = ["variant,accuracy,seconds_per_epoch,batch_input_mb,beat_len"]
        for row in (self.raw, self.downsampled):
            lines.append(
                f"{row.name},{row.accuracy * 100:.2f},{row.seconds_per_epoch:.2f},"
                f"{row.batch_input_mb:.3f},{row.beat_len}"
            )
        lines.append(f"speedup_percent={self.speedup_percent:.1f}")
        lines.append(f"memory_ratio={self.memory_ratio:.2f}")
        lines.append(f"accuracy_delta_points={self.accuracy_delta * 100:.2f}")
        return "\n".join(lines) + "\n"


def _run(name, train_xy, test_xy, model_cfg, train_cfg) -> tuple[AblationRow, EvalReport]:
    (train_x, train_y), (test_x, test_y) = train_xy, test_xy
    model, history = train_new(train_x, train_y, model_cfg, train_cfg)
    report = evaluate(model, test_x, test_y, train_cfg.batch_size, train_cfg.device)
    report.epoch_seconds = history.seconds_per_epoch
    report.batch_input_mb = history.batch_input_mb
    row = AblationRow(
        name=name,
        accuracy=report.accuracy,
        seconds_per_epoch=history.seconds_per_epoch,
        batch_input_mb=history.batch_input_mb,
        beat_len=train_x.shape[1],
    )
    return row, report


def ablation_downsampling(
    raw_train_xy, raw_test_xy, down_train_xy, down_test_xy,
    model_cfg: ModelConfig | None = None,
    train_cfg: TrainConfig | None = None,
) -> AblationResult:
    train_cfg = train_cfg or TrainConfig()
    raw_row, _ = _run("raw", raw_train_xy, raw_test_xy, model_cfg, train_cfg)
    down_row, _ = _run("downsampled", down_train_xy, down_test_xy, model_cfg, train_cfg)
    return AblationResult(raw=raw_row, downsampled=down_row)
