"""Dataset container, manifest, and accounting types.

A Dataset is stored struct-of-arrays (one float32 sample matrix plus
parallel per-beat columns) with Beat as a lightweight per-item view.  The
manifest serializes to stable key=value lines; that text is embedded in
ECGB containers and is the unit of manifest equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .labels import CODE_TO_LABEL, LABEL_ORDER, LABEL_TO_CODE


@dataclass
class OutlierCounts:
    upper_removed: int = 0
    lower_removed: int = 0
    retained: int = 0

    @property
    def original(self) -> int:
        return self.upper_removed + self.lower_removed + self.retained


@dataclass
class OutlierReport:
    per_record: dict[str, OutlierCounts] = field(default_factory=dict)

    @property
    def upper_removed(self) -> int:
        return sum(c.upper_removed for c in self.per_record.values())

    @property
    def lower_removed(self) -> int:
        return sum(c.lower_removed for c in self.per_record.values())

    @property
    def retained(self) -> int:
        return sum(c.retained for c in self.per_record.values())


@dataclass
class ConservationRow:
    """Per-record accounting: every annotation lands in exactly one bucket."""

    total_annotations: int = 0
    beats_emitted: int = 0
    beats_dropped_as_outliers: int = 0
    non_beat_annotations: int = 0   # includes unmapped beat codes
    unmapped_beats: int = 0         # the unmapped share of non_beat_annotations
    edge_skips: int = 0
    missed_annotations: int = 0     # detector mode only
    unmatched_detections: int = 0   # detector mode only (not annotations)

    def balances(self) -> bool:
        return (
            self.beats_emitted
            + self.beats_dropped_as_outliers
            + self.non_beat_annotations
            + self.edge_skips
            + self.missed_annotations
            == self.total_annotations
        )


@dataclass
class DatasetManifest:
    global_size: int = 450
    sampling_rate: int = 360
    beat_len: int = 450
    n_beats: int = 0
    class_counts: dict[str, int] = field(default_factory=dict)
    channel: int = 0
    detector: str = "annotations"
    downsample_factor: int = 1
    normalize: str = "none"
    zero_variance_beats: int = 0
    clipped_beats: int = 0
    max_beat_size: int = 0
    config_hash: str = ""
    split_seed: int | None = None
    train_fraction: float | None = None
    split_part: str | None = None
    stratified: bool | None = None
    outliers: OutlierReport = field(default_factory=OutlierReport)
    conservation: dict[str, ConservationRow] = field(default_factory=dict)
    skipped_records: dict[str, str] = field(default_factory=dict)

    def to_lines(self) -> list[str]:
        lines = [
            f"n_beats={self.n_beats}",
            f"beat_len={self.beat_len}",
            f"global_size={self.global_size}",
            f"sampling_rate={self.sampling_rate}",
            f"channel={self.channel}",
            f"detector={self.detector}",
            f"downsample_factor={self.downsample_factor}",
            f"normalize={self.normalize}",
        ]
        for label in LABEL_ORDER:
            lines.append(f"class_count_{label}={self.class_counts.get(label, 0)}")
        lines += [
            f"zero_variance_beats={self.zero_variance_beats}",
            f"clipped_beats={self.clipped_beats}",
            f"max_beat_size={self.max_beat_size}",
            f"outlier_upper_removed={self.outliers.upper_removed}",
            f"outlier_lower_removed={self.outliers.lower_removed}",
            f"outlier_retained={self.outliers.retained}",
            f"config_hash={self.config_hash}",
        ]
        if self.split_seed is not None:
            lines.append(f"split_seed={self.split_seed}")
        if self.train_fraction is not None:
            lines.append(f"train_fraction={self.train_fraction!r}")
        if self.split_part is not None:
            lines.append(f"split_part={self.split_part}")
        if self.stratified is not None:
            lines.append(f"stratified={'true' if self.stratified else 'false'}")
        for name in sorted(self.conservation):
            row = self.conservation[name]
            out = self.outliers.per_record.get(name, OutlierCounts())
            lines.append(
                f"record_{name}="
                f"total:{row.total_annotations},"
                f"emitted:{row.beats_emitted},"
                f"outlier_dropped:{row.beats_dropped_as_outliers},"
                f"non_beat:{row.non_beat_annotations},"
                f"unmapped:{row.unmapped_beats},"
                f"edge_skips:{row.edge_skips},"
                f"missed:{row.missed_annotations},"
                f"unmatched:{row.unmatched_detections},"
                f"upper:{out.upper_removed},"
                f"lower:{out.lower_removed},"
                f"retained:{out.retained}"
            )
        for name in sorted(self.skipped_records):
            lines.append(f"skipped_{name}={self.skipped_records[name]}")
        return lines

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DatasetManifest":
        manifest = cls()
        manifest.class_counts = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or "=" not in line:
                continue
            key, value = line.split("=", 1)
            if key.startswith("class_count_"):
                manifest.class_counts[key.removeprefix("class_count_")] = int(value)
            elif key.startswith("record_"):
                name = key.removeprefix("record_")
                fields = dict(
                    item.split(":", 1) for item in value.split(",") if ":" in item
                )
                manifest.conservation[name] = ConservationRow(
                    total_annotations=int(fields.get("total", 0)),
                    beats_emitted=int(fields.get("emitted", 0)),
                    beats_dropped_as_outliers=int(fields.get("outlier_dropped", 0)),
                    non_beat_annotations=int(fields.get("non_beat", 0)),
                    unmapped_beats=int(fields.get("unmapped", 0)),
                    edge_skips=int(fields.get("edge_skips", 0)),
                    missed_annotations=int(fields.get("missed", 0)),
                    unmatched_detections=int(fields.get("unmatched", 0)),
                )
                manifest.outliers.per_record[name] = OutlierCounts(
                    upper_removed=int(fields.get("upper", 0)),
                    lower_removed=int(fields.get("lower", 0)),
                    retained=int(fields.get("retained", 0)),
                )
            elif key.startswith("skipped_"):
                manifest.skipped_records[key.removeprefix("skipped_")] = value
            elif key == "n_beats":
                manifest.n_beats = int(value)
            elif key == "beat_len":
                manifest.beat_len = int(value)
            elif key == "global_size":
                manifest.global_size = int(value)
            elif key == "sampling_rate":
                manifest.sampling_rate = int(value)
            elif key == "channel":
                manifest.channel = int(value)
            elif key == "detector":
                manifest.detector = value
            elif key == "downsample_factor":
                manifest.downsample_factor = int(value)
            elif key == "normalize":
                manifest.normalize = value
            elif key == "zero_variance_beats":
                manifest.zero_variance_beats = int(value)
            elif key == "clipped_beats":
                manifest.clipped_beats = int(value)
            elif key == "max_beat_size":
                manifest.max_beat_size = int(value)
            elif key.startswith("outlier_"):
                pass  # totals are derived from the per-record rows
            elif key == "config_hash":
                manifest.config_hash = value
            elif key == "split_seed":
                manifest.split_seed = int(value)
            elif key == "train_fraction":
                manifest.train_fraction = float(value)
            elif key == "split_part":
                manifest.split_part = value
            elif key == "stratified":
                manifest.stratified = value == "true"
        return manifest


@dataclass
class Beat:
    """Single-beat view; samples has manifest.beat_len entries with the
    QRS-centered raw span and exact zeros outside it (pre-normalization)."""

    samples: np.ndarray
    label: str
    record: str | None = None
    r_index: int | None = None
    raw_length: int | None = None
    window_id: int | None = None
    pad_left: int | None = None


@dataclass
class Dataset:
    samples: np.ndarray                 # (n_beats, beat_len) float32
    labels: np.ndarray                  # (n_beats,) uint8 class codes
    manifest: DatasetManifest
    record: np.ndarray | None = None    # (n_beats,) unicode
    r_index: np.ndarray | None = None   # (n_beats,) int64
    raw_length: np.ndarray | None = None  # (n_beats,) int32, pre-padding
    window_id: np.ndarray | None = None   # (n_beats,) int32
    pad_left: np.ndarray | None = None    # (n_beats,) int32, raw span offset

    @property
    def n_beats(self) -> int:
        return len(self.labels)

    @property
    def beat_len(self) -> int:
        return self.samples.shape[1] if self.samples.ndim == 2 else 0

    def class_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(LABEL_ORDER, 0)
        values, freq = np.unique(self.labels, return_counts=True)
        for code, n in zip(values, freq):
            counts[CODE_TO_LABEL[int(code)]] = int(n)
        return counts

    def beat(self, i: int) -> Beat:
        def col(arr):
            return arr[i] if arr is not None else None

        return Beat(
            samples=self.samples[i],
            label=CODE_TO_LABEL[int(self.labels[i])],
            record=str(self.record[i]) if self.record is not None else None,
            r_index=int(self.r_index[i]) if self.r_index is not None else None,
            raw_length=int(col(self.raw_length)) if self.raw_length is not None else None,
            window_id=int(col(self.window_id)) if self.window_id is not None else None,
            pad_left=int(col(self.pad_left)) if self.pad_left is not None else None,
        )

    def subset(self, indices: np.ndarray, manifest: DatasetManifest) -> "Dataset":
        def take(arr):
            return arr[indices] if arr is not None else None

        return Dataset(
            samples=self.samples[indices],
            labels=self.labels[indices],
            manifest=manifest,
            record=take(self.record),
            r_index=take(self.r_index),
            raw_length=take(self.raw_length),
            window_id=take(self.window_id),
            pad_left=take(self.pad_left),
        )


def datasets_equal(a: Dataset, b: Dataset) -> bool:
    """Equality on the container-carried fields (samples bitwise, labels,
    manifest text); per-beat provenance is not part of the wire format."""
    return (
        a.samples.shape == b.samples.shape
        and a.samples.dtype == b.samples.dtype
        and np.array_equal(
            a.samples.view(np.uint32), b.samples.view(np.uint32)
        )
        and np.array_equal(a.labels, b.labels)
        and a.manifest.to_text() == b.manifest.to_text()
    )


def label_codes(labels: list[str]) -> np.ndarray:
    return np.asarray([LABEL_TO_CODE[l] for l in labels], dtype=np.uint8)
