"""Heartbeat construction: per-record IQR outlier removal on RR lengths,
10-second windowing, adaptive beat sizing by window-mean RR, QRS-centered
extraction, and centered zero-padding to the global heartbeat size.

Per-record builds are independent and deterministic; the dataset assembly
is an ordered merge by (record name, R index).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .annotations import BEAT_CODES
from .dataset import (
    ConservationRow,
    Dataset,
    DatasetManifest,
    OutlierCounts,
    OutlierReport,
)
from .errors import (
    BeatLongerThanGlobal,
    EmptyInput,
    RecordHasNoIntervals,
)
from .labels import BEAT_SYMBOL_CLASS, LABEL_TO_CODE, map_label  # noqa: F401
from .qrs import (
    DetectorConfig,
    RRSeries,
    build_rr_series,
    detect_r_peaks,
    match_detections,
    r_peaks_from_annotations,
)
from .records import AnnotatedRecord

WINDOW_SECONDS = 10


@dataclass
class OutlierFences:
    """Tukey fences at 1.5 IQR beyond the quartiles."""

    q1: float
    q3: float
    lower_fence: float = field(init=False)
    upper_fence: float = field(init=False)

    def __post_init__(self):
        iqr = self.q3 - self.q1
        self.lower_fence = self.q1 - 1.5 * iqr
        self.upper_fence = self.q3 + 1.5 * iqr


@dataclass
class Window:
    start: int
    end: int           # exclusive
    mean_rr: int | None = None


@dataclass
class BuildConfig:
    channel: int = 0
    detector: str = "annotations"       # or "slope"
    global_size: int = 450
    clip_oversize: bool = False
    match_tol_ms: float = 150.0         # slope mode: label-matching tolerance
    detector_config: DetectorConfig = field(default_factory=DetectorConfig)

    def canonical_text(self) -> str:
        d = self.detector_config
        return (
            f"channel={self.channel}\n"
            f"detector={self.detector}\n"
            f"global_size={self.global_size}\n"
            f"clip_oversize={self.clip_oversize}\n"
            f"match_tol_ms={self.match_tol_ms!r}\n"
            f"slope_window={d.slope_window}\n"
            f"threshold_fraction={d.threshold_fraction!r}\n"
            f"refractory_ms={d.refractory_ms!r}\n"
            f"search_back_ms={d.search_back_ms!r}\n"
        )

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:12]


def percentile(values, p: float) -> float:
    """Linear-interpolation percentile at sorted rank p/100 * (n-1)."""
    arr = np.sort(np.asarray(values, dtype=np.float64))
    if arr.size == 0:
        raise EmptyInput("percentile of an empty list")
    if not 0 <= p <= 100:
        raise ValueError(f"percentile must lie in [0, 100], got {p}")
    rank = p / 100.0 * (arr.size - 1)
    lo = int(np.floor(rank))
    frac = rank - lo
    if frac == 0.0:
        return float(arr[lo])
    return float(arr[lo] + frac * (arr[lo + 1] - arr[lo]))


def compute_fences(rr_lengths) -> OutlierFences:
    arr = np.asarray(rr_lengths, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("fences of an empty interval list")
    return OutlierFences(q1=percentile(arr, 25), q3=percentile(arr, 75))


def outlier_mask(lengths: np.ndarray, fences: OutlierFences) -> np.ndarray:
    """True where a length lies strictly outside the fences."""
    arr = np.asarray(lengths, dtype=np.float64)
    return (arr > fences.upper_fence) | (arr < fences.lower_fence)


def remove_outliers(
    series: RRSeries, fences: OutlierFences
) -> tuple[RRSeries, OutlierCounts]:
    """Drop intervals strictly outside the fences; peaks are kept.  The
    counts satisfy upper + lower + retained == original exactly."""
    mask = outlier_mask(series.lengths, fences)
    keep = ~mask
    filtered = RRSeries(
        r_peaks=series.r_peaks,
        interval_from=series.interval_from[keep],
        interval_to=series.interval_to[keep],
        lengths=series.lengths[keep],
        sampling_rate=series.sampling_rate,
    )
    counts = OutlierCounts(
        upper_removed=int(np.sum(series.lengths > fences.upper_fence)),
        lower_removed=int(np.sum(series.lengths < fences.lower_fence)),
        retained=int(keep.sum()),
    )
    return filtered, counts


def partition_windows(record_length: int, fs: int) -> list[Window]:
    """Consecutive 10-second spans; the final partial window is retained."""
    if record_length <= 0:
        raise ValueError("record_length must be positive")
    step = WINDOW_SECONDS * fs
    return [
        Window(start=s, end=min(s + step, record_length))
        for s in range(0, record_length, step)
    ]


def round_half_away(x: float) -> int:
    return int(np.sign(x) * np.floor(abs(x) + 0.5))


def window_mean_rr(window: Window, series: RRSeries) -> int:
    """Mean length of the series' intervals whose terminal R peak lies in
    [start, end), rounded half away from zero; falls back to the mean over
    all of the series' intervals when the window holds none."""
    if series.n_intervals == 0:
        raise RecordHasNoIntervals("record retains fewer than two R peaks")
    inside = (series.interval_to >= window.start) & (series.interval_to < window.end)
    pool = series.lengths[inside] if inside.any() else series.lengths
    return round_half_away(float(np.mean(pool)))


def extract_beat(channel: np.ndarray, r_index: int, size: int) -> np.ndarray:
    """Samples [r - size//2, r + ceil(size/2)); positions outside the
    record are zero-filled, so the R peak sits at index size//2."""
    if size < 1:
        raise ValueError("beat size must be >= 1")
    start = r_index - size // 2
    out = np.zeros(size, dtype=np.float32)
    lo = max(start, 0)
    hi = min(start + size, len(channel))
    if lo < hi:
        out[lo - start : hi - start] = channel[lo:hi]
    return out


def pad_center(raw: np.ndarray, global_size: int) -> np.ndarray:
    """Zero-pad so the raw segment's center sample (index len//2, where the
    R peak sits) lands exactly at index global_size//2."""
    raw = np.asarray(raw, dtype=np.float32)
    if len(raw) > global_size:
        raise BeatLongerThanGlobal(
            f"beat of {len(raw)} samples exceeds global size {global_size}"
        )
    left = global_size // 2 - len(raw) // 2
    out = np.zeros(global_size, dtype=np.float32)
    out[left : left + len(raw)] = raw
    return out


def pad_offset(raw_length: int, global_size: int) -> int:
    return global_size // 2 - raw_length // 2


def median_length_statistic(records) -> dict[str, float]:
    """Per-record median of the annotation-derived RR interval lengths."""
    out = {}
    for record in records:
        peaks = r_peaks_from_annotations(record.annotations)
        if len(peaks) < 2:
            continue
        out[record.name] = float(np.median(np.diff(peaks)))
    return out


@dataclass
class _RecordBeats:
    record: str
    r_index: np.ndarray
    labels: np.ndarray
    samples: np.ndarray
    raw_length: np.ndarray
    window_id: np.ndarray
    pad_left: np.ndarray
    conservation: ConservationRow
    outliers: OutlierCounts
    max_beat_size: int
    clipped: int


def _beat_positions(record: AnnotatedRecord, config: BuildConfig):
    """(r_index, label_code) pairs plus annotation accounting buckets."""
    annotations = record.annotations
    mapped = []
    unmapped = 0
    for ann in annotations:
        label = BEAT_SYMBOL_CLASS.get(ann.symbol)
        if label is not None:
            mapped.append((ann.sample_index, LABEL_TO_CODE[label]))
        elif ann.code in BEAT_CODES:
            unmapped += 1
    non_beat = len(annotations) - len(mapped)

    missed = 0
    unmatched = 0
    if config.detector == "slope":
        channel = record.channels[config.channel]
        detected = detect_r_peaks(
            channel, record.sampling_rate, config.detector_config
        )
        ref = np.asarray([s for s, _ in mapped], dtype=np.int64)
        result = match_detections(
            detected, ref, config.match_tol_ms, record.sampling_rate
        )
        ref_label = {s: code for s, code in mapped}
        pairs = {d: ref_label[r] for d, r in result.pairs}
        mapped = sorted(pairs.items())
        missed = result.false_neg
        unmatched = result.false_pos

    row = ConservationRow(
        total_annotations=len(annotations),
        non_beat_annotations=non_beat,
        unmapped_beats=unmapped,
        missed_annotations=missed,
        unmatched_detections=unmatched,
    )
    return mapped, row


def build_record_beats(record: AnnotatedRecord, config: BuildConfig) -> _RecordBeats:
    """Run the full per-record pipeline; raises RecordHasNoIntervals or
    BeatLongerThanGlobal (the caller turns those into skip-list entries)."""
    mapped, row = _beat_positions(record, config)
    channel = record.channels[config.channel].astype(np.float32)
    fs = record.sampling_rate

    empty = _RecordBeats(
        record=record.name,
        r_index=np.empty(0, dtype=np.int64),
        labels=np.empty(0, dtype=np.uint8),
        samples=np.empty((0, config.global_size), dtype=np.float32),
        raw_length=np.empty(0, dtype=np.int32),
        window_id=np.empty(0, dtype=np.int32),
        pad_left=np.empty(0, dtype=np.int32),
        conservation=row,
        outliers=OutlierCounts(),
        max_beat_size=0,
        clipped=0,
    )
    if len(mapped) == 0:
        return empty
    if len(mapped) == 1:
        row.edge_skips = 1
        return empty

    peaks = np.asarray([s for s, _ in mapped], dtype=np.int64)
    codes = np.asarray([c for _, c in mapped], dtype=np.uint8)
    if not np.all(np.diff(peaks) > 0):
        keep = np.concatenate([[True], np.diff(peaks) > 0])
        row.non_beat_annotations += int((~keep).sum())  # duplicate loci
        peaks, codes = peaks[keep], codes[keep]
        if len(peaks) == 1:
            row.edge_skips = 1
            return empty

    series = build_rr_series(peaks, fs)
    fences = compute_fences(series.lengths)
    filtered, counts = remove_outliers(series, fences)
    if filtered.n_intervals == 0:
        raise RecordHasNoIntervals(
            f"{record.name}: every RR interval fell outside the fences"
        )

    # A beat's characteristic interval starts at its R peak; the final beat
    # uses its preceding interval.
    mask = outlier_mask(series.lengths, fences)
    dropped = np.concatenate([mask, [mask[-1]]])
    row.beats_dropped_as_outliers = int(dropped.sum())

    step = WINDOW_SECONDS * fs
    n_windows = (record.header.n_samples + step - 1) // step
    record_mean = float(np.mean(filtered.lengths))
    sums = np.zeros(n_windows, dtype=np.float64)
    hits = np.zeros(n_windows, dtype=np.int64)
    np.add.at(sums, filtered.interval_to // step, filtered.lengths)
    np.add.at(hits, filtered.interval_to // step, 1)
    means = np.where(hits > 0, sums / np.maximum(hits, 1), record_mean)
    sizes = np.array([round_half_away(m) for m in means], dtype=np.int64)

    keep_idx = np.flatnonzero(~dropped)
    n_keep = len(keep_idx)
    samples = np.zeros((n_keep, config.global_size), dtype=np.float32)
    raw_len = np.empty(n_keep, dtype=np.int32)
    window_id = np.empty(n_keep, dtype=np.int32)
    pad_left = np.empty(n_keep, dtype=np.int32)
    clipped = 0
    max_size = int(sizes.max(initial=0))

    for out_i, k in enumerate(keep_idx):
        r = int(peaks[k])
        w = min(r // step, n_windows - 1)
        size = int(sizes[w])
        raw = extract_beat(channel, r, size)
        if size > config.global_size:
            if not config.clip_oversize:
                raise BeatLongerThanGlobal(
                    f"{record.name}: window beat size {size} exceeds global "
                    f"size {config.global_size} (use clip_oversize to truncate)"
                )
            off = size // 2 - config.global_size // 2
            raw = raw[off : off + config.global_size]
            size = config.global_size
            clipped += 1
        samples[out_i] = pad_center(raw, config.global_size)
        raw_len[out_i] = size
        window_id[out_i] = w
        pad_left[out_i] = pad_offset(size, config.global_size)

    row.beats_emitted = n_keep
    return _RecordBeats(
        record=record.name,
        r_index=peaks[keep_idx],
        labels=codes[keep_idx],
        samples=samples,
        raw_length=raw_len,
        window_id=window_id,
        pad_left=pad_left,
        conservation=row,
        outliers=counts,
        max_beat_size=max_size,
        clipped=clipped,
    )


def build_dataset(records, config: BuildConfig | None = None) -> Dataset:
    """Assemble the heartbeat dataset from parsed records.

    Per-record failures are collected in manifest.skipped_records rather
    than aborting the build; output order is (record name, r_index).
    """
    config = config or BuildConfig()
    parts: list[_RecordBeats] = []
    skipped: dict[str, str] = {}
    fs = 360

    for record in sorted(records, key=lambda r: r.name):
        fs = record.sampling_rate
        try:
            parts.append(build_record_beats(record, config))
        except (RecordHasNoIntervals, BeatLongerThanGlobal) as exc:
            skipped[record.name] = str(exc)

    manifest = DatasetManifest(
        global_size=config.global_size,
        sampling_rate=fs,
        beat_len=config.global_size,
        channel=config.channel,
        detector=config.detector,
        config_hash=config.config_hash(),
        skipped_records=skipped,
        outliers=OutlierReport(
            per_record={p.record: p.outliers for p in parts}
        ),
        conservation={p.record: p.conservation for p in parts},
        clipped_beats=sum(p.clipped for p in parts),
        max_beat_size=max((p.max_beat_size for p in parts), default=0),
    )

    if not parts:
        dataset = Dataset(
            samples=np.empty((0, config.global_size), dtype=np.float32),
            labels=np.empty(0, dtype=np.uint8),
            manifest=manifest,
            record=np.empty(0, dtype="<U8"),
            r_index=np.empty(0, dtype=np.int64),
            raw_length=np.empty(0, dtype=np.int32),
            window_id=np.empty(0, dtype=np.int32),
            pad_left=np.empty(0, dtype=np.int32),
        )
        manifest.n_beats = 0
        manifest.class_counts = dataset.class_counts()
        return dataset

    dataset = Dataset(
        samples=np.concatenate([p.samples for p in parts]),
        labels=np.concatenate([p.labels for p in parts]),
        manifest=manifest,
        record=np.concatenate(
            [np.full(len(p.labels), p.record, dtype="<U8") for p in parts]
        ),
        r_index=np.concatenate([p.r_index for p in parts]),
        raw_length=np.concatenate([p.raw_length for p in parts]),
        window_id=np.concatenate([p.window_id for p in parts]),
        pad_left=np.concatenate([p.pad_left for p in parts]),
    )
    manifest.n_beats = dataset.n_beats
    manifest.class_counts = dataset.class_counts()
    return dataset
