"""R-peak location and RR-interval series.

Two sources of beat loci: the cardiologist annotations (the default for
dataset building, since labels come from the same stream) and a
slope-sensitive detector validated against them with a time-tolerance
matcher.

Detector design: the slope at n is the sum of successive differences over a
short window, which telescopes to x[n] - x[n-W] (edge-clamped).  A crossing
fires when |slope| exceeds a fraction of an exponentially decaying running
maximum (half-life 2 s), making detection invariant under positive scaling
of the input.  The R peak is localized as the extremum of |x - median| over
a search window around the crossing, with the median taken over that same
window so that shifting the input (edge-padded) shifts detections exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .annotations import Annotation
from .errors import EmptySignal
from .labels import BEAT_SYMBOL_CLASS


@dataclass
class DetectorConfig:
    slope_window: int = 8          # samples
    threshold_fraction: float = 0.45
    refractory_ms: float = 200.0
    search_back_ms: float = 100.0
    noise_floor_fraction: float = 0.15  # of the record's max slope

    def __post_init__(self):
        if not 0 < self.threshold_fraction < 1:
            raise ValueError("threshold_fraction must lie in (0, 1)")
        if self.refractory_ms <= 0:
            raise ValueError("refractory must be positive")
        if not 0 <= self.noise_floor_fraction < 1:
            raise ValueError("noise_floor_fraction must lie in [0, 1)")


@dataclass
class RRSeries:
    """Ordered R peaks plus explicit intervals.

    Fresh series from build_rr_series have one interval per successive peak
    pair; outlier filtering keeps the peaks but drops intervals, so the
    count identity holds only for unfiltered series.
    """

    r_peaks: np.ndarray            # int64, strictly increasing
    interval_from: np.ndarray      # int64 sample index of the starting peak
    interval_to: np.ndarray        # int64 sample index of the ending peak
    lengths: np.ndarray            # int64, == interval_to - interval_from
    sampling_rate: int

    @property
    def n_intervals(self) -> int:
        return len(self.lengths)


@dataclass
class MatchResult:
    true_pos: int
    false_pos: int
    false_neg: int
    sensitivity: float
    ppv: float
    undefined: bool = False        # a rate had a zero denominator
    pairs: list[tuple[int, int]] = field(default_factory=list)


def _decayed_running_max(values: np.ndarray, decay: float) -> np.ndarray:
    """m[n] = max(values[n], decay * m[n-1]), vectorized in blocks."""
    out = np.empty_like(values)
    carry = 0.0
    block = 2048
    powers = decay ** np.arange(block, dtype=np.float64)
    inv_powers = decay ** -np.arange(block, dtype=np.float64)
    for start in range(0, len(values), block):
        chunk = values[start : start + block]
        k = len(chunk)
        scaled = np.maximum(chunk * inv_powers[:k], carry * decay)
        running = np.maximum.accumulate(scaled)
        out[start : start + k] = running * powers[:k]
        carry = out[start + k - 1]
    return out


def detect_r_peaks(
    channel: np.ndarray, fs: int, cfg: DetectorConfig | None = None
) -> np.ndarray:
    """Slope-threshold QRS detection; returns strictly increasing sample
    indices with pairwise gaps of at least the refractory period."""
    cfg = cfg or DetectorConfig()
    x = np.asarray(channel, dtype=np.float64)
    if x.size == 0 or x.size <= cfg.slope_window:
        raise EmptySignal(
            f"signal of {x.size} samples is too short for slope window "
            f"{cfg.slope_window}"
        )
    if fs <= 0:
        raise ValueError("sampling rate must be positive")

    w = cfg.slope_window
    shifted = np.concatenate([np.full(w, x[0]), x[:-w]])  # x[n-w], edge-clamped
    slope = np.abs(x - shifted)

    decay = 0.5 ** (1.0 / (2.0 * fs))  # running max halves every 2 s
    running_max = _decayed_running_max(slope, decay)
    # The noise floor keeps quiet stretches (record lead-in, long pauses)
    # from crossing against a fully decayed maximum; it scales with the
    # record's own peak slope, so scale/shift invariance is untouched.
    floor = cfg.noise_floor_fraction * float(slope.max())
    crossing = slope > cfg.threshold_fraction * np.maximum(running_max, floor)

    refractory = max(1, round(cfg.refractory_ms * fs / 1000.0))
    search = max(1, round(cfg.search_back_ms * fs / 1000.0))

    peaks: list[int] = []
    last = -refractory
    for n in np.flatnonzero(crossing):
        if n < last + refractory:
            continue
        lo = max(0, n - search)
        hi = min(len(x), n + search + 1)
        window = x[lo:hi]
        centered = np.abs(window - np.median(window))
        peak = lo + int(np.argmax(centered))
        if peak >= last + refractory:
            peaks.append(peak)
            last = peak
    return np.asarray(peaks, dtype=np.int64)


def r_peaks_from_annotations(annotations: list[Annotation]) -> np.ndarray:
    """Sample indices of the beat annotations (those carrying one of the
    five class labels), in stream order; rhythm changes and other non-beat
    codes are excluded."""
    return np.asarray(
        [a.sample_index for a in annotations if a.symbol in BEAT_SYMBOL_CLASS],
        dtype=np.int64,
    )


def build_rr_series(r_peaks: np.ndarray, fs: int) -> RRSeries:
    """Successive differences of strictly increasing peaks; fewer than two
    peaks yields an empty interval list, not an error."""
    peaks = np.asarray(r_peaks, dtype=np.int64)
    if len(peaks) > 1 and not np.all(np.diff(peaks) > 0):
        raise ValueError("r_peaks must be strictly increasing")
    return RRSeries(
        r_peaks=peaks,
        interval_from=peaks[:-1].copy(),
        interval_to=peaks[1:].copy(),
        lengths=np.diff(peaks),
        sampling_rate=fs,
    )


def match_detections(
    detected: np.ndarray, reference: np.ndarray, tol_ms: float, fs: int
) -> MatchResult:
    """Greedy one-to-one matching of detections to reference peaks within a
    time tolerance; the pair order is symmetric in the two lists, so
    swapping them swaps FP and FN exactly."""
    det = np.asarray(detected, dtype=np.int64)
    ref = np.asarray(reference, dtype=np.int64)
    tol = tol_ms * fs / 1000.0

    candidates = []
    j_lo = 0
    for i, d in enumerate(det):
        while j_lo < len(ref) and ref[j_lo] < d - tol:
            j_lo += 1
        j = j_lo
        while j < len(ref) and ref[j] <= d + tol:
            dist = abs(int(d) - int(ref[j]))
            candidates.append((dist, i + j, min(i, j), i, j))
            j += 1
    candidates.sort()

    det_used = np.zeros(len(det), dtype=bool)
    ref_used = np.zeros(len(ref), dtype=bool)
    pairs = []
    for _, _, _, i, j in candidates:
        if not det_used[i] and not ref_used[j]:
            det_used[i] = True
            ref_used[j] = True
            pairs.append((int(det[i]), int(ref[j])))

    tp = len(pairs)
    fp = len(det) - tp
    fn = len(ref) - tp
    undefined = (tp + fn) == 0 or (tp + fp) == 0
    sensitivity = tp / (tp + fn) if (tp + fn) else 0.0
    ppv = tp / (tp + fp) if (tp + fp) else 0.0
    return MatchResult(
        true_pos=tp,
        false_pos=fp,
        false_neg=fn,
        sensitivity=sensitivity,
        ppv=ppv,
        undefined=undefined,
        pairs=sorted(pairs),
    )
