import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecgforge.annotations import Annotation, SYMBOL_CODES
from ecgforge.errors import EmptySignal
from ecgforge.qrs import (
    DetectorConfig,
    build_rr_series,
    detect_r_peaks,
    match_detections,
    r_peaks_from_annotations,
)

FS = 360


def triangle_train(n_pulses=8, period=360, width=21, start=720, amplitude=100.0):
    """Sharp symmetric triangular pulses; apices at start + k*period."""
    length = start + n_pulses * period + start
    x = np.zeros(length)
    half = width // 2
    shape = np.concatenate(
        [np.linspace(0, amplitude, half + 1), np.linspace(amplitude, 0, half + 1)[1:]]
    )
    for k in range(n_pulses):
        apex = start + k * period
        x[apex - half : apex + half + 1] = shape
    return x, [start + k * period for k in range(n_pulses)]


def test_flat_signal_has_no_detections():
    assert detect_r_peaks(np.full(5000, 3.0), FS).tolist() == []


def test_triangle_train_detected_at_apices():
    x, apices = triangle_train()
    assert detect_r_peaks(x, FS).tolist() == apices


def test_too_short_signal():
    with pytest.raises(EmptySignal):
        detect_r_peaks(np.zeros(4), FS, DetectorConfig(slope_window=8))


def test_scale_invariance_power_of_two():
    x, _ = triangle_train(amplitude=37.0)
    base = detect_r_peaks(x, FS).tolist()
    for alpha in (0.25, 0.5, 2.0, 8.0, 1024.0):
        assert detect_r_peaks(alpha * x, FS).tolist() == base


def test_shift_equivariance_with_edge_padding():
    x, _ = triangle_train()
    base = detect_r_peaks(x, FS)
    for k in (1, 7, 100, 333):
        shifted = np.concatenate([np.full(k, x[0]), x])
        moved = detect_r_peaks(shifted, FS)
        assert moved.tolist() == (base + k).tolist()


def test_refractory_spacing():
    x, _ = triangle_train(period=100)  # pulses closer than the refractory
    cfg = DetectorConfig()
    peaks = detect_r_peaks(x, FS, cfg)
    refractory = round(cfg.refractory_ms * FS / 1000.0)
    assert np.all(np.diff(peaks) >= refractory)


def test_detector_quality_on_synthetic_records(synthetic_records):
    records, _ = synthetic_records
    for record in records:
        detected = detect_r_peaks(record.channels[0], record.sampling_rate)
        reference = r_peaks_from_annotations(record.annotations)
        result = match_detections(detected, reference, 150.0, record.sampling_rate)
        assert result.sensitivity >= 0.95, record.name
        assert result.ppv >= 0.95, record.name


def ann(sample, symbol):
    return Annotation(sample_index=sample, code=SYMBOL_CODES[symbol], symbol=symbol)


def test_r_peaks_exclude_non_beats():
    annotations = [ann(1000, "N"), ann(1500, "+"), ann(1800, "V")]
    assert r_peaks_from_annotations(annotations).tolist() == [1000, 1800]


def test_r_peaks_empty():
    assert r_peaks_from_annotations([]).tolist() == []


def test_r_peaks_exclude_flutter_waves():
    annotations = [ann(100, "N"), ann(200, "!"), ann(300, "N")]
    assert r_peaks_from_annotations(annotations).tolist() == [100, 300]


def test_rr_series_successive_differences():
    series = build_rr_series(np.array([100, 400, 710]), FS)
    assert series.lengths.tolist() == [300, 310]
    assert series.interval_from.tolist() == [100, 400]
    assert series.interval_to.tolist() == [400, 710]
    assert series.sampling_rate == FS


def test_rr_series_single_peak_has_no_intervals():
    series = build_rr_series(np.array([5]), FS)
    assert series.n_intervals == 0


def test_rr_series_rejects_unordered_peaks():
    with pytest.raises(ValueError):
        build_rr_series(np.array([5, 5]), FS)


def test_interval_count_identity(synthetic_records):
    records, _ = synthetic_records
    total_beats = total_intervals = 0
    for record in records:
        peaks = r_peaks_from_annotations(record.annotations)
        total_beats += len(peaks)
        total_intervals += build_rr_series(peaks, FS).n_intervals
    assert total_intervals == total_beats - len(records)


def test_match_identity():
    peaks = np.array([10, 500, 900])
    result = match_detections(peaks, peaks, 150.0, FS)
    assert result.sensitivity == result.ppv == 1.0
    assert result.false_pos == result.false_neg == 0


def test_match_empty_detected_reports_zero_with_flag():
    result = match_detections(np.array([]), np.array([100, 200]), 150.0, FS)
    assert result.sensitivity == 0.0
    assert result.ppv == 0.0
    assert result.undefined


def test_match_hand_checked_instance():
    # tol 150 ms @ 360 Hz = 54 samples: only (100, 110) can pair
    result = match_detections(
        np.array([100, 500]), np.array([110, 900]), 150.0, FS
    )
    assert (result.true_pos, result.false_pos, result.false_neg) == (1, 1, 1)
    assert result.sensitivity == 0.5
    assert result.ppv == 0.5


def test_match_is_one_to_one():
    # two detections near one reference: only one may match
    result = match_detections(np.array([100, 104]), np.array([102]), 150.0, FS)
    assert result.true_pos == 1
    assert result.false_pos == 1


increasing_lists = st.lists(
    st.integers(min_value=0, max_value=20000), max_size=40
).map(lambda xs: sorted(set(xs)))


@settings(max_examples=200)
@given(increasing_lists, increasing_lists, st.integers(min_value=1, max_value=400))
def test_match_symmetry(a, b, tol_ms):
    left = match_detections(np.array(a), np.array(b), tol_ms, FS)
    right = match_detections(np.array(b), np.array(a), tol_ms, FS)
    assert left.true_pos == right.true_pos
    assert left.false_pos == right.false_neg
    assert left.false_neg == right.false_pos
    assert left.sensitivity == right.ppv
    assert left.ppv == right.sensitivity


@settings(max_examples=100)
@given(increasing_lists, increasing_lists, st.integers(min_value=1, max_value=400))
def test_match_pairs_within_tolerance(a, b, tol_ms):
    result = match_detections(np.array(a), np.array(b), tol_ms, FS)
    tol = tol_ms * FS / 1000.0
    assert len(result.pairs) == result.true_pos
    for d, r in result.pairs:
        assert abs(d - r) <= tol
