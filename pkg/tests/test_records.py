import numpy as np
import pytest

from ecgforge.dat212 import encode_format212
from ecgforge.errors import EcgforgeError, TruncatedFile
from ecgforge.header import RecordHeader, SignalSpec
from ecgforge.records import (
    AnnotatedRecord,
    compute_checksum,
    list_records,
    load_record,
    resolve_data_dir,
    verify_checksums,
)


def make_record(samples, checksum):
    header = RecordHeader(
        record_name="t",
        n_signals=1,
        sampling_rate=360,
        n_samples=len(samples),
        signals=[SignalSpec(file_name="t.dat", format_code=212, checksum=checksum)],
    )
    return AnnotatedRecord(
        header=header,
        channels=np.asarray([samples], dtype=np.int16),
        annotations=[],
    )


def test_checksum_pass():
    report = verify_checksums(make_record([1, 2, 3], checksum=6))
    assert [c.ok for c in report] == [True]
    assert report[0].computed == 6


def test_checksum_failure_is_reported_not_raised():
    record = make_record([1, 2, 3], checksum=7)
    report = verify_checksums(record)
    assert [c.ok for c in report] == [False]
    assert record.channels.shape == (1, 3)  # record stays usable


def test_checksum_wraps_to_signed_16_bit():
    samples = [2047] * 40
    expected = (2047 * 40) & 0xFFFF
    expected = expected - 0x10000 if expected >= 0x8000 else expected
    assert compute_checksum(np.asarray(samples, dtype=np.int16)) == expected


def test_load_synthetic_archive(synthetic_records):
    records, truths = synthetic_records
    assert len(records) == len(truths)
    for record in records:
        truth = truths[record.name]
        assert record.channels.shape == (2, record.header.n_samples)
        assert record.header.n_samples == truth.n_samples
        assert all(c.ok for c in verify_checksums(record))
        assert len(record.annotations) == truth.n_beats + truth.non_beat_annotations
        # 12-bit decode range
        assert int(np.abs(record.channels).max()) < 2048


def test_annotation_times_nondecreasing(synthetic_records):
    records, _ = synthetic_records
    for record in records:
        times = [a.sample_index for a in record.annotations]
        assert times == sorted(times)


def test_list_records(synthetic_archive):
    path, truths = synthetic_archive
    assert list_records(path) == sorted(truths)


def test_list_records_requires_all_three_files(tmp_path):
    (tmp_path / "900.hea").write_text("900 1 360 10\n900.dat 212\n")
    assert list_records(tmp_path) == []


def test_truncated_dat(tmp_path):
    (tmp_path / "900.hea").write_text("900 1 360 100\n900.dat 212 200 11 0 0 0 0 x\n")
    (tmp_path / "900.dat").write_bytes(b"\x00" * 10)
    (tmp_path / "900.atr").write_bytes(b"\x00\x00")
    with pytest.raises(TruncatedFile):
        load_record(tmp_path, "900")


def test_resolve_data_dir(monkeypatch, tmp_path):
    assert resolve_data_dir(tmp_path) == tmp_path
    monkeypatch.setenv("ECGFORGE_DATA", str(tmp_path))
    assert resolve_data_dir(None) == tmp_path
    monkeypatch.delenv("ECGFORGE_DATA")
    with pytest.raises(EcgforgeError):
        resolve_data_dir(None)


def test_initial_value_matches_first_sample(synthetic_records):
    records, _ = synthetic_records
    for record in records:
        for ch, spec in enumerate(record.header.signals):
            assert record.channels[ch, 0] == spec.initial_value


def test_per_signal_dat_files(tmp_path):
    # Signals split across two .dat files decode into the right channels.
    a = np.array([[10, 20, 30]], dtype=np.int16)
    b = np.array([[-5, -6, -7]], dtype=np.int16)
    (tmp_path / "900.hea").write_text(
        "900 2 360 3\n"
        f"a.dat 212 200 11 0 {a[0,0]} {compute_checksum(a[0])} 0 A\n"
        f"b.dat 212 200 11 0 {b[0,0]} {compute_checksum(b[0])} 0 B\n"
    )
    (tmp_path / "a.dat").write_bytes(encode_format212(a))
    (tmp_path / "b.dat").write_bytes(encode_format212(b))
    (tmp_path / "900.atr").write_bytes(b"\x00\x00")
    record = load_record(tmp_path, "900")
    assert record.channels.tolist() == [[10, 20, 30], [-5, -6, -7]]
    assert all(c.ok for c in verify_checksums(record))
