import struct

import numpy as np
import pytest

from conftest import pack_ecgb
from ecgforge_classifier.ecgb import (
    FormatError,
    read_csv,
    read_ecgb_bytes,
)


def sample_arrays(n=4, beat_len=6, seed=0):
    rng = np.random.default_rng(seed)
    samples = rng.normal(0, 1, (n, beat_len)).astype(np.float32)
    labels = np.asarray([0, 2, 4, 1][:n], dtype=np.uint8)
    return samples, labels


def test_reads_hand_packed_container():
    samples, labels = sample_arrays()
    blob = pack_ecgb(samples, labels, "n_beats=4\nbeat_len=6\nnormalize=zscore\n")
    got_x, got_y, manifest = read_ecgb_bytes(blob)
    assert np.array_equal(got_x, samples)
    assert got_y.tolist() == labels.tolist()
    assert manifest["normalize"] == "zscore"
    assert manifest["n_beats"] == "4"


def test_rejects_bad_magic():
    samples, labels = sample_arrays()
    blob = b"NOPE" + pack_ecgb(samples, labels)[4:]
    with pytest.raises(FormatError):
        read_ecgb_bytes(blob)


def test_rejects_wrong_version():
    samples, labels = sample_arrays()
    blob = bytearray(pack_ecgb(samples, labels))
    struct.pack_into("<I", blob, 4, 3)
    with pytest.raises(FormatError):
        read_ecgb_bytes(bytes(blob))


def test_rejects_truncation():
    samples, labels = sample_arrays()
    blob = pack_ecgb(samples, labels)
    with pytest.raises(FormatError):
        read_ecgb_bytes(blob[: len(blob) // 2])


def test_rejects_out_of_range_label():
    samples, labels = sample_arrays()
    labels = labels.copy()
    labels[0] = 9
    with pytest.raises(FormatError):
        read_ecgb_bytes(pack_ecgb(samples, labels))


def test_empty_container():
    blob = pack_ecgb(np.empty((0, 8), dtype=np.float32), np.empty(0, dtype=np.uint8))
    samples, labels, _ = read_ecgb_bytes(blob)
    assert samples.shape == (0, 8)
    assert labels.shape == (0,)


def test_reads_csv(tmp_path):
    path = tmp_path / "beats.csv"
    path.write_text("s0,s1,s2,label\n0.5,-1,2.25,0\n1e-3,4,-0.125,3\n")
    samples, labels = read_csv(path)
    assert samples.shape == (2, 3)
    assert labels.tolist() == [0, 3]
    assert samples[0].tolist() == [0.5, -1.0, 2.25]


def test_csv_without_header(tmp_path):
    path = tmp_path / "beats.csv"
    path.write_text("1,2,3,4\n")
    samples, labels = read_csv(path)
    assert samples.tolist() == [[1.0, 2.0, 3.0]]
    assert labels.tolist() == [4]
