"""Readers for the ecgforge export formats.

Implemented from the documented wire layouts only (this package never
imports ecgforge).  ECGB: "ECGB" magic, u32 version/n_beats/beat_len/
n_classes, float32 LE samples row-major, uint8 labels, u32-length-prefixed
UTF-8 manifest of key=value lines.  CSV: beat_len float columns then an
integer label per row, optional header.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"ECGB"
N_CLASSES = 5
LABEL_NAMES = ("N", "S", "V", "F", "Q")
_HEADER = struct.Struct("<4sIIII")


class FormatError(ValueError):
    """Byte stream does not follow the documented container layout."""


def read_ecgb_bytes(data: bytes) -> tuple[np.ndarray, np.ndarray, dict[str, str]]:
    """-> (samples [n, beat_len] float32, labels [n] int64, manifest dict)"""
    if len(data) < _HEADER.size:
        raise FormatError("shorter than the fixed header")
    magic, version, n_beats, beat_len, n_classes = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != 1:
        raise FormatError(f"unsupported version {version}")
    if n_classes != N_CLASSES:
        raise FormatError(f"expected {N_CLASSES} classes, container has {n_classes}")

    pos = _HEADER.size
    n_floats = n_beats * beat_len
    if len(data) < pos + 4 * n_floats + n_beats + 4:
        raise FormatError("payload shorter than the declared counts")
    samples = (
        np.frombuffer(data, dtype="<f4", count=n_floats, offset=pos)
        .reshape(n_beats, beat_len)
        .astype(np.float32)
    )
    pos += 4 * n_floats
    labels = np.frombuffer(data, dtype=np.uint8, count=n_beats, offset=pos).astype(
        np.int64
    )
    pos += n_beats
    if labels.size and labels.max() >= N_CLASSES:
        raise FormatError(f"label {labels.max()} out of range")

    (manifest_len,) = struct.unpack_from("<I", data, pos)
    pos += 4
    if len(data) < pos + manifest_len:
        raise FormatError("manifest block truncated")
    manifest: dict[str, str] = {}
    for line in data[pos : pos + manifest_len].decode("utf-8").splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            manifest[key] = value
    return samples, labels, manifest


def read_ecgb(path: str | Path) -> tuple[np.ndarray, np.ndarray, dict[str, str]]:
    return read_ecgb_bytes(Path(path).read_bytes())


def read_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """-> (samples float32, labels int64); tolerates the optional header."""
    rows = []
    labels = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if cells[-1] == "label":  # header row
                continue
            rows.append([float(c) for c in cells[:-1]])
            labels.append(int(cells[-1]))
    if not rows:
        return np.empty((0, 0), dtype=np.float32), np.empty(0, dtype=np.int64)
    return np.asarray(rows, dtype=np.float32), np.asarray(labels, dtype=np.int64)


def load_dataset(path: str | Path) -> tuple[np.ndarray, np.ndarray, dict[str, str]]:
    """Load .ecgb or .csv by extension."""
    path = Path(path)
    if path.suffix == ".csv":
        samples, labels = read_csv(path)
        return samples, labels, {}
    return read_ecgb(path)
