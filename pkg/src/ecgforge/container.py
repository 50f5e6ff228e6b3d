"""Dataset serialization: the ECGB binary container and CSV export.

ECGB layout (all integers little-endian u32):

    magic "ECGB" | version | n_beats | beat_len | n_classes
    n_beats * beat_len  float32 samples, row-major
    n_beats             uint8 labels (N=0, S=1, V=2, F=3, Q=4)
    u32 byte length | manifest as UTF-8 key=value lines

The container carries samples, labels, and the manifest; per-beat
provenance columns are build-time metadata and are not serialized.
"""

from __future__ import annotations

import struct

import numpy as np

from .dataset import Dataset, DatasetManifest
from .errors import BadMagic, CountMismatch, TruncatedContainer
from .labels import LABEL_ORDER

MAGIC = b"ECGB"
VERSION = 1
N_CLASSES = len(LABEL_ORDER)
_HEADER = struct.Struct("<4sIIII")


def export_binary(ds: Dataset) -> bytes:
    manifest_text = ds.manifest.to_text().encode("utf-8")
    samples = np.ascontiguousarray(ds.samples, dtype="<f4")
    labels = np.ascontiguousarray(ds.labels, dtype=np.uint8)
    if len(labels) != len(samples):
        raise CountMismatch("label count differs from sample row count")
    parts = [
        _HEADER.pack(MAGIC, VERSION, ds.n_beats, ds.beat_len, N_CLASSES),
        samples.tobytes(),
        labels.tobytes(),
        struct.pack("<I", len(manifest_text)),
        manifest_text,
    ]
    return b"".join(parts)


def import_binary(data: bytes) -> Dataset:
    """Inverse of export_binary.  The returned Dataset has provenance
    columns set to None (the wire format does not carry them)."""
    if len(data) < _HEADER.size:
        raise TruncatedContainer(f"{len(data)} bytes is shorter than the header")
    magic, version, n_beats, beat_len, n_classes = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadMagic(f"unsupported container version {version}")
    if n_classes != N_CLASSES:
        raise CountMismatch(f"container declares {n_classes} classes, expected {N_CLASSES}")

    pos = _HEADER.size
    sample_bytes = n_beats * beat_len * 4
    if len(data) < pos + sample_bytes + n_beats + 4:
        raise TruncatedContainer("payload shorter than the declared counts")
    samples = np.frombuffer(
        data, dtype="<f4", count=n_beats * beat_len, offset=pos
    ).reshape(n_beats, beat_len).copy()
    pos += sample_bytes
    labels = np.frombuffer(data, dtype=np.uint8, count=n_beats, offset=pos).copy()
    pos += n_beats
    if labels.size and labels.max() >= N_CLASSES:
        raise CountMismatch(f"label byte {labels.max()} out of range")

    (manifest_len,) = struct.unpack_from("<I", data, pos)
    pos += 4
    if len(data) < pos + manifest_len:
        raise TruncatedContainer("manifest block truncated")
    manifest = DatasetManifest.from_text(
        data[pos : pos + manifest_len].decode("utf-8")
    )
    if manifest.n_beats != n_beats or manifest.beat_len != beat_len:
        raise CountMismatch(
            "manifest counts disagree with the container header "
            f"({manifest.n_beats}x{manifest.beat_len} vs {n_beats}x{beat_len})"
        )
    return Dataset(samples=samples, labels=labels, manifest=manifest)


def export_csv(ds: Dataset, header: bool = False) -> str:
    """One row per beat: beat_len sample columns then the integer label.
    %.9g keeps float32 values exact on re-parse."""
    lines = []
    if header:
        lines.append(
            ",".join(f"s{i}" for i in range(ds.beat_len)) + ",label"
        )
    for i in range(ds.n_beats):
        row = ",".join(f"{float(v):.9g}" for v in ds.samples[i])
        lines.append(f"{row},{int(ds.labels[i])}" if ds.beat_len else str(int(ds.labels[i])))
    return "\n".join(lines) + "\n" if lines else ""
