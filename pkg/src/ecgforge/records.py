"""Record-level loading: header + signal + annotations from a data directory.

Pure functions over immutable inputs; distinct records can be parsed
concurrently without shared state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .annotations import Annotation, parse_annotations
from .dat212 import decode_format212
from .errors import EcgforgeError
from .header import RecordHeader, parse_header

DATA_DIR_ENV = "ECGFORGE_DATA"

# The 48 MIT-BIH arrhythmia recordings.
MITBIH_RECORD_NAMES = (
    "100", "101", "102", "103", "104", "105", "106", "107", "108", "109",
    "111", "112", "113", "114", "115", "116", "117", "118", "119",
    "121", "122", "123", "124",
    "200", "201", "202", "203", "205", "207", "208", "209", "210",
    "212", "213", "214", "215", "217", "219",
    "220", "221", "222", "223", "228",
    "230", "231", "232", "233", "234",
)


@dataclass
class ChannelChecksum:
    channel: int
    expected: int | None
    computed: int
    ok: bool


@dataclass
class AnnotatedRecord:
    header: RecordHeader
    channels: np.ndarray  # [n_signals x n_samples], int16 ADC units
    annotations: list[Annotation]

    @property
    def name(self) -> str:
        return self.header.record_name

    @property
    def sampling_rate(self) -> int:
        return self.header.sampling_rate


def resolve_data_dir(data_dir: str | Path | None = None) -> Path:
    """Explicit argument wins, then the ECGFORGE_DATA environment variable."""
    if data_dir is not None:
        return Path(data_dir)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    raise EcgforgeError(
        f"no data directory: pass --data-dir or set {DATA_DIR_ENV}"
    )


def list_records(data_dir: str | Path) -> list[str]:
    """Record names with all three of .hea/.dat/.atr present, sorted."""
    base = Path(data_dir)
    names = []
    for hea in sorted(base.glob("*.hea")):
        name = hea.stem
        if (base / f"{name}.dat").exists() and (base / f"{name}.atr").exists():
            names.append(name)
    return names


def signed16(value: int) -> int:
    value &= 0xFFFF
    return value - 0x10000 if value >= 0x8000 else value


def compute_checksum(samples: np.ndarray) -> int:
    return signed16(int(np.sum(samples, dtype=np.int64)))


def verify_checksums(record: AnnotatedRecord) -> list[ChannelChecksum]:
    """Per-channel signed 16-bit sample sums vs. the header checksums.

    A failure is report-carried, never raised: a record with a bad checksum
    stays usable for salvage.
    """
    report = []
    for ch, spec in enumerate(record.header.signals):
        computed = compute_checksum(record.channels[ch])
        ok = spec.checksum is None or computed == spec.checksum
        report.append(
            ChannelChecksum(
                channel=ch, expected=spec.checksum, computed=computed, ok=ok
            )
        )
    return report


def load_record(data_dir: str | Path, name: str) -> AnnotatedRecord:
    """Parse {name}.hea/.dat/.atr under data_dir into an AnnotatedRecord."""
    base = Path(data_dir)
    if not (base / f"{name}.hea").exists():
        raise EcgforgeError(f"record {name} not found under {base}")
    header = parse_header((base / f"{name}.hea").read_text())

    # MIT-BIH keeps both signals in one .dat; handle the general grouped
    # layout so records with per-signal files still decode correctly.
    channels = np.empty((header.n_signals, header.n_samples), dtype=np.int16)
    by_file: dict[str, list[int]] = {}
    for idx, spec in enumerate(header.signals):
        by_file.setdefault(spec.file_name, []).append(idx)
    for file_name, indices in by_file.items():
        data = (base / file_name).read_bytes()
        decoded = decode_format212(data, header.n_samples, len(indices))
        for row, idx in enumerate(indices):
            channels[idx] = decoded[row]

    annotations = parse_annotations((base / f"{name}.atr").read_bytes())
    for prev, cur in zip(annotations, annotations[1:]):
        if cur.sample_index < prev.sample_index:
            raise EcgforgeError(
                f"{name}: annotation times decrease at sample {cur.sample_index}"
            )
    return AnnotatedRecord(header=header, channels=channels, annotations=annotations)
