"""Archive download over HTTPS.

Ingestion itself is fully offline; this helper exists so a networked
machine can populate the data directory once.  Re-running on a complete,
checksum-valid directory is a no-op.
"""

from __future__ import annotations

import urllib.error
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ChecksumMismatch, NetworkError
from .records import MITBIH_RECORD_NAMES, load_record, verify_checksums

DEFAULT_BASE_URL = "https://physionet.org/files/mitdb/1.0.0"
EXTENSIONS = (".hea", ".dat", ".atr")
MANUAL_HINT = (
    "place the 48 MIT-BIH .hea/.dat/.atr files in the data directory "
    "manually (they are distributed at physionet.org/content/mitdb/)"
)


@dataclass
class FetchReport:
    downloaded: list[str] = field(default_factory=list)
    up_to_date: list[str] = field(default_factory=list)


def record_is_valid(data_dir: Path, name: str) -> bool:
    """All three files present and every channel checksum passes."""
    if not all((data_dir / f"{name}{ext}").exists() for ext in EXTENSIONS):
        return False
    try:
        record = load_record(data_dir, name)
    except Exception:
        return False
    return all(c.ok for c in verify_checksums(record))


def _download(url: str, dest: Path, timeout: float) -> None:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            dest.write_bytes(response.read())
    except (urllib.error.URLError, OSError) as exc:
        raise NetworkError(
            f"could not download {url}: {exc}; {MANUAL_HINT}"
        ) from exc


def fetch_archive(
    data_dir: str | Path,
    base_url: str = DEFAULT_BASE_URL,
    record_names=MITBIH_RECORD_NAMES,
    timeout: float = 30.0,
) -> FetchReport:
    """Download any missing or invalid records; verify each downloaded
    record's header checksums and raise ChecksumMismatch naming the record
    on failure."""
    base = Path(data_dir)
    base.mkdir(parents=True, exist_ok=True)
    report = FetchReport()

    for name in record_names:
        if record_is_valid(base, name):
            report.up_to_date.append(name)
            continue
        for ext in EXTENSIONS:
            _download(f"{base_url.rstrip('/')}/{name}{ext}", base / f"{name}{ext}", timeout)
        try:
            record = load_record(base, name)
        except Exception as exc:
            raise ChecksumMismatch(f"record {name} failed to parse after download: {exc}")
        failures = [c for c in verify_checksums(record) if not c.ok]
        if failures:
            raise ChecksumMismatch(
                f"record {name} channel(s) "
                f"{[c.channel for c in failures]} failed checksum verification"
            )
        report.downloaded.append(name)
    return report
