"""Shared fixtures: a seeded synthetic archive (always available) and the
real MIT-BIH archive (used when ECGFORGE_DATA points at a complete copy,
skipped otherwise)."""

import os
from pathlib import Path

import pytest

from ecgforge import SyntheticConfig, generate_archive, load_record
from ecgforge.records import MITBIH_RECORD_NAMES

SYNTHETIC_SEED = 20230901

MITBIH_SKIP = (
    "MIT-BIH archive not available: set ECGFORGE_DATA to a directory with "
    "the 48 records (run `ecgforge fetch --data-dir DIR` on a networked "
    "machine, or copy the .hea/.dat/.atr files from physionet.org/content/mitdb/)"
)


@pytest.fixture(scope="session")
def synthetic_archive(tmp_path_factory):
    """(path, ground truth) for a 4-record seeded synthetic archive."""
    path = tmp_path_factory.mktemp("synth_archive")
    truths = generate_archive(
        path, SyntheticConfig(n_records=4, duration_s=150.0, seed=SYNTHETIC_SEED)
    )
    return path, truths


@pytest.fixture(scope="session")
def synthetic_records(synthetic_archive):
    path, truths = synthetic_archive
    return [load_record(path, name) for name in sorted(truths)], truths


def mitbih_dir() -> Path | None:
    env = os.environ.get("ECGFORGE_DATA")
    if not env:
        return None
    base = Path(env)
    for name in MITBIH_RECORD_NAMES:
        for ext in (".hea", ".dat", ".atr"):
            if not (base / f"{name}{ext}").exists():
                return None
    return base


@pytest.fixture(scope="session")
def mitbih_archive() -> Path:
    base = mitbih_dir()
    if base is None:
        pytest.skip(MITBIH_SKIP)
    return base


@pytest.fixture(scope="session")
def mitbih_records(mitbih_archive):
    return [load_record(mitbih_archive, name) for name in MITBIH_RECORD_NAMES]
