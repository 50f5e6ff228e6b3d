"""Fixtures: toy beat sets with five separable waveform classes, plus a
hand-packed ECGB serializer (written from the documented layout, never via
the producing package, so reader tests are a true interface check)."""

import struct

import numpy as np
import pytest


def pack_ecgb(samples: np.ndarray, labels: np.ndarray, manifest: str = "") -> bytes:
    """Independent ECGB writer used only by tests."""
    n, beat_len = samples.shape
    blob = struct.pack("<4sIIII", b"ECGB", 1, n, beat_len, 5)
    blob += samples.astype("<f4").tobytes()
    blob += labels.astype(np.uint8).tobytes()
    text = manifest.encode("utf-8")
    return blob + struct.pack("<I", len(text)) + text


def toy_beats(n_per_class=40, length=150, seed=3):
    """Five cleanly separable waveform families, z-scored per beat."""
    rng = np.random.default_rng(seed)
    t = np.linspace(-1, 1, length)
    shapes = [
        np.exp(-0.5 * (t / 0.08) ** 2),
        np.exp(-0.5 * (t / 0.30) ** 2),
        np.sin(6 * np.pi * t) * np.exp(-0.5 * (t / 0.5) ** 2),
        -np.exp(-0.5 * ((t - 0.3) / 0.12) ** 2),
        np.exp(-0.5 * ((t + 0.4) / 0.05) ** 2)
        + 0.7 * np.exp(-0.5 * ((t - 0.2) / 0.2) ** 2),
    ]
    beats, labels = [], []
    for label, shape in enumerate(shapes):
        for _ in range(n_per_class):
            vec = rng.uniform(0.8, 1.2) * shape + rng.normal(0, 0.05, length)
            vec = (vec - vec.mean()) / vec.std()
            beats.append(vec.astype(np.float32))
            labels.append(label)
    beats = np.stack(beats)
    labels = np.asarray(labels, dtype=np.int64)
    order = rng.permutation(len(labels))
    return beats[order], labels[order]


@pytest.fixture(scope="session")
def toy_train_test():
    train_x, train_y = toy_beats(n_per_class=40, seed=3)
    test_x, test_y = toy_beats(n_per_class=10, seed=4)
    return (train_x, train_y), (test_x, test_y)
