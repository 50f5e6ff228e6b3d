"""Seed-deterministic batch generation (no augmentation)."""

from __future__ import annotations

import numpy as np


class BatchGenerator:
    """Yields (samples, labels) minibatches in a per-epoch seeded order.

    The permutation for epoch e depends only on (seed, e), so runs with
    identical seeds see identical batch streams.
    """

    def __init__(self, samples: np.ndarray, labels: np.ndarray,
                 batch_size: int, seed: int):
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        self.samples = samples
        self.labels = labels
        self.batch_size = batch_size
        self.seed = seed

    def __len__(self):
        return (len(self.labels) + self.batch_size - 1) // self.batch_size

    def epoch(self, epoch_index: int):
        rng = np.random.default_rng((self.seed, epoch_index))
        order = rng.permutation(len(self.labels))
        for start in range(0, len(order), self.batch_size):
            idx = order[start : start + self.batch_size]
            yield self.samples[idx], self.labels[idx]


_VALIDATION_STREAM = 0x5A11D  # fixed sub-stream tag, distinct from epoch indices

def carve_validation(samples, labels, fraction: float, seed: int):
    """Seeded shuffle split of the training pool into (train, validation)."""
    rng = np.random.default_rng((seed, _VALIDATION_STREAM))
    order = rng.permutation(len(labels))
    n_val = int(round(fraction * len(labels)))
    val_idx = np.sort(order[:n_val])
    train_idx = np.sort(order[n_val:])
    return (
        (samples[train_idx], labels[train_idx]),
        (samples[val_idx], labels[val_idx]),
    )
