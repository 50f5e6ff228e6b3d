"""Downsampling, z-score normalization, and deterministic splitting.

Pipeline order is extract -> pad -> downsample -> zscore: normalizing last
guarantees unit variance in the delivered vectors.  All per-beat transforms
preserve the padded zeros exactly (plain striding; normalization touches
only the raw span).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import ClassTooSmall, ZeroFactor
from .labels import LABEL_ORDER

SPLIT_SEED_DEFAULT = 42


@dataclass
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = SPLIT_SEED_DEFAULT
    stratified: bool = True

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise ValueError("train_fraction must lie in (0, 1)")


def downsample(beat: np.ndarray, factor: int, anti_alias: bool = False) -> np.ndarray:
    """Keep indices 0, factor, 2*factor, ...; output length ceil(len/factor).

    With anti_alias, a zero-phase moving average of width `factor` runs
    first (this blurs the pad boundary, so it is opt-in).
    """
    if factor < 1:
        raise ZeroFactor(f"downsampling factor must be >= 1, got {factor}")
    beat = np.asarray(beat)
    if factor == 1 and not anti_alias:
        return beat.copy()
    if anti_alias and factor > 1:
        kernel = np.full(factor, 1.0 / factor)
        beat = np.convolve(beat.astype(np.float64), kernel, mode="same")
    return beat[::factor].astype(np.float32, copy=True)


def span_after_downsample(pad_left: int, raw_length: int, factor: int) -> tuple[int, int]:
    """New (pad_left, raw_length) of a beat's raw span after striding: kept
    source positions are the multiples of factor inside the old span."""
    new_left = -(-pad_left // factor)  # ceil
    new_end = -(-(pad_left + raw_length) // factor)
    return new_left, max(new_end - new_left, 0)


def downsample_dataset(ds: Dataset, factor: int, anti_alias: bool = False) -> Dataset:
    if factor < 1:
        raise ZeroFactor(f"downsampling factor must be >= 1, got {factor}")
    if anti_alias and factor > 1:
        kernel = np.full(factor, 1.0 / factor)
        smoothed = np.apply_along_axis(
            lambda row: np.convolve(row, kernel, mode="same"), 1,
            ds.samples.astype(np.float64),
        )
        samples = np.ascontiguousarray(smoothed[:, ::factor]).astype(np.float32)
    else:
        samples = np.ascontiguousarray(ds.samples[:, ::factor]).astype(np.float32)

    manifest = copy.deepcopy(ds.manifest)
    manifest.downsample_factor = ds.manifest.downsample_factor * factor
    manifest.sampling_rate = max(ds.manifest.sampling_rate // factor, 1)
    manifest.beat_len = samples.shape[1]

    pad_left = raw_length = None
    if ds.pad_left is not None and ds.raw_length is not None:
        new_left = -(-ds.pad_left // factor)
        new_end = -(-(ds.pad_left + ds.raw_length) // factor)
        pad_left = new_left.astype(np.int32)
        raw_length = np.maximum(new_end - new_left, 0).astype(np.int32)

    return Dataset(
        samples=samples,
        labels=ds.labels.copy(),
        manifest=manifest,
        record=None if ds.record is None else ds.record.copy(),
        r_index=None if ds.r_index is None else ds.r_index.copy(),
        raw_length=raw_length,
        window_id=None if ds.window_id is None else ds.window_id.copy(),
        pad_left=pad_left,
    )


def zscore_span(samples: np.ndarray, pad_left: int, raw_length: int) -> tuple[np.ndarray, bool]:
    """Z-score the raw span in float64 with population sigma; padded
    positions stay exactly zero.  Returns (vector, zero_variance_flag); a
    constant span yields an all-zero vector."""
    out = np.zeros_like(samples, dtype=np.float32)
    span = samples[pad_left : pad_left + raw_length].astype(np.float64)
    if raw_length < 2:
        return out, True
    mu = span.mean()
    sigma = span.std()  # population
    if sigma == 0.0:
        return out, True
    out[pad_left : pad_left + raw_length] = ((span - mu) / sigma).astype(np.float32)
    return out, False


def zscore_dataset(ds: Dataset) -> Dataset:
    """Per-beat z-score over the non-padded span.  Requires the span
    bookkeeping columns (present on built datasets, absent after ECGB
    import)."""
    if ds.pad_left is None or ds.raw_length is None:
        raise ValueError("dataset lacks raw-span columns; z-score the built dataset")
    samples = np.zeros_like(ds.samples, dtype=np.float32)
    flagged = 0
    for i in range(ds.n_beats):
        samples[i], zero_var = zscore_span(
            ds.samples[i], int(ds.pad_left[i]), int(ds.raw_length[i])
        )
        flagged += zero_var

    manifest = copy.deepcopy(ds.manifest)
    manifest.normalize = "zscore"
    manifest.zero_variance_beats = ds.manifest.zero_variance_beats + flagged
    return Dataset(
        samples=samples,
        labels=ds.labels.copy(),
        manifest=manifest,
        record=None if ds.record is None else ds.record.copy(),
        r_index=None if ds.r_index is None else ds.r_index.copy(),
        raw_length=ds.raw_length.copy(),
        window_id=None if ds.window_id is None else ds.window_id.copy(),
        pad_left=ds.pad_left.copy(),
    )


def _train_counts(labels: np.ndarray, codes: list[int], fraction: float) -> dict[int, int]:
    """Per-class train sizes: floor(f*n_c) per class, then seats by largest
    fractional remainder until the train total reaches floor(f*N)."""
    totals = {c: int(np.sum(labels == c)) for c in codes}
    target = int(np.floor(fraction * len(labels)))
    counts = {c: int(np.floor(fraction * n)) for c, n in totals.items()}
    remainder = sorted(
        codes,
        key=lambda c: (fraction * totals[c] - counts[c], totals[c], -c),
        reverse=True,
    )
    i = 0
    while sum(counts.values()) < target and i < len(remainder) * 2:
        c = remainder[i % len(remainder)]
        if counts[c] < totals[c]:
            counts[c] += 1
        i += 1
    return counts


def split(ds: Dataset, spec: SplitSpec | None = None) -> tuple[Dataset, Dataset]:
    """Seeded shuffle into disjoint, exhaustive train/test parts;
    stratified per class by default."""
    spec = spec or SplitSpec()
    if ds.n_beats == 0:
        raise ValueError("cannot split an empty dataset")
    rng = np.random.default_rng(spec.seed)

    if spec.stratified:
        present = [c for c in range(len(LABEL_ORDER)) if np.any(ds.labels == c)]
        for c in present:
            if int(np.sum(ds.labels == c)) < 2:
                raise ClassTooSmall(
                    f"class {LABEL_ORDER[c]} has fewer than 2 beats; "
                    "disable stratification to split anyway"
                )
        counts = _train_counts(ds.labels, present, spec.train_fraction)
        train_idx = []
        test_idx = []
        for c in present:
            members = np.flatnonzero(ds.labels == c)
            order = rng.permutation(len(members))
            shuffled = members[order]
            train_idx.append(shuffled[: counts[c]])
            test_idx.append(shuffled[counts[c] :])
        train_indices = np.sort(np.concatenate(train_idx))
        test_indices = np.sort(np.concatenate(test_idx))
    else:
        order = rng.permutation(ds.n_beats)
        n_train = int(np.floor(spec.train_fraction * ds.n_beats))
        train_indices = np.sort(order[:n_train])
        test_indices = np.sort(order[n_train:])

    def part_manifest(part: str, indices: np.ndarray):
        m = copy.deepcopy(ds.manifest)
        m.split_seed = spec.seed
        m.train_fraction = spec.train_fraction
        m.split_part = part
        m.stratified = spec.stratified
        m.n_beats = len(indices)
        return m

    train = ds.subset(train_indices, part_manifest("train", train_indices))
    test = ds.subset(test_indices, part_manifest("test", test_indices))
    train.manifest.class_counts = train.class_counts()
    test.manifest.class_counts = test.class_counts()
    return train, test
