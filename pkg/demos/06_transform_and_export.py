"""Downsample, normalize, split, and round-trip the delivered dataset.

360 Hz beats are strided down by 3 to 120 Hz (450 -> 150 samples), each
beat's non-padded span is z-scored to zero mean and unit variance, and a
seeded stratified 80/20 split feeds the ECGB and CSV exporters.  The ECGB
import is bit-exact against the export.

Run:  python demos/06_transform_and_export.py [--data-dir DIR]
"""

import argparse
from pathlib import Path

import numpy as np

from ecgforge import (
    BuildConfig,
    SplitSpec,
    SyntheticConfig,
    build_dataset,
    datasets_equal,
    downsample_dataset,
    export_binary,
    export_csv,
    generate_archive,
    import_binary,
    list_records,
    load_record,
    split,
    zscore_dataset,
)

DEFAULT_DIR = Path("demo_output/archive")
OUT = Path("demo_output/export")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--data-dir", default=None)
    args = parser.parse_args()

    if args.data_dir is None:
        generate_archive(DEFAULT_DIR, SyntheticConfig(n_records=4, duration_s=150, seed=7))
        data_dir = DEFAULT_DIR
    else:
        data_dir = Path(args.data_dir)

    records = [load_record(data_dir, n) for n in list_records(data_dir)]
    raw = build_dataset(records, BuildConfig())
    print(f"built: {raw.n_beats} x {raw.beat_len} @ {raw.manifest.sampling_rate} Hz")

    down = downsample_dataset(raw, 3)
    print(f"downsampled: {down.n_beats} x {down.beat_len} @ "
          f"{down.manifest.sampling_rate} Hz")

    delivered = zscore_dataset(down)
    spans = []
    for i in range(min(delivered.n_beats, 200)):
        left, length = int(delivered.pad_left[i]), int(delivered.raw_length[i])
        spans.append(delivered.samples[i, left : left + length].astype(np.float64))
    mus = [abs(s.mean()) for s in spans]
    sigmas = [abs(s.std() - 1) for s in spans]
    print(f"z-score check over {len(spans)} beats: worst |mean| {max(mus):.2e}, "
          f"worst |sigma-1| {max(sigmas):.2e}")

    train, test = split(delivered, SplitSpec(train_fraction=0.8, seed=42))
    print(f"split: {train.n_beats} train / {test.n_beats} test "
          f"(train classes {train.class_counts()})")

    OUT.mkdir(parents=True, exist_ok=True)
    blob = export_binary(test)
    (OUT / "beats_test.ecgb").write_bytes(blob)
    (OUT / "beats_test.csv").write_text(export_csv(test))
    print(f"wrote {OUT}/beats_test.ecgb ({len(blob)} B) and beats_test.csv")

    back = import_binary(blob)
    print(f"ECGB round trip identical: {datasets_equal(test, back)}")


if __name__ == "__main__":
    main()
