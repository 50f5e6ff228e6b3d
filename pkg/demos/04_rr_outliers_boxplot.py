"""RR interval outlier analysis: quartiles, Tukey fences, and a box plot.

Per recording, intervals strictly outside [Q1 - 1.5 IQR, Q3 + 1.5 IQR] are
outliers: the long ones are pauses, the short ones ADC glitches.  The demo
prints per-record fences and removal counts, flags records whose median RR
exceeds 260 samples, and writes the pooled distribution as an SVG box plot
with whiskers drawn at the fences.

Run:  python demos/04_rr_outliers_boxplot.py [--data-dir DIR]
"""

import argparse
from pathlib import Path

import numpy as np

from ecgforge import (
    SyntheticConfig,
    build_rr_series,
    compute_fences,
    generate_archive,
    list_records,
    load_record,
    median_length_statistic,
    r_peaks_from_annotations,
    remove_outliers,
    rr_boxplot_svg,
)

DEFAULT_DIR = Path("demo_output/archive")
SVG_OUT = Path("demo_output/rr_boxplot.svg")


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
    pooled = []
    for record in records:
        peaks = r_peaks_from_annotations(record.annotations)
        series = build_rr_series(peaks, record.sampling_rate)
        if not series.n_intervals:
            continue
        pooled.append(series.lengths)
        fences = compute_fences(series.lengths)
        filtered, counts = remove_outliers(series, fences)
        print(
            f"record {record.name}: {series.n_intervals} intervals | "
            f"Q1 {fences.q1:.1f} Q3 {fences.q3:.1f} "
            f"fences [{fences.lower_fence:.1f}, {fences.upper_fence:.1f}] | "
            f"removed {counts.upper_removed} upper + {counts.lower_removed} lower, "
            f"retained {counts.retained}"
        )

    medians = median_length_statistic(records)
    above = sorted(n for n, m in medians.items() if m > 260)
    print(f"\nrecords with median RR > 260 samples: {', '.join(above) or 'none'}")

    lengths = np.concatenate(pooled)
    SVG_OUT.parent.mkdir(parents=True, exist_ok=True)
    SVG_OUT.write_text(rr_boxplot_svg(lengths))
    print(f"pooled box plot ({len(lengths)} intervals) -> {SVG_OUT}")


if __name__ == "__main__":
    main()
