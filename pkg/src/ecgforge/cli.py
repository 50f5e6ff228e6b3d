"""ecgforge command line: fetch, qrs, stats, build, export.

Every option is reachable from flags or from a TOML config file
(--config); flags win.  Exit codes: 0 success, 1 usage error, 2 data
error, 3 acceptance-check failure (--check).  Reports are key=value lines
ordered by record name so runs diff cleanly.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .beats import BuildConfig, build_dataset, compute_fences, outlier_mask
from .container import export_binary, export_csv
from .dataset import Dataset
from .errors import EcgforgeError, ZeroFactor
from .fetch import DEFAULT_BASE_URL, fetch_archive
from .labels import BEAT_SYMBOL_CLASS, LABEL_ORDER
from .qrs import (
    DetectorConfig,
    build_rr_series,
    detect_r_peaks,
    match_detections,
    r_peaks_from_annotations,
)
from .records import MITBIH_RECORD_NAMES, list_records, load_record, resolve_data_dir
from .svgplot import rr_boxplot_svg
from .transform import SplitSpec, downsample_dataset, split, zscore_dataset

PUBLISHED_CLASS_COUNTS = {"N": 90631, "S": 2781, "V": 7236, "F": 803, "Q": 8043}
PUBLISHED_TOTAL = 109494

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CHECK = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _setting(args, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in cfg:
        return cfg[key]
    return default


def _records(data_dir: Path, names=None):
    names = names or list_records(data_dir)
    if not names:
        raise EcgforgeError(f"no records found under {data_dir}")
    return [load_record(data_dir, name) for name in names]


def _build_config(args, cfg: dict) -> BuildConfig:
    return BuildConfig(
        channel=int(_setting(args, cfg, "channel", 0)),
        detector=str(_setting(args, cfg, "detector", "annotations")),
        global_size=int(_setting(args, cfg, "global_size", 450)),
        clip_oversize=bool(_setting(args, cfg, "clip_oversize", False)),
    )


def _split_spec(args, cfg: dict) -> SplitSpec:
    section = cfg.get("split", {})
    fraction = getattr(args, "split", None)
    if fraction is None:
        fraction = section.get("fraction", 0.8)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = section.get("seed", 42)
    stratified = section.get("stratified", True)
    if getattr(args, "no_stratify", False):
        stratified = False
    return SplitSpec(train_fraction=float(fraction), seed=int(seed), stratified=stratified)


def _transform(dataset: Dataset, factor: int, normalize: str) -> Dataset:
    if factor < 1:
        raise ZeroFactor(f"downsampling factor must be >= 1, got {factor}")
    if factor > 1:
        dataset = downsample_dataset(dataset, factor)
    if normalize == "zscore":
        dataset = zscore_dataset(dataset)
    elif normalize != "none":
        raise EcgforgeError(f"unknown normalize mode {normalize!r}")
    return dataset


# --- commands ---------------------------------------------------------------

def cmd_fetch(args) -> int:
    cfg = _load_config_file(args.config)
    data_dir = resolve_data_dir(_setting(args, cfg, "data_dir", None))
    names = args.records.split(",") if args.records else None
    report = fetch_archive(
        data_dir,
        base_url=args.base_url or DEFAULT_BASE_URL,
        record_names=names or MITBIH_RECORD_NAMES,
    )
    for name in report.downloaded:
        print(f"downloaded={name}")
    if not report.downloaded:
        print("up to date")
    return EXIT_OK


def cmd_qrs(args) -> int:
    cfg = _load_config_file(args.config)
    data_dir = resolve_data_dir(_setting(args, cfg, "data_dir", None))
    channel = int(_setting(args, cfg, "channel", 0))
    record = load_record(data_dir, args.record)
    fs = record.sampling_rate

    ann_peaks = r_peaks_from_annotations(record.annotations)
    if args.detector == "slope":
        peaks = detect_r_peaks(record.channels[channel], fs, DetectorConfig())
        result = match_detections(peaks, ann_peaks, tol_ms=150.0, fs=fs)
        print(f"record={record.name}")
        print("detector=slope")
        print(f"detected={len(peaks)}")
        print(f"annotated={len(ann_peaks)}")
        print(f"true_pos={result.true_pos}")
        print(f"false_pos={result.false_pos}")
        print(f"false_neg={result.false_neg}")
        print(f"sensitivity={result.sensitivity:.4f}")
        print(f"ppv={result.ppv:.4f}")
    else:
        peaks = ann_peaks
        print(f"record={record.name}")
        print("detector=annotations")
        print(f"r_peaks={len(peaks)}")
    series = build_rr_series(peaks, fs)
    if series.n_intervals:
        print(f"intervals={series.n_intervals}")
        print(f"mean_rr={float(np.mean(series.lengths)):.2f}")
        print(f"median_rr={float(np.median(series.lengths)):.2f}")
    return EXIT_OK


def cmd_stats(args) -> int:
    cfg = _load_config_file(args.config)
    data_dir = resolve_data_dir(_setting(args, cfg, "data_dir", None))
    records = _records(data_dir, [args.record] if args.record else None)

    class_counts = dict.fromkeys(LABEL_ORDER, 0)
    total_annotations = 0
    pooled_lengths = []
    per_record_lines = []
    medians_above = []
    outlier_upper = outlier_lower = outlier_retained = 0

    for record in records:
        total_annotations += len(record.annotations)
        for ann in record.annotations:
            label = BEAT_SYMBOL_CLASS.get(ann.symbol)
            if label:
                class_counts[label] += 1
        peaks = r_peaks_from_annotations(record.annotations)
        lengths = np.diff(peaks)
        pooled_lengths.append(lengths)
        lines = [
            f"record_{record.name}_beats={len(peaks)}",
            f"record_{record.name}_intervals={len(lengths)}",
        ]
        if len(lengths):
            fences = compute_fences(lengths)
            mask = outlier_mask(lengths, fences)
            upper = int(np.sum(lengths > fences.upper_fence))
            lower = int(np.sum(lengths < fences.lower_fence))
            outlier_upper += upper
            outlier_lower += lower
            outlier_retained += int((~mask).sum())
            median = float(np.median(lengths))
            if median > 260:
                medians_above.append(record.name)
            lines += [
                f"record_{record.name}_median_rr={median:.2f}",
                f"record_{record.name}_q1={fences.q1:.2f}",
                f"record_{record.name}_q3={fences.q3:.2f}",
                f"record_{record.name}_lower_fence={fences.lower_fence:.2f}",
                f"record_{record.name}_upper_fence={fences.upper_fence:.2f}",
                f"record_{record.name}_upper_removed={upper}",
                f"record_{record.name}_lower_removed={lower}",
            ]
        per_record_lines.append((record.name, lines))

    pooled = np.concatenate(pooled_lengths) if pooled_lengths else np.empty(0)
    print(f"records={len(records)}")
    print(f"total_annotations={total_annotations}")
    print(f"total_beats={sum(class_counts.values())}")
    print(f"total_intervals={len(pooled)}")
    for label in LABEL_ORDER:
        print(f"class_{label}={class_counts[label]}")
    if len(pooled):
        fences = compute_fences(pooled)
        print(f"pooled_q1={fences.q1:.2f}")
        print(f"pooled_q3={fences.q3:.2f}")
        print(f"pooled_lower_fence={fences.lower_fence:.2f}")
        print(f"pooled_upper_fence={fences.upper_fence:.2f}")
        print(f"pooled_median={float(np.median(pooled)):.2f}")
    print(f"outlier_upper_total={outlier_upper}")
    print(f"outlier_lower_total={outlier_lower}")
    print(f"outlier_retained_total={outlier_retained}")
    print(f"median_rr_gt_260={','.join(sorted(medians_above))}")
    for _, lines in sorted(per_record_lines):
        for line in lines:
            print(line)

    if args.boxplot:
        Path(args.boxplot).write_text(rr_boxplot_svg(pooled))
        print(f"boxplot={args.boxplot}")

    if args.check:
        for label, expected in PUBLISHED_CLASS_COUNTS.items():
            if abs(class_counts[label] - expected) > 0.005 * expected:
                print(
                    f"check=FAIL class {label}: {class_counts[label]} vs "
                    f"published {expected} (±0.5%)",
                    file=sys.stderr,
                )
                return EXIT_CHECK
        print("check=PASS")
    return EXIT_OK


def cmd_build(args) -> int:
    cfg = _load_config_file(args.config)
    data_dir = resolve_data_dir(_setting(args, cfg, "data_dir", None))
    out_dir = Path(_setting(args, cfg, "out_dir", "out"))
    factor = int(_setting(args, cfg, "downsample", 3))
    normalize = str(_setting(args, cfg, "normalize", "zscore"))
    build_cfg = _build_config(args, cfg)
    spec = _split_spec(args, cfg)

    records = _records(data_dir)
    dataset = build_dataset(records, build_cfg)
    manifest = dataset.manifest

    for name in sorted(manifest.conservation):
        row = manifest.conservation[name]
        status = "ok" if row.balances() else "IMBALANCE"
        print(
            f"conservation_{name}="
            f"total:{row.total_annotations},emitted:{row.beats_emitted},"
            f"outlier_dropped:{row.beats_dropped_as_outliers},"
            f"non_beat:{row.non_beat_annotations},edge_skips:{row.edge_skips},"
            f"missed:{row.missed_annotations},status:{status}"
        )
    for name, reason in sorted(manifest.skipped_records.items()):
        print(f"skipped_{name}={reason}")

    delivered = _transform(dataset, factor, normalize)
    train, test = split(delivered, spec)

    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts = {
        "beats_train.ecgb": export_binary(train),
        "beats_test.ecgb": export_binary(test),
    }
    for name, payload in artifacts.items():
        (out_dir / name).write_bytes(payload)
    (out_dir / "beats_train.csv").write_text(export_csv(train, header=args.header))
    (out_dir / "beats_test.csv").write_text(export_csv(test, header=args.header))
    (out_dir / "manifest.txt").write_text(delivered.manifest.to_text())

    print(f"out_dir={out_dir}")
    print(f"n_beats={delivered.n_beats}")
    print(f"beat_len={delivered.beat_len}")
    print(f"train_beats={train.n_beats}")
    print(f"test_beats={test.n_beats}")
    for label in LABEL_ORDER:
        print(f"class_count_{label}={delivered.manifest.class_counts.get(label, 0)}")
    print(f"max_beat_size={manifest.max_beat_size}")
    print(f"config_hash={manifest.config_hash}")

    if args.check:
        total = delivered.n_beats
        if abs(total - PUBLISHED_TOTAL) > 0.06 * PUBLISHED_TOTAL:
            print(f"check=FAIL total {total} vs {PUBLISHED_TOTAL} (±6%)", file=sys.stderr)
            return EXIT_CHECK
        for label, expected in PUBLISHED_CLASS_COUNTS.items():
            got = delivered.manifest.class_counts.get(label, 0) / total * 100
            want = expected / PUBLISHED_TOTAL * 100
            if abs(got - want) > 1.5:
                print(
                    f"check=FAIL class {label} proportion {got:.2f}% vs "
                    f"{want:.2f}% (±1.5 points)",
                    file=sys.stderr,
                )
                return EXIT_CHECK
        print("check=PASS")
    return EXIT_OK if not manifest.skipped_records else EXIT_DATA


def cmd_export(args) -> int:
    cfg = _load_config_file(args.config)
    data_dir = resolve_data_dir(_setting(args, cfg, "data_dir", None))
    out_dir = Path(_setting(args, cfg, "out_dir", "out"))
    factor = int(_setting(args, cfg, "downsample", 3))
    normalize = str(_setting(args, cfg, "normalize", "zscore"))
    build_cfg = _build_config(args, cfg)

    records = _records(data_dir)
    dataset = _transform(build_dataset(records, build_cfg), factor, normalize)

    parts = {"all": dataset}
    if args.split is not None:
        train, test = split(dataset, _split_spec(args, cfg))
        parts = {"train": train, "test": test}

    out_dir.mkdir(parents=True, exist_ok=True)
    for part, ds in parts.items():
        if args.format == "ecgb":
            path = out_dir / f"beats_{part}.ecgb"
            path.write_bytes(export_binary(ds))
        else:
            path = out_dir / f"beats_{part}.csv"
            path.write_text(export_csv(ds, header=args.header))
        print(f"wrote={path}")
        print(f"{part}_beats={ds.n_beats}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ecgforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--data-dir", dest="data_dir", help="record directory "
                       "(default: $ECGFORGE_DATA)")
        p.add_argument("--config", help="TOML config file; flags win")

    p = sub.add_parser("fetch", help="download the 48-record archive")
    common(p)
    p.add_argument("--base-url", default=None)
    p.add_argument("--records", help="comma-separated subset (default: all 48)")
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("qrs", help="R peaks and RR stats for one record")
    common(p)
    p.add_argument("--record", required=True)
    p.add_argument("--detector", choices=("annotations", "slope"),
                   default="annotations")
    p.add_argument("--channel", type=int, default=None)
    p.set_defaults(func=cmd_qrs)

    p = sub.add_parser("stats", help="RR/outlier/class distribution report")
    common(p)
    p.add_argument("--record", help="restrict to one record")
    p.add_argument("--boxplot", help="write the pooled RR box plot SVG here")
    p.add_argument("--check", action="store_true",
                   help="exit 3 unless class counts match the published distribution")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("build", help="run the full dataset pipeline")
    common(p)
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.add_argument("--channel", type=int, default=None)
    p.add_argument("--detector", choices=("annotations", "slope"), default=None)
    p.add_argument("--global-size", dest="global_size", type=int, default=None)
    p.add_argument("--clip-oversize", dest="clip_oversize",
                   action="store_const", const=True, default=None)
    p.add_argument("--downsample", type=int, default=None)
    p.add_argument("--normalize", choices=("none", "zscore"), default=None)
    p.add_argument("--split", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--header", action="store_true", help="CSV header row")
    p.add_argument("--check", action="store_true",
                   help="exit 3 unless counts match the published distribution")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export", help="export with explicit transform options")
    common(p)
    p.add_argument("--format", choices=("csv", "ecgb"), default="ecgb")
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.add_argument("--channel", type=int, default=None)
    p.add_argument("--detector", choices=("annotations", "slope"), default=None)
    p.add_argument("--global-size", dest="global_size", type=int, default=None)
    p.add_argument("--clip-oversize", dest="clip_oversize",
                   action="store_const", const=True, default=None)
    p.add_argument("--downsample", type=int, default=None)
    p.add_argument("--normalize", choices=("none", "zscore"), default=None)
    p.add_argument("--split", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--header", action="store_true")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EcgforgeError as exc:
        print(f"ecgforge: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
