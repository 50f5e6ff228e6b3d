"""ecgforge: QRS-centered heartbeat dataset construction from the MIT-BIH
arrhythmia recordings, with a validated slope QRS detector, per-record IQR
outlier removal, adaptive window-mean beat sizing, centered zero-padding,
downsampling, z-score normalization, and deterministic exports."""

from .annotations import Annotation, parse_annotations
from .beats import (
    BuildConfig,
    OutlierFences,
    Window,
    build_dataset,
    compute_fences,
    extract_beat,
    median_length_statistic,
    pad_center,
    partition_windows,
    percentile,
    remove_outliers,
    window_mean_rr,
)
from .container import export_binary, export_csv, import_binary
from .dat212 import decode_format212, encode_format212
from .dataset import Beat, Dataset, DatasetManifest, OutlierReport, datasets_equal
from .errors import EcgforgeError
from .fetch import fetch_archive
from .header import RecordHeader, SignalSpec, parse_header
from .labels import LABEL_ORDER, map_label
from .qrs import (
    DetectorConfig,
    RRSeries,
    build_rr_series,
    detect_r_peaks,
    match_detections,
    r_peaks_from_annotations,
)
from .records import (
    AnnotatedRecord,
    MITBIH_RECORD_NAMES,
    list_records,
    load_record,
    verify_checksums,
)
from .svgplot import rr_boxplot_svg
from .synthetic import SyntheticConfig, generate_archive
from .transform import SplitSpec, downsample, downsample_dataset, split, zscore_dataset

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "AnnotatedRecord",
    "Beat",
    "BuildConfig",
    "Dataset",
    "DatasetManifest",
    "DetectorConfig",
    "EcgforgeError",
    "LABEL_ORDER",
    "MITBIH_RECORD_NAMES",
    "OutlierFences",
    "OutlierReport",
    "RRSeries",
    "RecordHeader",
    "SignalSpec",
    "SplitSpec",
    "SyntheticConfig",
    "Window",
    "build_dataset",
    "build_rr_series",
    "compute_fences",
    "datasets_equal",
    "decode_format212",
    "detect_r_peaks",
    "downsample",
    "downsample_dataset",
    "encode_format212",
    "export_binary",
    "export_csv",
    "extract_beat",
    "fetch_archive",
    "generate_archive",
    "import_binary",
    "list_records",
    "load_record",
    "map_label",
    "match_detections",
    "median_length_statistic",
    "pad_center",
    "parse_annotations",
    "parse_header",
    "partition_windows",
    "percentile",
    "r_peaks_from_annotations",
    "remove_outliers",
    "rr_boxplot_svg",
    "split",
    "verify_checksums",
    "window_mean_rr",
    "zscore_dataset",
]
