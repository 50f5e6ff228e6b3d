"""Synthetic MIT-BIH-style archive generation.

Writes genuine .hea/.dat/.atr files (format 212 + MIT annotation format)
with construction-known ground truth, so the whole pipeline can be
exercised and oracle-checked without the real recordings.

RR structure per record: base intervals jitter uniformly (+-40 ms) around
the record's mean, which keeps every base interval strictly inside the
Tukey fences; injected pauses (2.5-4x mean) and ADC-glitch shorts
(0.25-0.4x mean) are therefore exactly the intervals the IQR step flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .annotations import Annotation, SYMBOL_CODES, encode_annotations
from .dat212 import encode_format212
from .header import RecordHeader, SignalSpec, format_header
from .records import compute_checksum

ADC_ZERO = 1024
ADC_GAIN = 200.0

# (center s, width s, amplitude mV) Gaussian bumps per beat class.
_MORPHOLOGY = {
    "N": [(-0.17, 0.025, 0.12), (-0.024, 0.008, -0.10), (0.0, 0.012, 1.10),
          (0.026, 0.009, -0.18), (0.24, 0.050, 0.30)],
    "S": [(-0.15, 0.020, 0.05), (-0.024, 0.008, -0.08), (0.0, 0.012, 0.95),
          (0.026, 0.009, -0.15), (0.22, 0.045, 0.25)],
    "V": [(0.0, 0.050, 1.30), (0.09, 0.045, -0.45), (0.30, 0.060, -0.25)],
    "F": [(-0.17, 0.020, 0.06), (0.0, 0.030, 1.20), (0.07, 0.030, -0.30),
          (0.26, 0.055, 0.10)],
    "Q": [(-0.020, 0.004, 1.50), (0.0, 0.040, 0.90), (0.10, 0.045, -0.35),
          (0.30, 0.060, -0.20)],
}
_CLASS_SYMBOLS = {
    "N": ("N", "N", "N", "L", "R", "e", "j"),
    "S": ("A", "A", "a", "J", "S"),
    "V": ("V", "V", "E"),
    "F": ("F",),
    "Q": ("/", "f", "Q"),
}


@dataclass
class SyntheticConfig:
    n_records: int = 4
    duration_s: float = 120.0
    fs: int = 360
    seed: int = 7
    class_weights: dict[str, float] = field(
        default_factory=lambda: {"N": 0.84, "S": 0.04, "V": 0.07, "F": 0.02, "Q": 0.03}
    )
    upper_outlier_rate: float = 0.012
    lower_outlier_rate: float = 0.005
    noise_adu: float = 1.5


@dataclass
class RecordTruth:
    name: str
    n_samples: int
    r_indices: list[int]
    symbols: list[str]
    classes: list[str]
    upper_injected: int
    lower_injected: int
    non_beat_annotations: int

    @property
    def n_beats(self) -> int:
        return len(self.r_indices)


def _beat_wave(t: np.ndarray, cls: str) -> np.ndarray:
    wave = np.zeros_like(t)
    for center, width, amp in _MORPHOLOGY[cls]:
        wave += amp * np.exp(-0.5 * ((t - center) / width) ** 2)
    return wave


def _render_record(
    name: str, cfg: SyntheticConfig, rng: np.random.Generator
) -> tuple[np.ndarray, list[Annotation], RecordTruth]:
    fs = cfg.fs
    n_samples = int(round(cfg.duration_s * fs))
    mean_rr = rng.uniform(0.63, 0.92)  # 65..95 bpm
    jitter = 0.040

    # First beat far enough in to force a SKIP word in the .atr stream.
    r = int(round(rng.uniform(3.2, 3.8) * fs))
    r_indices: list[int] = []
    kinds: list[str] = []  # "base" / "upper" / "lower", kind of the following interval
    while r < n_samples - int(1.5 * fs):
        r_indices.append(r)
        u = rng.random()
        if u < cfg.upper_outlier_rate:
            interval, kind = mean_rr * rng.uniform(2.5, 4.0), "upper"
        elif u < cfg.upper_outlier_rate + cfg.lower_outlier_rate:
            interval, kind = mean_rr * rng.uniform(0.25, 0.40), "lower"
        else:
            interval, kind = mean_rr + rng.uniform(-jitter, jitter), "base"
        kinds.append(kind)
        r += max(int(round(interval * fs)), 2)

    labels = list(cfg.class_weights)
    weights = np.asarray([cfg.class_weights[l] for l in labels], dtype=np.float64)
    weights /= weights.sum()
    classes = [labels[i] for i in rng.choice(len(labels), size=len(r_indices), p=weights)]
    symbols = [
        _CLASS_SYMBOLS[c][rng.integers(len(_CLASS_SYMBOLS[c]))] for c in classes
    ]

    t = np.arange(n_samples, dtype=np.float64) / fs
    signal_mv = 0.06 * np.sin(2 * np.pi * 0.33 * t)  # baseline wander
    window = int(0.5 * fs)
    for r_idx, cls in zip(r_indices, classes):
        lo = max(r_idx - window, 0)
        hi = min(r_idx + window, n_samples)
        local = (np.arange(lo, hi) - r_idx) / fs
        signal_mv[lo:hi] += _beat_wave(local, cls)

    adu = np.round(
        ADC_ZERO + ADC_GAIN * signal_mv + rng.normal(0.0, cfg.noise_adu, n_samples)
    )
    ch0 = np.clip(adu, -2048, 2047).astype(np.int16)
    adu1 = np.round(
        ADC_ZERO + 0.6 * ADC_GAIN * signal_mv + rng.normal(0.0, cfg.noise_adu, n_samples)
    )
    ch1 = np.clip(adu1, -2048, 2047).astype(np.int16)
    channels = np.stack([ch0, ch1])

    annotations = [
        Annotation(
            sample_index=int(0.3 * fs),
            code=SYMBOL_CODES["+"],
            symbol="+",
            aux=b"(N",
        )
    ]
    non_beat = 1
    for r_idx, sym in zip(r_indices, symbols):
        annotations.append(
            Annotation(sample_index=r_idx, code=SYMBOL_CODES[sym], symbol=sym)
        )
    glitch = int(n_samples - 2 * fs)
    annotations.append(
        Annotation(sample_index=glitch, code=SYMBOL_CODES["~"], symbol="~", subtype=3)
    )
    non_beat += 1
    annotations.sort(key=lambda a: a.sample_index)

    # The interval of the LAST beat never exists (intervals are between
    # successive beats), so injected counts exclude the final kind.
    truth = RecordTruth(
        name=name,
        n_samples=n_samples,
        r_indices=r_indices,
        symbols=symbols,
        classes=classes,
        upper_injected=sum(1 for k in kinds[:-1] if k == "upper"),
        lower_injected=sum(1 for k in kinds[:-1] if k == "lower"),
        non_beat_annotations=non_beat,
    )
    return channels, annotations, truth


def generate_archive(
    out_dir: str | Path, cfg: SyntheticConfig | None = None
) -> dict[str, RecordTruth]:
    """Write cfg.n_records synthetic records under out_dir; returns the
    per-record ground truth keyed by record name."""
    cfg = cfg or SyntheticConfig()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(cfg.seed)

    truths: dict[str, RecordTruth] = {}
    for i in range(cfg.n_records):
        name = f"{800 + i}"
        channels, annotations, truth = _render_record(name, cfg, rng)
        header = RecordHeader(
            record_name=name,
            n_signals=2,
            sampling_rate=cfg.fs,
            n_samples=truth.n_samples,
            signals=[
                SignalSpec(
                    file_name=f"{name}.dat",
                    format_code=212,
                    adc_gain=ADC_GAIN,
                    adc_zero=ADC_ZERO,
                    initial_value=int(channels[ch, 0]),
                    checksum=compute_checksum(channels[ch]),
                    description=desc,
                )
                for ch, desc in ((0, "MLII"), (1, "V5"))
            ],
        )
        (out / f"{name}.hea").write_text(format_header(header))
        (out / f"{name}.dat").write_bytes(encode_format212(channels))
        (out / f"{name}.atr").write_bytes(encode_annotations(annotations))
        truths[name] = truth
    return truths
