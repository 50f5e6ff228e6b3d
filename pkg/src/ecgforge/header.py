"""WFDB header (.hea) parsing for MIT-BIH style single-segment records.

Only plain format-212 signal lines are accepted; anything else is rejected
up front so the decoder never sees bytes it cannot interpret.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedHeader, UnsupportedFormat

DEFAULT_ADC_GAIN = 200.0  # WFDB convention when the gain field is absent or 0


@dataclass
class SignalSpec:
    """Per-signal description from one header signal line."""

    file_name: str
    format_code: int
    adc_gain: float = DEFAULT_ADC_GAIN
    adc_zero: int = 0
    initial_value: int = 0
    checksum: int | None = None
    description: str = ""


@dataclass
class RecordHeader:
    record_name: str
    n_signals: int
    sampling_rate: int
    n_samples: int
    signals: list[SignalSpec] = field(default_factory=list)


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedHeader(f"non-numeric {what}: {token!r}") from None


def _parse_gain(token: str) -> float:
    # General grammar is gain(baseline)/units, e.g. "200", "200(1024)/mV".
    core = token.split("/", 1)[0]
    core = core.split("(", 1)[0]
    try:
        gain = float(core)
    except ValueError:
        raise MalformedHeader(f"non-numeric ADC gain: {token!r}") from None
    return gain if gain > 0 else DEFAULT_ADC_GAIN


def parse_header(text: str) -> RecordHeader:
    """Parse .hea content into a RecordHeader.

    Raises MalformedHeader for structural problems and UnsupportedFormat
    for any signal not stored as plain format 212.
    """
    if not text.strip():
        raise MalformedHeader("empty header")

    lines = _content_lines(text)
    record_fields = lines[0].split()
    if len(record_fields) < 4:
        raise MalformedHeader(
            f"record line has {len(record_fields)} fields, expected at least 4"
        )

    name = record_fields[0]
    if "/" in name:
        raise MalformedHeader(f"multi-segment record {name!r} is unsupported")

    n_signals = _parse_int(record_fields[1], "signal count")
    if n_signals < 1:
        raise MalformedHeader(f"record declares {n_signals} signals")

    # Sampling rate may carry counter-frequency decorations: "360/360(0)".
    fs_token = record_fields[2].split("/", 1)[0]
    try:
        fs = float(fs_token)
    except ValueError:
        raise MalformedHeader(f"non-numeric sampling rate: {fs_token!r}") from None
    if fs <= 0 or fs != int(fs):
        raise MalformedHeader(f"sampling rate must be a positive integer, got {fs_token!r}")

    n_samples = _parse_int(record_fields[3], "sample count")
    if n_samples < 1:
        raise MalformedHeader(f"record declares {n_samples} samples")

    signal_lines = lines[1:]
    if len(signal_lines) < n_signals:
        raise MalformedHeader(
            f"header declares {n_signals} signals but has {len(signal_lines)} signal lines"
        )

    specs = []
    for line in signal_lines[:n_signals]:
        tokens = line.split()
        if len(tokens) < 2:
            raise MalformedHeader(f"signal line too short: {line!r}")
        fmt_token = tokens[1]
        if not fmt_token.isdigit():
            raise UnsupportedFormat(
                f"format modifiers are unsupported: {fmt_token!r}"
            )
        fmt = int(fmt_token)
        if fmt != 212:
            raise UnsupportedFormat(f"signal format {fmt} (only 212 is supported)")

        spec = SignalSpec(file_name=tokens[0], format_code=fmt)
        if len(tokens) > 2:
            spec.adc_gain = _parse_gain(tokens[2])
        if len(tokens) > 4:
            spec.adc_zero = _parse_int(tokens[4], "ADC zero")
        if len(tokens) > 5:
            spec.initial_value = _parse_int(tokens[5], "initial value")
        if len(tokens) > 6:
            spec.checksum = _parse_int(tokens[6], "checksum")
        if len(tokens) > 8:
            spec.description = " ".join(tokens[8:])
        specs.append(spec)

    return RecordHeader(
        record_name=name,
        n_signals=n_signals,
        sampling_rate=int(fs),
        n_samples=n_samples,
        signals=specs,
    )


def format_header(header: RecordHeader) -> str:
    """Render a RecordHeader back to .hea text (used by the synthetic
    archive writer and round-trip tests)."""
    lines = [
        f"{header.record_name} {header.n_signals} "
        f"{header.sampling_rate} {header.n_samples}"
    ]
    for spec in header.signals:
        checksum = 0 if spec.checksum is None else spec.checksum
        gain = spec.adc_gain
        gain_token = str(int(gain)) if gain == int(gain) else repr(gain)
        lines.append(
            f"{spec.file_name} {spec.format_code} {gain_token} 11 "
            f"{spec.adc_zero} {spec.initial_value} {checksum} 0 {spec.description}".rstrip()
        )
    return "\n".join(lines) + "\n"
