"""Bit-exact WFDB format-212 signal codec.

Format 212 packs two 12-bit two's-complement samples into three bytes:

    byte 0: low 8 bits of sample 1
    byte 1: low nibble = high 4 bits of sample 1,
            high nibble = high 4 bits of sample 2
    byte 2: low 8 bits of sample 2

Samples from all signals are interleaved (s0[0], s1[0], s0[1], ...).  An odd
total sample count leaves a final lone sample stored in two bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import TruncatedFile


def bytes_needed(total_samples: int) -> int:
    pairs, odd = divmod(total_samples, 2)
    return pairs * 3 + (2 if odd else 0)


def decode_format212(data: bytes, n_samples: int, n_signals: int) -> np.ndarray:
    """Decode a format-212 byte stream into an [n_signals x n_samples]
    int16 matrix of ADC units.

    Raises TruncatedFile when the stream is shorter than the declared
    sample count requires; trailing surplus bytes are ignored.
    """
    total = n_samples * n_signals
    need = bytes_needed(total)
    if len(data) < need:
        raise TruncatedFile(
            f"need {need} bytes for {total} samples, got {len(data)}"
        )

    raw = np.frombuffer(data, dtype=np.uint8, count=need).astype(np.int32)
    pairs = total // 2
    block = raw[: pairs * 3]
    s1 = block[0::3] | ((block[1::3] & 0x0F) << 8)
    s2 = block[2::3] | ((block[1::3] >> 4) << 8)

    flat = np.empty(total, dtype=np.int32)
    flat[0 : pairs * 2 : 2] = s1
    flat[1 : pairs * 2 : 2] = s2
    if total % 2:
        b0 = int(raw[pairs * 3])
        b1 = int(raw[pairs * 3 + 1])
        flat[-1] = b0 | ((b1 & 0x0F) << 8)

    flat[flat >= 2048] -= 4096
    return flat.reshape(n_samples, n_signals).T.astype(np.int16)


def encode_format212(channels: np.ndarray) -> bytes:
    """Inverse of decode_format212 (the round-trip oracle).

    `channels` is [n_signals x n_samples]; values must lie in [-2048, 2047].
    """
    channels = np.asarray(channels)
    if channels.ndim == 1:
        channels = channels[np.newaxis, :]
    if channels.size and (channels.min() < -2048 or channels.max() > 2047):
        raise ValueError("format 212 samples must lie in [-2048, 2047]")

    flat = channels.T.reshape(-1).astype(np.int32)
    flat = np.where(flat < 0, flat + 4096, flat)

    total = flat.size
    pairs = total // 2
    out = np.empty(bytes_needed(total), dtype=np.uint8)
    s1 = flat[0 : pairs * 2 : 2]
    s2 = flat[1 : pairs * 2 : 2]
    out[0 : pairs * 3 : 3] = s1 & 0xFF
    out[1 : pairs * 3 : 3] = ((s1 >> 8) & 0x0F) | (((s2 >> 8) & 0x0F) << 4)
    out[2 : pairs * 3 : 3] = s2 & 0xFF
    if total % 2:
        last = int(flat[-1])
        out[-2] = last & 0xFF
        out[-1] = (last >> 8) & 0x0F
    return out.tobytes()
