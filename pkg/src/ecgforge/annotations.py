"""MIT annotation (.atr) format parser and writer.

The stream is a sequence of 16-bit little-endian words.  The high 6 bits of
each word are the annotation code, the low 10 bits a time delta in samples.
Codes 59..63 are pseudo-annotations (SKIP long intervals, NUM/SUB/CHN field
setters, AUX byte strings); a zero word terminates the stream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AuxOverrun, MissingEOF, UnknownCode

# Pseudo-annotation codes.
_SKIP, _NUM, _SUB, _CHN, _AUX = 59, 60, 61, 62, 63

# Defined MIT annotation codes -> display symbols (wfdb convention).
CODE_SYMBOLS: dict[int, str] = {
    1: "N", 2: "L", 3: "R", 4: "a", 5: "V", 6: "F", 7: "J", 8: "A",
    9: "S", 10: "E", 11: "j", 12: "/", 13: "Q", 14: "~", 16: "|",
    18: "s", 19: "T", 20: "*", 21: "D", 22: '"', 23: "=", 24: "p",
    25: "B", 26: "^", 27: "t", 28: "+", 29: "u", 30: "?", 31: "!",
    32: "[", 33: "]", 34: "e", 35: "n", 36: "@", 37: "x", 38: "f",
    39: "(", 40: ")", 41: "r",
}
SYMBOL_CODES: dict[str, int] = {s: c for c, s in CODE_SYMBOLS.items()}

# Codes the MIT convention treats as heartbeats (the isqrs set).
BEAT_CODES = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                        25, 30, 31, 34, 35, 38, 41})


@dataclass
class Annotation:
    sample_index: int
    code: int
    symbol: str
    subtype: int = 0
    chan: int = 0
    num: int = 0
    aux: bytes | None = None


@dataclass
class _Cursor:
    data: bytes
    pos: int = 0

    def word(self) -> int:
        if self.pos + 2 > len(self.data):
            raise MissingEOF("annotation stream ended without the EOF word")
        w = self.data[self.pos] | (self.data[self.pos + 1] << 8)
        self.pos += 2
        return w

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise AuxOverrun(f"{n} bytes requested, {len(self.data) - self.pos} remain")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk


def parse_annotations(data: bytes) -> list[Annotation]:
    """Decode an .atr byte stream into time-ordered Annotations.

    Absolute sample positions accumulate the per-word deltas plus any SKIP
    long intervals.  NUM/CHN set their field for the current and subsequent
    annotations, SUB and AUX apply to the current annotation only.
    """
    cur = _Cursor(data)
    out: list[Annotation] = []
    time = 0
    pending_skip = 0
    running_num = 0
    running_chan = 0

    while True:
        word = cur.word()
        code = word >> 10
        delta = word & 0x3FF

        if code == 0:
            if delta == 0:
                return out
            raise UnknownCode(f"code 0 with nonzero delta {delta}")

        if code == _SKIP:
            high = cur.word()
            low = cur.word()
            interval = (high << 16) | low
            if interval >= 1 << 31:  # signed 32-bit
                interval -= 1 << 32
            pending_skip += interval
            continue
        if code == _NUM:
            running_num = delta
            if out:
                out[-1].num = delta
            continue
        if code == _SUB:
            if out:
                out[-1].subtype = delta
            continue
        if code == _CHN:
            running_chan = delta
            if out:
                out[-1].chan = delta
            continue
        if code == _AUX:
            aux = cur.take(delta)
            if delta % 2:
                cur.take(1)  # pad byte
            if out:
                out[-1].aux = bytes(aux)
            continue

        if code not in CODE_SYMBOLS:
            raise UnknownCode(f"undefined annotation code {code}")

        time += pending_skip + delta
        pending_skip = 0
        out.append(
            Annotation(
                sample_index=time,
                code=code,
                symbol=CODE_SYMBOLS[code],
                num=running_num,
                chan=running_chan,
            )
        )


def encode_annotations(annotations: list[Annotation]) -> bytes:
    """Render Annotations back to .atr bytes (synthetic archives, tests)."""
    out = bytearray()
    time = 0
    running_num = 0
    running_chan = 0
    for ann in annotations:
        delta = ann.sample_index - time
        if delta < 0:
            raise ValueError("annotations must be time-ordered")
        if delta > 0x3FF:
            out += (_SKIP << 10).to_bytes(2, "little")
            out += ((delta >> 16) & 0xFFFF).to_bytes(2, "little")
            out += (delta & 0xFFFF).to_bytes(2, "little")
            delta = 0
        out += ((ann.code << 10) | delta).to_bytes(2, "little")
        time = ann.sample_index

        if ann.num != running_num:
            out += ((_NUM << 10) | (ann.num & 0x3FF)).to_bytes(2, "little")
            running_num = ann.num
        if ann.chan != running_chan:
            out += ((_CHN << 10) | (ann.chan & 0x3FF)).to_bytes(2, "little")
            running_chan = ann.chan
        if ann.subtype:
            out += ((_SUB << 10) | (ann.subtype & 0x3FF)).to_bytes(2, "little")
        if ann.aux:
            if len(ann.aux) > 0x3FF:
                raise ValueError("aux string too long")
            out += ((_AUX << 10) | len(ann.aux)).to_bytes(2, "little")
            out += ann.aux
            if len(ann.aux) % 2:
                out += b"\x00"
    out += b"\x00\x00"
    return bytes(out)
