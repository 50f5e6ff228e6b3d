"""Exception types raised by ecgforge.

Every error the library raises deliberately derives from EcgforgeError so
callers (and the CLI) can distinguish data problems from genuine bugs.
"""


class EcgforgeError(Exception):
    """Base class for all ecgforge errors."""


# --- header / signal / annotation parsing ---------------------------------

class MalformedHeader(EcgforgeError):
    """Header file is syntactically invalid (missing fields, bad numbers)."""


class UnsupportedFormat(EcgforgeError):
    """Signal is stored in a format other than plain format 212."""


class TruncatedFile(EcgforgeError):
    """Signal file is shorter than the header-declared sample count needs."""


class MissingEOF(EcgforgeError):
    """Annotation stream ended without the 0x0000 end-of-file word."""


class AuxOverrun(EcgforgeError):
    """An AUX pseudo-annotation declares more bytes than remain."""


class UnknownCode(EcgforgeError):
    """Annotation word carries a code that is not a defined MIT code."""


# --- QRS detection ---------------------------------------------------------

class EmptySignal(EcgforgeError):
    """Signal is empty or too short for the detector's slope window."""


# --- beat building ---------------------------------------------------------

class EmptyInput(EcgforgeError):
    """Statistic requested over an empty collection."""


class RecordHasNoIntervals(EcgforgeError):
    """Record retains fewer than two R peaks, so no RR interval exists."""


class BeatLongerThanGlobal(EcgforgeError):
    """A window's beat size exceeds the configured global heartbeat size."""


class UnknownBeatType(EcgforgeError):
    """Beat-type annotation code with no five-class mapping."""


# --- transform / export ----------------------------------------------------

class ZeroFactor(EcgforgeError):
    """Downsampling factor must be >= 1."""


class ZeroVariance(EcgforgeError):
    """Beat span is constant; z-score is undefined."""


class ClassTooSmall(EcgforgeError):
    """Stratified split requires at least two members per class."""


class TruncatedContainer(EcgforgeError):
    """ECGB byte stream ends before the declared payload."""


class BadMagic(EcgforgeError):
    """Byte stream does not start with the ECGB magic."""


class CountMismatch(EcgforgeError):
    """ECGB declared counts disagree with the payload."""


# --- fetch -----------------------------------------------------------------

class NetworkError(EcgforgeError):
    """Archive download failed; records must be placed manually."""


class ChecksumMismatch(EcgforgeError):
    """Downloaded record failed header checksum verification."""
