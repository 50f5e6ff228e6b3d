"""Five-class AAMI EC57 grouping of MIT beat annotations.

N <- {N, L, R, e, j}   normal, bundle branch block, escape
S <- {A, a, J, S}      supraventricular ectopic
V <- {V, E}            ventricular ectopic
F <- {F}               fusion of ventricular and normal
Q <- {/, f, Q}         paced, fusion of paced, unclassifiable

Every other annotation code is a non-beat for dataset purposes.  MIT codes
that denote beats outside this grouping (B, n, r, ?, and the ventricular
flutter waves '!') do not enter the dataset; map_label flags them.
"""

from __future__ import annotations

from .annotations import BEAT_CODES, CODE_SYMBOLS, SYMBOL_CODES, Annotation
from .errors import UnknownBeatType

LABEL_ORDER = ("N", "S", "V", "F", "Q")
LABEL_TO_CODE = {label: i for i, label in enumerate(LABEL_ORDER)}
CODE_TO_LABEL = dict(enumerate(LABEL_ORDER))

BEAT_SYMBOL_CLASS: dict[str, str] = {
    "N": "N", "L": "N", "R": "N", "e": "N", "j": "N",
    "A": "S", "a": "S", "J": "S", "S": "S",
    "V": "V", "E": "V",
    "F": "F",
    "/": "Q", "f": "Q", "Q": "Q",
}


def map_label(symbol_or_code: str | int) -> str | None:
    """Five-class label for a beat annotation, or None for non-beat codes.

    Raises UnknownBeatType for MIT beat codes with no five-class home and
    ValueError for inputs that are not defined MIT annotation types at all.
    """
    if isinstance(symbol_or_code, int):
        if symbol_or_code not in CODE_SYMBOLS:
            raise ValueError(f"undefined MIT annotation code {symbol_or_code}")
        symbol = CODE_SYMBOLS[symbol_or_code]
    else:
        symbol = symbol_or_code
        if symbol not in SYMBOL_CODES:
            raise ValueError(f"undefined MIT annotation symbol {symbol!r}")

    label = BEAT_SYMBOL_CLASS.get(symbol)
    if label is not None:
        return label
    if SYMBOL_CODES[symbol] in BEAT_CODES:
        raise UnknownBeatType(f"beat type {symbol!r} has no five-class mapping")
    return None


def is_dataset_beat(annotation: Annotation) -> bool:
    return annotation.symbol in BEAT_SYMBOL_CLASS
