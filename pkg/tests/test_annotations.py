import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecgforge.annotations import (
    Annotation,
    CODE_SYMBOLS,
    SYMBOL_CODES,
    encode_annotations,
    parse_annotations,
)
from ecgforge.errors import AuxOverrun, MissingEOF, UnknownCode


def word(code: int, delta: int) -> bytes:
    return (((code << 10) | delta) & 0xFFFF).to_bytes(2, "little")


EOF = b"\x00\x00"


def test_word_0x04c8_after_beat_at_1000():
    # (1 << 10) | 200 == 0x04C8, bytes C8 04: code 1 ('N'), delta 200
    data = word(1, 1000) + bytes([0xC8, 0x04]) + EOF
    anns = parse_annotations(data)
    assert [(a.sample_index, a.symbol) for a in anns] == [(1000, "N"), (1200, "N")]
    assert anns[1].code == 1


def test_empty_stream_is_just_eof():
    assert parse_annotations(EOF) == []


def test_missing_eof():
    with pytest.raises(MissingEOF):
        parse_annotations(word(1, 10))


def test_unknown_code_in_reserved_range():
    with pytest.raises(UnknownCode):
        parse_annotations(word(50, 10) + EOF)


def test_code_zero_with_nonzero_delta():
    with pytest.raises(UnknownCode):
        parse_annotations(word(0, 5) + EOF)


def test_skip_long_interval():
    # SKIP carries a 32-bit interval, high 16-bit word first; the next
    # annotation word's own delta still applies.
    interval = 100000
    data = (
        word(59, 0)
        + (interval >> 16).to_bytes(2, "little")
        + (interval & 0xFFFF).to_bytes(2, "little")
        + word(5, 7)
        + EOF
    )
    anns = parse_annotations(data)
    assert [(a.sample_index, a.symbol) for a in anns] == [(100007, "V")]


def test_num_applies_to_current_and_subsequent():
    data = word(1, 10) + word(60, 3) + word(1, 10) + EOF
    anns = parse_annotations(data)
    assert [a.num for a in anns] == [3, 3]


def test_sub_applies_to_current_only():
    data = word(1, 10) + word(61, 4) + word(1, 10) + EOF
    anns = parse_annotations(data)
    assert [a.subtype for a in anns] == [4, 0]


def test_chn_applies_to_current_and_subsequent():
    data = word(1, 10) + word(62, 1) + word(1, 10) + EOF
    anns = parse_annotations(data)
    assert [a.chan for a in anns] == [1, 1]


def test_aux_with_odd_length_pad():
    data = word(28, 10) + word(63, 3) + b"(N\x00" + b"\x00" + word(1, 5) + EOF
    anns = parse_annotations(data)
    assert anns[0].symbol == "+"
    assert anns[0].aux == b"(N\x00"
    assert anns[1].sample_index == 15


def test_aux_overrun():
    with pytest.raises(AuxOverrun):
        parse_annotations(word(1, 10) + word(63, 40) + b"xy" + EOF)


def test_times_are_nondecreasing_and_reconstructable():
    anns = parse_annotations(
        word(1, 100) + word(1, 1023) + word(1, 0) + word(1, 50) + EOF
    )
    times = [a.sample_index for a in anns]
    assert times == sorted(times) == [100, 1123, 1123, 1173]


beat_symbols = sorted(SYMBOL_CODES)


@settings(max_examples=150)
@given(
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=5000),     # time gaps
            st.sampled_from(sorted(CODE_SYMBOLS)),        # valid codes
            st.integers(min_value=0, max_value=7),        # subtype
            st.one_of(st.none(), st.binary(max_size=12)),  # aux
        ),
        max_size=30,
    )
)
def test_encode_parse_round_trip(items):
    annotations = []
    time = 0
    for gap, code, subtype, aux in items:
        time += gap
        annotations.append(
            Annotation(
                sample_index=time,
                code=code,
                symbol=CODE_SYMBOLS[code],
                subtype=subtype,
                aux=aux if aux else None,
            )
        )
    parsed = parse_annotations(encode_annotations(annotations))
    assert len(parsed) == len(annotations)
    for original, back in zip(annotations, parsed):
        assert back.sample_index == original.sample_index
        assert back.code == original.code
        assert back.symbol == original.symbol
        assert back.subtype == original.subtype
        assert back.aux == original.aux
