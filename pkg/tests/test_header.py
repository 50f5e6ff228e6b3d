import pytest

from ecgforge.errors import MalformedHeader, UnsupportedFormat
from ecgforge.header import format_header, parse_header

# The distributed 100.hea of the archive.
HEA_100 = """\
100 2 360 650000 0:0:0 0/0/0
100.dat 212 200 11 1024 995 -22131 0 MLII
100.dat 212 200 11 1024 1011 20052 0 V5
# 69 M 1085 1629 x1
# Aldactone, Inderal
"""


def test_parses_record_100_header():
    header = parse_header(HEA_100)
    assert header.record_name == "100"
    assert header.n_signals == 2
    assert header.sampling_rate == 360
    assert header.n_samples == 650000
    first, second = header.signals
    assert first.file_name == "100.dat"
    assert first.format_code == 212
    assert first.adc_gain == 200.0
    assert first.adc_zero == 1024
    assert first.initial_value == 995
    assert first.checksum == -22131
    assert first.description == "MLII"
    assert second.checksum == 20052
    assert second.description == "V5"


def test_comment_lines_are_ignored():
    with_comments = "# leading comment\n" + HEA_100
    assert parse_header(with_comments) == parse_header(HEA_100)


def test_zero_signals_is_malformed():
    with pytest.raises(MalformedHeader):
        parse_header("100 0 360 650000\n")


def test_format_16_is_rejected_distinctly():
    text = "100 1 360 650000\n100.dat 16 200 11 1024 995 0 0 MLII\n"
    with pytest.raises(UnsupportedFormat):
        parse_header(text)


def test_format_modifiers_are_rejected():
    text = "100 1 360 650000\n100.dat 212x4 200\n"
    with pytest.raises(UnsupportedFormat):
        parse_header(text)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "100 2 360\n",                      # record line too short
        "100 two 360 650000\n",             # non-numeric count
        "100 2 360 650000\n100.dat 212\n",  # one signal line for two signals
        "100 1 0 650000\n100.dat 212\n",    # zero sampling rate
        "100 1 360 0\n100.dat 212\n",       # zero samples
        "100/2 1 360 650000\n100.dat 212\n",  # multi-segment
    ],
)
def test_malformed_headers(text):
    with pytest.raises(MalformedHeader):
        parse_header(text)


def test_gain_with_baseline_and_units():
    text = "x 1 360 1000\nx.dat 212 200(1024)/mV 11 1024 5 0 0 MLII\n"
    assert parse_header(text).signals[0].adc_gain == 200.0


def test_absent_gain_defaults_to_200():
    text = "x 1 360 1000\nx.dat 212\n"
    spec = parse_header(text).signals[0]
    assert spec.adc_gain == 200.0
    assert spec.checksum is None


def test_zero_gain_defaults_to_200():
    text = "x 1 360 1000\nx.dat 212 0 11 0 0 0 0\n"
    assert parse_header(text).signals[0].adc_gain == 200.0


def test_format_header_round_trip():
    header = parse_header(HEA_100)
    again = parse_header(format_header(header))
    assert again == header
