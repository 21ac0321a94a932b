import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tonalang.errors import DomainError
from tonalang.freqmap import (
    build_table,
    check_golden,
    frequency_of,
    load_golden_table,
    nearest_char,
    note_name,
    octave_span,
    table_rows,
)

GOLDEN = load_golden_table()


def brute_force_nearest(freq):
    table = build_table()
    return min(table, key=lambda e: abs(1200 * math.log2(freq / e.frequency_hz)))


def test_table_shape():
    table = build_table()
    assert len(table) == 95
    assert [e.ascii_code for e in table] == list(range(32, 127))
    assert all(e.semitone_index == e.ascii_code - 32 for e in table)
    assert all(e.character == chr(e.ascii_code) for e in table)


@pytest.mark.parametrize("code, expected", [
    (32, 220.00), (44, 440.00), (65, 1479.98), (97, 9397.27), (126, 50175.42),
    (72, 2217.46), (73, 2349.32), (110, 19912.13), (111, 21096.16),
])
def test_reference_anchor_rows(code, expected):
    assert build_table()[code - 32].frequency_hz == pytest.approx(expected, abs=0.01)
    assert GOLDEN[code] == expected


def test_every_row_matches_golden_fixture():
    assert len(GOLDEN) == 95
    assert check_golden(GOLDEN) == []


def test_golden_check_flags_perturbation():
    perturbed = dict(GOLDEN)
    perturbed[65] += 1.0
    assert [code for code, _, _ in check_golden(perturbed)] == [65]


def test_formula_invariants():
    table = build_table()
    for e in table:
        assert e.frequency_hz == pytest.approx(220 * 2 ** (e.semitone_index / 12), rel=1e-9)
        assert e.ultrasonic == (e.frequency_hz > 20000.0)
    for a, b in zip(table, table[1:]):
        assert b.frequency_hz > a.frequency_hz
        assert b.frequency_hz / a.frequency_hz == pytest.approx(2 ** (1 / 12), rel=1e-12)
    assert round(table[0].frequency_hz, 2) == 220.00
    assert round(table[-1].frequency_hz, 2) == 50175.42


def test_frequency_of():
    assert frequency_of(32) == 220.0
    assert frequency_of(97) == pytest.approx(9397.27, abs=0.01)
    for bad in (31, 127, -1):
        with pytest.raises(DomainError, match=str(bad)):
            frequency_of(bad)


@pytest.mark.parametrize("code", range(32, 115))
def test_octave_identity(code):
    assert frequency_of(code + 12) == pytest.approx(2 * frequency_of(code), rel=1e-12)


def test_ultrasonic_partition_is_o_through_tilde():
    assert {c for c in range(32, 127) if frequency_of(c) > 20000} == set(range(111, 127))


def test_nearest_char_examples():
    entry, cents = nearest_char(440.0)
    assert entry.character == "," and cents == pytest.approx(0.0, abs=1e-9)

    entry, cents = nearest_char(450.0)
    assert entry is brute_force_nearest(450.0)
    assert entry.character == ","
    assert cents == pytest.approx(38.9, abs=0.1)

    entry, cents = nearest_char(100.0)
    assert entry.character == " " and cents < 0

    entry, cents = nearest_char(90000.0)
    assert entry.character == "~" and cents > 0

    with pytest.raises(DomainError):
        nearest_char(0.0)
    with pytest.raises(DomainError):
        nearest_char(-5.0)


@pytest.mark.parametrize("code", range(32, 127))
def test_bijectivity(code):
    entry, cents = nearest_char(frequency_of(code))
    assert entry.ascii_code == code
    assert abs(cents) < 1e-6


@given(st.floats(min_value=150.0, max_value=80000.0))
def test_nearest_matches_brute_force(freq):
    entry, cents = nearest_char(freq)
    best = brute_force_nearest(freq)
    best_cents = abs(1200 * math.log2(freq / best.frequency_hz))
    assert abs(cents) == pytest.approx(best_cents, abs=1e-9)


def test_note_names():
    assert note_name(0) == "A3"
    assert note_name(12) == "A4"
    assert note_name(3) == "C4"
    assert frequency_of(32 + 3) == pytest.approx(261.63, abs=0.01)
    assert note_name(94) == "G11"
    assert note_name(2) == "B3"
    assert note_name(1) == "A#3"
    with pytest.raises(DomainError):
        note_name(95)
    with pytest.raises(DomainError):
        note_name(-1)


def test_octave_span():
    table = build_table()
    assert octave_span(table) == pytest.approx(7.8333, abs=0.0005)
    assert octave_span(table.subtable(0, 12)) == pytest.approx(1.0, abs=1e-12)
    assert octave_span(table.subtable(0, 1)) == pytest.approx(1 / 12, abs=1e-12)


def test_table_rows_csv_layout():
    rows = list(table_rows())
    assert rows[0] == ["ascii", "char", "semitone", "frequency_hz", "note", "ultrasonic"]
    assert len(rows) == 96
    assert rows[1] == ["32", " ", "0", "220.00", "A3", "false"]
    assert rows[-1] == ["126", "~", "94", "50175.42", "G11", "true"]
