"""Character <-> frequency mapping on the equal-tempered semitone ladder.

Printable ASCII 32..126 is placed one semitone apart starting at 220 Hz,
so code ``c`` sounds at ``220 * 2 ** ((c - 32) / 12)`` Hz.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator, Sequence

from tonalang.errors import DomainError

BASE_FREQUENCY_HZ = 220.0
FIRST_CODE = 32
LAST_CODE = 126
ALPHABET_SIZE = LAST_CODE - FIRST_CODE + 1
SEMITONE_RATIO = 2.0 ** (1.0 / 12.0)
AUDIBLE_LIMIT_HZ = 20000.0

# 220 Hz is A3 = MIDI 57.
_BASE_MIDI = 57
_PITCH_CLASSES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


@dataclass(frozen=True)
class CharTone:
    ascii_code: int
    character: str
    semitone_index: int
    frequency_hz: float
    note_name: str
    ultrasonic: bool


class FrequencyTable(Sequence[CharTone]):
    """Ordered run of consecutive :class:`CharTone` entries.

    The canonical table from :func:`build_table` holds all 95 characters;
    :meth:`subtable` yields contiguous slices of it.
    """

    def __init__(self, entries: Sequence[CharTone]):
        entries = tuple(entries)
        if not entries:
            raise DomainError("frequency table must not be empty")
        for prev, cur in zip(entries, entries[1:]):
            if cur.semitone_index != prev.semitone_index + 1:
                raise DomainError(
                    f"table entries must be consecutive semitones, got "
                    f"{prev.semitone_index} then {cur.semitone_index}"
                )
        self.entries = entries
        self._by_char = {e.character: e for e in entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index):  # type: ignore[override]
        return self.entries[index]

    def __iter__(self) -> Iterator[CharTone]:
        return iter(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrequencyTable) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return (f"FrequencyTable({len(self)} entries, "
                f"{self.entries[0].character!r}..{self.entries[-1].character!r})")

    @property
    def frequencies(self) -> list[float]:
        return [e.frequency_hz for e in self.entries]

    def lookup(self, character: str) -> CharTone | None:
        return self._by_char.get(character)

    def subtable(self, start: int, stop: int) -> FrequencyTable:
        """Entries with ``start <= semitone_index <= stop`` (inclusive)."""
        first = self.entries[0].semitone_index
        return FrequencyTable(self.entries[start - first:stop - first + 1])


def _check_code(ascii_code: int) -> None:
    if not FIRST_CODE <= ascii_code <= LAST_CODE:
        raise DomainError(
            f"ascii code {ascii_code} outside mappable range {FIRST_CODE}..{LAST_CODE}"
        )


def frequency_of(ascii_code: int) -> float:
    _check_code(ascii_code)
    return BASE_FREQUENCY_HZ * 2.0 ** ((ascii_code - FIRST_CODE) / 12.0)


def note_name(semitone_index: int) -> str:
    """Scientific pitch name, sharps only, with 0 -> ``"A3"``."""
    if not 0 <= semitone_index < ALPHABET_SIZE:
        raise DomainError(f"semitone index {semitone_index} outside 0..{ALPHABET_SIZE - 1}")
    midi = _BASE_MIDI + semitone_index
    return f"{_PITCH_CLASSES[midi % 12]}{midi // 12 - 1}"


@lru_cache(maxsize=None)
def build_table() -> FrequencyTable:
    entries = []
    for code in range(FIRST_CODE, LAST_CODE + 1):
        index = code - FIRST_CODE
        freq = frequency_of(code)
        entries.append(CharTone(
            ascii_code=code,
            character=chr(code),
            semitone_index=index,
            frequency_hz=freq,
            note_name=note_name(index),
            ultrasonic=freq > AUDIBLE_LIMIT_HZ,
        ))
    return FrequencyTable(entries)


def cents_between(frequency_hz: float, reference_hz: float) -> float:
    return 1200.0 * math.log2(frequency_hz / reference_hz)


def nearest_char(frequency_hz: float,
                 table: FrequencyTable | None = None) -> tuple[CharTone, float]:
    """Closest entry in the cents metric, with the signed cents offset.

    Frequencies outside the table clamp to the first or last entry.
    """
    if not frequency_hz > 0:
        raise DomainError(f"frequency must be positive, got {frequency_hz}")
    table = table or build_table()
    # tones are log-spaced, so the nearest semitone is a rounding away
    first = table[0]
    steps = 12.0 * math.log2(frequency_hz / first.frequency_hz)
    position = min(max(round(steps), 0), len(table) - 1)
    entry = table[position]
    return entry, cents_between(frequency_hz, entry.frequency_hz)


def octave_span(table: FrequencyTable) -> float:
    return math.log2(table[-1].frequency_hz / table[0].frequency_hz)


def load_golden_table(path=None) -> dict[int, float]:
    """Reference frequencies (2 decimals) keyed by ASCII code.

    Defaults to the fixture shipped with the package.
    """
    if path is None:
        text = resources.files("tonalang").joinpath("data/golden_table.csv").read_text()
    else:
        with open(path, newline="") as fh:
            text = fh.read()
    rows = csv.DictReader(text.splitlines())
    return {int(r["ascii"]): float(r["frequency_hz"]) for r in rows}


def check_golden(golden: dict[int, float], table: FrequencyTable | None = None,
                 tolerance_hz: float = 0.01) -> list[tuple[int, float, float]]:
    """Entries whose generated frequency misses the reference; empty when all match."""
    table = table or build_table()
    mismatches = []
    for entry in table:
        ref = golden.get(entry.ascii_code)
        if ref is None or abs(entry.frequency_hz - ref) > tolerance_hz + 1e-9:
            mismatches.append((entry.ascii_code, entry.frequency_hz,
                               float("nan") if ref is None else ref))
    missing = set(golden) - {e.ascii_code for e in table}
    mismatches.extend((code, float("nan"), golden[code]) for code in sorted(missing))
    return mismatches


def table_rows(table: FrequencyTable | None = None) -> Iterator[list[str]]:
    """CSV rows (header first) for the ``table`` subcommand."""
    yield ["ascii", "char", "semitone", "frequency_hz", "note", "ultrasonic"]
    for e in table or build_table():
        yield [str(e.ascii_code), e.character, str(e.semitone_index),
               f"{e.frequency_hz:.2f}", e.note_name, "true" if e.ultrasonic else "false"]
