"""ABC notation export and import for tone sequences.

Dialect: headers X, T, Q, L, K (always ``K:none``), then a body of unit-length
notes, 64 per line, sharps only. Octaves up to B4 are uppercase with commas
(``A,`` is the 220 Hz base tone), C5 and above lowercase with apostrophes.
The parser also accepts the non-canonical spelling of a pitch (``G'`` for
``g``, ``c,`` for ``C``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from tonalang.errors import DomainError, EncodingError, ParseError, PitchRangeError
from tonalang.freqmap import ALPHABET_SIZE, FIRST_CODE
from tonalang.synth import SynthParams

TOKENS_PER_LINE = 64

_NATURAL_OFFSETS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_SHARP_SPELLING = [("C", False), ("C", True), ("D", False), ("D", True), ("E", False),
                   ("F", False), ("F", True), ("G", False), ("G", True), ("A", False),
                   ("A", True), ("B", False)]
# A3 is semitone 0; C4 sits 3 semitones higher
_C4_SEMITONE = 3
_HEADER = re.compile(r"^[A-Za-z]:")
_NOTE = re.compile(r"(\^?)([A-Ga-g])([',]*)")


@dataclass(frozen=True)
class AbcNote:
    pitch_class: str
    sharp: bool = False
    octave_offset: int = 0  # octaves above the uppercase (C4..B4) octave

    @property
    def semitone_index(self) -> int:
        return (_C4_SEMITONE + 12 * self.octave_offset
                + _NATURAL_OFFSETS[self.pitch_class] + int(self.sharp))

    @classmethod
    def from_semitone(cls, semitone_index: int) -> AbcNote:
        if not 0 <= semitone_index < ALPHABET_SIZE:
            raise DomainError(f"semitone {semitone_index} outside 0..{ALPHABET_SIZE - 1}")
        octave, pc = divmod(semitone_index - _C4_SEMITONE, 12)
        letter, sharp = _SHARP_SPELLING[pc]
        return cls(letter, sharp, octave)

    def token(self) -> str:
        accidental = "^" if self.sharp else ""
        if self.octave_offset <= 0:
            return accidental + self.pitch_class + "," * -self.octave_offset
        return accidental + self.pitch_class.lower() + "'" * (self.octave_offset - 1)


@dataclass
class AbcDocument:
    notes: list[AbcNote] = field(default_factory=list)
    reference_number: int = 1
    title: str = "Tonal message"
    tempo_bpm: int = 1200
    unit_length: Fraction = Fraction(1, 4)
    key: str = "none"

    def render(self) -> str:
        lines = [
            f"X:{self.reference_number}",
            f"T:{self.title}",
            f"Q:1/4={self.tempo_bpm}",
            f"L:{self.unit_length.numerator}/{self.unit_length.denominator}",
            f"K:{self.key}",
        ]
        tokens = [n.token() for n in self.notes]
        for start in range(0, len(tokens), TOKENS_PER_LINE):
            lines.append(" ".join(tokens[start:start + TOKENS_PER_LINE]))
        return "\n".join(lines) + "\n"


def tempo_for(params: SynthParams) -> int:
    """Quarter-note BPM at which one L:1/4 note lasts symbol + gap."""
    return max(1, round(60.0 / (params.symbol_duration_s + params.gap_duration_s)))


def to_abc(text: str, params: SynthParams | None = None, title: str = "Tonal message",
           reference_number: int = 1) -> str:
    params = params or SynthParams()
    notes = []
    for position, ch in enumerate(text):
        index = ord(ch) - FIRST_CODE
        if not 0 <= index < ALPHABET_SIZE:
            raise EncodingError(
                f"character at index {position} (code point U+{ord(ch):04X}) has no tone"
            )
        notes.append(AbcNote.from_semitone(index))
    doc = AbcDocument(notes, reference_number=reference_number, title=title,
                      tempo_bpm=tempo_for(params))
    return doc.render()


def parse_notes(document: str) -> list[AbcNote]:
    notes = []
    for line_no, line in enumerate(document.splitlines(), start=1):
        if _HEADER.match(line) or line.lstrip().startswith("%"):
            continue
        col = 0
        while col < len(line):
            if line[col].isspace():
                col += 1
                continue
            m = _NOTE.match(line, col)
            if m is None:
                end = col + 1
                while end < len(line) and not line[end].isspace():
                    end += 1
                raise ParseError("malformed note token", line_no, col + 1, line[col:end])
            accidental, letter, marks = m.groups()
            octave = (0 if letter.isupper() else 1) + marks.count("'") - marks.count(",")
            note = AbcNote(letter.upper(), bool(accidental), octave)
            if not 0 <= note.semitone_index < ALPHABET_SIZE:
                raise PitchRangeError(
                    f"pitch outside the alphabet (semitone {note.semitone_index})",
                    line_no, col + 1, m.group(0),
                )
            notes.append(note)
            col = m.end()
    return notes


def parse_abc(document: str) -> str:
    return "".join(chr(FIRST_CODE + n.semitone_index) for n in parse_notes(document))
