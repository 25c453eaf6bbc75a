"""Letter alphabet: gesture strings and relative letter frequencies.

Each letter maps to a short sequence of rectilinear phone tilts
(L/U/R/D).  The table is part of the method, so it ships compiled-in
rather than as a data file.  Frequencies are stored as fractions, not
percentages.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class GesturePrimitive(Enum):
    """One rectilinear tilt of the phone."""

    LEFT = "L"
    UP = "U"
    RIGHT = "R"
    DOWN = "D"

    @classmethod
    def from_char(cls, ch: str) -> "GesturePrimitive":
        return cls(ch)


class AxisClass(Enum):
    """Axis family a gesture curve is routed to for comparison."""

    X_AXIS = "x"
    Y_AXIS = "y"
    BOTH_AXES = "both"


_X_PRIMS = {GesturePrimitive.LEFT, GesturePrimitive.RIGHT}
_Y_PRIMS = {GesturePrimitive.UP, GesturePrimitive.DOWN}


@dataclass(frozen=True)
class AlphabetEntry:
    letter: str
    gesture: tuple[GesturePrimitive, ...]
    rel_freq: float

    @property
    def gesture_string(self) -> str:
        return "".join(p.value for p in self.gesture)


# (letter, gesture string, relative frequency)
_TABLE = (
    ("A", "U", 0.08167),
    ("B", "RR", 0.01492),
    ("C", "L", 0.02782),
    ("D", "R", 0.04253),
    ("E", "LL", 0.12702),
    ("F", "LU", 0.02228),
    ("G", "UL", 0.02015),
    ("H", "RL", 0.06094),
    ("I", "UD", 0.06966),
    ("J", "RD", 0.00153),
    ("K", "LUD", 0.00772),
    ("L", "LD", 0.04025),
    ("M", "UU", 0.02406),
    ("N", "RUL", 0.06749),
    ("O", "ULDR", 0.07507),
    ("P", "DR", 0.01929),
    ("Q", "DRULD", 0.00095),
    ("R", "LRR", 0.05987),
    ("S", "ULD", 0.06327),
    ("T", "DLR", 0.09056),
    ("U", "LDR", 0.02758),
    ("V", "D", 0.00978),
    ("W", "DD", 0.02360),
    ("X", "UDLR", 0.00150),
    ("Y", "LRD", 0.01974),
    ("Z", "URLD", 0.00074),
)

_ALPHABET = tuple(
    AlphabetEntry(
        letter,
        tuple(GesturePrimitive.from_char(c) for c in gesture),
        freq,
    )
    for letter, gesture, freq in _TABLE
)

_BY_LETTER = {entry.letter: entry for entry in _ALPHABET}

LETTERS = tuple(entry.letter for entry in _ALPHABET)


def alphabet_table() -> tuple[AlphabetEntry, ...]:
    """All 26 alphabet entries, in letter order."""
    return _ALPHABET


def entry_for(letter: str) -> AlphabetEntry:
    """Entry for one letter; raises KeyError for anything outside A-Z."""
    return _BY_LETTER[letter.upper()]


def gesture_length(letter: str) -> int:
    """Number of primitives in the letter's gesture."""
    return len(entry_for(letter).gesture)


def mean_gesture_length() -> float:
    """Frequency-weighted mean number of primitives per letter (~2.332)."""
    return sum(len(e.gesture) * e.rel_freq for e in _ALPHABET)


def letter_frequencies() -> dict[str, float]:
    """Relative frequency per letter, as printed fractions (sum ~1)."""
    return {e.letter: e.rel_freq for e in _ALPHABET}


def expected_axis_class(letter: str) -> AxisClass:
    """Axis family implied by the gesture string.

    A gesture whose primitives all tilt about one axis belongs to that
    single-axis family; anything mixed belongs to the both-axes family.
    """
    prims = set(entry_for(letter).gesture)
    if prims <= _X_PRIMS:
        return AxisClass.X_AXIS
    if prims <= _Y_PRIMS:
        return AxisClass.Y_AXIS
    return AxisClass.BOTH_AXES
