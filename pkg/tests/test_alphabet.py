import pytest

from accelerograph.alphabet import (
    LETTERS,
    AxisClass,
    GesturePrimitive,
    alphabet_table,
    entry_for,
    expected_axis_class,
    gesture_length,
    letter_frequencies,
    mean_gesture_length,
)


def test_table_has_26_distinct_letters():
    table = alphabet_table()
    assert len(table) == 26
    assert sorted(e.letter for e in table) == sorted(LETTERS)
    assert LETTERS == tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ")


def test_gestures_are_injective():
    gestures = [e.gesture_string for e in alphabet_table()]
    assert len(set(gestures)) == 26


@pytest.mark.parametrize(
    "letter, gesture, freq",
    [
        ("A", "U", 0.08167),
        ("Q", "DRULD", 0.00095),
        ("E", "LL", 0.12702),
        ("Z", "URLD", 0.00074),
        ("R", "LRR", 0.05987),
    ],
)
def test_known_entries(letter, gesture, freq):
    e = entry_for(letter)
    assert e.gesture_string == gesture
    assert e.rel_freq == freq


def test_frequencies_sum_to_one():
    total = sum(e.rel_freq for e in alphabet_table())
    assert total == pytest.approx(1.0, abs=1e-3)
    # the printed table sums to 99.999%, not a rounded 100%
    assert total == pytest.approx(0.99999, abs=1e-12)


@pytest.mark.parametrize("letter, n", [("V", 1), ("O", 4), ("Q", 5), ("A", 1), ("B", 2)])
def test_gesture_length(letter, n):
    assert gesture_length(letter) == n


def test_gesture_length_rejects_unknown():
    with pytest.raises(KeyError):
        gesture_length("7")
    with pytest.raises(KeyError):
        entry_for("AB")


def test_mean_gesture_length():
    # frequency-weighted mean primitives per letter
    assert mean_gesture_length() == pytest.approx(2.332, abs=0.005)
    explicit = sum(len(e.gesture) * e.rel_freq for e in alphabet_table())
    assert mean_gesture_length() == pytest.approx(explicit, rel=1e-12)


def test_letter_frequencies_matches_table():
    freqs = letter_frequencies()
    assert set(freqs) == set(LETTERS)
    assert freqs["E"] == 0.12702


def test_four_primitives():
    assert {p.value for p in GesturePrimitive} == {"L", "U", "R", "D"}
    assert GesturePrimitive.from_char("L") is GesturePrimitive.LEFT
    with pytest.raises(ValueError):
        GesturePrimitive.from_char("Z")


def test_axis_families_partition_alphabet():
    x = {l for l in LETTERS if expected_axis_class(l) is AxisClass.X_AXIS}
    y = {l for l in LETTERS if expected_axis_class(l) is AxisClass.Y_AXIS}
    both = {l for l in LETTERS if expected_axis_class(l) is AxisClass.BOTH_AXES}
    assert x == {"B", "C", "D", "E", "H", "R"}
    assert y == {"A", "I", "M", "V", "W"}
    assert len(both) == 15
    assert x | y | both == set(LETTERS)
