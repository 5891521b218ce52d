from collections import Counter
from math import comb

import pytest

from flipcycles.core import DomainError, verify_rainbow
from flipcycles.triangulations import (
    apply_flip,
    enumerate_triangulations,
    flip_sequence,
    is_triangulation,
    rainbow1_cycle,
    rainbow2_cycle,
    star,
    universe,
)


def test_star_examples():
    assert star(6, 1) == ((1, 3), (1, 4), (1, 5))
    assert star(4, 1) == star(4, 3) == ((1, 3),)
    assert star(3, 2) == ()


def test_universe_size():
    for n in range(4, 10):
        assert len(universe(n)) == comb(n, 2) - n


def test_flip_sequence_literals():
    assert flip_sequence(6, 1) == (
        ((1, 3), (2, 4)),
        ((1, 4), (2, 5)),
        ((1, 5), (2, 6)),
    )
    assert flip_sequence(4, 3) == (((1, 3), (2, 4)),)


def test_flip_sequence_moves_star_to_star():
    for n in (5, 6, 7):
        for i in range(1, n + 1):
            state = star(n, i)
            for removed, inserted in flip_sequence(n, i):
                state = apply_flip(n, state, removed, inserted)
            assert state == star(n, i % n + 1)


def test_flip_sequence_composition_closes():
    n = 7
    state = star(n, 3)
    for i in list(range(3, n + 1)) + [1, 2]:
        for removed, inserted in flip_sequence(n, i):
            state = apply_flip(n, state, removed, inserted)
    assert state == star(n, 3)


def test_apply_flip_validates():
    state = star(6, 1)
    with pytest.raises(DomainError):
        apply_flip(6, state, (2, 4), (1, 3))  # removes absent diagonal
    with pytest.raises(DomainError):
        apply_flip(6, state, (1, 3), (1, 4))  # inserts present diagonal
    with pytest.raises(DomainError):
        apply_flip(6, state, (1, 3), (2, 5))  # not the opposite diagonal


def test_rainbow1_small_cases():
    for n, length in ((4, 2), (5, 5), (6, 9)):
        cyc = rainbow1_cycle(n)
        assert len(cyc) == length
        assert verify_rainbow(cyc).is_rainbow_r


def test_rainbow1_label_bookkeeping():
    # the labels used are exactly those of the smaller polygon, plus the new
    # point's diagonals, plus the one restored long diagonal
    for n in (5, 6, 7, 8):
        cyc = rainbow1_cycle(n)
        used = set(cyc.label_multiset())
        prev = set(Counter(rainbow1_cycle(n - 1).label_multiset())) if n > 4 else set()
        new_point = {(i, n) for i in range(2, n - 1)}
        assert used == prev | new_point | {(1, n - 1)} == universe(n)


def test_rainbow2_lengths_and_validity():
    for n in (7, 8, 9):
        cyc = rainbow2_cycle(n)
        assert len(cyc) == 2 * (comb(n, 2) - n)
        assert verify_rainbow(cyc).is_rainbow_r


def test_rainbow2_below_seven_refused_or_invalid():
    with pytest.raises(DomainError):
        rainbow2_cycle(6)
    # behind the flag the walk exists but revisits states: not a rainbow cycle
    cyc = rainbow2_cycle(6, allow_below_proven=True)
    report = verify_rainbow(cyc)
    assert not report.is_rainbow_r
    assert any(kind == "repeated-state" for kind, _ in report.violations)


def test_enumeration_counts():
    for n, count in ((4, 2), (5, 5), (6, 14), (7, 42), (8, 132)):
        assert len(enumerate_triangulations(n)) == count
    assert all(is_triangulation(6, t) for t in enumerate_triangulations(6))
    with pytest.raises(DomainError):
        enumerate_triangulations(15)


def test_every_cycle_state_is_valid():
    cyc = rainbow1_cycle(8)
    assert all(is_triangulation(8, s) for s in cyc.states)
    cyc = rainbow2_cycle(7)
    assert all(is_triangulation(7, s) for s in cyc.states)
