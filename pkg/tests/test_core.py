import pytest

from flipcycles import triangulations
from flipcycles.core import (
    DomainError,
    LabeledFlipCycle,
    cyclic_dist,
    label,
    sigma,
    verify_rainbow,
)


def test_label_canonical_and_degenerate():
    assert label(5, 2) == (2, 5)
    with pytest.raises(DomainError):
        label(3, 3)


def test_cyclic_dist_values():
    assert cyclic_dist(17, (1, 15)) == 3
    assert cyclic_dist(9, (1, 9)) == 1
    assert cyclic_dist(7, (2, 5)) == 3
    with pytest.raises(DomainError):
        cyclic_dist(7, (2, 2))
    with pytest.raises(DomainError):
        cyclic_dist(7, (0, 3))


def test_sigma_shift():
    assert sigma(7, {1, 7}, 1) == {1, 2}
    assert sigma(7, {1, 3}, 7) == {1, 3}
    assert sigma(5, {2, 4}, 3) == {5, 2}
    with pytest.raises(DomainError):
        sigma(5, {0, 2}, 1)


def test_verify_detects_repeated_state():
    good = triangulations.rainbow1_cycle(6)
    states = list(good.states)
    states[3] = states[0]
    bad = LabeledFlipCycle(good.family, good.params, tuple(states), good.step_labels, 1)
    report = verify_rainbow(bad)
    assert not report.is_rainbow_r
    assert any(kind == "repeated-state" for kind, _ in report.violations)


def test_verify_detects_wrong_multiplicity():
    good = triangulations.rainbow1_cycle(6)
    report = verify_rainbow(good, r=2)
    assert not report.is_rainbow_r
    kinds = {kind for kind, _ in report.violations}
    assert "wrong-length" in kinds and "label-multiplicity" in kinds


def test_verify_detects_label_mismatch():
    good = triangulations.rainbow1_cycle(6)
    labels = list(good.step_labels)
    labels[0], labels[1] = labels[1], labels[0]
    bad = LabeledFlipCycle(good.family, good.params, good.states, tuple(labels), 1)
    report = verify_rainbow(bad)
    assert not report.is_rainbow_r
    assert any(kind == "label-mismatch" for kind, _ in report.violations)


def test_verify_fig_n6_cycle():
    cyc = triangulations.rainbow1_cycle(6)
    report = verify_rainbow(cyc, universe=triangulations.universe(6), r=1)
    assert report.is_rainbow_r
    assert len(cyc) == 9
    assert all(count == 1 for count in report.multiplicity_by_label.values())


def test_unknown_family_rejected():
    cyc = LabeledFlipCycle("nosuch", {"n": 3}, ((1,),), (((1, 2),),), 1)
    with pytest.raises(DomainError):
        verify_rainbow(cyc)
