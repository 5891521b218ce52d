"""Shared vocabulary for rainbow cycles in flip graphs.

A flip graph has combinatorial objects as vertices and minimal local
transformations (flips) as arcs.  Every arc is labeled with the element(s)
that *enter* the object in that flip.  An r-rainbow cycle is a directed
closed walk with pairwise distinct states along which every label of the
family's label universe appears exactly r times.

This module holds the pieces every family shares: canonical labels,
modular helpers, the ``LabeledFlipCycle`` container, and the verifier.
The verifier is independent of the construction code: it recomputes the
entering labels of every step from the two states alone, via a small
per-family rule registered in ``FAMILIES``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

Label = tuple[int, int]


class DomainError(ValueError):
    """Raised when an argument violates a documented precondition."""


def label(x: int, y: int) -> Label:
    """Canonical unordered pair: distinct 1-based identifiers, smaller first."""
    if x == y:
        raise DomainError(f"degenerate pair {{{x},{y}}}")
    return (x, y) if x < y else (y, x)


def cyclic_dist(n: int, pair: Iterable[int]) -> int:
    """Cyclic distance min{y-x, x-y} (mod n) of a pair on the cycle [1..n]."""
    if n < 3:
        raise DomainError(f"modulus {n} < 3")
    x, y = pair
    if not (1 <= x <= n and 1 <= y <= n):
        raise DomainError(f"pair {{{x},{y}}} out of range [1,{n}]")
    label(x, y)
    return min((y - x) % n, (x - y) % n)


def mod1(x: int, n: int) -> int:
    """Reduce mod n onto the representatives {1, ..., n}."""
    return (x - 1) % n + 1


def sigma(n: int, s: Iterable[int], shift: int = 1) -> set[int]:
    """Shift a subset of [1..n] elementwise by ``shift`` mod n."""
    s = set(s)
    if any(not (1 <= x <= n) for x in s):
        raise DomainError(f"subset {sorted(s)} not contained in [1,{n}]")
    out = {mod1(x + shift, n) for x in s}
    assert len(out) == len(s)
    return out


@dataclass(frozen=True)
class LabeledFlipCycle:
    """A closed walk in a flip graph together with its per-step entering labels.

    ``states[i] -> states[(i+1) % len]`` is the i-th step and ``step_labels[i]``
    is the multiset (tuple, sorted) of labels entering on that step: one label
    for all families except matchings, where a flip exchanges two edges.
    """

    family: str
    params: dict
    states: tuple
    step_labels: tuple[tuple[Label, ...], ...]
    r: int

    def __post_init__(self):
        if len(self.states) != len(self.step_labels):
            raise DomainError("states and step_labels must have equal length")
        if not self.states:
            raise DomainError("empty cycle")

    def __len__(self) -> int:
        return len(self.states)

    def label_multiset(self) -> Counter:
        c: Counter = Counter()
        for labs in self.step_labels:
            c.update(labs)
        return c


@dataclass
class RainbowReport:
    """Outcome of verifying a cycle against a label universe and count r."""

    is_rainbow_r: bool
    multiplicity_by_label: dict[Label, int]
    violations: list[tuple[str, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.is_rainbow_r


@dataclass(frozen=True)
class FamilyRule:
    """What the verifier needs to know about one flip-graph family.

    ``step_labels(params, s, t)`` returns the entering labels of the flip
    s -> t, or None if the two states are not adjacent; it must validate both
    states.  ``universe(params)`` is the set of all labels.
    """

    name: str
    labels_per_step: int
    universe: Callable[[dict], set]
    step_labels: Callable[[dict, object, object], Optional[tuple]]
    state_ok: Callable[[dict, object], bool]


FAMILIES: dict[str, FamilyRule] = {}


def register_family(rule: FamilyRule) -> FamilyRule:
    FAMILIES[rule.name] = rule
    return rule


def family_rule(name: str) -> FamilyRule:
    try:
        return FAMILIES[name]
    except KeyError:
        raise DomainError(f"unknown flip family {name!r}") from None


def verify_rainbow(
    cycle: LabeledFlipCycle,
    universe: Optional[set] = None,
    r: Optional[int] = None,
) -> RainbowReport:
    """Check that ``cycle`` is an r-rainbow cycle of its family.

    Checks, in order: the cycle length equals r*|universe|/labels-per-step;
    all states are valid and pairwise distinct; every cyclically consecutive
    pair is a legal flip whose recomputed entering labels equal the declared
    ones; every universe label appears exactly r times and no label outside
    the universe appears.
    """
    rule = family_rule(cycle.family)
    if r is None:
        r = cycle.r
    if universe is None:
        universe = rule.universe(cycle.params)
    universe = {label(*p) for p in universe}
    violations: list[tuple[str, str]] = []

    total = r * len(universe)
    expected_len = total // rule.labels_per_step
    if total % rule.labels_per_step or len(cycle) != expected_len:
        violations.append(
            ("wrong-length", f"length {len(cycle)}, expected {r}*{len(universe)}/{rule.labels_per_step}")
        )

    seen = set()
    for s in cycle.states:
        if s in seen:
            violations.append(("repeated-state", repr(s)))
        seen.add(s)

    n_states = len(cycle.states)
    for i in range(n_states):
        s = cycle.states[i]
        t = cycle.states[(i + 1) % n_states]
        if not rule.state_ok(cycle.params, s):
            violations.append(("invalid-state", f"step {i}: {s!r}"))
            continue
        got = rule.step_labels(cycle.params, s, t)
        if got is None:
            violations.append(("illegal-flip", f"step {i}: {s!r} -> {t!r}"))
            continue
        declared = tuple(sorted(label(*p) for p in cycle.step_labels[i]))
        if tuple(sorted(got)) != declared:
            violations.append(
                ("label-mismatch", f"step {i}: declared {declared}, recomputed {tuple(sorted(got))}")
            )

    counts = cycle.label_multiset()
    for lab in sorted(counts):
        if lab not in universe:
            violations.append(("foreign-label", repr(lab)))
    for lab in sorted(universe):
        if counts.get(lab, 0) != r:
            violations.append(("label-multiplicity", f"{lab}: {counts.get(lab, 0)} != {r}"))

    return RainbowReport(
        is_rainbow_r=not violations,
        multiplicity_by_label=dict(counts),
        violations=violations,
    )
