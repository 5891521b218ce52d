"""JSON and DOT serialization for states and labeled flip cycles.

Cycle schema::

    {"family": str, "params": {...}, "states": [...], "labels": [[[a,b], ...], ...], "r": int}

``labels[i]`` lists the label pairs entering on the step from ``states[i]``
to ``states[(i+1) % len]``.  Single states serialize as
``{"family": str, "n": int, "state": [...]}``.  States are sorted lists of
element pairs (or of elements, for subsets), except permutations, whose
state is the one-line sequence itself.  Families with extra parameters put
them in ``params``: point coordinates for plane trees, k for subsets.
"""
from __future__ import annotations

import json
from typing import Any

from .core import DomainError, LabeledFlipCycle

_PAIR_STATE_FAMILIES = {"triangulation", "planetree", "matching"}


def _state_to_json(family: str, state) -> list:
    if family in _PAIR_STATE_FAMILIES:
        return [list(p) for p in state]
    return list(state)


def _state_from_json(family: str, raw) -> tuple:
    if family in _PAIR_STATE_FAMILIES:
        return tuple(sorted(tuple(p) for p in raw))
    return tuple(raw)


def state_size(family: str, params: dict) -> int:
    if family == "matching":
        return 2 * params["m"]
    if family == "planetree":
        return len(params["points"])
    return params["n"]


def state_to_json(family: str, params: dict, state) -> dict:
    return {
        "family": family,
        "n": state_size(family, params),
        "state": _state_to_json(family, state),
    }


def cycle_to_json(cycle: LabeledFlipCycle) -> dict[str, Any]:
    params = dict(cycle.params)
    if "points" in params:
        params["points"] = [list(p) for p in params["points"]]
    return {
        "family": cycle.family,
        "params": params,
        "states": [_state_to_json(cycle.family, s) for s in cycle.states],
        "labels": [[list(p) for p in labs] for labs in cycle.step_labels],
        "r": cycle.r,
    }


def cycle_from_json(data: dict) -> LabeledFlipCycle:
    try:
        family = data["family"]
        params = dict(data["params"])
        if "points" in params:
            params["points"] = tuple(tuple(p) for p in params["points"])
        states = tuple(_state_from_json(family, s) for s in data["states"])
        labels = tuple(
            tuple(tuple(p) for p in labs) for labs in data["labels"]
        )
        return LabeledFlipCycle(family, params, states, labels, int(data["r"]))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed cycle JSON: {exc}") from exc


def dumps(cycle: LabeledFlipCycle) -> str:
    return json.dumps(cycle_to_json(cycle), sort_keys=True, indent=None, separators=(",", ":")) + "\n"


def loads(text: str) -> LabeledFlipCycle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"not JSON: {exc}") from exc
    return cycle_from_json(data)


def _fmt_state(family: str, state) -> str:
    if family in _PAIR_STATE_FAMILIES:
        return " ".join(f"{a}-{b}" for a, b in state)
    return " ".join(str(x) for x in state)


def to_dot(cycle: LabeledFlipCycle) -> str:
    """The cycle as a directed graph: states as nodes, labeled flip arcs."""
    lines = [
        "digraph flipcycle {",
        '  rankdir=LR; node [shape=box, fontname="monospace"];',
        f'  label="{cycle.family} r={cycle.r} length={len(cycle)}";',
    ]
    for i, s in enumerate(cycle.states):
        lines.append(f'  s{i} [label="{_fmt_state(cycle.family, s)}"];')
    m = len(cycle.states)
    for i in range(m):
        labs = "  ".join(f"{{{a},{b}}}" for a, b in cycle.step_labels[i])
        lines.append(f'  s{i} -> s{(i + 1) % m} [label="{labs}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
