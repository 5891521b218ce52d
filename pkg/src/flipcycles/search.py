"""Generic pruned exhaustive search for rainbow cycles over any flip-graph oracle.

The oracle exposes a neighbor generator (state -> labeled neighbors), its
label universe, and a few optional structural hints.  The engine explores the
component(s) reachable from the given start states and looks for a directed
closed walk of the exact target length r*|universe|/labels-per-step along
which no label exceeds its budget r.  States are kept pairwise distinct, each
candidate cycle is searched only from its canonically smallest state, and the
whole search is deterministic: neighbors are ordered lexicographically by
entering-label multiset, then by state.

Outcomes are three-valued: FOUND (with a cycle), NONE (search space
exhausted), INCONCLUSIVE (node or wall-clock budget hit first).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional

from .core import Label,LabeledFlipCycle, label


@dataclass(frozen=True)
class FlipGraphOracle:
    """Neighbor generator plus metadata for one flip graph.

    ``neighbors(state)`` yields ``(next_state, entering_labels)`` pairs and
    must be symmetric: if t is a neighbor of s then s is a neighbor of t
    (with the reverse labels).  ``edge_state=True`` declares that states are
    sets *over the label universe* and that a step's entering labels are
    exactly the elements added; this enables a re-entry pruning rule.
    ``infeasible(start, state, budgets)``, when given, is a sound oracle-
    specific prune: return True only if no completion can exist.
    """

    family: str
    params: dict
    universe: frozenset
    labels_per_step: int
    neighbors: Callable[[object], Iterable[tuple[object, tuple[Label, ...]]]]
    edge_state: bool = False
    infeasible: Optional[Callable[[object, object, dict], bool]] = None

    def state_labels(self, state) -> Iterable[Label]:
        if not self.edge_state:
            raise ValueError("oracle states are not label sets")
        return state


class SearchStatus(Enum):
    FOUND = "found"
    NONE = "none"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SearchResult:
    status: SearchStatus
    cycle: Optional[LabeledFlipCycle] = None
    nodes: int = 0
    elapsed: float = 0.0
    note: str = ""

    def __bool__(self) -> bool:
        return self.status is SearchStatus.FOUND


class _BudgetExceeded(Exception):
    pass


def reachable_states(oracle: FlipGraphOracle, start_states: Iterable) -> list:
    """All states reachable from the starts, in canonical sorted order."""
    seen = set()
    frontier = sorted(set(start_states))
    seen.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            for t, _ in oracle.neighbors(s):
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = sorted(nxt)
    return sorted(seen)


def connected_components(oracle: FlipGraphOracle, all_states: Iterable) -> list[list]:
    """Partition states into connected components under the oracle's adjacency.

    Components are each sorted and returned in order of their smallest state.
    """
    remaining = set(all_states)
    components = []
    for s in sorted(remaining):
        if s not in remaining:
            continue
        comp = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for t, _ in oracle.neighbors(u):
                    if t in remaining and t not in comp:
                        comp.add(t)
                        nxt.append(t)
            frontier = nxt
        remaining -= comp
        components.append(sorted(comp))
    return components


def random_adjacency_symmetry_check(oracle: FlipGraphOracle, states, rng, samples=1000) -> bool:
    """Spot-check that adjacency is symmetric on randomly sampled states."""
    states = list(states)
    for _ in range(samples):
        s = rng.choice(states)
        for t, _ in oracle.neighbors(s):
            if not any(u == s for u, _ in oracle.neighbors(t)):
                return False
    return True


@dataclass
class _Compiled:
    states: list
    index: dict
    labels: list
    adj: list  # adj[i] = tuple of (j, label_mask, label_idx_tuple, labels)
    state_mask: list  # bitmask of label indices present in state (edge_state only)


def _compile(oracle: FlipGraphOracle, states: list) -> _Compiled:
    labels = sorted(label(*p) for p in oracle.universe)
    lab_idx = {lab: i for i, lab in enumerate(labels)}
    index = {s: i for i, s in enumerate(states)}
    adj = []
    for s in states:
        row = []
        for t, labs in oracle.neighbors(s):
            labs = tuple(sorted(label(*p) for p in labs))
            if t not in index:
                continue
            idxs = tuple(lab_idx[p] for p in labs)
            mask = 0
            for k in idxs:
                mask |= 1 << k
            row.append((labs, index[t], mask, idxs))
        row.sort()
        adj.append(tuple((j, m, ix, labs) for labs, j, m, ix in row))
    state_mask = []
    if oracle.edge_state:
        for s in states:
            m = 0
            for p in oracle.state_labels(s):
                m |= 1 << lab_idx[label(*p)]
            state_mask.append(m)
    return _Compiled(states, index, labels, adj, state_mask)


def exhaustive_rainbow_search(
    oracle: FlipGraphOracle,
    r: int,
    start_states: Iterable,
    budget: Optional[SearchBudget] = None,
) -> SearchResult:
    """Depth-first search for an r-rainbow cycle reachable from the starts.

    Returns NONE immediately when the target length r*|universe|/labels-per-
    step is not an integer.  Otherwise the reachable component(s) are searched
    exhaustively; the result is deterministic for a fixed oracle.
    """
    t0 = time.monotonic()
    total = r * len(oracle.universe)
    per = oracle.labels_per_step
    if total % per:
        return SearchResult(SearchStatus.NONE, note=f"target length {total}/{per} not integral")
    target = total // per

    states = reachable_states(oracle, start_states)
    comp = _compile(oracle, states)
    nstates = len(states)
    if target < 2 or nstates < 2:
        return SearchResult(SearchStatus.NONE, note="degenerate target")

    max_nodes = budget.max_nodes if budget else None
    max_seconds = budget.max_seconds if budget else None
    nodes = 0
    deadline = t0 + max_seconds if max_seconds is not None else None

    nlabels = len(comp.labels)
    full_budget = [r] * nlabels
    adj = comp.adj
    edge_state = oracle.edge_state
    state_mask = comp.state_mask
    hook = oracle.infeasible

    def budgets_dict(bud):
        return {comp.labels[i]: bud[i] for i in range(nlabels)}

    path: list[int] = []
    path_labels: list[tuple] = []
    on_path = bytearray(nstates)

    def dfs(v: int, cur: int, depth: int, bud: list[int], used_mask: int, start_absent: int) -> bool:
        nonlocal nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _BudgetExceeded("node budget")
        if deadline is not None and not nodes % 1024 and time.monotonic() > deadline:
            raise _BudgetExceeded("time budget")
        last = depth == target - 1
        for j, mask, idxs, labs in adj[cur]:
            if last:
                if j != v:
                    continue
            else:
                if j <= v or on_path[j]:
                    continue
            # used_mask holds exactly the saturated labels (budget 0), so one
            # bitwise test rejects arcs that would overuse a label.
            if mask & used_mask:
                continue
            if last:
                path_labels.append(labs)
                return True
            for k in idxs:
                bud[k] -= 1
            new_used = used_mask
            for k in idxs:
                if bud[k] == 0:
                    new_used |= 1 << k
            if edge_state:
                # Any start-state element that is absent from the next state
                # and has no remaining budget can never re-enter: dead end.
                absent = start_absent & ~state_mask[j]
                if absent & new_used:
                    for k in idxs:
                        bud[k] += 1
                    continue
            if hook is not None and hook(comp.states[v], comp.states[j], budgets_dict(bud)):
                for k in idxs:
                    bud[k] += 1
                continue
            on_path[j] = 1
            path.append(j)
            path_labels.append(labs)
            if dfs(v, j, depth + 1, bud, new_used, start_absent):
                return True
            path.pop()
            path_labels.pop()
            on_path[j] = 0
            for k in idxs:
                bud[k] += 1
        return False

    try:
        for v in range(nstates):
            if hook is not None and hook(comp.states[v], comp.states[v], budgets_dict(full_budget)):
                continue
            start_absent = state_mask[v] if edge_state else 0
            path[:] = [v]
            path_labels.clear()
            on_path[:] = bytes(nstates)
            on_path[v] = 1
            if dfs(v, v, 0, full_budget[:], 0, start_absent):
                cycle = LabeledFlipCycle(
                    family=oracle.family,
                    params=oracle.params,
                    states=tuple(comp.states[i] for i in path),
                    step_labels=tuple(path_labels),
                    r=r,
                )
                return SearchResult(
                    SearchStatus.FOUND, cycle, nodes, time.monotonic() - t0
                )
    except _BudgetExceeded as exc:
        return SearchResult(
            SearchStatus.INCONCLUSIVE,
            None,
            nodes,
            time.monotonic() - t0,
            note=str(exc),
        )
    return SearchResult(SearchStatus.NONE, None, nodes, time.monotonic() - t0)
