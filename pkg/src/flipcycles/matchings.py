"""Rainbow cycles in the flip graph of non-crossing perfect matchings.

2m points sit equidistantly on a circle, labeled 1..2m clockwise; states are
the non-crossing perfect matchings on them (Catalan(m) many).  A flip picks
two matching edges whose four endpoints admit the other non-crossing
re-pairing and exchanges them; the arc carries *two* labels, the entering
edges.  Matching edges always join points of odd difference.

Everything here is exact and combinatorial.  The geometric notions are
encoded as index arithmetic: the length of an edge is the number of other
matching edges on its smaller side; a flip quadrilateral "contains the
center" exactly when each arc between consecutive corners spans fewer than
half the points; rotating the picture by one position is the shift i -> i+1
mod 2m.  The weight invariant (signed sum of edge lengths) changes by
exactly +-(m-2) under centered flips, which confines every centered-flip
component to one merged weight class and underpins the exhaustive
non-existence searches.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

from .core import (
    DomainError,
    FamilyRule,
    Label,
    LabeledFlipCycle,
    label,
    mod1,
    register_family,
    sigma,
)
from .search import (
    FlipGraphOracle,
    SearchBudget,
    SearchResult,
    SearchStatus,
    connected_components,
    exhaustive_rainbow_search,
)

FAMILY = "matching"

MAX_ENUM_M = 12


def universe(m: int) -> set[Label]:
    """All m*m chords with an even number of points on either side."""
    n = 2 * m
    return {
        label(i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (j - i) % 2
    }


def is_matching(m: int, state) -> bool:
    n = 2 * m
    edges = list(state)
    if len(edges) != m:
        return False
    seen = set()
    for e in edges:
        a, b = e
        if not (1 <= a < b <= n) or (b - a) % 2 == 0:
            return False
        seen.update(e)
    if len(seen) != n:
        return False
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1 :]:
            if a < c < b < d or c < a < d < b:
                return False
    return True


def edge_length(m: int, e) -> int:
    """Number of other matching edges on the smaller side of the chord.

    Independent of the matching containing the edge: the points on each side
    must be matched among themselves, so each side holds half its points."""
    a, b = label(*e)
    n = 2 * m
    d = min(b - a, n - (b - a))
    if d % 2 == 0:
        raise DomainError(f"{(a, b)} is not a matching edge for m={m}")
    return (d - 1) // 2


def edge_sign(m: int, e) -> int:
    """+1 if the endpoint seeing the center on its right is odd, else -1."""
    a, b = label(*e)
    n = 2 * m
    i = a if b - a < n - (b - a) else b
    return 1 if i % 2 else -1


def weight(m: int, state) -> int:
    """Signed sum of edge lengths; lies in [-(m-2), m-2] for even m."""
    return sum(edge_sign(m, e) * edge_length(m, e) for e in state)


def rotate(m: int, state, shift: int = 1) -> tuple:
    n = 2 * m
    return tuple(
        sorted(label(mod1(a + shift, n), mod1(b + shift, n)) for a, b in state)
    )


def quad_gaps(m: int, corners) -> tuple[int, int, int, int]:
    p = sorted(corners)
    if len(set(p)) != 4:
        raise DomainError(f"quadrilateral needs 4 distinct corners, got {corners}")
    n = 2 * m
    return (p[1] - p[0] - 1, p[2] - p[1] - 1, p[3] - p[2] - 1, n - p[3] + p[0] - 1)


def quad_side_lengths(m: int, corners) -> tuple[int, int, int, int]:
    p = sorted(corners)
    sides = [(p[0], p[1]), (p[1], p[2]), (p[2], p[3]), (p[3], p[0])]
    return tuple(edge_length(m, s) for s in sides)


def is_centered(m: int, corners) -> bool:
    """A flip 4-gon is centered when its side lengths sum to m-2 (the maximum)."""
    return sum(quad_side_lengths(m, corners)) == m - 2


def contains_center(m: int, corners) -> bool:
    """Geometric counterpart: every arc between consecutive corners spans
    fewer than half the circle.  Equivalent to ``is_centered``."""
    return all(g <= m - 2 for g in quad_gaps(m, corners))


def flip(m: int, state, e1, e2) -> tuple[tuple, tuple[Label, Label]]:
    """Exchange two matching edges for the other non-crossing re-pairing.

    Raises if the re-paired edges leave an odd number of points on a side or
    cross a remaining edge."""
    e1, e2 = label(*e1), label(*e2)
    edges = set(state)
    if e1 not in edges or e2 not in edges or e1 == e2:
        raise DomainError(f"flip needs two distinct edges of the matching, got {e1}, {e2}")
    p = sorted(e1 + e2)
    if {e1, e2} == {label(p[0], p[1]), label(p[2], p[3])}:
        f1, f2 = label(p[1], p[2]), label(p[3], p[0])
    elif {e1, e2} == {label(p[1], p[2]), label(p[3], p[0])}:
        f1, f2 = label(p[0], p[1]), label(p[2], p[3])
    else:
        raise DomainError(f"edges {e1}, {e2} do not bound a flip quadrilateral")
    new_state = tuple(sorted((edges - {e1, e2}) | {f1, f2}))
    if not is_matching(m, new_state):
        raise DomainError(
            f"re-pairing {f1}, {f2} is not a legal flip in this matching"
        )
    return new_state, tuple(sorted((f1, f2)))


def flippable_pairs(m: int, state):
    """All legal flips from a matching, with entering labels, sorted."""
    out = []
    edges = sorted(state)
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1 :]:
            try:
                t, entering = flip(m, state, e1, e2)
            except DomainError:
                continue
            out.append((t, entering))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


@lru_cache(maxsize=None)
def enumerate_matchings(m: int) -> tuple[tuple, ...]:
    """All non-crossing perfect matchings on [2m], sorted; Catalan(m) many."""
    if m > MAX_ENUM_M:
        raise DomainError(f"enumeration limited to m <= {MAX_ENUM_M}")

    def rec(points):
        if not points:
            yield ()
            return
        a = points[0]
        for idx in range(1, len(points), 2):
            b = points[idx]
            for left in rec(points[1:idx]):
                for right in rec(points[idx + 1 :]):
                    yield ((a, b),) + left + right

    out = sorted(tuple(sorted(mm)) for mm in rec(tuple(range(1, 2 * m + 1))))
    assert len(out) == comb(2 * m, m) // (m + 1)
    return tuple(out)


@lru_cache(maxsize=400_000)
def _neighbors_full(m: int, state):
    return tuple(flippable_pairs(m, state))


@lru_cache(maxsize=400_000)
def _neighbors_centered(m: int, state):
    return tuple(
        (t, entering)
        for t, entering in _neighbors_full(m, state)
        if is_centered(m, set(entering[0]) | set(entering[1]))
    )


def oracle(m: int, centered_only: bool = False) -> FlipGraphOracle:
    nb = _neighbors_centered if centered_only else _neighbors_full
    return FlipGraphOracle(
        family=FAMILY,
        params={"m": m},
        universe=frozenset(universe(m)),
        labels_per_step=2,
        neighbors=lambda s: nb(m, s),
        edge_state=True,
    )


@lru_cache(maxsize=None)
def build_centered_subgraph(m: int):
    """The centered-flip subgraph on all matchings: (oracle, components).

    Components are sorted lists of states, ordered by (size, smallest state).
    """
    if m % 2:
        raise DomainError(f"centered-flip subgraph analysis is for even m, got {m}")
    orc = oracle(m, centered_only=True)
    comps = connected_components(orc, enumerate_matchings(m))
    comps.sort(key=lambda c: (len(c), c[0]))
    return orc, tuple(tuple(c) for c in comps)


# ---------------------------------------------------------------------------
# weight classes and generalized Narayana numbers


def partition_classes(m: int) -> dict[int, tuple]:
    """Matchings grouped by weight c in [-(m-2), m-2]."""
    out: dict[int, list] = {}
    for state in enumerate_matchings(m):
        out.setdefault(weight(m, state), []).append(state)
    return {c: tuple(v) for c, v in sorted(out.items())}


def merged_classes(m: int) -> dict[int, tuple]:
    """The merged classes indexed c = 0..m-2: weight c together with c-(m-2).

    The two weight-0 matchings belong to both the first and the last class;
    what is disjoint is the edge sets: every centered flip joins weights c
    and c-(m-2) for a single c, so each edge lies inside one class.
    """
    by_weight = partition_classes(m)
    return {
        c: tuple(sorted(by_weight.get(c, ()) + by_weight.get(c - (m - 2), ())))
        for c in range(m - 1)
    }


def component_weight_class(m: int, component) -> int:
    """The unique merged class containing a centered-flip component's edges.

    Raises if the component's weights span more than one class, which would
    contradict the weight-step law.
    """
    ws = {weight(m, s) for s in component}
    if len(ws) == 1:
        w = next(iter(ws))
        return w if w >= 0 else w + (m - 2)
    if len(ws) == 2 and max(ws) - min(ws) == m - 2:
        return max(ws)
    raise DomainError(f"component weights {sorted(ws)} cross merged classes")


def narayana(r: int, m: int, k: int) -> int:
    """Generalized Narayana number (r+1)/(m+1) * C(m+1,k) * C(m-r-1,k-1).

    Counts lattice paths with m up-steps and m-r down-steps that never dip
    below the axis and have exactly k peaks.  Out-of-range k gives 0.
    """
    if r < 0 or m < 0:
        raise DomainError(f"narayana needs r,m >= 0, got r={r}, m={m}")
    if k < 1 or k > m - r:
        return 0
    num = (r + 1) * comb(m + 1, k) * comb(m - r - 1, k - 1)
    q, rem = divmod(num, m + 1)
    assert rem == 0, "generalized Narayana numbers are integers"
    return q


def count_peak_paths(m: int, r: int, k: int) -> int:
    """Independent check of ``narayana`` by direct dynamic programming over
    lattice paths (m up-steps, m-r down-steps, never below 0, k peaks)."""

    @lru_cache(maxsize=None)
    def rec(ups, downs, height, last_up, peaks):
        if peaks > k:
            return 0
        if ups == 0 and downs == 0:
            return 1 if peaks == k else 0
        total = 0
        if ups:
            total += rec(ups - 1, downs, height + 1, True, peaks)
        if downs and height > 0:
            total += rec(ups, downs - 1, height - 1, False, peaks + (1 if last_up else 0))
        return total

    if r < 0 or m < r:
        return 0
    out = rec(m, m - r, 0, False, 0)
    rec.cache_clear()
    return out


def class_size_formula(m: int, c: int) -> int:
    """Conjectured |class c| = 2 for c=0 and N_1(m,|c|+1)/2 otherwise."""
    if c == 0:
        return 2
    val = narayana(1, m, abs(c) + 1)
    assert val % 2 == 0
    return val // 2


# ---------------------------------------------------------------------------
# explicit rainbow cycles
#
# The two flip paths below are transcribed matching-by-matching from the
# respective figures; each repeats under rotation by two positions (clockwise
# for m=6, counter-clockwise for m=8) to close a 2-rainbow cycle.

PATH_M6 = (
    ((1, 4), (2, 3), (5, 6), (7, 8), (9, 12), (10, 11)),
    ((1, 4), (2, 3), (5, 12), (6, 9), (7, 8), (10, 11)),
    ((1, 4), (2, 3), (5, 10), (6, 9), (7, 8), (11, 12)),
    ((1, 10), (2, 3), (4, 5), (6, 9), (7, 8), (11, 12)),
    ((1, 6), (2, 3), (4, 5), (7, 8), (9, 10), (11, 12)),
    ((1, 12), (2, 3), (4, 5), (6, 11), (7, 8), (9, 10)),
    ((1, 12), (2, 11), (3, 6), (4, 5), (7, 8), (9, 10)),
)
PATH_M6_SHIFT = 2

PATH_M8 = (
    ((1, 6), (2, 3), (4, 5), (7, 8), (9, 10), (11, 12), (13, 16), (14, 15)),
    ((1, 10), (2, 3), (4, 5), (6, 9), (7, 8), (11, 12), (13, 16), (14, 15)),
    ((1, 4), (2, 3), (5, 10), (6, 9), (7, 8), (11, 12), (13, 16), (14, 15)),
    ((1, 4), (2, 3), (5, 16), (6, 9), (7, 8), (10, 13), (11, 12), (14, 15)),
    ((1, 4), (2, 3), (5, 6), (7, 8), (9, 16), (10, 13), (11, 12), (14, 15)),
    ((1, 16), (2, 3), (4, 9), (5, 6), (7, 8), (10, 13), (11, 12), (14, 15)),
    ((1, 16), (2, 3), (4, 13), (5, 6), (7, 8), (9, 10), (11, 12), (14, 15)),
    ((1, 16), (2, 3), (4, 11), (5, 6), (7, 8), (9, 10), (12, 13), (14, 15)),
    ((1, 16), (2, 3), (4, 15), (5, 6), (7, 8), (9, 10), (11, 14), (12, 13)),
)
PATH_M8_SHIFT = -2


def _unroll_path(m: int, path, shift: int, r: int) -> LabeledFlipCycle:
    n = 2 * m
    path = [tuple(sorted(label(*e) for e in st)) for st in path]
    for st in path:
        if not is_matching(m, st):
            raise DomainError(f"transcribed state is not a matching: {st}")
    if rotate(m, path[0], shift) != path[-1]:
        raise DomainError("path endpoints do not differ by the stated rotation")
    reps = n // abs(shift) if shift else 0
    states = []
    for rep in range(reps):
        base = rep * shift
        for st in path[:-1]:
            states.append(rotate(m, st, base))
    labels = []
    for i, s in enumerate(states):
        t = states[(i + 1) % len(states)]
        entering = tuple(sorted(set(t) - set(s)))
        removed = tuple(sorted(set(s) - set(t)))
        if len(entering) != 2 or len(removed) != 2:
            raise DomainError(f"step {i} is not a two-edge exchange")
        flipped, flip_labels = flip(m, s, *removed)
        if flipped != t or flip_labels != entering:
            raise DomainError(f"step {i} is not a legal flip")
        labels.append(entering)
    return LabeledFlipCycle(FAMILY, {"m": m}, tuple(states), tuple(labels), r=r)


def _two_matchings_cycle() -> LabeledFlipCycle:
    a = ((1, 2), (3, 4))
    b = ((1, 4), (2, 3))
    return LabeledFlipCycle(
        FAMILY, {"m": 2}, (a, b), (b, a), r=1
    )


def _search_rainbow1_m4() -> LabeledFlipCycle:
    # Only centered flips can appear on a rainbow cycle, so searching the
    # centered subgraph is exhaustive for this purpose.
    result = exhaustive_rainbow_search(
        oracle(4, centered_only=True), 1, enumerate_matchings(4)
    )
    assert result.status is SearchStatus.FOUND
    return result.cycle


def explicit_rainbows() -> dict[tuple[int, int], LabeledFlipCycle]:
    """The known rainbow cycles: (m, r) in {(2,1), (4,1), (6,2), (8,2)}."""
    return {
        (2, 1): _two_matchings_cycle(),
        (4, 1): _search_rainbow1_m4(),
        (6, 2): _unroll_path(6, PATH_M6, PATH_M6_SHIFT, r=2),
        (8, 2): _unroll_path(8, PATH_M8, PATH_M8_SHIFT, r=2),
    }


# ---------------------------------------------------------------------------
# non-existence


@dataclass
class NoRainbowVerdict:
    m: int
    status: str  # "none" | "parity-refused" | "found" | "inconclusive"
    component_stats: list[dict] = field(default_factory=list)
    cycle: Optional[LabeledFlipCycle] = None
    note: str = ""


def prove_no_rainbow1(m: int, budget: Optional[SearchBudget] = None) -> NoRainbowVerdict:
    """Establish whether the full matching flip graph has a 1-rainbow cycle.

    Odd m is refused outright: the cycle length m^2/2 is not an integer.
    Even m is settled by exhaustive search for a 1-rainbow cycle in each
    connected component of the centered-flip subgraph (smallest components
    first), which is sufficient because non-centered flips cannot occur on a
    rainbow cycle.  A budget overrun yields an explicit inconclusive verdict.
    """
    if m % 2:
        return NoRainbowVerdict(
            m,
            "parity-refused",
            note=f"a 1-rainbow cycle would have non-integral length {m * m}/2",
        )
    orc, comps = build_centered_subgraph(m)
    stats = []
    for comp in comps:
        result = exhaustive_rainbow_search(orc, 1, comp, budget=budget)
        stats.append(
            {
                "size": len(comp),
                "status": result.status.value,
                "nodes": result.nodes,
                "elapsed": result.elapsed,
            }
        )
        if result.status is SearchStatus.FOUND:
            return NoRainbowVerdict(m, "found", stats, result.cycle)
        if result.status is SearchStatus.INCONCLUSIVE:
            return NoRainbowVerdict(m, "inconclusive", stats, note=result.note)
    return NoRainbowVerdict(m, "none", stats)


def _step_labels(params, s, t):
    m = params["m"]
    if not (is_matching(m, s) and is_matching(m, t)):
        return None
    removed = set(s) - set(t)
    entering = set(t) - set(s)
    if len(removed) != 2 or len(entering) != 2:
        return None
    if {p for e in removed for p in e} != {p for e in entering for p in e}:
        return None
    return tuple(sorted(entering))


register_family(
    FamilyRule(
        name=FAMILY,
        labels_per_step=2,
        universe=lambda params: universe(params["m"]),
        step_labels=_step_labels,
        state_ok=lambda params, s: is_matching(params["m"], s),
    )
)
