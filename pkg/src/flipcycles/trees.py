"""Rainbow cycles in the flip graph of plane spanning trees.

States are the plane (non-crossing) spanning trees on a canonically labeled
point set in general position; a flip exchanges one tree edge for another,
and the arc label is the entering edge.  The label universe is all C(n,2)
point pairs, so an r-rainbow cycle has length r*C(n,2).

Three constructions cover the whole proven range:

* a 1-rainbow cycle built inductively from the 3-point cycle by splicing,
  for each new point, two star-to-star paths through the new star;
* 2r-rainbow cycles that walk an Eulerian tour over r edge-disjoint Hamilton
  cycles of the complete graph (a Walecki decomposition mapped so one cycle
  follows the convex hull counter-clockwise), concatenating one star-to-star
  path per tour arc and bypassing repeated stars through detour trees;
* (2r-1)-rainbow cycles that drop the hull Hamilton cycle from the tour and
  splice in one copy of the 1-rainbow cycle at a designated visit of the
  star at point 1.

Everything emitted is validated structurally; the point sets with 4 and 5
points fall outside the Eulerian machinery and are handled by exhaustive
search over the full flip graph.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from .core import (
    DomainError,
    FamilyRule,
    Label,
    LabeledFlipCycle,
    label,
    register_family,
)
from .geometry import PointSet, is_plane_tree, segments_cross
from .search import (
    FlipGraphOracle,
    SearchBudget,
    SearchResult,
    exhaustive_rainbow_search,
)

FAMILY = "planetree"


def universe(n: int) -> set[Label]:
    return {label(i, j) for i, j in combinations(range(1, n + 1), 2)}


def star_tree(ps: PointSet, i: int) -> tuple[Label, ...]:
    """All edges incident to point i; stars are trivially plane."""
    if not 1 <= i <= ps.n:
        raise DomainError(f"no point {i} in a set of {ps.n}")
    return tuple(sorted(label(i, k) for k in ps.labels() if k != i))


def _params(ps: PointSet) -> dict:
    return {"points": tuple(ps.points)}


def path_states(ps: PointSet, i: int, j: int, side: str):
    """The star-to-star flip path from S_i to S_j on one side.

    Flip t moves point pi_t from the shrinking star at i to the growing star
    at j; the t-th intermediate tree is the caterpillar with central path
    (i, pi_t, j) and degree sequence (n-1-t, 2, t).  Returns (states, flips)
    with n states and n-1 (removed, inserted) flips.
    """
    if side not in ("L", "R"):
        raise DomainError(f"side must be 'L' or 'R', got {side!r}")
    pi = ps.angular_orders(i, j)[0 if side == "L" else 1]
    n = ps.n
    flips = [(label(i, j), label(j, pi[0]))]
    for t in range(1, n - 2):
        flips.append((label(i, pi[t - 1]), label(j, pi[t])))
    flips.append((label(i, pi[n - 3]), label(j, i)))
    states = [star_tree(ps, i)]
    for removed, inserted in flips:
        cur = set(states[-1])
        if removed not in cur or inserted in cur:
            raise AssertionError(f"illegal flip ({removed},{inserted}) along path")
        cur.remove(removed)
        cur.add(inserted)
        nxt = tuple(sorted(cur))
        if not is_plane_tree(ps, nxt):
            raise AssertionError(f"path produced a non-plane tree {nxt}")
        states.append(nxt)
    assert states[-1] == star_tree(ps, j)
    return states, flips


def degree_map(n: int, state) -> dict[int, int]:
    deg = {v: 0 for v in range(1, n + 1)}
    for a, b in state:
        deg[a] += 1
        deg[b] += 1
    return deg


def central_path(n: int, state) -> Optional[tuple[int, ...]]:
    """The non-leaf spine of a caterpillar, or None if not a caterpillar."""
    deg = degree_map(n, state)
    spine = {v for v, d in deg.items() if d >= 2}
    if not spine:
        return ()
    adj = {v: [] for v in range(1, n + 1)}
    for a, b in state:
        adj[a].append(b)
        adj[b].append(a)
    ends = [v for v in spine if sum(1 for w in adj[v] if w in spine) <= 1]
    if len(spine) == 1:
        return (next(iter(spine)),)
    if len(ends) != 2:
        return None
    path = [ends[0]]
    seen = {ends[0]}
    while True:
        nxts = [w for w in adj[path[-1]] if w in spine and w not in seen]
        if not nxts:
            break
        if len(nxts) > 1:
            return None
        path.append(nxts[0])
        seen.add(nxts[0])
    if len(path) != len(spine):
        return None
    return tuple(path)


def recover_path_endpoints(n: int, state) -> frozenset[int]:
    """The star centers {i,j} of the path an intermediate tree lies on.

    Inverse of the caterpillar description: the two high-degree points, or
    the one high-degree point together with the unique point at distance 2.
    Needs n >= 6 so that deg(i)+deg(j) = n-1 >= 5.
    """
    if n < 6:
        raise DomainError("endpoint recovery needs n >= 6")
    deg = degree_map(n, state)
    high = sorted(v for v, d in deg.items() if d >= 3)
    if len(high) == 2:
        return frozenset(high)
    if len(high) != 1:
        raise DomainError("not an intermediate star-path tree")
    i = high[0]
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in state:
        adj[a].add(b)
        adj[b].add(a)
    at2 = {w for v in adj[i] for w in adj[v] if w != i}
    if len(at2) != 1:
        raise DomainError("not an intermediate star-path tree")
    return frozenset((i, next(iter(at2))))


def rainbow1_cycle(ps: PointSet) -> LabeledFlipCycle:
    """1-rainbow cycle of length C(n,2), by induction on the point count.

    The cycle for the first n-1 points closes along the star path from point
    n-1 to point 1; the step to n removes that path's interior, hangs point n
    off point 1 everywhere else, and routes instead through the stars at n-1
    and n of the full set, ending with the path from S_n back to S_1.
    """
    n = ps.n
    if n < 3:
        raise DomainError("need at least 3 points")
    if n == 3:
        states = [star_tree(ps, 1), star_tree(ps, 3), star_tree(ps, 2)]
        labels = []
        for a, b in zip(states, states[1:] + states[:1]):
            (entering,) = set(b) - set(a)
            labels.append((entering,))
        return LabeledFlipCycle(FAMILY, _params(ps), tuple(states), tuple(labels), r=1)

    sub = rainbow1_cycle(ps.restrict(n - 1))
    keep = len(sub.states) - (n - 3)
    lift = label(1, n)
    states = [tuple(sorted(set(st) | {lift})) for st in sub.states[:keep]]
    labels = list(sub.step_labels[: keep - 1])

    pst, pfl = path_states(ps, n - 1, n, "L")
    assert states[-1] == pst[1], "the lifted sub-cycle must end at the first tree of the (n-1)->n path"
    states.extend(pst[2:])
    labels.extend((ins,) for _, ins in pfl[1:])

    qst, qfl = path_states(ps, n, 1, "L")
    states.extend(qst[1:-1])
    labels.extend((ins,) for _, ins in qfl)
    return LabeledFlipCycle(FAMILY, _params(ps), tuple(states), tuple(labels), r=1)


# ---------------------------------------------------------------------------
# Hamilton decompositions of K_n and Eulerian tours


def walecki(n: int) -> list[list[int]]:
    """floor((n-1)/2) pairwise edge-disjoint Hamilton cycles of K_n on [n].

    Odd n: rotations of a zigzag path through [n-1] closed through the hub n.
    Even n: the decomposition one size down, with n spliced into the unique
    half-way chord of each cycle; the removed chords plus one hub edge are
    the leftover perfect matching.
    """
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if n % 2:
        m2 = n - 1  # zigzag ground set size, even
        zig = [0]
        for t in range(1, m2):
            zig.append((t + 1) // 2 if t % 2 else m2 - t // 2)
        cycles = []
        for k in range((n - 1) // 2):
            cycles.append([n] + [(z + k) % m2 + 1 for z in zig])
        return cycles
    base = walecki(n - 1)
    half = (n - 2) // 2
    cycles = []
    for cyc in base:
        pos = None
        for t in range(len(cyc)):
            a, b = cyc[t], cyc[(t + 1) % len(cyc)]
            if a != n - 1 and b != n - 1 and (a - b) % (n - 2) == half:
                assert pos is None
                pos = t
        assert pos is not None
        cycles.append(cyc[: pos + 1] + [n] + cyc[pos + 1 :])
    return cycles


def euler_cycle(arcs) -> list[int]:
    """Closed walk traversing each directed arc exactly once (Hierholzer).

    Deterministic: arcs leave each vertex in ascending target order, starting
    from the smallest vertex.  Raises on unbalanced or disconnected input.
    """
    arcs = list(arcs)
    if not arcs:
        raise DomainError("no arcs")
    out_adj: dict[int, list[int]] = {}
    indeg: dict[int, int] = {}
    for u, v in arcs:
        out_adj.setdefault(u, []).append(v)
        indeg[v] = indeg.get(v, 0) + 1
    for u, targets in out_adj.items():
        if indeg.get(u, 0) != len(targets):
            raise DomainError(f"vertex {u}: in-degree {indeg.get(u, 0)} != out-degree {len(targets)}")
    if set(indeg) != set(out_adj):
        raise DomainError("unbalanced digraph")
    for targets in out_adj.values():
        targets.sort(reverse=True)
    start = min(out_adj)
    stack = [start]
    walk = []
    while stack:
        v = stack[-1]
        if out_adj.get(v):
            stack.append(out_adj[v].pop())
        else:
            walk.append(stack.pop())
    if len(walk) != len(arcs) + 1:
        raise DomainError("digraph is not connected on its non-isolated vertices")
    walk.reverse()
    return walk[:-1]


def _cycle_edges(cyc: list[int]) -> set[Label]:
    return {label(cyc[t], cyc[(t + 1) % len(cyc)]) for t in range(len(cyc))}


def _orient_min_first(cyc: list[int]) -> list[int]:
    pos = cyc.index(min(cyc))
    cyc = cyc[pos:] + cyc[:pos]
    if cyc[1] > cyc[-1]:
        cyc = [cyc[0]] + cyc[1:][::-1]
    return cyc


def _hull_tour(ps: PointSet, place_before_n: bool) -> tuple[list[int], Optional[Label]]:
    """The hull-following Hamilton cycle and its uncovered hull edge, if any.

    Interior points are inserted as a detour inside a single hull gap: just
    before point n with point n-1 placed last when n-1 is interior, otherwise
    between the second and third hull points.
    """
    hull = list(ps.hull())
    interior = sorted(set(ps.labels()) - set(hull))
    n = ps.n
    if not interior:
        return hull, None
    if place_before_n and (n - 1) in interior:
        run = [v for v in interior if v != n - 1] + [n - 1]
        seq = hull[:-1] + run + [n]
        return seq, label(hull[-2], n)
    seq = hull[:2] + interior + hull[2:]
    return seq, label(hull[1], hull[2])


def _mapped_cycles(ps: PointSet, r: int, need_tail_edge: bool) -> tuple[list[list[int]], Optional[Label]]:
    """Map a Walecki decomposition onto the point set and orient everything.

    The first cycle follows the convex hull counter-clockwise (with one
    interior detour); when ``need_tail_edge`` it also contains {n-1, n}.  A
    hull edge missed by the first cycle is re-oriented counter-clockwise in
    whichever chosen cycle covers it; remaining cycles get a fixed canonical
    orientation.
    """
    n = ps.n
    h0, uncovered = _hull_tour(ps, place_before_n=True)
    if need_tail_edge:
        assert label(n - 1, n) in _cycle_edges(h0)
        assert label(n, 1) in _cycle_edges(h0) and label(1, 2) in _cycle_edges(h0)
    abstract = walecki(n)
    if r > len(abstract):
        raise DomainError(f"at most {len(abstract)} edge-disjoint Hamilton cycles exist")
    phi = dict(zip(abstract[0], h0))
    mapped = [[phi[v] for v in cyc] for cyc in abstract[:r]]
    hull = list(ps.hull())
    succ = {hull[t]: hull[(t + 1) % len(hull)] for t in range(len(hull))}
    for idx in range(1, r):
        cyc = mapped[idx]
        if uncovered is not None and uncovered in _cycle_edges(cyc):
            a, b = uncovered
            fwd = (a, succ.get(a)) if succ.get(a) == b else (b, a)
            pos = cyc.index(fwd[0])
            if cyc[(pos + 1) % n] != fwd[1]:
                cyc = [cyc[pos]] + cyc[:pos][::-1] + cyc[pos + 1 :][::-1]
                assert cyc[1] == fwd[1]
            else:
                cyc = cyc[pos:] + cyc[:pos]
            mapped[idx] = cyc
        else:
            mapped[idx] = _orient_min_first(cyc)
    return mapped, uncovered


def detour_tree(ps: PointSet, i: int, j: int, k: int, in_side: str = "L", out_side: Optional[str] = None):
    """The tree bypassing the star S_j between the paths S_i->S_j and S_j->S_k.

    Equals (predecessor of S_j) - {j,k} + {k,b} where b is the first point of
    the outgoing path; refuses hull edges {j,k}, for which no detour exists.
    """
    if ps.is_hull_edge(j, k):
        raise DomainError(f"{{{j},{k}}} is a hull edge; the star S_{j} is kept, not bypassed")
    if out_side is None:
        left, _right = ps.half_planes(j, k)
        out_side = "L" if i not in left else "R"
    t1 = path_states(ps, i, j, in_side)[0][-2]
    b = ps.angular_orders(j, k)[0 if out_side == "L" else 1][0]
    d = tuple(sorted((set(t1) - {label(j, k)}) | {label(k, b)}))
    if not is_plane_tree(ps, d):
        raise AssertionError("detour tree is not plane")
    return d


def _assemble_tour(ps: PointSet, tour: list[int], special_idx: Optional[int]):
    """Concatenate one star path per tour arc, then bypass repeated stars.

    For each consecutive triple (i,j,k) the path from S_j to S_k runs on the
    side opposite to i (the special triple is forced to the right path).
    Stars S_j with {j,k} on the hull are kept; every other S_j is replaced by
    the detour tree that swaps its two surrounding flips.
    """
    L = len(tour)
    states: list[tuple] = []
    labels: list[tuple] = []
    seg_start: list[int] = []
    sides: list[str] = []
    for t in range(L):
        i, j, k = tour[t - 1], tour[t], tour[(t + 1) % L]
        left, right = ps.half_planes(j, k)
        if t == special_idx:
            side = "R"
        else:
            side = "L" if i in right else "R"
        sides.append(side)
        pst, pfl = path_states(ps, j, k, side)
        seg_start.append(len(states))
        states.extend(pst[:-1])
        labels.extend((ins,) for _, ins in pfl)
    for t in range(L):
        if t == special_idx:
            continue
        j, k = tour[t], tour[(t + 1) % L]
        if ps.is_hull_edge(j, k):
            continue
        p = seg_start[t]
        prev = (p - 1) % len(states)
        out_label = labels[p][0]
        d = tuple(sorted((set(states[prev]) - {label(j, k)}) | {out_label}))
        if not is_plane_tree(ps, d):
            raise AssertionError("detour replacement produced a non-plane tree")
        states[p] = d
        labels[prev], labels[p] = labels[p], labels[prev]
    return states, labels, seg_start


def rainbow_even(ps: PointSet, r: int) -> LabeledFlipCycle:
    """A 2r-rainbow cycle for n >= 6 points, 1 <= r <= floor((n-1)/2)."""
    n = ps.n
    if n < 6:
        raise DomainError("the Eulerian construction needs n >= 6")
    if not 1 <= r <= (n - 1) // 2:
        raise DomainError(f"need 1 <= r <= {(n - 1) // 2}, got {r}")
    mapped, _ = _mapped_cycles(ps, r, need_tail_edge=False)
    arcs = [(cyc[t], cyc[(t + 1) % n]) for cyc in mapped for t in range(n)]
    tour = euler_cycle(arcs)
    states, labels, _ = _assemble_tour(ps, tour, special_idx=None)
    return LabeledFlipCycle(FAMILY, _params(ps), tuple(states), tuple(labels), r=2 * r)


def rainbow_odd(ps: PointSet, r: int) -> LabeledFlipCycle:
    """A (2r-1)-rainbow cycle for n >= 6 points, 2 <= r <= floor((n-1)/2).

    Runs the Eulerian construction on r-1 Hamilton cycles (the hull cycle is
    used only to anchor the mapping, then removed), keeps the single visit of
    S_1 at a designated triple, and replaces that visit by the full 1-rainbow
    cycle followed by its own detour tree.
    """
    n = ps.n
    if n < 6:
        raise DomainError("the Eulerian construction needs n >= 6")
    if not 2 <= r <= (n - 1) // 2:
        raise DomainError(f"need 2 <= r <= {(n - 1) // 2}, got {r}")
    mapped, _ = _mapped_cycles(ps, r, need_tail_edge=True)
    arcs = [(cyc[t], cyc[(t + 1) % n]) for cyc in mapped[1:] for t in range(n)]
    tour = euler_cycle(arcs)
    special_idx = next(t for t in range(len(tour)) if tour[t] == 1)
    states, labels, seg_start = _assemble_tour(ps, tour, special_idx)

    p = seg_start[special_idx]
    kprime = tour[(special_idx + 1) % len(tour)]
    out_label = labels[p][0]  # {k', b}
    c1 = rainbow1_cycle(ps)
    assert states[p] == c1.states[0] == star_tree(ps, 1)
    assert c1.step_labels[-1] == (label(1, n),)
    d = tuple(sorted((set(c1.states[-1]) - {label(1, kprime)}) | {out_label}))
    if not is_plane_tree(ps, d):
        raise AssertionError("splice detour tree is not plane")
    new_states = states[: p + 1] + list(c1.states[1:]) + [d] + states[p + 1 :]
    new_labels = (
        labels[:p]
        + list(c1.step_labels[:-1])
        + [(out_label,), (label(1, n),)]
        + labels[p + 1 :]
    )
    return LabeledFlipCycle(
        FAMILY, _params(ps), tuple(new_states), tuple(new_labels), r=2 * r - 1
    )


def rainbow_small(ps: PointSet, r: int, budget: Optional[SearchBudget] = None) -> SearchResult:
    """r-rainbow cycles for 4 or 5 points, certified by exhaustive search."""
    n = ps.n
    if not ((n == 4 and r == 2) or (n == 5 and r in (2, 3, 4))):
        raise DomainError(f"search construction covers n=4, r=2 and n=5, r in 2..4 (got n={n}, r={r})")
    return exhaustive_rainbow_search(oracle(ps), r, [star_tree(ps, 1)], budget=budget)


def rainbow_cycle(ps: PointSet, r: int) -> LabeledFlipCycle:
    """Any r-rainbow cycle in the proven range for this point set."""
    n = ps.n
    if r == 1:
        return rainbow1_cycle(ps)
    if n in (4, 5):
        result = rainbow_small(ps, r)
        if not result:
            raise DomainError(f"search outcome {result.status.value} for n={n}, r={r}")
        return result.cycle
    if r % 2 == 0:
        return rainbow_even(ps, r // 2)
    return rainbow_odd(ps, (r + 1) // 2)


def max_rainbow(n: int) -> int:
    """Largest proven r: n-1 for odd n, n-2 for even n (and 1 for n=3)."""
    if n == 3:
        return 1
    return n - 1 if n % 2 else n - 2


# ---------------------------------------------------------------------------
# oracle and verification rule


def _components_after_removal(n: int, edges: set, e: Label) -> set[int]:
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in edges:
        if (a, b) != e:
            adj[a].add(b)
            adj[b].add(a)
    comp = {e[0]}
    frontier = [e[0]]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in comp:
                comp.add(w)
                frontier.append(w)
    return comp


def _neighbors(ps: PointSet, state):
    n = ps.n
    edges = set(state)
    out = []
    for e in sorted(edges):
        side = _components_after_removal(n, edges, e)
        rest = edges - {e}
        for u in sorted(side):
            for v in sorted(set(range(1, n + 1)) - side):
                f = label(u, v)
                if f == e or f in edges:
                    continue
                pu, pv = ps.point(u), ps.point(v)
                if any(
                    segments_cross(pu, pv, ps.point(a), ps.point(b)) for a, b in rest
                ):
                    continue
                out.append((tuple(sorted(rest | {f})), (f,)))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def oracle(ps: PointSet) -> FlipGraphOracle:
    return FlipGraphOracle(
        family=FAMILY,
        params=_params(ps),
        universe=frozenset(universe(ps.n)),
        labels_per_step=1,
        neighbors=lambda s: _neighbors(ps, s),
        edge_state=True,
    )


def _step_labels(params, s, t):
    ps = PointSet(tuple(tuple(p) for p in params["points"]))
    if not (is_plane_tree(ps, s) and is_plane_tree(ps, t)):
        return None
    gone = set(s) - set(t)
    came = set(t) - set(s)
    if len(gone) != 1 or len(came) != 1:
        return None
    return (next(iter(came)),)


register_family(
    FamilyRule(
        name=FAMILY,
        labels_per_step=1,
        universe=lambda params: universe(len(params["points"])),
        step_labels=_step_labels,
        state_ok=lambda params, s: is_plane_tree(
            PointSet(tuple(tuple(p) for p in params["points"])), s
        ),
    )
)
