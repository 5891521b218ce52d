"""Rainbow cycles in the flip graph of triangulations of a convex n-gon.

Points of the polygon are 1..n in cyclic order.  A triangulation is encoded
as its set of n-3 diagonals; the label universe consists of all diagonals,
i.e. the pairs {i,j} with cyclic distance at least 2.  A flip exchanges the
diagonal of a convex quadrilateral formed by two adjacent triangles for the
other diagonal, and the arc is labeled with the entering diagonal.

The two constructions both concatenate star-to-star flip sequences: the
2-rainbow cycle walks the stars S_1, S_2, ..., S_n, S_1 around the whole
polygon, and the 1-rainbow cycle grows sub-polygon walks inductively,
transforming S_1 into itself through stars of ever larger sub-polygons.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

from .core import (
    DomainError,
    FamilyRule,
    Label,
    LabeledFlipCycle,
    label,
    mod1,
    register_family,
)
from .search import FlipGraphOracle

FAMILY = "triangulation"

MAX_ENUM_N = 14


def universe(n: int) -> set[Label]:
    """All diagonals of the n-gon: pairs at cyclic distance >= 2."""
    return {
        label(i, j)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
        if not (i == 1 and j == n)
    }


def boundary(n: int) -> set[Label]:
    return {label(i, mod1(i + 1, n)) for i in range(1, n + 1)}


def is_triangulation(n: int, diagonals) -> bool:
    diags = set(diagonals)
    if len(diags) != n - 3:
        return False
    univ = universe(n)
    if not diags <= univ:
        return False
    ds = sorted(diags)
    for i, (a, b) in enumerate(ds):
        for c, d in ds[i + 1 :]:
            if a < c < b < d or c < a < d < b:
                return False
    return True


def star(n: int, i: int) -> tuple[Label, ...]:
    """The star triangulation: every diagonal incident to point i."""
    if n < 3 or not 1 <= i <= n:
        raise DomainError(f"star({n},{i}) out of range")
    diags = []
    for off in range(2, n - 1):
        diags.append(label(i, mod1(i + off, n)))
    return tuple(sorted(diags))


def apply_flip(n: int, state, removed: Label, inserted: Label) -> tuple[Label, ...]:
    """Apply one flip, validating it against the two triangles sharing ``removed``."""
    diags = set(state)
    removed = label(*removed)
    inserted = label(*inserted)
    if removed not in diags:
        raise DomainError(f"flip removes absent diagonal {removed}")
    if inserted in diags:
        raise DomainError(f"flip inserts present diagonal {inserted}")
    edges = diags | boundary(n)
    a, b = removed
    apex = [
        x
        for x in range(1, n + 1)
        if x not in removed and label(a, x) in edges and label(b, x) in edges
    ]
    if len(apex) != 2 or label(*apex) != inserted:
        raise DomainError(
            f"flip ({removed},{inserted}) is not the quadrilateral exchange at {removed}"
        )
    diags.remove(removed)
    diags.add(inserted)
    return tuple(sorted(diags))


def flip_sequence(n: int, i: int, m: int | None = None) -> tuple[tuple[Label, Label], ...]:
    """The m-3 flips transforming the star at i into the star at i+1.

    With ``m`` = n this is the full-polygon sequence
    (({1,3},{2,4}), ({1,4},{2,5}), ..., ({1,m-1},{2,m})) shifted by i-1, with
    all point arithmetic mod m on representatives {1,...,m}.  A value m < n
    restricts the flips to the sub-polygon on points 1..m.
    """
    if m is None:
        m = n
    if m < 4 or not 1 <= i <= m:
        raise DomainError(f"flip_sequence(n={n}, i={i}, m={m}) out of range")
    seq = []
    for j in range(3, m):
        removed = label(mod1(1 + i - 1, m), mod1(j + i - 1, m))
        inserted = label(mod1(2 + i - 1, m), mod1(j + 1 + i - 1, m))
        seq.append((removed, inserted))
    return tuple(seq)


def _walk(n: int, start, flips) -> tuple[list, list]:
    states = [tuple(sorted(start))]
    labels = []
    for removed, inserted in flips:
        states.append(apply_flip(n, states[-1], removed, inserted))
        labels.append((label(*inserted),))
    return states, labels


def rainbow2_cycle(n: int, allow_below_proven: bool = False) -> LabeledFlipCycle:
    """2-rainbow cycle: the concatenation of all n star-to-star sequences.

    Supported for n >= 7; pass ``allow_below_proven`` to emit the n=6 walk for
    experiment (it revisits states and fails verification).
    """
    if n < 7 and not allow_below_proven:
        raise DomainError(f"2-rainbow construction supported for n >= 7, got {n}")
    if n < 4:
        raise DomainError("need n >= 4")
    flips = []
    for i in range(1, n + 1):
        flips.extend(flip_sequence(n, i))
    states, labels = _walk(n, star(n, 1), flips)
    assert states[-1] == states[0]
    return LabeledFlipCycle(FAMILY, {"n": n}, tuple(states[:-1]), tuple(labels), r=2)


def rainbow1_cycle(n: int) -> LabeledFlipCycle:
    """1-rainbow cycle of length C(n,2)-n through stars of growing sub-polygons.

    Applies the sequences for sub-polygons of size 4, 5, ..., n and one final
    full-polygon sequence to the star at point 1; diagonals from point 1 to
    points outside the current sub-polygon stay in place throughout.
    """
    if n < 4:
        raise DomainError(f"1-rainbow construction needs n >= 4, got {n}")
    flips = []
    for m in range(4, n + 1):
        flips.extend(flip_sequence(n, m - 1, m))
    flips.extend(flip_sequence(n, n))
    states, labels = _walk(n, star(n, 1), flips)
    assert states[-1] == states[0]
    return LabeledFlipCycle(FAMILY, {"n": n}, tuple(states[:-1]), tuple(labels), r=1)


@lru_cache(maxsize=None)
def enumerate_triangulations(n: int) -> tuple[tuple[Label, ...], ...]:
    """All triangulations of the n-gon, sorted; the count is Catalan(n-2)."""
    if n > MAX_ENUM_N:
        raise DomainError(f"enumeration limited to n <= {MAX_ENUM_N}")
    if n < 3:
        raise DomainError("need n >= 3")

    def tri(points: tuple[int, ...]):
        # Triangulations of the convex polygon on this contiguous point run,
        # by choice of the apex of the triangle on the edge (first, last).
        if len(points) < 3:
            yield frozenset()
            return
        a, b = points[0], points[-1]
        for k in range(1, len(points) - 1):
            c = points[k]
            extra = set()
            if k > 1:
                extra.add(label(a, c))
            if k < len(points) - 2:
                extra.add(label(c, b))
            for dl in tri(points[: k + 1]):
                for dr in tri(points[k:]):
                    yield frozenset(extra) | dl | dr

    out = {tuple(sorted(d)) for d in tri(tuple(range(1, n + 1)))}
    result = tuple(sorted(out))
    assert len(result) == comb(2 * n - 4, n - 2) // (n - 1)
    return result


def _neighbors(n: int, state):
    out = []
    edges = set(state) | boundary(n)
    for diag in state:
        a, b = diag
        apex = [
            x
            for x in range(1, n + 1)
            if x not in diag and label(a, x) in edges and label(b, x) in edges
        ]
        inserted = label(*apex)
        t = tuple(sorted((set(state) - {diag}) | {inserted}))
        out.append((t, (inserted,)))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def oracle(n: int) -> FlipGraphOracle:
    return FlipGraphOracle(
        family=FAMILY,
        params={"n": n},
        universe=frozenset(universe(n)),
        labels_per_step=1,
        neighbors=lambda s: _neighbors(n, s),
        edge_state=True,
    )


def _step_labels(params, s, t):
    n = params["n"]
    if not (is_triangulation(n, s) and is_triangulation(n, t)):
        return None
    gone = set(s) - set(t)
    came = set(t) - set(s)
    if len(gone) != 1 or len(came) != 1:
        return None
    try:
        apply_flip(n, s, next(iter(gone)), next(iter(came)))
    except DomainError:
        return None
    return (next(iter(came)),)


register_family(
    FamilyRule(
        name=FAMILY,
        labels_per_step=1,
        universe=lambda params: universe(params["n"]),
        step_labels=_step_labels,
        state_ok=lambda params, s: is_triangulation(params["n"], s),
    )
)
