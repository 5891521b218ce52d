"""Rainbow cycles in the flip graph of k-element subsets of [n].

States are k-subsets, an edge exchanges one element for another, and the
label is the symmetric difference {x,y}.  A rainbow cycle has length C(n,2);
for k=2 that equals the number of vertices, so a rainbow cycle is a Hamilton
cycle.  The graphs for k and n-k are isomorphic with identical labels, so
2 <= k <= n/2 throughout.

All constructions are *blocks*: a sequence B_1..B_l with l = (n-1)/2 whose
2l+1 cyclic shifts (adding 1 to every element mod n) concatenate to the full
cycle.  Blocks for k=2 are generated from signed increment sequences
("d-sequences"); blocks for k >= 3 come from a zigzag walk over paired
levels {n-i, k+i}, plus two hand-built blocks for the parameter pairs
(l,k) = (4,4) and (8,8) that the zigzag recipe cannot reach.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import (
    DomainError,
    FamilyRule,
    Label,
    LabeledFlipCycle,
    cyclic_dist,
    label,
    mod1,
    register_family,
    sigma,
)
from .search import FlipGraphOracle

FAMILY = "ksubset"


def universe(n: int) -> set[Label]:
    return {label(i, j) for i, j in combinations(range(1, n + 1), 2)}


def is_ksubset(n: int, k: int, s) -> bool:
    return (
        len(s) == k
        and len(set(s)) == k
        and all(1 <= x <= n for x in s)
        and tuple(s) == tuple(sorted(s))
    )


def _state(elems) -> tuple[int, ...]:
    return tuple(sorted(elems))


def signed_step(n: int, frm: int, to: int) -> int:
    """The difference to-frm mod n as the representative of least magnitude."""
    d = (to - frm) % n
    return d - n if d > n - d else d


def complement_cycle(cycle: LabeledFlipCycle) -> LabeledFlipCycle:
    """Map a cycle of G_{n,k} to G_{n,n-k}: complement every state, keep labels."""
    n = cycle.params["n"]
    states = tuple(
        _state(set(range(1, n + 1)) - set(s)) for s in cycle.states
    )
    return LabeledFlipCycle(
        FAMILY,
        {"n": n, "k": n - cycle.params["k"]},
        states,
        cycle.step_labels,
        cycle.r,
    )


# ---------------------------------------------------------------------------
# blocks and the cycles they unroll to


def cycle_from_block(n: int, k: int, block) -> LabeledFlipCycle:
    """Unroll a block through its 2l+1 shifts into the full labeled cycle.

    Consecutive states (including the wrap from each shifted copy into the
    next) must differ in a single element exchange.
    """
    if n % 2 == 0 or n < 3:
        raise DomainError(f"blocks require odd n >= 3, got {n}")
    ell = (n - 1) // 2
    block = [_state(b) for b in block]
    if len(block) != ell:
        raise DomainError(f"block length {len(block)}, expected (n-1)/2 = {ell}")
    states = []
    for shift in range(n):
        for b in block:
            states.append(_state(sigma(n, b, shift)))
    labels = []
    for i, s in enumerate(states):
        t = states[(i + 1) % len(states)]
        sd = set(s) ^ set(t)
        if len(sd) != 2:
            raise DomainError(
                f"adjacent block states {s} and {t} differ in {len(sd)} elements, not 2"
            )
        labels.append((label(*sd),))
    return LabeledFlipCycle(
        FAMILY, {"n": n, "k": k}, tuple(states), tuple(labels), r=1
    )


@dataclass
class BlockReport:
    """Condition-by-condition verdict on a candidate block."""

    shape_ok: bool  # B_i = {1,b_i} (k=2) resp. [k-1]+{b_i} (k>=3), b_1 = n
    dist_ok: bool  # k=2: state distances cover [l]; k>=3: b_i distinct
    label_ok: bool  # exchange distances (including the closing one) cover [l]
    is_rainbow_cycle: bool  # C(B) verifies, even if the shape conditions fail
    detail: str = ""

    @property
    def standard(self) -> bool:
        return self.shape_ok and self.dist_ok and self.label_ok


def check_block(n: int, k: int, block) -> BlockReport:
    ell = (n - 1) // 2
    block = [_state(b) for b in block]
    prefix = tuple(range(1, k))
    shape_ok = len(block) == ell
    bs = []
    for b in block:
        if k == 2:
            if len(b) == 2 and b[0] == 1:
                bs.append(b[1])
            else:
                shape_ok = False
        else:
            rest = [x for x in b if x not in prefix]
            if tuple(x for x in b if x in prefix) == prefix and len(rest) == 1 and rest[0] >= k + 1:
                bs.append(rest[0])
            else:
                shape_ok = False
    if shape_ok and (not bs or bs[0] != n):
        shape_ok = False
    if shape_ok and k == 2 and any(not 3 <= b <= n for b in bs):
        shape_ok = False

    if k == 2:
        dist_ok = shape_ok and sorted(cyclic_dist(n, (1, b)) for b in bs) == list(
            range(1, ell + 1)
        )
    else:
        dist_ok = shape_ok and len(set(bs)) == len(bs)

    label_ok = len(block) == ell
    dists = []
    closing = [_state(sigma(n, block[0], 1))]
    for s, t in zip(block, block[1:] + closing):
        sd = set(s) ^ set(t)
        if len(sd) != 2:
            label_ok = False
            break
        dists.append(cyclic_dist(n, tuple(sd)))
    label_ok = label_ok and sorted(dists) == list(range(1, ell + 1))

    try:
        from .core import verify_rainbow

        rainbow = bool(verify_rainbow(cycle_from_block(n, k, block)))
    except DomainError:
        rainbow = False
    detail = f"exchange distances {dists}" if dists else "no valid exchange structure"
    return BlockReport(shape_ok, dist_ok, label_ok, rainbow, detail)


# ---------------------------------------------------------------------------
# k = 2: d-sequences


@dataclass(frozen=True)
class DSequence:
    """Signed increments d_1..d_l generating a k=2 block via b_{i+1} = b_i + d_i.

    The magnitudes are a permutation of [l]; the last entry is forced by the
    closing exchange, with its sign fixed so that b_l + d_l = 2 mod n.
    """

    ell: int
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return 2 * self.ell + 1

    def b_values(self) -> tuple[int, ...]:
        bs = [self.n]
        for d in self.entries[:-1]:
            bs.append(mod1(bs[-1] + d, self.n))
        return tuple(bs)

    def block(self) -> tuple[tuple[int, int], ...]:
        return tuple(_state((1, b)) for b in self.b_values())

    def cycle(self) -> LabeledFlipCycle:
        return cycle_from_block(self.n, 2, self.block())

    def reversed(self) -> "DSequence":
        return DSequence(self.ell, tuple(reversed(self.entries)))


def d_sequence(ell: int) -> DSequence:
    """The explicit rainbow d-sequence: ascending odd magnitudes with
    alternating signs, a middle +-1, then descending even magnitudes."""
    if ell < 2:
        raise DomainError(f"need l >= 2, got {ell}")
    n = 2 * ell + 1
    odd_top = ell if ell % 2 else ell - 1
    first = [
        (1 if t % 2 == 0 else -1) * m for t, m in enumerate(range(3, odd_top + 1, 2))
    ]
    s = 1 if ell % 4 in (0, 3) else -1
    even_top = ell - 2 if ell % 2 == 0 else ell - 3
    second = [
        s * (1 if t % 2 == 0 else -1) * m
        for t, m in enumerate(range(even_top, 1, -2))
    ]
    entries = first + [s] + second
    bs = [n]
    for d in entries:
        bs.append(mod1(bs[-1] + d, n))
    expected_last = ell + 2 if ell % 2 == 0 else ell + 1
    assert bs[-1] == expected_last
    entries.append(signed_step(n, bs[-1], 2))
    seq = DSequence(ell, tuple(entries))
    rep = check_block(n, 2, seq.block())
    if not rep.standard:
        raise AssertionError(f"generated block failed conditions: {rep}")
    return seq


def hamilton_k2(n: int) -> LabeledFlipCycle:
    """A rainbow Hamilton cycle of G_{n,2} for odd n >= 5."""
    if n % 2 == 0:
        raise DomainError(
            f"no rainbow cycle for even n={n}: each element sits on n-1 exchange "
            "labels, an odd number, so its membership cannot return to its start"
        )
    if n < 5:
        raise DomainError(f"need n >= 5, got {n}")
    return d_sequence((n - 1) // 2).cycle()


def cycle_edge_set(cycle: LabeledFlipCycle) -> frozenset:
    states = cycle.states
    return frozenset(
        frozenset((states[i], states[(i + 1) % len(states)]))
        for i in range(len(states))
    )


def edge_disjoint_pair(n: int) -> tuple[LabeledFlipCycle, LabeledFlipCycle]:
    """Two edge-disjoint rainbow Hamilton cycles: C(d) and C(rev(d))."""
    if n % 2 == 0 or n < 5:
        raise DomainError(f"need odd n >= 5, got {n}")
    d = d_sequence((n - 1) // 2)
    c1, c2 = d.cycle(), d.reversed().cycle()
    if cycle_edge_set(c1) & cycle_edge_set(c2):
        raise AssertionError("constructed cycles share an edge")
    return c1, c2


def enumerate_rainbow_sequences(ell: int, max_ell: int = 7) -> list[DSequence]:
    """All d-sequences whose block satisfies the k=2 conditions, brute force.

    The closing distance must be the one magnitude missing among |d_1..d_{l-1}|
    and every intermediate pair distance must be fresh.  l <= 7 matches the
    exhaustively tabulated range; raise ``max_ell`` to go further.
    """
    if ell < 2:
        raise DomainError(f"need l >= 2, got {ell}")
    if ell > max_ell:
        raise DomainError(f"enumeration for l <= {max_ell} (asked {ell})")
    n = 2 * ell + 1
    results: list[DSequence] = []
    entries: list[int] = []

    def rec(b: int, used_state_dists: int, used_mags: int, depth: int):
        if depth == ell - 1:
            close = cyclic_dist(n, (b, 2))
            if used_mags | (1 << close) == (2 << ell) - 2:
                d_last = signed_step(n, b, 2)
                results.append(DSequence(ell, tuple(entries) + (d_last,)))
            return
        for mag in range(1, ell + 1):
            if used_mags >> mag & 1:
                continue
            for sign in (1, -1):
                nb = mod1(b + sign * mag, n)
                if nb in (1, 2):
                    continue
                sd = cyclic_dist(n, (1, nb))
                if used_state_dists >> sd & 1:
                    continue
                entries.append(sign * mag)
                rec(nb, used_state_dists | 1 << sd, used_mags | 1 << mag, depth + 1)
                entries.pop()

    rec(n, 1 << 1, 0, 0)
    return results


def max_edge_disjoint(ell: int) -> tuple[int, list[DSequence]]:
    """Maximum number of pairwise edge-disjoint cycles C(d), with a witness.

    Exact branch-and-bound clique search over the compatibility graph of all
    rainbow d-sequences.  For l >= 2 the result is at most n-3 because all
    blocks share B_1 and only n-3 values of b_2 exist; l=1 is the one-cycle
    factorization of G_{3,2} and returns 1.
    """
    if ell == 1:
        d = DSequence(1, (-1,))
        return 1, [d]
    seqs = enumerate_rainbow_sequences(ell)
    edge_sets = [cycle_edge_set(d.cycle()) for d in seqs]
    nseq = len(seqs)
    adj = [0] * nseq
    for i in range(nseq):
        for j in range(i + 1, nseq):
            if not edge_sets[i] & edge_sets[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    best: list[int] = []

    def expand(cand: int, cur: list[int]):
        nonlocal best
        while cand:
            if len(cur) + cand.bit_count() <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            cur.append(v)
            sub = cand & adj[v]
            if not sub:
                if len(cur) > len(best):
                    best = cur[:]
            else:
                expand(sub, cur)
            cur.pop()

    if nseq:
        expand((1 << nseq) - 1, [])
    return len(best), [seqs[i] for i in best]


# ---------------------------------------------------------------------------
# k >= 3: zigzag blocks and the two hand-built blocks


def zigzag_block(ell: int, k: int):
    """Block for k >= 3 from the modified zigzag walk over levels {n-i, k+i}.

    The walk uses each long length k..l on a diagonal once and each short
    length 2..k-1 once; swapping the unique diagonal of length S for a cycle
    edge (mirroring everything after it) frees S for the closing edge to
    vertex k, so all lengths 1..l occur exactly once.  Requires k < n/3,
    which makes S >= k and the swapped edge a genuine diagonal.
    """
    n = 2 * ell + 1
    if not 3 <= k:
        raise DomainError(f"zigzag blocks need k >= 3, got {k}")
    if 3 * k >= n:
        raise DomainError(
            f"zigzag construction needs k < n/3 (got k={k}, n={n}); "
            "its closing edge would be shorter than the level structure allows"
        )
    m = ell - (k + 1) // 2
    if ell % 2:
        S = m
    elif k % 2 == 0:
        S = m + 1
    else:
        S = m + 2

    # (level, side) walk: first part all diagonals, then level edges and
    # diagonals alternating; every edge switches side.
    walk = [(0, 0)]  # side 0 = left vertex n-i, side 1 = right vertex k+i
    for _ in range(ell - k + 1):
        lvl, side = walk[-1]
        walk.append((lvl + 1, 1 - side))
    for t in range(k - 2):
        lvl, side = walk[-1]
        walk.append((lvl, 1 - side) if t % 2 == 0 else (lvl + 1, 1 - side))
    assert walk[-1][0] == m

    def vertex(lvl: int, side: int) -> int:
        return k + lvl if side else n - lvl

    def length(a: int, b: int) -> int:
        return cyclic_dist(n, (a, b))

    swap_at = None
    for t in range(ell - k + 1):
        if length(vertex(*walk[t]), vertex(*walk[t + 1])) == S:
            swap_at = t
            break
    assert swap_at is not None, "a first-part diagonal of length S always exists"
    modified = walk[: swap_at + 1] + [
        (lvl, 1 - side) for lvl, side in walk[swap_at + 1 :]
    ]
    verts = [vertex(lvl, side) for lvl, side in modified]
    assert length(verts[swap_at], verts[swap_at + 1]) == 1
    assert length(verts[-1], k) == S
    verts.append(k)

    mags = sorted(length(a, b) for a, b in zip(verts, verts[1:]))
    assert mags == list(range(1, ell + 1))
    prefix = set(range(1, k))
    block = tuple(_state(prefix | {b}) for b in verts[:-1])
    rep = check_block(n, k, block)
    if not (rep.shape_ok and rep.dist_ok and rep.label_ok):
        raise AssertionError(f"zigzag block failed conditions: {rep}")
    return block


SPECIAL_BLOCKS = {
    (4, 4): ((1, 2, 3, 9), (1, 2, 7, 9), (1, 2, 3, 7), (1, 2, 3, 5)),
    (8, 8): (
        (1, 2, 3, 4, 5, 6, 7, 17),
        (1, 2, 3, 4, 5, 6, 15, 17),
        (1, 2, 3, 4, 5, 6, 7, 15),
        (1, 2, 3, 4, 5, 6, 7, 9),
        (1, 2, 3, 4, 5, 6, 7, 14),
        (1, 2, 3, 4, 5, 6, 7, 11),
        (1, 2, 3, 4, 5, 6, 7, 13),
        (1, 2, 3, 4, 5, 6, 7, 12),
    ),
}


def special_block(ell: int, k: int):
    """The two hand-built blocks for (l,k) in {(4,4), (8,8)}.

    These satisfy only the closing-distance condition, not the common-prefix
    shape, yet their unrolled cycles are rainbow.
    """
    try:
        return SPECIAL_BLOCKS[(ell, k)]
    except KeyError:
        raise DomainError(f"no special block for (l,k)=({ell},{k})") from None


def rainbow_cycle(n: int, k: int) -> LabeledFlipCycle:
    """A rainbow cycle of G_{n,k} for odd n: k=2 always, k>=3 when k < n/3
    or (l,k) is one of the two special pairs.  k > n/2 is normalized through
    the complement isomorphism, which preserves all labels."""
    if n % 2 == 0:
        raise DomainError(f"no rainbow cycle exists for even n={n}")
    if not 2 <= k <= n - 2:
        raise DomainError(f"need 2 <= k <= n-2 (got k={k}, n={n})")
    if k > n // 2:
        return complement_cycle(rainbow_cycle(n, n - k))
    ell = (n - 1) // 2
    if k == 2:
        return hamilton_k2(n)
    if (ell, k) in SPECIAL_BLOCKS:
        return cycle_from_block(n, k, special_block(ell, k))
    return cycle_from_block(n, k, zigzag_block(ell, k))


# ---------------------------------------------------------------------------
# oracle and verification rule


def _neighbors(n: int, k: int, s):
    out = []
    inside = set(s)
    for x in s:
        for y in range(1, n + 1):
            if y in inside:
                continue
            t = _state(inside - {x} | {y})
            out.append((t, (label(x, y),)))
    out.sort(key=lambda p: (p[1], p[0]))
    return out


def _toggle_parity_infeasible(start, state, budgets) -> bool:
    """Sound prune: every remaining label toggles its two elements, and the
    total toggle count per element must restore membership to the start."""
    toggles: Counter = Counter()
    for (x, y), b in budgets.items():
        if b % 2:
            toggles[x] += 1
            toggles[y] += 1
    need = set(start) ^ set(state)
    for x in set(toggles) | need:
        if (toggles[x] % 2) != (x in need):
            return True
    return False


def oracle(n: int, k: int, parity_prune: bool = True) -> FlipGraphOracle:
    return FlipGraphOracle(
        family=FAMILY,
        params={"n": n, "k": k},
        universe=frozenset(universe(n)),
        labels_per_step=1,
        neighbors=lambda s: _neighbors(n, k, s),
        infeasible=_toggle_parity_infeasible if parity_prune else None,
    )


def _step_labels(params, s, t):
    n, k = params["n"], params["k"]
    if not (is_ksubset(n, k, s) and is_ksubset(n, k, t)):
        return None
    sd = set(s) ^ set(t)
    if len(sd) != 2:
        return None
    return (label(*sd),)


register_family(
    FamilyRule(
        name=FAMILY,
        labels_per_step=1,
        universe=lambda params: universe(params["n"]),
        step_labels=_step_labels,
        state_ok=lambda params, s: is_ksubset(params["n"], params["k"], s),
    )
)
