"""Rainbow cycles in the flip graph of permutations under transpositions.

States are permutations of [n] in one-line notation; an edge swaps the
entries at two positions i and j and carries the label {i,j}.  A rainbow
cycle uses each of the C(n,2) transpositions exactly once, so it exists only
when C(n,2) is even, i.e. when floor(n/2) is even; the graph is bipartite by
permutation parity, which rules out the remaining n.

The constructions are inductive over a fixed length-6 seed for n=4.  Both
induction steps rewrite the designated transpositions t_i = {2i-1, 2i}: a
single occurrence of t = {i,j} may be replaced by the triple
({i,v}, {i,j}, {j,v}) for a fresh element v without changing the effect on
positions i and j, while visiting v's position in between.
"""
from __future__ import annotations

from itertools import combinations
from math import comb

from .core import (
    DomainError,
    FamilyRule,
    Label,
    LabeledFlipCycle,
    label,
    register_family,
)
from .search import FlipGraphOracle

FAMILY = "permutation"


class ParityRefusal(DomainError):
    """No rainbow cycle can exist: C(n,2) is odd and the graph is bipartite."""


def universe(n: int) -> set[Label]:
    return {label(i, j) for i, j in combinations(range(1, n + 1), 2)}


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def is_permutation(n: int, seq) -> bool:
    return len(seq) == n and sorted(seq) == list(range(1, n + 1))


def transpose(perm: tuple[int, ...], t: Label) -> tuple[int, ...]:
    i, j = t
    out = list(perm)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def base_sequence() -> tuple[Label, ...]:
    """The length-6 rainbow sequence for n=4 that seeds both inductions."""
    return ((1, 2), (3, 4), (2, 3), (1, 4), (2, 4), (1, 3))


def validate_sequence(n: int, seq) -> None:
    """Check that ``seq`` is a rainbow sequence for permutations of [n].

    Every position pair must occur exactly once and applying the sequence to
    the identity must walk through C(n,2) distinct permutations back to the
    identity.  Vertex-transitivity makes the one start state sufficient.
    """
    seq = tuple(label(*t) for t in seq)
    if sorted(seq) != sorted(universe(n)):
        raise DomainError(f"not a permutation of all {comb(n, 2)} position pairs")
    cur = identity(n)
    seen = {cur}
    for t in seq[:-1]:
        cur = transpose(cur, t)
        if cur in seen:
            raise DomainError(f"permutation {cur} visited twice")
        seen.add(cur)
    if transpose(cur, seq[-1]) != identity(n):
        raise DomainError("sequence does not close back to its start")


def _replace_designated(seq: tuple[Label, ...], n: int, v: int) -> tuple[Label, ...]:
    # Replace each t_i = {2i-1, 2i}, i <= n/2, by ({2i-1,v}, t_i, {2i,v}).
    designated = {label(2 * i - 1, 2 * i) for i in range(1, n // 2 + 1)}
    out: list[Label] = []
    for t in seq:
        if t in designated:
            i, j = t
            out.extend((label(i, v), t, label(j, v)))
        else:
            out.append(t)
    return tuple(out)


def extend_plus1(seq, n: int) -> tuple[Label, ...]:
    """Grow a rainbow sequence for n = 4l to one for n+1."""
    if n % 4:
        raise DomainError(f"extension defined for n divisible by 4, got {n}")
    validate_sequence(n, seq)
    out = _replace_designated(tuple(label(*t) for t in seq), n, n + 1)
    validate_sequence(n + 1, out)
    return out


def extend_plus4(seq, n: int) -> tuple[Label, ...]:
    """Grow a rainbow sequence for n = 4l to one for n+4.

    The designated transpositions are rewritten four times, once for each new
    element, and the base sequence shifted onto the four new elements is
    interleaved before the two final transpositions.
    """
    if n % 4:
        raise DomainError(f"extension defined for n divisible by 4, got {n}")
    validate_sequence(n, seq)
    q = tuple(label(*t) for t in seq)
    designated = {label(2 * i - 1, 2 * i) for i in range(1, n // 2 + 1)}
    shift = 0
    while q[-1] in designated:
        q = q[1:] + q[:1]
        shift += 1
        if shift > len(q):
            raise DomainError("no admissible cyclic shift")
    for k in range(1, 5):
        q = _replace_designated(q, n, n + k)
    extra = tuple(label(i + n, j + n) for i, j in base_sequence())
    out = q[:-1] + extra[:-1] + (q[-1], extra[-1])
    validate_sequence(n + 4, out)
    return out


def rainbow_sequence(n: int) -> tuple[Label, ...]:
    """A transposition sequence inducing a rainbow cycle, for floor(n/2) even.

    Raises ParityRefusal otherwise: the flip graph is bipartite and C(n,2) is
    odd, so no closed walk of that length exists.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if (n // 2) % 2:
        raise ParityRefusal(
            f"no rainbow cycle for n={n}: the cycle length C({n},2)={comb(n, 2)} is odd "
            "and every transposition changes the permutation parity"
        )
    seq = base_sequence()
    m = 4
    while m + 4 <= n:
        seq = extend_plus4(seq, m)
        m += 4
    if m < n:
        seq = extend_plus1(seq, m)
        m += 1
    assert m == n
    return seq


def apply_sequence(start, seq, r: int = 1) -> LabeledFlipCycle:
    """Run a transposition sequence from ``start`` and package the walk."""
    start = tuple(start)
    n = len(start)
    if not is_permutation(n, start):
        raise DomainError(f"{start} is not a permutation of [{n}]")
    seq = tuple(label(*t) for t in seq)
    if not seq:
        raise DomainError("empty transposition sequence")
    states = [start]
    for t in seq[:-1]:
        states.append(transpose(states[-1], t))
    if transpose(states[-1], seq[-1]) != start:
        raise DomainError("sequence does not return to the start permutation")
    return LabeledFlipCycle(
        FAMILY, {"n": n}, tuple(states), tuple((t,) for t in seq), r=r
    )


def _neighbors(n: int, perm):
    out = []
    for t in sorted(universe(n)):
        out.append((transpose(perm, t), (t,)))
    return out


def oracle(n: int) -> FlipGraphOracle:
    return FlipGraphOracle(
        family=FAMILY,
        params={"n": n},
        universe=frozenset(universe(n)),
        labels_per_step=1,
        neighbors=lambda s: _neighbors(n, s),
    )


def _step_labels(params, s, t):
    n = params["n"]
    if not (is_permutation(n, s) and is_permutation(n, t)):
        return None
    diff = [i + 1 for i in range(n) if s[i] != t[i]]
    if len(diff) != 2:
        return None
    i, j = diff
    if s[i - 1] != t[j - 1] or s[j - 1] != t[i - 1]:
        return None
    return (label(i, j),)


register_family(
    FamilyRule(
        name=FAMILY,
        labels_per_step=1,
        universe=lambda params: universe(params["n"]),
        step_labels=_step_labels,
        state_ok=lambda params, s: is_permutation(params["n"], s),
    )
)
