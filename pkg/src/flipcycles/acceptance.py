"""The acceptance suite: one callable per criterion, shared by tests and CLI.

Each criterion returns a Verdict with named sub-checks; the pytest wrapper
asserts ``passed`` and prints one line per criterion, and ``flipcycles
repro`` writes one manifest per criterion.  All expected values are pinned
here; nothing is tuned at run time.  The single budgeted item is the m=10
matching search (default 30 minutes): if the budget is hit, that check
downgrades to m in {6,8} and the overrun is documented in the verdict.
"""
from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from . import geometry, matchings, permutations, serialize, subsets, trees, triangulations
from .core import verify_rainbow
from .permutations import ParityRefusal
from .search import SearchBudget, SearchStatus, exhaustive_rainbow_search

M10_BUDGET_ENV = "FLIPCYCLES_M10_BUDGET_S"


@dataclass
class Verdict:
    passed: bool
    checks: dict
    parameters: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[..., Verdict]


def _all(checks: dict) -> bool:
    return all(bool(v) for k, v in checks.items() if not k.startswith("info:"))


SMALL_POINT_CONFIGS = {
    "n4-convex": ((0, 0), (2, 0), (3, 2), (1, 3)),
    "n4-one-interior": ((0, 0), (4, 0), (0, 4), (1, 1)),
    "n5-convex": ((0, 0), (1, 1), (2, 4), (3, 9), (4, 16)),
    "n5-one-interior": ((0, 0), (4, 0), (4, 4), (0, 4), (1, 2)),
    "n5-two-interior": ((0, 0), (6, 0), (0, 6), (1, 1), (2, 3)),
}


def criterion1(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Triangulations: 1-rainbow for 4..12, 2-rainbow for 7..12, under 1s each."""
    checks = {}
    for n in range(4, 13):
        t0 = time.monotonic()
        cyc = triangulations.rainbow1_cycle(n)
        rep = verify_rainbow(cyc)
        dt = time.monotonic() - t0
        checks[f"r1-n{n}"] = rep.is_rainbow_r and len(cyc) == comb(n, 2) - n and dt < 1.0
    for n in range(7, 13):
        t0 = time.monotonic()
        cyc = triangulations.rainbow2_cycle(n)
        rep = verify_rainbow(cyc)
        dt = time.monotonic() - t0
        checks[f"r2-n{n}"] = rep.is_rainbow_r and len(cyc) == 2 * (comb(n, 2) - n) and dt < 1.0
    return Verdict(_all(checks), checks, {"n_range": [4, 12]})


def criterion2(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Spanning trees: 1-rainbow on 20 seeded sets, the full even/odd range
    for 6..8 points, and search-certified cycles for every small configuration."""
    checks = {}
    rng = random.Random(seed)
    for i in range(20):
        n = 3 + i % 6
        ps = geometry.random_point_set(n, rng)
        rep = verify_rainbow(trees.rainbow1_cycle(ps))
        cyc_len_ok = len(trees.rainbow1_cycle(ps)) == comb(n, 2)
        checks[f"r1-set{i:02d}-n{n}"] = rep.is_rainbow_r and cyc_len_ok
    for n in (6, 7, 8):
        ps = geometry.random_point_set(n, rng)
        for r in range(2, trees.max_rainbow(n) + 1):
            cyc = trees.rainbow_cycle(ps, r)
            rep = verify_rainbow(cyc)
            checks[f"even-odd-n{n}-r{r}"] = rep.is_rainbow_r and len(cyc) == r * comb(n, 2)
    for tag, pts in SMALL_POINT_CONFIGS.items():
        ps = geometry.canonical_label(pts)
        rs = (2,) if ps.n == 4 else (2, 3, 4)
        for r in rs:
            t0 = time.monotonic()
            res = trees.rainbow_small(ps, r, budget=SearchBudget(max_seconds=60))
            dt = time.monotonic() - t0
            ok = bool(res) and verify_rainbow(res.cycle).is_rainbow_r and dt <= 60
            checks[f"small-{tag}-r{r}"] = ok
    return Verdict(_all(checks), checks, {"seed": seed, "random_sets": 20})


def criterion3(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Matching structure: the m=6 census, component lower bounds, no merged-
    class crossings, and exact class sizes against the Narayana expression."""
    t0 = time.monotonic()
    checks = {}
    _, comps6 = matchings.build_centered_subgraph(6)
    checks["h6-8-components"] = len(comps6) == 8
    checks["h6-132-matchings"] = sum(len(c) for c in comps6) == 132
    ntrees = 0
    for comp in comps6:
        arcs = sum(len(matchings._neighbors_centered(6, s)) for s in comp)
        if arcs // 2 == len(comp) - 1:
            ntrees += 1
    checks["h6-5-tree-components"] = ntrees == 5
    for m in (4, 6, 8, 10):
        _, comps = matchings.build_centered_subgraph(m)
        checks[f"h{m}-components>=m-1"] = len(comps) >= m - 1
        cross = 0
        for state in matchings.enumerate_matchings(m):
            w = matchings.weight(m, state)
            for t, _labs in matchings._neighbors_centered(m, state):
                if abs(matchings.weight(m, t) - w) != m - 2:
                    cross += 1
        confined = all(
            0 <= matchings.component_weight_class(m, comp) <= m - 2 for comp in comps
        )
        checks[f"h{m}-no-cross-class-edges"] = cross == 0 and confined
    for m in (2, 4, 6, 8):
        classes = matchings.partition_classes(m)
        ok = set(classes) <= set(range(-(m - 2), m - 1)) if m > 2 else set(classes) == {0}
        for c in range(-(m - 2), m - 1):
            ok = ok and len(classes.get(c, ())) == matchings.class_size_formula(m, c)
        checks[f"class-sizes-m{m}"] = ok
    elapsed = time.monotonic() - t0
    checks["runtime<5min"] = elapsed < 300
    checks["info:elapsed_s"] = round(elapsed, 1)
    return Verdict(_all(checks), checks, {})


def criterion4(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Matching existence: the four explicit cycles, exhaustive non-existence
    for m in {6,8,10} (m=10 budgeted), and instant parity refusals."""
    checks = {}
    expected_len = {(2, 1): 2, (4, 1): 8, (6, 2): 36, (8, 2): 64}
    for key, cyc in matchings.explicit_rainbows().items():
        rep = verify_rainbow(cyc)
        checks[f"explicit-m{key[0]}-r{key[1]}"] = rep.is_rainbow_r and len(cyc) == expected_len[key]
    for m in (6, 8):
        checks[f"none-m{m}"] = matchings.prove_no_rainbow1(m).status == "none"
    m10_budget = budget_seconds or float(os.environ.get(M10_BUDGET_ENV, "1800"))
    t0 = time.monotonic()
    v10 = matchings.prove_no_rainbow1(10, budget=SearchBudget(max_seconds=m10_budget))
    dt = time.monotonic() - t0
    checks["info:m10-status"] = v10.status
    checks["info:m10-elapsed_s"] = round(dt, 1)
    if v10.status == "inconclusive":
        # documented downgrade to m in {6,8}: the budget was hit, not refuted
        checks["info:m10-downgraded"] = f"budget {m10_budget}s exceeded: {v10.note}"
        checks["none-m10-or-documented-downgrade"] = True
    else:
        checks["none-m10-or-documented-downgrade"] = v10.status == "none"
    for m in (5, 7, 9):
        t0 = time.monotonic()
        v = matchings.prove_no_rainbow1(m)
        checks[f"parity-m{m}"] = v.status == "parity-refused" and time.monotonic() - t0 < 0.1
    return Verdict(_all(checks), checks, {"m10_budget_s": m10_budget})


def criterion5(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Permutations: constructions for floor(n/2) even, refusals otherwise,
    and an independent exhaustive search hit for n=5."""
    t0 = time.monotonic()
    checks = {}
    for n in (4, 5, 8, 9, 12, 13):
        seq = permutations.rainbow_sequence(n)
        cyc = permutations.apply_sequence(permutations.identity(n), seq)
        rep = verify_rainbow(cyc)
        checks[f"n{n}"] = rep.is_rainbow_r and len(cyc) == comb(n, 2)
    for n in (2, 3, 6, 7, 10, 11):
        try:
            permutations.rainbow_sequence(n)
            checks[f"refusal-n{n}"] = False
        except ParityRefusal:
            checks[f"refusal-n{n}"] = True
    res = exhaustive_rainbow_search(
        permutations.oracle(5), 1, [permutations.identity(5)]
    )
    checks["search-n5-found"] = res.status is SearchStatus.FOUND and verify_rainbow(res.cycle).is_rainbow_r
    elapsed = time.monotonic() - t0
    checks["runtime<30s"] = elapsed < 30
    checks["info:elapsed_s"] = round(elapsed, 1)
    return Verdict(_all(checks), checks, {})


def criterion6(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Subsets: Hamilton cycles, edge-disjoint pairs, sequence enumeration,
    the ten-disjoint-cycles maximum, even-n non-existence, zigzag and special
    blocks."""
    t0 = time.monotonic()
    checks = {}
    for n in range(5, 16, 2):
        cyc = subsets.hamilton_k2(n)
        rep = verify_rainbow(cyc)
        checks[f"hamilton-n{n}"] = (
            rep.is_rainbow_r
            and len(cyc) == comb(n, 2)
            and len(set(cyc.states)) == comb(n, 2)
        )
    for n in (5, 7, 9, 11, 13):
        c1, c2 = subsets.edge_disjoint_pair(n)
        ok = verify_rainbow(c1).is_rainbow_r and verify_rainbow(c2).is_rainbow_r
        ok = ok and not (subsets.cycle_edge_set(c1) & subsets.cycle_edge_set(c2))
        checks[f"disjoint-pair-n{n}"] = ok
    for ell in range(2, 7):
        count = len(subsets.enumerate_rainbow_sequences(ell))
        checks[f"enum-l{ell}-even"] = count > 0 and count % 2 == 0
        checks[f"info:enum-l{ell}-count"] = count
    best, witness = subsets.max_edge_disjoint(6)
    checks["max-disjoint-l6=10=n-3"] = best == 10 == 13 - 3
    pair_ok = True
    for i in range(len(witness)):
        ei = subsets.cycle_edge_set(witness[i].cycle())
        for j in range(i + 1, len(witness)):
            pair_ok = pair_ok and not (ei & subsets.cycle_edge_set(witness[j].cycle()))
    checks["max-disjoint-witness-valid"] = pair_ok
    for n in (4, 6, 8):
        for k in range(2, n // 2 + 1):
            res = exhaustive_rainbow_search(
                subsets.oracle(n, k), 1, [tuple(range(1, k + 1))]
            )
            checks[f"none-n{n}-k{k}"] = res.status is SearchStatus.NONE
    for ell in range(2, 15):
        n = 2 * ell + 1
        for k in range(3, (n + 2) // 3):
            if 3 * k >= n:
                continue
            block = subsets.zigzag_block(ell, k)
            rep = verify_rainbow(subsets.cycle_from_block(n, k, block))
            checks[f"zigzag-l{ell}-k{k}"] = rep.is_rainbow_r
    for ell, k in ((4, 4), (8, 8)):
        block = subsets.special_block(ell, k)
        rep = verify_rainbow(subsets.cycle_from_block(2 * ell + 1, k, block))
        bl = subsets.check_block(2 * ell + 1, k, block)
        checks[f"special-l{ell}-k{k}"] = rep.is_rainbow_r and bl.label_ok and not bl.shape_ok
    elapsed = time.monotonic() - t0
    checks["runtime<10min"] = elapsed < 600
    checks["info:elapsed_s"] = round(elapsed, 1)
    return Verdict(_all(checks), checks, {})


def criterion7(seed: int = 0, budget_seconds: Optional[float] = None) -> Verdict:
    """Cross-cutting: weight conservation and alternation, centeredness test
    agreement, and verifier stability through JSON round-trips."""
    checks = {}
    for m in (4, 6, 8):
        ok = True
        for state in matchings.enumerate_matchings(m):
            w = matchings.weight(m, state)
            for t, _labs in matchings._neighbors_centered(m, state):
                if abs(matchings.weight(m, t) - w) != m - 2:
                    ok = False
        checks[f"weight-step-m{m}"] = ok
    rng = random.Random(seed)
    alternate_ok = True
    walks = 10_000
    for w in range(walks):
        m = (4, 6, 8)[w % 3]
        states = matchings.enumerate_matchings(m)
        cur = states[rng.randrange(len(states))]
        prev_delta = None
        for _ in range(8):
            nbrs = matchings._neighbors_centered(m, cur)
            if not nbrs:
                break
            nxt = nbrs[rng.randrange(len(nbrs))][0]
            delta = matchings.weight(m, nxt) - matchings.weight(m, cur)
            if prev_delta is not None and prev_delta + delta != 0:
                alternate_ok = False
            prev_delta = delta
            cur = nxt
    checks["sign-alternation-walks"] = alternate_ok
    checks["info:walks"] = walks
    for m in (4, 6, 8):
        agree = True
        for state in matchings.enumerate_matchings(m):
            for t, labs in matchings.flippable_pairs(m, state):
                corners = set(labs[0]) | set(labs[1])
                if matchings.is_centered(m, corners) != matchings.contains_center(m, corners):
                    agree = False
        checks[f"centered-tests-agree-m{m}"] = agree
    samples = [
        triangulations.rainbow1_cycle(7),
        trees.rainbow1_cycle(geometry.canonical_label(SMALL_POINT_CONFIGS["n5-two-interior"])),
        matchings.explicit_rainbows()[(6, 2)],
        permutations.apply_sequence(permutations.identity(5), permutations.rainbow_sequence(5)),
        subsets.hamilton_k2(7),
    ]
    rt_ok = True
    for cyc in samples:
        back = serialize.loads(serialize.dumps(cyc))
        rep1, rep2 = verify_rainbow(cyc), verify_rainbow(back)
        rt_ok = rt_ok and rep1.is_rainbow_r == rep2.is_rainbow_r == True and back.states == cyc.states
    checks["json-round-trip"] = rt_ok
    return Verdict(_all(checks), checks, {"seed": seed})


CRITERIA = (
    Criterion(1, "triangulation rainbow cycles", criterion1),
    Criterion(2, "plane spanning tree rainbow cycles", criterion2),
    Criterion(3, "matching flip structure", criterion3),
    Criterion(4, "matching rainbow existence and non-existence", criterion4),
    Criterion(5, "permutation rainbow cycles", criterion5),
    Criterion(6, "subset rainbow cycles", criterion6),
    Criterion(7, "cross-cutting invariants", criterion7),
)
