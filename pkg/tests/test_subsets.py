from math import comb

import pytest

from flipcycles.core import DomainError, cyclic_dist, verify_rainbow
from flipcycles.search import SearchStatus, exhaustive_rainbow_search
from flipcycles.subsets import (
    DSequence,
    _neighbors,
    check_block,
    complement_cycle,
    cycle_edge_set,
    cycle_from_block,
    d_sequence,
    edge_disjoint_pair,
    enumerate_rainbow_sequences,
    hamilton_k2,
    max_edge_disjoint,
    oracle,
    rainbow_cycle,
    special_block,
    zigzag_block,
)


def test_d_sequence_l3_matches_known_block():
    d = d_sequence(3)
    assert d.b_values() == (7, 3, 4)
    assert d.block() == ((1, 7), (1, 3), (1, 4))
    cyc = d.cycle()
    assert len(cyc) == 21
    assert verify_rainbow(cyc).is_rainbow_r


def test_d_sequence_l8_matches_tabulated_block():
    d = d_sequence(8)
    assert d.b_values() == (17, 3, 15, 5, 6, 12, 8, 10)
    assert tuple(abs(x) for x in d.entries) == (3, 5, 7, 1, 6, 4, 2, 8)
    rep = check_block(17, 2, d.block())
    assert rep.standard and rep.is_rainbow_cycle
    # state distances climb 1..l in order
    assert [cyclic_dist(17, b) for b in d.block()] == list(range(1, 9))


def test_d_sequence_last_value():
    assert d_sequence(4).b_values()[-1] == 6  # l + 2 for even l
    assert d_sequence(7).b_values()[-1] == 8  # l + 1 for odd l
    for ell in range(2, 10):
        d = d_sequence(ell)
        want = ell + 2 if ell % 2 == 0 else ell + 1
        assert d.b_values()[-1] == want
        # the forced last entry: b_l + d_l = 2 mod n
        assert (d.b_values()[-1] + d.entries[-1]) % d.n == 2 % d.n


def test_hamilton_k2_lengths_and_hamiltonicity():
    for n in (5, 7, 9, 11):
        cyc = hamilton_k2(n)
        assert len(cyc) == comb(n, 2)
        assert len(set(cyc.states)) == comb(n, 2)
        assert verify_rainbow(cyc).is_rainbow_r


def test_hamilton_k2_refuses_even():
    with pytest.raises(DomainError):
        hamilton_k2(6)


def test_cycle_from_block_rejects_bad_blocks():
    with pytest.raises(DomainError):
        cycle_from_block(7, 2, [(1, 7), (1, 3)])  # wrong length
    with pytest.raises(DomainError):
        cycle_from_block(7, 2, [(1, 7), (3, 5), (1, 4)])  # non-adjacent states


def test_edge_disjoint_pair():
    for n in (5, 7, 13):
        c1, c2 = edge_disjoint_pair(n)
        assert verify_rainbow(c1).is_rainbow_r and verify_rainbow(c2).is_rainbow_r
        assert not (cycle_edge_set(c1) & cycle_edge_set(c2))


def test_reversal_is_involution_and_fresh():
    for ell in (2, 3, 4, 5):
        d = d_sequence(ell)
        rev = d.reversed()
        assert rev.reversed() == d
        assert rev != d


def test_enumeration_counts_even_and_contains_construction():
    for ell in range(2, 7):
        seqs = enumerate_rainbow_sequences(ell)
        assert len(seqs) % 2 == 0 and seqs
        entries = {d.entries for d in seqs}
        assert d_sequence(ell).entries in entries
        # reversal closure
        assert all(DSequence(ell, tuple(reversed(e))).entries in entries for e in entries)


def test_enumerated_sequences_give_rainbow_cycles():
    for d in enumerate_rainbow_sequences(4):
        assert verify_rainbow(d.cycle()).is_rainbow_r


def test_max_edge_disjoint_small():
    best1, wit1 = max_edge_disjoint(1)
    assert best1 == 1 and len(wit1) == 1
    best2, wit2 = max_edge_disjoint(2)
    assert best2 == 2 == 5 - 3
    # the witness union's complement in the flip graph is a 2-factor
    for ell, witness in ((1, wit1), (2, wit2)):
        n = 2 * ell + 1
        used = set()
        for d in witness:
            used |= cycle_edge_set(d.cycle())
        degree = {}
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                s = (a, b)
                for t, _ in _neighbors(n, 2, s):
                    if s < t and frozenset((s, t)) not in used:
                        degree[s] = degree.get(s, 0) + 1
                        degree[t] = degree.get(t, 0) + 1
        want = 2 * (n - 2) - 2 * len(witness)
        assert all(v == want for v in degree.values())


def test_max_edge_disjoint_bound():
    for ell in (2, 3, 4, 5):
        best, witness = max_edge_disjoint(ell)
        assert best <= 2 * ell - 2
        assert len(witness) == best


def test_zigzag_blocks_all_parity_cases():
    # one case per parity combination of l and k
    for ell, k in ((14, 8), (14, 9), (13, 6), (13, 7)):
        n = 2 * ell + 1
        block = zigzag_block(ell, k)
        rep = check_block(n, k, block)
        assert rep.standard and rep.is_rainbow_cycle


def test_zigzag_refusals():
    with pytest.raises(DomainError):
        zigzag_block(4, 3)  # k >= n/3
    with pytest.raises(DomainError):
        zigzag_block(8, 2)


def test_special_blocks_literal():
    b44 = special_block(4, 4)
    assert b44 == ((1, 2, 3, 9), (1, 2, 7, 9), (1, 2, 3, 7), (1, 2, 3, 5))
    rep = check_block(9, 4, b44)
    assert rep.is_rainbow_cycle and rep.label_ok
    assert not rep.shape_ok and not rep.dist_ok
    b88 = special_block(8, 8)
    dists = [cyclic_dist(17, tuple(set(a) ^ set(b))) for a, b in zip(b88, b88[1:])]
    assert dists == [8, 7, 6, 5, 3, 2, 1]
    rep = check_block(17, 8, b88)
    assert rep.is_rainbow_cycle
    with pytest.raises(DomainError):
        special_block(5, 5)


def test_complement_isomorphism():
    cyc = rainbow_cycle(7, 5)
    assert cyc.params == {"n": 7, "k": 5}
    assert verify_rainbow(cyc).is_rainbow_r
    base = rainbow_cycle(7, 2)
    assert complement_cycle(base).states == cyc.states
    assert base.step_labels == cyc.step_labels


def test_even_n_search_none_with_and_without_parity_prune():
    # raw exhaustion cross-validates the parity prune at the feasible sizes
    for n, k in ((4, 2), (6, 2)):
        raw = exhaustive_rainbow_search(
            oracle(n, k, parity_prune=False), 1, [tuple(range(1, k + 1))]
        )
        assert raw.status is SearchStatus.NONE
        pruned = exhaustive_rainbow_search(
            oracle(n, k), 1, [tuple(range(1, k + 1))]
        )
        assert pruned.status is SearchStatus.NONE
        assert pruned.nodes <= raw.nodes


def test_toggle_parity_prune_is_sound_at_the_root():
    from flipcycles.subsets import _toggle_parity_infeasible, universe

    full_even = {lab: 1 for lab in universe(6)}
    assert _toggle_parity_infeasible((1, 2), (1, 2), full_even)
    full_odd = {lab: 1 for lab in universe(7)}
    assert not _toggle_parity_infeasible((1, 2), (1, 2), full_odd)
    # partial state: {1,2} -> {1,3} with only {2,3} left has matching parity
    assert not _toggle_parity_infeasible((1, 2), (1, 3), {(2, 3): 1})
    # but it is infeasible if the last remaining label cannot fix element 3
    assert _toggle_parity_infeasible((1, 2), (1, 3), {(1, 2): 1})
