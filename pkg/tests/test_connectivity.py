import itertools
import random

import pytest

from binmat import (CapExceeded, MatroidError, Tier, classify, families, find_fans,
                    find_k_separations, is_sequential, lam)
from binmat.connectivity import fan_orderings_mask, is_44s_connected, tier_chain_consistent
from binmat.matroid import popcount

from oracles import Oracle


K4 = families.complete_graph(4)
F7 = families.fano()
W4 = families.wheel(4)


def battery():
    return {
        "K4": K4,
        "F7": F7,
        "F7*": F7.dual(),
        "W3": families.wheel(3),
        "W4": W4,
        "W5": families.wheel(5),
        "M4": families.m_n(4),
        "M5": families.m_n(5),
        "K33": families.complete_bipartite(3, 3),
        "K5": families.complete_graph(5),
        "G5": families.biwheel(3),
        "G5+": families.biwheel_plus(3),
        "P4": families.cubic_ladder(4),
        "Mob3": families.cubic_ladder(3, mobius=True),
        "W4\\x1": W4.delete(["x1"]),
        "K4+K4": families.graphic([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
                                   (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (4, 7)]),
    }


def test_lambda_examples():
    assert lam(K4, []) == 0
    assert lam(K4, ["e12"]) == 1
    assert lam(K4, ["e12", "e13", "e23"]) == 2


@pytest.mark.parametrize("name", list(battery()))
def test_lambda_properties(name):
    M = battery()[name]
    D = M.dual()
    o = Oracle(M)
    rng = random.Random(name)
    for _ in range(60):
        X = rng.getrandbits(len(M))
        Y = rng.getrandbits(len(M))
        assert lam(M, X, check=True) == o.lam(X)
        assert lam(M, X) == lam(M, M.full & ~X) == lam(D, X)
        assert lam(M, X) + lam(M, Y) >= lam(M, X & Y) + lam(M, X | Y)


@pytest.mark.parametrize("name", ["K4", "W4", "M4", "P4", "G5"])
def test_moving_rule(name):
    M = battery()[name]
    o = Oracle(M)
    for X in o.subsets():
        k = o.lam(X) + 1
        cl = o.closure(X) | o.closure(X, o.corank)
        for y in range(len(M)):
            if not X >> y & 1 and cl >> y & 1:
                assert o.lam(X | 1 << y) <= k - 1


def test_separation_examples():
    seps = find_k_separations(K4, 3, 3)
    # each triangle's complement is a vertex star
    assert len(seps) == 4
    tri = {frozenset(K4.labels_of(t)) for t in K4.triangles()}
    tra = {frozenset(K4.labels_of(t)) for t in K4.triads()}
    assert {frozenset(s.sides()) for s in seps} == {frozenset((x, y)) for x in tri for y in tra if not x & y}
    assert find_k_separations(F7, 2, 2) == []
    assert find_k_separations(W4, 3, 4)


@pytest.mark.parametrize("name", list(battery()))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_separations_match_oracle(name, k):
    M = battery()[name]
    o = Oracle(M)
    got = set()
    for s in find_k_separations(M, k, k):
        a, b = o.mask(s.side_x), o.mask(s.side_y)
        assert a | b == o.full and not a & b
        assert o.lam(a) == s.order - 1 <= k - 1
        got.add(frozenset((a, b)))
    assert got == o.separations(k, k)


def test_separations_deterministic():
    M = battery()["P4"]
    assert [str(s) for s in find_k_separations(M, 3)] == [str(s) for s in find_k_separations(M, 3)]


def test_triangle_is_sequential():
    order = is_sequential(K4, ["e12", "e13", "e23"])
    assert order is not None and sorted(order) == ["e12", "e13", "e23"]


def test_four_fan_is_sequential():
    Z = ["x1", "y1", "x2", "y2"]
    order = is_sequential(W4, Z)
    assert order is not None and sorted(order) == sorted(Z)
    o = Oracle(W4)
    # The last three peeled (v_1, v_2, v_3) form a triangle or a triad.
    tail = o.mask(order[:3])
    assert o.is_circuit(tail) or o.is_cocircuit(tail)
    # and every suffix-extension of the complement stays 3-separating
    comp = o.full & ~o.mask(Z)
    for i in range(len(order), 0, -1):
        comp |= o.mask([order[i - 1]])
        assert o.lam(comp) <= 2


def two_k5s():
    # two copies of K5 glued along the triangle on vertices 1, 2, 3
    edges = [e for e in itertools.combinations(range(1, 6), 2)]
    edges += [e for e in itertools.combinations([1, 2, 3, 6, 7], 2) if not set(e) <= {1, 2, 3}]
    return families.graphic(edges, [f"e{u}{v}" for u, v in edges])


def test_non_sequential_side():
    M = two_k5s()
    Z = ["e14", "e15", "e24", "e25", "e34", "e35", "e45"]
    assert lam(M, Z) == 2
    assert is_sequential(M, Z) is None
    rest = [x for x in M.labels if x not in Z]
    assert is_sequential(M, rest) is None
    o = Oracle(M)
    assert not o.sequential_side(o.mask(Z))
    assert not o.sequential_side(o.mask(rest))
    assert classify(M).tier == Tier.THREE_CONNECTED


def test_is_sequential_precondition():
    with pytest.raises(MatroidError):
        is_sequential(F7, ["1", "2", "4"])


@pytest.mark.parametrize("name", ["W4", "W5", "M4", "P4", "G5", "K4+K4", "F7*"])
def test_sequential_agrees_with_oracle(name):
    M = battery()[name]
    if M.rank == 0:
        return
    o = Oracle(M)
    for pair in o.separations(3, 3):
        for Z in pair:
            ours = is_sequential(M, M.labels_of(Z)) is not None
            assert ours == o.sequential_side(Z)
            if ours and popcount(Z) in (3, 4, 5):
                assert o.is_fan(Z)


def test_wheel_fans():
    fans = find_fans(W4, 4)
    o = Oracle(W4)
    kinds = {len(f) for f in fans}
    assert kinds == {3, 4}
    for f in fans:
        assert o.is_fan(o.mask(f.ordering))
        if len(f) == 4:
            assert f.guts == f.ordering[0] and f.coguts == f.ordering[-1]
            assert f.pattern[0] == "triangle"
    # brute force: every 4-subset with a fan ordering is reported
    fours = {m for m in o.subsets([4]) if o.is_fan(m)}
    assert {o.mask(f.ordering) for f in fans if len(f) == 4} == fours


def test_fano_has_no_four_fans():
    assert [f for f in find_fans(F7, 5) if len(f) >= 4] == []


def test_find_fans_needs_3_connected():
    with pytest.raises(MatroidError):
        find_fans(W4.delete(["x1"]), 4)


def test_bowtie_deletion_has_four_fan():
    M = families.quartic_ladder(4)
    # triangles {a0,b0,c0}, {a1,b1,c1}; 4-cocircuit {b0,c0,a1,b1}; delete c0
    D = M.delete(["c0"])
    fans = {f.as_set() for f in find_fans(D, 4) if len(f) == 4}
    assert frozenset({"c1", "b1", "a1", "b0"}) in fans
    o = Oracle(D)
    assert o.is_fan(o.mask(["c1", "b1", "a1", "b0"]))


def test_fan_orderings_agree_with_oracle():
    M = families.wheel(5)
    o = Oracle(M)
    for X in o.subsets([4, 5]):
        ours = {p for p, _ in fan_orderings_mask(M, X)}
        theirs = {p for p, _ in o.fan_orderings(X)}
        assert ours == theirs


def test_classify_examples():
    assert classify(K4).tier == Tier.INTERNALLY_4_CONNECTED
    for n in range(3, 8):
        assert classify(families.m_n(n)).label == "internally-4-connected"


def test_w5_is_455_not_44s():
    # The 5|5 split {x1,y1,x2,y2,x3} | {y3,x4,y4,x5,y5} has neither side a
    # triangle, triad or 4-fan, so W5 cannot be (4,4,S)-connected; the second
    # side is a 5-cofan, and (4,5,S,+) needs a side that is "big".
    W5 = families.wheel(5)
    assert Oracle(W5).tier() == "(4,5,S,+)-connected"
    c = classify(W5)
    assert c.tier == Tier.FOUR_FIVE_S_PLUS
    assert not c.at_least(Tier.INTERNALLY_4_CONNECTED)
    assert c.witnesses


@pytest.mark.parametrize("name", list(battery()))
def test_classify_matches_oracle(name):
    M = battery()[name]
    assert classify(M).label == Oracle(M).tier()


@pytest.mark.parametrize("name", list(battery()))
def test_tier_chain(name):
    M = battery()[name]
    c = classify(M)
    assert tier_chain_consistent(c, M)
    assert is_44s_connected(M) == c.at_least(Tier.FOUR_FOUR_S)


def test_witnesses_block_next_tier():
    c = classify(families.wheel(4))
    assert c.tier == Tier.FOUR_FOUR_S
    for s in c.witnesses:
        assert min(len(s.side_x), len(s.side_y)) >= 4


def test_cap_refusal():
    with pytest.raises(CapExceeded):
        classify(families.complete_graph(7), cap=20)
    with pytest.raises(CapExceeded):
        classify(families.wheel(6), cap=10)
