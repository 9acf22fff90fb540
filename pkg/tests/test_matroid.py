import itertools
import random

import pytest

from binmat import BinaryMatroid, MatroidError, families
from binmat.gf2 import Gf2Matrix

from oracles import Oracle


K4 = families.complete_graph(4)
F7 = families.fano()


def small_instances():
    return {
        "K4": K4,
        "F7": F7,
        "F7*": F7.dual(),
        "W4": families.wheel(4),
        "M4": families.m_n(4),
        "K33": families.complete_bipartite(3, 3),
        "P3": families.cubic_ladder(3),
    }


def test_rank_examples():
    assert K4.rank_of(["e12", "e13", "e23"]) == 2
    assert K4.rank_of([]) == 0
    for X in itertools.combinations(F7.labels, 4):
        assert F7.rank_of(X) == 3


def test_foreign_subset_rejected():
    from binmat.matroid import SubsetView
    view = SubsetView(F7, 0b11)
    with pytest.raises(MatroidError):
        K4.rank_of(view)
    with pytest.raises(MatroidError):
        K4.rank_of(["nope"])


@pytest.mark.parametrize("name", list(small_instances()))
def test_dual_involution_and_ranks(name):
    M = small_instances()[name]
    D = M.dual()
    assert D.labels == M.labels
    assert D.dual().same_as(M)
    assert M.rank + D.rank == len(M)
    o, od = Oracle(M), Oracle(D)
    for X in o.subsets():
        assert od.rank(X) == o.corank(X)


def test_coloops_dualize_to_loops():
    M = BinaryMatroid(["a", "b", "c"], Gf2Matrix.identity(3))
    D = M.dual()
    assert D.rank == 0
    assert all(D.is_loop(x) for x in "abc")
    assert all(M.is_coloop(x) for x in "abc")


def test_delete_nothing_is_identity():
    assert K4.delete([]).same_as(K4)


def test_contract_edge_of_k4():
    C = K4.contract(["e12"])
    assert C.rank == 2 and len(C) == 5
    pairs = [p for p in itertools.combinations(C.labels, 2) if C.is_circuit(p)]
    # merging vertices 1 and 2 doubles both the edges to 3 and the edges to 4
    assert pairs == [("e13", "e23"), ("e14", "e24")]
    expected = families.graphic([("v", 3), ("v", 3), ("v", 4), ("v", 4), (3, 4)],
                                ["e13", "e23", "e14", "e24", "e34"])
    assert Oracle(C).circuits(5) == {Oracle(C).mask(c) for c in expected.circuits(5)}


def test_contract_keeps_loops():
    M = K4.contract(["e12", "e23"])
    assert M.is_loop("e13")


def test_delete_contract_commute():
    rng = random.Random(3)
    for M in small_instances().values():
        for _ in range(10):
            xs = rng.sample(M.labels, 4)
            D, C = xs[:2], xs[2:]
            a = M.delete(D).contract(C)
            b = M.contract(C).delete(D)
            assert a.same_as(b)
            assert a.same_as(M.dual().contract(D).delete(C).dual())


def test_minor_order_preserved():
    M = families.wheel(4)
    R = M.delete(["x2"]).contract(["y3"])
    assert R.labels == tuple(x for x in M.labels if x not in ("x2", "y3"))


def test_circuit_examples():
    assert len(F7.circuits(3)) == 7
    assert len(K4.circuits(3)) == 4
    assert len(K4.cocircuits(3)) == 4
    assert F7.circuits(3) == sorted(F7.circuits(3))


@pytest.mark.parametrize("name", list(small_instances()))
def test_circuits_match_oracle(name):
    M = small_instances()[name]
    o = Oracle(M)
    size = min(6, len(M))
    got = {o.mask(c) for c in M.circuits(size)}
    assert got == o.circuits(size)
    got = {o.mask(c) for c in M.cocircuits(size)}
    assert got == o.cocircuits(size)


@pytest.mark.parametrize("name", list(small_instances()))
def test_orthogonality(name):
    M = small_instances()[name]
    circuits = M.circuit_masks(len(M))
    cocircuits = M.cocircuit_masks(len(M))
    for c in circuits:
        for d in cocircuits:
            assert bin(c & d).count("1") % 2 == 0


def test_closure_examples():
    assert F7.closure(F7.labels).as_set() == set(F7.labels)
    assert F7.closure(["1", "2"]).as_set() == {"1", "2", "3"}
    W4 = families.wheel(4)
    assert W4.full_closure(["x1", "y1", "x2"]).as_set() == set(W4.labels)


@pytest.mark.parametrize("name", list(small_instances()))
def test_closures_match_oracle(name):
    M = small_instances()[name]
    o = Oracle(M)
    rng = random.Random(name)
    for _ in range(40):
        X = rng.getrandbits(len(M))
        assert M.closure_mask(X) == o.closure(X)
        assert M.coclosure_mask(X) == o.closure(X, o.corank)
        assert M.full_closure_mask(X) == o.full_closure(X)


@pytest.mark.parametrize("name", list(small_instances()))
def test_connectivity_formulas_agree(name):
    M = small_instances()[name]
    o = Oracle(M)
    for X in o.subsets():
        size = bin(X).count("1")
        assert o.lam(X) == M.rank_mask(X) + M.corank_mask(X) - size


def test_duplicate_labels_rejected():
    with pytest.raises(MatroidError):
        BinaryMatroid(["a", "a"], ["11"])


def test_simple_predicates():
    P = families.graphic([(1, 2), (1, 2), (2, 3)], ["p", "q", "r"])
    assert not P.is_simple()
    assert K4.is_simple() and K4.is_cosimple()
    assert not families.wheel(4).delete(["x1"]).is_cosimple()
