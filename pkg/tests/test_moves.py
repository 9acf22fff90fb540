import pytest

from binmat import MatroidError, families, has_minor
from binmat.moves import (MOVES, check_theorem_outcome, delete_central_cocircuit, enhanced_ladder_move,
                          mixed_ladder_move, quick_wins, theorem_hypotheses, trim_bowtie_ring,
                          trim_bowtie_string, trim_ladder_structure, trim_open_rotor_chain)
from binmat.patterns import ConfigMatch, builtin, match
from binmat.suites import chorded_m7

from oracles import Oracle


QL3 = families.quartic_ladder(3)
QL4 = families.quartic_ladder(4)
QL5 = families.quartic_ladder(5)
W6 = families.wheel(6)


def first(M, name, **params):
    ms = match(M, builtin(name, **params), limit=1)
    assert ms, f"{name} {params} not found"
    return ms[0]


def check_report(M, rep, deleted, contracted=0):
    assert len(rep.deleted) == deleted and len(rep.contracted) == contracted
    assert len(rep.result) == len(M) - deleted - contracted
    assert rep.revalidate(M)
    assert rep.result_class.label == Oracle(rep.result).tier()


def test_string_trim_counts():
    m = first(QL3, "bowtie_string", n=1)
    rep = trim_bowtie_string(QL3, m)
    check_report(QL3, rep, 2)
    assert rep.deleted == {m["c_0"], m["c_1"]}


def test_full_string_trim_on_ladder():
    m = first(QL5, "bowtie_string", n=3)
    rep = trim_bowtie_string(QL5, m)
    assert len(rep.deleted) == 4 and rep.revalidate(QL5)
    # two classification paths: the tier ladder and the oracle's definitions
    assert rep.result_class.label == Oracle(rep.result).tier()


def test_string_trim_fans_at_each_stage():
    n = 3
    m = first(QL5, "bowtie_string", n=n)
    for j in range(n):
        stage = QL5.delete([m[f"c_{i}"] for i in range(j + 1)])
        o = Oracle(stage)
        fan = [m[f"c_{j+1}"], m[f"b_{j+1}"], m[f"a_{j+1}"], m[f"b_{j}"]]
        orders = o.fan_orderings(o.mask(fan))
        assert any(p == tuple(o.mask([x]).bit_length() - 1 for x in fan) for p, _ in orders)


def test_ring_trim():
    m = first(QL3, "bowtie_ring", n=3)
    rep = trim_bowtie_ring(QL3, m)
    check_report(QL3, rep, 3)
    assert rep.deleted == {m[f"c_{i}"] for i in range(3)}


def test_ring_trim_on_longer_ring():
    m = first(QL4, "bowtie_ring", n=4)
    rep = trim_bowtie_ring(QL4, m)
    check_report(QL4, rep, 4)


def test_open_rotor_chain_trim():
    m = first(QL3, "open_rotor_chain", n=3)
    rep = trim_open_rotor_chain(QL3, m)
    check_report(QL3, rep, 3)
    assert rep.deleted == {m["c_0"], m["c_1"], m["c_2"]}


def test_ladder_structure_trim():
    m = first(QL3, "ladder_structure", n=1)
    rep = trim_ladder_structure(QL3, m)
    check_report(QL3, rep, 3)
    assert rep.deleted == {m["c_0"], m["c_1"], m["beta"]}
    m = first(QL4, "ladder_structure", n=2, variant=2)
    rep = trim_ladder_structure(QL4, m)
    check_report(QL4, rep, 4)


def test_central_cocircuit_deletion():
    m = first(QL3, "augmented_4_wheel")
    rep = delete_central_cocircuit(QL3, m)
    check_report(QL3, rep, 4)
    assert rep.deleted == {m["x2"], m["y2"], m["z2"], m["z3"]}
    assert QL3.is_cocircuit(sorted(rep.deleted))


def test_mixed_ladder_move():
    m = first(QL4, "open_quartic_ladder", n=3)
    rep = mixed_ladder_move(QL4, m)
    check_report(QL4, rep, 3, 1)
    assert rep.contracted == {m["b_3"]}


def test_mixed_ladder_rejects_other_templates():
    m = first(QL3, "bowtie_string", n=1)
    with pytest.raises(MatroidError):
        mixed_ladder_move(QL3, m)


def enhanced_match(M, k, variant):
    """Bind every free variable of the template, then let the matcher confirm the rest."""
    t = builtin("enhanced_quartic_ladder", k=k, variant=variant)
    full = match(M, t, limit=1, enumerate_free=True)[0]
    bindings = {v: full[v] for v in t.free}
    ms = match(M, t, limit=1, bindings=bindings)
    assert ms and ms[0].assignment == full.assignment
    return ms[0]


@pytest.mark.parametrize("k,variant,deleted", [(0, 1, 4), (1, 1, 5), (1, 2, 5), (2, 1, 6), (2, 3, 6)])
def test_enhanced_ladder_move_counts(k, variant, deleted):
    m = enhanced_match(W6, k, variant)
    rep = enhanced_ladder_move(W6, m)
    check_report(W6, rep, deleted)
    names = ["c_2", "c_1", "c_0"] + [f"v_{i}" for i in range(k + 1)]
    assert rep.deleted == {m[v] for v in names}


def test_invalid_match_raises():
    t = builtin("bowtie_string", n=1)
    bad = ConfigMatch(t, {"a_0": "a0", "b_0": "b0", "c_0": "c0", "a_1": "a2", "b_1": "b2", "c_1": "c2"})
    with pytest.raises(MatroidError):
        trim_bowtie_string(QL4, bad)
    good = first(QL4, "bowtie_string", n=1)
    with pytest.raises(MatroidError):
        trim_bowtie_ring(QL4, good)  # wrong template for the move


def test_move_table_complete():
    assert set(MOVES) == {"trim_bowtie_string", "trim_open_rotor_chain", "trim_bowtie_ring",
                          "trim_ladder_structure", "enhanced_ladder_move", "mixed_ladder_move",
                          "delete_central_cocircuit"}


def test_n_minor_verdict():
    m = first(QL4, "bowtie_string", n=1)
    K4 = families.complete_graph(4)
    rep = trim_bowtie_string(QL4, m, N=K4, gap_cap=12)
    assert rep.n_minor_verdict is (has_minor(rep.result, K4, gap_cap=12) is not None)


# -- theorem checker ---------------------------------------------------------

def test_guard_on_small_matroid():
    M = families.m_n(7)
    assert len(M) == 15
    bowtie = first(M, "bowtie")
    rep = check_theorem_outcome(M, families.fano(), bowtie)
    assert not rep.proceeded
    assert "|E(M)| >= 16" in rep.failed_hypothesis
    assert rep.outcomes == [] and rep.searched == []


def test_guard_when_deletion_keeps_minor():
    M, _, bowtie = chorded_m7()
    F7 = families.fano()
    rep = check_theorem_outcome(M, F7, bowtie, gap_cap=10)
    assert not rep.proceeded
    assert rep.failed_hypothesis == "M\\1,4 has no N-minor"
    assert has_minor(M.delete([bowtie["x1"], bowtie["x4"]]), F7, gap_cap=10) is not None
    assert rep.summary().startswith("hypothesis failed")


def test_guard_on_bad_bowtie():
    M, N, bowtie = chorded_m7()
    broken = ConfigMatch(bowtie.template, dict(bowtie.assignment, x6="g"))
    assert "bowtie" in theorem_hypotheses(M, N, broken)


def test_constructed_instance_reports_outcome():
    M, N, bowtie = chorded_m7()
    assert theorem_hypotheses(M, N, bowtie) is None
    rep = check_theorem_outcome(M, N, bowtie)
    assert rep.proceeded and rep.outcomes
    assert "(i)" in rep.clauses()
    for o in rep.outcomes:
        M0, N0 = (M, N) if o.side == "M" else (M.dual(), N.dual())
        minor = M0.minor(o.deleted, o.contracted)
        assert Oracle(minor).tier() in ("internally-4-connected", "4-connected")
        assert has_minor(minor, N0) is not None


def test_quick_wins_match_single_removal_oracle():
    M, N, _ = chorded_m7()
    wins = set(quick_wins(M, N, max_removed=1))
    for e in M.labels:
        for D, C in (((e,), ()), ((), (e,))):
            minor = M.minor(D, C)
            truth = Oracle(minor).tier() in ("internally-4-connected", "4-connected") \
                and has_minor(minor, N) is not None
            assert ((frozenset(D), frozenset(C)) in wins) == truth
