"""End-to-end acceptance checks.

Each test runs one criterion inside the ``criterion`` fixture, which enforces
the time budget and logs a PASS/FAIL line shown in the terminal summary.
Where the library produces a certificate, the certificate is re-checked with
the rank-only oracle in ``oracles.py``.
"""

import random

from binmat import BinaryMatroid, Tier, canonical_form, classify, families, has_minor, is_isomorphic, lam
from binmat.connectivity import (is_44s_connected, is_internally_4_connected, tier_chain_consistent)
from binmat.families import GENERATORS, generate
from binmat.io import read_bmat, write_bmat
from binmat.moves import (check_theorem_outcome, delete_central_cocircuit, enhanced_ladder_move,
                          mixed_ladder_move, trim_bowtie_ring, trim_bowtie_string, trim_ladder_structure,
                          trim_open_rotor_chain)
from binmat.patterns import builtin, match
from binmat.suites import (SUITES, chorded_m7, fixture_match, i4c_battery, unique_cocircuit_instances, load_fixture,
                           random_pool, string_chain_forms)

from oracles import Oracle
from test_families import DEFAULT_PARAMS


def oracle_confirms_iso(M, N, mapping):
    """The label map sends the circuits of M exactly onto the circuits of N."""
    om, on = Oracle(M), Oracle(N)
    cm = om.circuits(M.rank + 1)
    for c in cm:
        labels = [M.labels[i] for i in range(len(M)) if c >> i & 1]
        if not on.is_circuit(on.mask([mapping[x] for x in labels])):
            return False
    return len(cm) == len(on.circuits(N.rank + 1))


def test_01_fano_identity(criterion):
    with criterion(1, "M_3 is isomorphic to F_7 from the seven nonzero columns", 1.0):
        F7 = BinaryMatroid.from_columns([f"p{v}" for v in range(1, 8)], list(range(1, 8)), 3)
        M3 = families.m_n(3)
        cert = is_isomorphic(M3, F7)
        assert cert is not None and cert.validate(M3, F7)
        assert oracle_confirms_iso(M3, F7, cert.mapping)


def test_02_m4_dual_k33(criterion):
    with criterion(2, "M_4 is isomorphic to M*(K_{3,3})", 1.0):
        M4, D = families.m_n(4), families.complete_bipartite(3, 3).dual()
        cert = is_isomorphic(M4, D)
        assert cert is not None and cert.validate(M4, D)
        assert oracle_confirms_iso(M4, D, cert.mapping)


def test_03_m_n_internally_4_connected(criterion):
    with criterion(3, "classify(M_n) is internally 4-connected for n = 3..7", 60.0):
        for n in range(3, 8):
            M = families.m_n(n)
            assert classify(M).label == "internally-4-connected"
            # independent confirmation from the subset-enumeration oracle
            assert Oracle(M).tier() == "internally-4-connected"


def test_04_triangular_mobius_minus_z(criterion):
    with criterion(4, "Delta_r \\ z is the dual of the cubic Moebius ladder for r = 5, 6", 10.0):
        for r in (5, 6):
            D = families.triangular_mobius(r, delete_z=True)
            L = families.cubic_ladder(r - 1, mobius=True).dual()
            cert = is_isomorphic(D, L)
            assert cert is not None and cert.validate(D, L)
            assert oracle_confirms_iso(D, L, cert.mapping)


def test_05_biwheel_pair(criterion):
    with criterion(5, "M(G_8) and its alternating-spoke deletion are both i4c, and one is a minor of the other", 30.0):
        M, N = families.biwheel(6), families.biwheel_alternating(6)
        assert classify(M).label == "internally-4-connected"
        assert classify(N).label == "internally-4-connected"
        w = has_minor(M, N)
        assert w is not None and w.validate(M, N)
        # the literal deletion is a witness too
        assert M.delete(families.alternating_spokes(6)).same_as(N)


def test_06_unique_cocircuit_suite(criterion):
    with criterion(6, "each bowtie's 4-cocircuit is the only one meeting both triangles", 60.0):
        res = SUITES["lemma3.2"]()
        assert res.passed, [c for c in res.cases if not c.passed]
        inst = unique_cocircuit_instances()
        assert {"terrahawk", "QL3", "QL4", "QL5", "M5", "M7"} == set(inst)
        # recount the 4-cocircuits with the oracle on the smaller instances
        for name in ("QL3", "M5"):
            M = inst[name]
            o = Oracle(M)
            quads = [q for q in o.cocircuits(4) if bin(q).count("1") == 4]
            ms = match(M, builtin("bowtie"))
            assert ms
            for m in ms:
                t1 = o.mask([m["x1"], m["x2"], m["x3"]])
                t2 = o.mask([m["x4"], m["x5"], m["x6"]])
                hits = [q for q in quads if q & t1 and q & t2]
                assert hits == [o.mask([m["x2"], m["x3"], m["x4"], m["x5"]])]


def test_07_string_chain(criterion):
    with criterion(7, "the four minors of the n = 3 bowtie-string chain are isomorphic", 30.0):
        M = load_fixture("quartic_ladder_5.bmat")
        m = fixture_match("quartic_ladder_5_string3.bind")
        forms = string_chain_forms(M, m)
        assert len({f for _, f in forms}) == 1
        # pairwise check without the canonical form
        n = 3
        a = [m[f"a_{i}"] for i in range(n + 1)]
        b = [m[f"b_{i}"] for i in range(n + 1)]
        c = [m[f"c_{i}"] for i in range(n + 1)]
        base = M.minor(c, [b[n]])
        others = [M.minor(a, [b[0]])]
        for k in range(1, n + 1):
            others += [M.minor(c[:k] + a[k:], [b[k]]), M.minor(c[:k] + a[k:], [b[k - 1]])]
        for X in others:
            cert = is_isomorphic(base, X)
            assert cert is not None and cert.validate(base, X)
        assert SUITES["lemma5.2"]().passed


def test_08_fan_dichotomy_pool(criterion):
    with criterion(8, "every 4-fan of the seeded F_7-minor pool keeps F_7 after \\s1 or /s4", 300.0):
        res = SUITES["lemma2.2"](seed=0)
        assert res.passed, [c.detail for c in res.cases if not c.passed][:3]
        fans = sum(int(c.detail.split()[0].split("=")[1]) for c in res.cases)
        assert len(res.cases) >= 100 and fans > 0
        # pool members really are 3-connected with an F_7-minor
        F7 = families.fano()
        for _, M in random_pool(0, 150)[:10]:
            o = Oracle(M)
            assert o.separations(1, 1) == set() and o.separations(2, 2) == set()
            assert has_minor(M, F7) is not None


def test_09_diamond_on_quartic_ladder(criterion):
    with criterion(9, "diamond template matches QL4 with the two extra triangles", 10.0):
        M = families.quartic_ladder(4)
        t = builtin("fig8_diamond")
        ms = match(M, t)
        assert ms
        o = Oracle(M)
        for m in ms:
            assert len({m[v] for v in t.variables}) == len(t.variables) == 16
            for tri in (("a_1", "c_0", "d_0"), ("a_0", "c_3", "d_3")):
                assert o.is_circuit(o.mask([m[v] for v in tri]))
        assert SUITES["lemma4.2"]().passed


def test_10_lambda_calculus(criterion):
    with criterion(10, "lambda symmetry, duality, two-formula identity and submodularity on 1000 samples", 30.0):
        instances = [generate(name, *DEFAULT_PARAMS[name]) for name in sorted(DEFAULT_PARAMS)]
        instances += list(i4c_battery().values())
        rng = random.Random(2024)
        oracles = {}
        for _ in range(1000):
            M = rng.choice(instances)
            o = oracles.setdefault(id(M), (Oracle(M), M.dual()))
            orc, D = o
            X, Y = rng.getrandbits(len(M)), rng.getrandbits(len(M))
            comp = M.full & ~X
            lx = lam(M, X)
            assert lx == lam(M, comp)
            assert lx == lam(D, X)
            assert lx == orc.rank(X) + orc.rank(comp) - M.rank
            assert lx == orc.rank(X) + orc.corank(X) - bin(X).count("1")
            assert lx + lam(M, Y) >= lam(M, X & Y) + lam(M, X | Y)


def test_11_tier_chain(criterion):
    with criterion(11, "i4c => (4,4,S) => (4,5,S,+) => sequentially 4-connected on the battery"):
        battery = dict(i4c_battery())
        battery.update({"W4": families.wheel(4), "W5": families.wheel(5), "K4": families.complete_graph(4),
                        "P4": families.cubic_ladder(4), "G5": families.biwheel(3),
                        "W4\\x1": families.wheel(4).delete(["x1"])})
        for name, M in battery.items():
            c = classify(M)
            assert tier_chain_consistent(c, M), name
            if is_internally_4_connected(M):
                assert is_44s_connected(M), name
            if c.at_least(Tier.FOUR_FOUR_S):
                assert c.at_least(Tier.FOUR_FIVE_S_PLUS) and c.at_least(Tier.SEQUENTIALLY_4_CONNECTED)


def _first(M, name, **params):
    ms = match(M, builtin(name, **params), limit=1)
    assert ms, (name, params)
    return ms[0]


def _enhanced(M, k, variant):
    t = builtin("enhanced_quartic_ladder", k=k, variant=variant)
    full = match(M, t, limit=1, enumerate_free=True)[0]
    return match(M, t, limit=1, bindings={v: full[v] for v in t.free})[0]


def test_12_move_arithmetic(criterion):
    with criterion(12, "every move's element count and revalidation"):
        QL3, QL4, W6 = families.quartic_ladder(3), families.quartic_ladder(4), families.wheel(6)
        cases = [
            (trim_bowtie_string, QL3, _first(QL3, "bowtie_string", n=1), 2, 0),
            (trim_bowtie_ring, QL3, _first(QL3, "bowtie_ring", n=3), 3, 0),
            (trim_open_rotor_chain, QL3, _first(QL3, "open_rotor_chain", n=3), 3, 0),
            (trim_ladder_structure, QL3, _first(QL3, "ladder_structure", n=1), 3, 0),
            (delete_central_cocircuit, QL3, _first(QL3, "augmented_4_wheel"), 4, 0),
            (mixed_ladder_move, QL4, _first(QL4, "open_quartic_ladder", n=3), 3, 1),
        ]
        for k in (0, 1, 2):
            cases.append((enhanced_ladder_move, W6, _enhanced(W6, k, 1), 4 + k, 0))
        for move, M, m, d, c in cases:
            rep = move(M, m)
            assert len(rep.deleted) == d and len(rep.contracted) == c, move.__name__
            assert len(rep.result) == len(M) - d - c
            assert rep.revalidate(M)
            assert rep.result_class.label == Oracle(rep.result).tier()


def test_13_file_round_trip(criterion, tmp_path):
    with criterion(13, "gen -> write -> read -> canonical form for every generator"):
        assert set(DEFAULT_PARAMS) == set(GENERATORS)
        for name in sorted(GENERATORS):
            M = generate(name, *DEFAULT_PARAMS[name])
            p = tmp_path / f"{name}.bmat"
            write_bmat(M, p)
            R = read_bmat(p)
            assert R.labels == M.labels and R.same_as(M)
            assert canonical_form(R) == canonical_form(M)


def test_14_theorem_guard(criterion):
    with criterion(14, "theorem checker names the failed hypothesis and stops"):
        M7 = families.m_n(7)
        b7 = _first(M7, "bowtie")
        rep = check_theorem_outcome(M7, families.fano(), b7)
        assert not rep.proceeded and "|E(M)| >= 16" in rep.failed_hypothesis
        assert rep.outcomes == [] and rep.searched == []
        M, _, bowtie = chorded_m7()
        rep = check_theorem_outcome(M, families.fano(), bowtie, gap_cap=10)
        assert not rep.proceeded and rep.failed_hypothesis == "M\\1,4 has no N-minor"
        assert rep.outcomes == [] and rep.searched == []
