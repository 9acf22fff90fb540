"""Check suites behind ``binmat check``: each exercises one structural statement on
generated instances and reports a pass/fail line per case."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from . import families as fam
from .connectivity import (DEFAULT_CAP, TRIANGLE, Tier, classify, fan_orderings_mask,
                           find_fans, find_k_separations, is_3_connected)
from .io import parse_bindings, parse_bmat
from .iso import canonical_form, has_minor
from .matroid import BinaryMatroid, popcount
from .moves import check_theorem_outcome, theorem_hypotheses
from .patterns import ConfigMatch, builtin, check_hypothesis_vii, match, validate_match


@dataclass(frozen=True)
class CaseResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.passed for c in self.cases)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.cases.append(CaseResult(name, passed, detail))


# -- instances ---------------------------------------------------------------

def fixture_text(name: str) -> str:
    return (resources.files(__package__) / "fixtures" / name).read_text(encoding="utf-8")


def load_fixture(name: str) -> BinaryMatroid:
    return parse_bmat(fixture_text(name))


def fixture_match(name: str) -> ConfigMatch:
    b = parse_bindings(fixture_text(name))
    return ConfigMatch(builtin(b.template, **b.params), b.assignment)


def chorded_m7() -> tuple[BinaryMatroid, BinaryMatroid, ConfigMatch]:
    """M_7 plus the chord h = x1 + x4, with a bowtie and an N meeting the theorem's hypotheses."""
    M7 = fam.m_n(7)
    h = M7.cols[M7.index["x1"]] ^ M7.cols[M7.index["x4"]]
    M = BinaryMatroid.from_columns(M7.labels + ("h",), list(M7.cols) + [h], M7.rank)
    bowtie = ConfigMatch(builtin("bowtie"), {"x1": "x1", "x2": "x2", "x3": "y1",
                                             "x4": "x3", "x5": "y3", "x6": "x4"})
    N = M.minor(["x3"], ["y3"])
    return M, N, bowtie


def i4c_battery() -> dict[str, BinaryMatroid]:
    """Internally 4-connected family instances up to 20 elements."""
    out = {
        "terrahawk": fam.terrahawk(),
        "fano": fam.fano(),
        "K33*": fam.complete_bipartite(3, 3).dual(),
        "K5": fam.complete_graph(5),
        "G8": fam.biwheel(6),
        "G8-alternating": fam.biwheel_alternating(6),
        "Delta5": fam.triangular_mobius(5),
        "Delta6\\z": fam.triangular_mobius(6, delete_z=True),
        "Upsilon6": fam.triadic_mobius(6),
    }
    for n in (3, 4, 5):
        out[f"QL{n}"] = fam.quartic_ladder(n)
    out["QM4"] = fam.quartic_ladder(4, mobius=True)
    for n in range(3, 9):
        out[f"M{n}"] = fam.m_n(n)
    return out


# -- suites ------------------------------------------------------------------

def _random_matrix(rng: random.Random, max_elems: int) -> BinaryMatroid | None:
    r = rng.randint(3, 6)
    n = rng.randint(max(7, r + 2), max_elems)
    if n > (1 << r) - 1:
        return None
    cols = rng.sample(range(1, 1 << r), n)
    return BinaryMatroid.from_columns([f"e{i}" for i in range(n)], cols, r)


def _random_wheel_growth(rng: random.Random, max_elems: int) -> BinaryMatroid | None:
    # Wheels are full of fans; random extensions and coextensions keep many of them.
    M = fam.wheel(rng.randint(3, 5))
    for step in range(rng.randint(1, 3)):
        if len(M) >= max_elems:
            break
        if rng.random() < 0.5:
            M = M.dual()
        col = rng.randrange(1, 1 << M.rank)
        if col in M.cols:
            return None
        M = BinaryMatroid.from_columns(M.labels + (f"n{step}",), list(M.cols) + [col], M.rank)
    return M if rng.random() < 0.5 else M.dual()


def random_pool(seed: int, size: int = 60, max_elems: int = 12,
                required: BinaryMatroid | None = None) -> list[tuple[str, BinaryMatroid]]:
    """Seeded 3-connected binary matroids with at most ``max_elems`` elements, each
    having a ``required`` minor (default F_7).  Half are random simple matrices and
    half are random extensions and coextensions of small wheels."""
    rng = random.Random(seed)
    N = required if required is not None else fam.fano()
    pool = []
    attempts = 0
    while len(pool) < size and attempts < 200 * size:
        attempts += 1
        grown = len(pool) % 2 == 1
        M = _random_wheel_growth(rng, max_elems) if grown else _random_matrix(rng, max_elems)
        if M is None or len(M) > max_elems or not is_3_connected(M):
            continue
        if has_minor(M, N) is None:
            continue
        kind = "wheel+" if grown else "matrix"
        pool.append((f"pool{len(pool)}({kind},r={M.rank},n={len(M)})", M))
    return pool


def fan_dichotomy_violations(M: BinaryMatroid, N: BinaryMatroid) -> tuple[int, list[str]]:
    """Check the fan dichotomy on every 4-fan and 5-fan ordering of M."""
    checked, bad = 0, []
    memo: dict[tuple, bool] = {}

    def has(d=(), c=()) -> bool:
        key = (frozenset(d), frozenset(c))
        if key not in memo:
            memo[key] = has_minor(M.minor(d, c), N) is not None
        return memo[key]

    for f in find_fans(M, 5):
        if len(f) < 4:
            continue
        for perm, start in fan_orderings_mask(M, M.mask(f.ordering)):
            if start != TRIANGLE:
                continue
            s = [M.labels[e] for e in perm]
            checked += 1
            if len(s) == 4:
                if not (has([s[0]]) or has((), [s[3]])):
                    bad.append(f"4-fan {s}: neither \\{s[0]} nor /{s[3]} keeps the minor")
            else:
                if not (has([s[0], s[4]]) or (has([s[0]], [s[1]]) and has([s[4]], [s[3]]))):
                    bad.append(f"5-fan {s}: no branch of the dichotomy keeps the minor")
    return checked, bad


def suite_fan_dichotomy(seed: int = 0, size: int = 150) -> SuiteResult:
    res = SuiteResult("lemma2.2")
    N = fam.fano()
    for name, M in random_pool(seed, size):
        checked, bad = fan_dichotomy_violations(M, N)
        res.add(name, not bad, f"fans={checked} violations={len(bad)}" + (f" first={bad[0]}" if bad else ""))
    return res


def unique_cocircuit_violations(M: BinaryMatroid) -> tuple[int, list[str]]:
    quads = [m for m in M.cocircuit_masks(4) if popcount(m) == 4]
    checked, bad = 0, []
    for m in match(M, builtin("bowtie")):
        t1 = M.mask([m["x1"], m["x2"], m["x3"]])
        t2 = M.mask([m["x4"], m["x5"], m["x6"]])
        hits = [q for q in quads if q & t1 and q & t2]
        checked += 1
        if hits != [M.mask([m["x2"], m["x3"], m["x4"], m["x5"]])]:
            bad.append(f"{m}: {len(hits)} 4-cocircuits meet both triangles")
    return checked, bad


def unique_cocircuit_instances() -> dict[str, BinaryMatroid]:
    return {"terrahawk": fam.terrahawk(), "QL3": fam.quartic_ladder(3), "QL4": fam.quartic_ladder(4),
            "QL5": fam.quartic_ladder(5), "M5": fam.m_n(5), "M7": fam.m_n(7)}


def suite_unique_cocircuit() -> SuiteResult:
    res = SuiteResult("lemma3.2")
    for name, M in unique_cocircuit_instances().items():
        if len(M) < 10 or classify(M).tier < Tier.INTERNALLY_4_CONNECTED:
            res.add(name, False, "instance is not internally 4-connected with >= 10 elements")
            continue
        checked, bad = unique_cocircuit_violations(M)
        res.add(name, not bad, f"bowties={checked} violations={len(bad)}")
    return res


def diamond_check(M: BinaryMatroid) -> tuple[int, list[str]]:
    """Matches of the 16-element diamond; each must carry the two extra triangles
    and M must be the quartic planar ladder on 16 elements."""
    ql4 = fam.quartic_ladder(4)
    ms = match(M, builtin("fig8_diamond"))
    bad = []
    for m in ms:
        for tri in (("a_1", "c_0", "d_0"), ("a_0", "c_3", "d_3")):
            if not M.is_circuit([m[v] for v in tri]):
                bad.append(f"{{{','.join(m[v] for v in tri)}}} is not a triangle")
    if ms and canonical_form(M) != canonical_form(ql4):
        bad.append("matroid is not the 16-element quartic planar ladder")
    return len(ms), bad


def suite_diamond() -> SuiteResult:
    res = SuiteResult("lemma4.2")
    n, bad = diamond_check(fam.quartic_ladder(4))
    res.add("QL4", n > 0 and not bad, f"matches={n} problems={len(bad)}")
    for name, M in i4c_battery().items():
        if name == "QL4":
            continue
        n, bad = diamond_check(M)
        res.add(name, not bad, f"matches={n} problems={len(bad)}")
    return res


def string_chain_forms(M: BinaryMatroid, m: ConfigMatch) -> list[tuple[str, str]]:
    """The four minors of the string isomorphism chain, for every k, as canonical forms."""
    n = m.template.params["n"]
    a = [m[f"a_{i}"] for i in range(n + 1)]
    b = [m[f"b_{i}"] for i in range(n + 1)]
    c = [m[f"c_{i}"] for i in range(n + 1)]
    out = [("\\c/b_n", canonical_form(M.minor(c, [b[n]]))),
           ("\\a/b_0", canonical_form(M.minor(a, [b[0]])))]
    for k in range(1, n + 1):
        out.append((f"k={k}:/b_k", canonical_form(M.minor(c[:k] + a[k:], [b[k]]))))
        out.append((f"k={k}:/b_k-1", canonical_form(M.minor(c[:k] + a[k:], [b[k - 1]]))))
    return out


def suite_string_chain(n: int = 3, limit: int | None = 12) -> SuiteResult:
    res = SuiteResult("lemma5.2")
    M = load_fixture("quartic_ladder_5.bmat")
    m = fixture_match("quartic_ladder_5_string3.bind")
    validate_match(M, m, "bowtie_string")
    distinct = {f for _, f in string_chain_forms(M, m)}
    res.add("fixture:quartic_ladder_5", len(distinct) == 1, f"classes={len(distinct)}")
    for name, M in (("QL5", fam.quartic_ladder(5)), ("QL6", fam.quartic_ladder(6)),
                    ("QM5", fam.quartic_ladder(5, mobius=True))):
        for idx, m in enumerate(match(M, builtin("bowtie_string", n=n), limit=limit)):
            forms = string_chain_forms(M, m)
            distinct = {f for _, f in forms}
            body = ",".join(m[f"c_{i}"] for i in range(n + 1))
            res.add(f"{name}#{idx}[c={body}]", len(distinct) == 1, f"minors={len(forms)} classes={len(distinct)}")
    return res


def oracle_44s(M: BinaryMatroid, cap: int = DEFAULT_CAP + 4) -> bool:
    """(4,4,S)-connectivity straight from the definition, by listing every 3-separation."""
    if not is_3_connected(M):
        return False
    tri, tra = set(M.triangles()), set(M.triads())
    for sep in find_k_separations(M, 3, min_side=2, cap=cap):
        ok = False
        for side in sep.sides():
            mask = M.mask(side)
            if len(side) == 3 and (mask in tri or mask in tra):
                ok = True
            if len(side) == 4 and fan_orderings_mask(M, mask):
                ok = True
        if not ok:
            return False
    return True


def suite_bowtie_hypothesis() -> SuiteResult:
    res = SuiteResult("hypothesisVII")
    cases = [("F7/F7", fam.fano(), fam.fano())]
    M, N, _ = chorded_m7()
    cases.append(("M7+h/N", M, N))
    cases.append(("QL4/oct", fam.quartic_ladder(4), fam.quartic_ladder(3)))
    for name, M, N in cases:
        rep = check_hypothesis_vii(M, N)
        # Re-derive each reported violation from the definition.
        agree = True
        for v in rep.violations:
            M1 = M if v.side == "M" else M.dual()
            agree &= oracle_44s(M1.delete([v.c0])) and not oracle_44s(M1.delete([v.c1]))
        res.add(name, agree, f"bowties={rep.bowties_checked} premises={rep.premises_met} "
                             f"violations={len(rep.violations)}")
    return res


def suite_theorem_instances() -> SuiteResult:
    res = SuiteResult("theorem1.4-instances")
    M, N = load_fixture("m7_chord.bmat"), load_fixture("m7_chord_n.bmat")
    b = fixture_match("m7_chord_bowtie.bind")
    rep = check_theorem_outcome(M, N, b)
    ok = rep.proceeded and bool(rep.outcomes)
    # Each reported quick win must be an internally 4-connected minor with an N-minor.
    for o in rep.outcomes:
        if o.clause == "(i)" and o.side == "M":
            Mp = M.minor(o.deleted, o.contracted)
            ok &= classify(Mp).tier >= Tier.INTERNALLY_4_CONNECTED and has_minor(Mp, N) is not None
    res.add("M7+h", ok, rep.summary())
    M7 = load_fixture("m7.bmat")
    b7 = ConfigMatch(builtin("bowtie"), dict(b.assignment))
    h = theorem_hypotheses(M7, fam.fano(), b7)
    res.add("M7 (15 elements)", h is not None and h.startswith("|E(M)|"), f"guard: {h}")
    h = theorem_hypotheses(M, fam.fano(), b)
    res.add("M7+h with N=F7", h == "M\\1,4 has no N-minor", f"guard: {h}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "lemma2.2": suite_fan_dichotomy,
    "lemma3.2": suite_unique_cocircuit,
    "lemma4.2": suite_diamond,
    "lemma5.2": suite_string_chain,
    "hypothesisVII": suite_bowtie_hypothesis,
    "theorem1.4-instances": suite_theorem_instances,
}
