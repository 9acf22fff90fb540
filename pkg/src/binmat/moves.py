"""Reduction moves on matched configurations, and the main-theorem outcome checker."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .connectivity import DEFAULT_CAP, ConnectivityClass, Tier, classify, is_44s_connected
from .errors import MatroidError
from .iso import DEFAULT_GAP_CAP, has_minor
from .matroid import BinaryMatroid
from .patterns import ConfigMatch, builtin, match, validate_match


@dataclass(frozen=True)
class MoveReport:
    move_name: str
    deleted: frozenset[str]
    contracted: frozenset[str]
    result: BinaryMatroid
    result_class: ConnectivityClass
    n_minor_verdict: bool | None = None

    def revalidate(self, M: BinaryMatroid) -> bool:
        """Recheck the element count, the rank, and the stored classification."""
        if len(self.result) != len(M) - len(self.deleted) - len(self.contracted):
            return False
        expected_rank = M.rank_of(set(M.labels) - self.deleted) - (
            M.rank_of(self.contracted) if self.contracted else 0)
        # Contracting C inside E - D drops the rank by r(C) when C avoids D.
        if self.result.rank != expected_rank:
            return False
        if not self.result.same_as(M.minor(self.deleted, self.contracted)):
            return False
        return classify(self.result).tier == self.result_class.tier

    @property
    def wins(self) -> bool:
        """Internally 4-connected, and keeps the N-minor when one was asked about."""
        ok = self.result_class.tier >= Tier.INTERNALLY_4_CONNECTED
        return ok and self.n_minor_verdict is not False

    def __str__(self) -> str:
        parts = [f"move={self.move_name}",
                 f"deleted={','.join(sorted(self.deleted)) or '-'}",
                 f"contracted={','.join(sorted(self.contracted)) or '-'}",
                 f"size={len(self.result)}", f"class={self.result_class.label}"]
        if self.n_minor_verdict is not None:
            parts.append(f"n_minor={'yes' if self.n_minor_verdict else 'no'}")
        return " ".join(parts)


def apply_move(M: BinaryMatroid, m: ConfigMatch, move_name: str, template_name: str,
               N: BinaryMatroid | None = None, cap: int = DEFAULT_CAP,
               gap_cap: int = DEFAULT_GAP_CAP) -> MoveReport:
    """Validate ``m``, remove its DELETE and CONTRACT images, and classify the result."""
    validate_match(M, m, template_name)
    deleted, contracted = m.deleted, m.contracted
    if deleted & contracted:
        raise MatroidError(f"{move_name}: an element is both deleted and contracted")
    if not deleted and not contracted:
        raise MatroidError(f"{move_name}: template {m.template.name} removes nothing")
    result = M.minor(deleted, contracted)
    verdict = None
    if N is not None:
        verdict = has_minor(result, N, gap_cap) is not None
    return MoveReport(move_name, deleted, contracted, result, classify(result, cap), verdict)


def trim_bowtie_string(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "trim_bowtie_string", "bowtie_string", N, **kw)


def trim_open_rotor_chain(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "trim_open_rotor_chain", "open_rotor_chain", N, **kw)


def trim_bowtie_ring(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "trim_bowtie_ring", "bowtie_ring", N, **kw)


def trim_ladder_structure(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "trim_ladder_structure", "ladder_structure", N, **kw)


def enhanced_ladder_move(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "enhanced_ladder_move", "enhanced_quartic_ladder", N, **kw)


def mixed_ladder_move(M, m, N=None, **kw) -> MoveReport:
    if len(m.template.contract) != 1:
        raise MatroidError("mixed_ladder_move needs exactly one arrow element")
    if not (m.template.name.startswith("open_quartic_ladder") or m.template.name.startswith("fig9_rainbow")):
        raise MatroidError(f"mixed_ladder_move expects an open quartic ladder, got {m.template.name}")
    return apply_move(M, m, "mixed_ladder_move", m.template.name.split("(")[0], N, **kw)


def delete_central_cocircuit(M, m, N=None, **kw) -> MoveReport:
    return apply_move(M, m, "delete_central_cocircuit", "augmented_4_wheel", N, **kw)


MOVES = {
    "trim_bowtie_string": (trim_bowtie_string, "bowtie_string"),
    "trim_open_rotor_chain": (trim_open_rotor_chain, "open_rotor_chain"),
    "trim_bowtie_ring": (trim_bowtie_ring, "bowtie_ring"),
    "trim_ladder_structure": (trim_ladder_structure, "ladder_structure"),
    "enhanced_ladder_move": (enhanced_ladder_move, "enhanced_quartic_ladder"),
    "mixed_ladder_move": (mixed_ladder_move, "open_quartic_ladder"),
    "delete_central_cocircuit": (delete_central_cocircuit, "augmented_4_wheel"),
}


# -- theorem outcome checker -----------------------------------------------

@dataclass(frozen=True)
class Outcome:
    clause: str               # "(i)" .. "(iv)"
    side: str                 # "M" or "M*"
    how: str
    deleted: frozenset[str]
    contracted: frozenset[str]

    def __str__(self) -> str:
        d = ",".join(sorted(self.deleted)) or "-"
        c = ",".join(sorted(self.contracted)) or "-"
        return f"outcome={self.clause} side={self.side} via={self.how} deleted={d} contracted={c}"


@dataclass
class TheoremReport:
    failed_hypothesis: str | None = None
    outcomes: list[Outcome] = field(default_factory=list)
    searched: list[str] = field(default_factory=list)

    @property
    def proceeded(self) -> bool:
        return self.failed_hypothesis is None

    def clauses(self) -> set[str]:
        return {o.clause for o in self.outcomes}

    def summary(self) -> str:
        if self.failed_hypothesis:
            return f"hypothesis failed: {self.failed_hypothesis}"
        if not self.outcomes:
            return "none found within template coverage"
        return "outcomes: " + " ".join(sorted(self.clauses()))


def theorem_hypotheses(M: BinaryMatroid, N: BinaryMatroid, bowtie: ConfigMatch,
                       cap: int = DEFAULT_CAP, gap_cap: int = DEFAULT_GAP_CAP) -> str | None:
    """Name of the first unmet hypothesis of the bowtie theorem, or None."""
    if len(M) < 16:
        return f"|E(M)| >= 16 (got {len(M)})"
    if len(N) < 7:
        return f"|E(N)| >= 7 (got {len(N)})"
    if classify(M, cap).tier < Tier.INTERNALLY_4_CONNECTED:
        return "M internally 4-connected"
    if classify(N, cap).tier < Tier.INTERNALLY_4_CONNECTED:
        return "N internally 4-connected"
    try:
        validate_match(M, bowtie, "bowtie")
    except MatroidError as exc:
        return f"bowtie ({{1,2,3}},{{4,5,6}},{{2,3,4,5}}) in M: {exc}"
    one, four = bowtie["x1"], bowtie["x4"]
    M4 = M.delete([four])
    if not is_44s_connected(M4, cap):
        return "M\\4 (4,4,S)-connected"
    if has_minor(M4, N, gap_cap) is None:
        return "M\\4 has an N-minor"
    if has_minor(M.delete([one, four]), N, gap_cap) is not None:
        return "M\\1,4 has no N-minor"
    return None


def quick_wins(M: BinaryMatroid, N: BinaryMatroid, max_removed: int = 3, cap: int = DEFAULT_CAP,
               gap_cap: int = DEFAULT_GAP_CAP) -> list[tuple[frozenset[str], frozenset[str]]]:
    """Every (deleted, contracted) split of at most ``max_removed`` elements giving an
    internally 4-connected minor with an N-minor.  Exhaustive."""
    wins = []
    # The family of minors is closed under deleting/contracting; i4c is rare, so test it first.
    for k in range(1, max_removed + 1):
        if len(M) - k < len(N):
            break
        for X in itertools.combinations(M.labels, k):
            for choice in itertools.product((0, 1), repeat=k):
                D = frozenset(x for x, c in zip(X, choice) if not c)
                C = frozenset(x for x, c in zip(X, choice) if c)
                Mp = M.minor(D, C)
                if classify(Mp, cap).tier < Tier.INTERNALLY_4_CONNECTED:
                    continue
                if has_minor(Mp, N, gap_cap) is not None:
                    wins.append((D, C))
    return wins


def _n_range(lo: int, size: int, per: int) -> range:
    return range(lo, max(lo, size // per) + 1)


def check_theorem_outcome(M: BinaryMatroid, N: BinaryMatroid, bowtie: ConfigMatch,
                          cap: int = DEFAULT_CAP, gap_cap: int = DEFAULT_GAP_CAP,
                          limit: int = 200, enhanced: list[ConfigMatch] | None = None) -> TheoremReport:
    """Search the four outcomes of the bowtie theorem in M, then in M*.

    Every firing outcome is reported.  Outcome (iv) is only tried on the
    enhanced-quartic-ladder matches passed in ``enhanced`` (those templates
    carry unconstrained elements and are not searched blindly).
    """
    report = TheoremReport()
    report.failed_hypothesis = theorem_hypotheses(M, N, bowtie, cap, gap_cap)
    if report.failed_hypothesis:
        return report

    base_wins = quick_wins(M, N, 3, cap, gap_cap)
    for side, M0, N0 in (("M", M, N), ("M*", M.dual(), N.dual())):
        # Minors of M* are duals of minors of M, and both properties are self-dual.
        for D, C in base_wins:
            dd, cc = (D, C) if side == "M" else (C, D)
            report.outcomes.append(Outcome("(i)", side, f"remove {len(D) + len(C)}", dd, cc))
        report.searched.append(f"{side}:quick-wins<=3")

        def attempt(clause: str, how: str, template: str, mover, **params) -> bool:
            try:
                t = builtin(template, **params)
            except MatroidError:
                return False
            ms = match(M0, t, limit=limit)
            for m in ms:
                rep = mover(M0, m, N0, cap=cap, gap_cap=gap_cap)
                if rep.wins:
                    report.outcomes.append(Outcome(clause, side, how, rep.deleted, rep.contracted))
            return bool(ms)

        for m in match(M0, builtin("augmented_4_wheel"), limit=limit):
            rep = delete_central_cocircuit(M0, m, N0, cap=cap, gap_cap=gap_cap)
            if rep.wins:
                report.outcomes.append(Outcome("(i)", side, "augmented_4_wheel", rep.deleted, rep.contracted))

        n = len(M0)
        for k in _n_range(3, n, 3):
            # A longer open rotor chain contains a shorter one, so stop at the first miss.
            if not attempt("(ii)", f"open_rotor_chain(n={k})", "open_rotor_chain", trim_open_rotor_chain, n=k):
                break
        for k in _n_range(1, n, 4):
            for variant, tail, head in ((1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 2, 2)):
                attempt("(ii)", f"ladder_structure(n={k},variant={variant},tail={tail},head={head})",
                        "ladder_structure", trim_ladder_structure, n=k, variant=variant, tail=tail, head=head)
        for k in _n_range(3, n, 3):
            attempt("(ii)", f"bowtie_ring(n={k})", "bowtie_ring", trim_bowtie_ring, n=k)
        for k in _n_range(3, n, 4):
            if not attempt("(iii)", f"open_quartic_ladder(n={k})", "open_quartic_ladder", mixed_ladder_move, n=k):
                break
        report.searched.append(f"{side}:templates")

    for m in enhanced or ():
        for side, M0, N0 in (("M", M, N), ("M*", M.dual(), N.dual())):
            try:
                rep = enhanced_ladder_move(M0, m, N0, cap=cap, gap_cap=gap_cap)
            except MatroidError:
                continue
            if rep.wins:
                report.outcomes.append(Outcome("(iv)", side, m.template.name, rep.deleted, rep.contracted))
    # Keep a deterministic, duplicate-free list.
    uniq = {(o.clause, o.side, o.how, tuple(sorted(o.deleted)), tuple(sorted(o.contracted))): o
            for o in report.outcomes}
    report.outcomes = [uniq[k] for k in sorted(uniq)]
    return report
