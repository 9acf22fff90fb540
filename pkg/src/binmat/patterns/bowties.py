"""Good bowties and the bowtie hypothesis used by the theorem checker."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..connectivity import DEFAULT_CAP, is_44s_connected
from ..iso import DEFAULT_GAP_CAP, has_minor
from ..matroid import BinaryMatroid
from .matching import ConfigMatch, match, validate_match
from .template import builtin

COCIRCUIT_VARS = ("x2", "x3", "x4", "x5")


def is_good_bowtie(M: BinaryMatroid, bowtie: ConfigMatch, N: BinaryMatroid,
                   cap: int = DEFAULT_CAP, gap_cap: int = DEFAULT_GAP_CAP) -> str | None:
    """An element d of the bowtie's 4-cocircuit with M\\d (4,4,S)-connected and an N-minor."""
    validate_match(M, bowtie, "bowtie")
    for v in COCIRCUIT_VARS:
        d = bowtie[v]
        Md = M.delete([d])
        if is_44s_connected(Md, cap) and has_minor(Md, N, gap_cap) is not None:
            return d
    return None


@dataclass(frozen=True)
class BowtieViolation:
    side: str                 # "M" or "M*"
    triangles: tuple[tuple[str, ...], tuple[str, ...]]
    cocircuit: tuple[str, ...]
    c0: str
    c1: str

    def __str__(self) -> str:
        t0, t1 = (" ".join(t) for t in self.triangles)
        return (f"{self.side}: bowtie ({{{t0}}}, {{{t1}}}, {{{' '.join(self.cocircuit)}}}) "
                f"has \\{self.c0} (4,4,S) and \\{self.c0},{self.c1} with an N-minor, "
                f"but \\{self.c1} is not (4,4,S)-connected")


@dataclass
class HypothesisReport:
    bowties_checked: int = 0
    premises_met: int = 0
    violations: list[BowtieViolation] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def bowtie_orientations(m: ConfigMatch):
    """(a0, b0, c0, a1, b1, c1) readings of a bowtie match with c0 in D* and c1 outside it."""
    a = m.assignment
    for b0, c0 in ((a["x2"], a["x3"]), (a["x3"], a["x2"])):
        yield a["x1"], b0, c0, a["x4"], a["x5"], a["x6"]


def check_hypothesis_vii(M: BinaryMatroid, N: BinaryMatroid, cap: int = DEFAULT_CAP,
                         gap_cap: int = DEFAULT_GAP_CAP) -> HypothesisReport:
    """Scan every bowtie of M and M* for the (4,4,S) transfer condition.

    For a bowtie ({a0,b0,c0}, {a1,b1,c1}, {b0,c0,a1,b1}) in M1 (M or M*), if
    M1\\c0 is (4,4,S)-connected and M1\\c0,c1 has an N1-minor then M1\\c1 must be
    (4,4,S)-connected.  Both triangle orders come from the matcher, and both
    choices of c0 inside D* are tried.
    """
    report = HypothesisReport()
    t = builtin("bowtie")
    for side, M1, N1 in (("M", M, N), ("M*", M.dual(), N.dual())):
        if not (M1.is_simple() and M1.is_cosimple()):
            continue
        tier_cache: dict[str, bool] = {}

        def good(e: str) -> bool:
            if e not in tier_cache:
                tier_cache[e] = is_44s_connected(M1.delete([e]), cap)
            return tier_cache[e]

        for m in match(M1, t):
            report.bowties_checked += 1
            for a0, b0, c0, a1, b1, c1 in bowtie_orientations(m):
                if not good(c0):
                    continue
                if has_minor(M1.delete([c0, c1]), N1, gap_cap) is None:
                    continue
                report.premises_met += 1
                if not good(c1):
                    report.violations.append(BowtieViolation(
                        side, ((a0, b0, c0), (a1, b1, c1)), (b0, c0, a1, b1), c0, c1))
    return report
