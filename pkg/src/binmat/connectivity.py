"""Connectivity function, exhaustive separation search, fans and tiers.

Separations are found by a depth-first search that assigns elements to the
two sides one at a time.  For partial sides ``X'`` and ``Y'`` the quantity
``r(X') + r(Y') - r(X' | Y')`` never decreases as elements are added and ends
at ``lambda(X)``, so any branch where it exceeds ``k - 1`` is cut.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapExceeded, MatroidError
from .gf2 import Echelon
from .matroid import BinaryMatroid, Subset, bits_of, popcount

DEFAULT_CAP = 22


def lambda_mask(M: BinaryMatroid, mask: int) -> int:
    return M.rank_mask(mask) + M.rank_mask(M.full & ~mask) - M.rank


def lam(M: BinaryMatroid, X: Subset, check: bool = False) -> int:
    """The connectivity function ``r(X) + r(E - X) - r(M)``.

    With ``check`` the value is recomputed as ``r(X) + r*(X) - |X|``.
    """
    m = M.mask(X)
    value = lambda_mask(M, m)
    if check:
        other = M.rank_mask(m) + M.corank_mask(m) - popcount(m)
        if other != value:
            raise AssertionError(f"connectivity formulas disagree: {value} != {other}")
    return value


@dataclass(frozen=True)
class Separation:
    side_x: frozenset[str]
    side_y: frozenset[str]
    order: int
    sequential_x: bool
    sequential_y: bool

    @property
    def sequential(self) -> bool:
        return self.sequential_x or self.sequential_y

    def sides(self) -> tuple[frozenset[str], frozenset[str]]:
        return self.side_x, self.side_y

    def __str__(self) -> str:
        x = " ".join(sorted(self.side_x))
        y = " ".join(sorted(self.side_y))
        return f"({{{x}}} | {{{y}}}) order={self.order}"


def _search_order(M: BinaryMatroid) -> list[int]:
    """Element order keeping prefix ranks low, which tightens the pruning."""
    n = len(M)
    if n == 0:
        return []
    order = [0]
    used = 1
    ech = Echelon()
    ech.add(M.cols[0])
    while len(order) < n:
        best, best_key = None, None
        for e in range(n):
            if (used >> e) & 1:
                continue
            key = (0 if ech.contains(M.cols[e]) else 1, e)
            if best_key is None or key < best_key:
                best, best_key = e, key
                if key[0] == 0:
                    break
        order.append(best)
        used |= 1 << best
        ech.add(M.cols[best])
    return order


def separating_masks(M: BinaryMatroid, k: int, min_side: int, cap: int | None = DEFAULT_CAP + 4) -> list[int]:
    """Masks X (one per unordered pair) with lambda(X) <= k-1 and both sides >= min_side."""
    n = len(M)
    if cap is not None and n > cap:
        raise CapExceeded(f"exhaustive separation search refused: {n} elements exceeds cap {cap}")
    if n == 0 or 2 * min_side > n:
        return []
    order = _search_order(M)
    cols = [M.cols[e] for e in order]
    prefix = [0]
    ech = Echelon()
    for v in cols:
        ech.add(v)
        prefix.append(ech.rank)
    limit = k - 1
    ex, ey = Echelon(), Echelon()
    out: list[int] = []

    def rec(i: int, mx: int, nx: int, ny: int) -> None:
        if i == n:
            out.append(mx)
            return
        rem = n - i - 1
        v = cols[i]
        bit = 1 << order[i]
        if ny + rem >= min_side:
            key = ex.add(v)
            if ex.rank + ey.rank - prefix[i + 1] <= limit:
                rec(i + 1, mx | bit, nx + 1, ny)
            ex.remove(key)
        if nx + rem >= min_side:
            key = ey.add(v)
            if ex.rank + ey.rank - prefix[i + 1] <= limit:
                rec(i + 1, mx, nx, ny + 1)
            ey.remove(key)

    ex.add(cols[0])
    if n - 1 >= min_side:
        rec(1, 1 << order[0], 1, 0)
    return out


def _sep_from_mask(M: BinaryMatroid, mask: int) -> Separation:
    other = M.full & ~mask
    a, b = mask, other
    if (popcount(b), sorted(bits_of(b))) < (popcount(a), sorted(bits_of(a))):
        a, b = b, a
    return Separation(
        frozenset(M.labels_of(a)),
        frozenset(M.labels_of(b)),
        lambda_mask(M, a) + 1,
        sequential_mask(M, a) is not None,
        sequential_mask(M, b) is not None,
    )


def find_k_separations(M: BinaryMatroid, k: int, min_side: int | None = None, cap: int | None = DEFAULT_CAP + 4) -> list[Separation]:
    """All partitions with lambda <= k-1 and both sides at least ``min_side``.

    ``min_side`` defaults to ``k`` (the k-separations proper).
    """
    if not 1 <= k <= 4:
        raise MatroidError("separation search supports 1 <= k <= 4")
    if min_side is None:
        min_side = k
    masks = separating_masks(M, k, min_side, cap)
    seps = [_sep_from_mask(M, m) for m in masks]
    seps.sort(key=lambda s: (len(s.side_x), sorted(M.index[x] for x in s.side_x), sorted(M.index[y] for y in s.side_y)))
    return seps


# -- sequential sets -------------------------------------------------------


def sequential_mask(M: BinaryMatroid, Z: int) -> tuple[int, ...] | None:
    """Peel Z into its complement; return positions (v_1, ..., v_m) or None."""
    U = M.full & ~Z
    remaining = Z
    peeled: list[int] = []
    while remaining:
        rU = M.rank_mask(U)
        comp = M.full & ~U
        rC = M.rank_mask(comp)
        moved = None
        for z in bits_of(remaining):
            bit = 1 << z
            if M.rank_mask(U | bit) == rU or M.rank_mask(comp & ~bit) < rC:
                moved = z
                break
        if moved is None:
            return None
        peeled.append(moved)
        U |= 1 << moved
        remaining &= ~(1 << moved)
    return tuple(reversed(peeled))


def is_sequential(M: BinaryMatroid, Z: Subset) -> tuple[str, ...] | None:
    """An ordering (v_1, ..., v_m) of Z witnessing that Z is sequential.

    ``(E - Z) | {v_m, ..., v_i}`` is 3-separating for every ``i``.  Returns
    ``None`` if Z is not sequential.
    """
    m = M.mask(Z)
    if lambda_mask(M, m) > 2:
        raise MatroidError("is_sequential needs a 3-separating set")
    seq = sequential_mask(M, m)
    return None if seq is None else tuple(M.labels[i] for i in seq)


# -- fans ------------------------------------------------------------------

TRIANGLE = "triangle"
TRIAD = "triad"


@dataclass(frozen=True)
class Fan:
    ordering: tuple[str, ...]
    pattern: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.ordering)

    @property
    def guts(self) -> str | None:
        """Guts element of a 4-fan: the first element (triangle side)."""
        return self.ordering[0] if len(self.ordering) == 4 and self.pattern[0] == TRIANGLE else None

    @property
    def coguts(self) -> str | None:
        return self.ordering[-1] if len(self.ordering) == 4 and self.pattern[0] == TRIANGLE else None

    @property
    def ends(self) -> tuple[str, str]:
        return self.ordering[0], self.ordering[-1]

    @property
    def kind(self) -> str:
        n = len(self.ordering)
        if n == 5:
            return "5-fan" if self.pattern[0] == TRIANGLE else "5-cofan"
        return f"{n}-fan"

    def as_set(self) -> frozenset[str]:
        return frozenset(self.ordering)


def _small_sets(M: BinaryMatroid) -> tuple[set[int], set[int]]:
    return set(M.triangles()), set(M.triads())


def fan_orderings_mask(M: BinaryMatroid, mask: int) -> list[tuple[tuple[int, ...], str]]:
    """Every fan ordering of a set, with the type of its first triple."""
    tri, tra = _small_sets(M)
    elems = list(bits_of(mask))
    out = []
    if len(elems) < 3:
        return out
    for perm in itertools.permutations(elems):
        first = (1 << perm[0]) | (1 << perm[1]) | (1 << perm[2])
        kind = TRIANGLE if first in tri else TRIAD if first in tra else None
        if kind is None:
            continue
        ok = True
        want_tri = kind == TRIANGLE
        for j in range(1, len(perm) - 2):
            want_tri = not want_tri
            trip = (1 << perm[j]) | (1 << perm[j + 1]) | (1 << perm[j + 2])
            if trip not in (tri if want_tri else tra):
                ok = False
                break
        if ok:
            out.append((perm, kind))
    return out


def is_5_cofan_mask(M: BinaryMatroid, mask: int) -> bool:
    return popcount(mask) == 5 and any(kind == TRIAD for _, kind in fan_orderings_mask(M, mask))


def _pattern(start: str, n: int) -> tuple[str, ...]:
    out = []
    cur = start
    for _ in range(n - 2):
        out.append(cur)
        cur = TRIAD if cur == TRIANGLE else TRIANGLE
    return tuple(out)


def fan_masks(M: BinaryMatroid, max_len: int) -> dict[tuple[int, str], tuple[int, ...]]:
    """Canonical fan orderings keyed by (set mask, first-triple type)."""
    tri, tra = _small_sets(M)
    two_sets: dict[int, list[tuple[int, str]]] = {}
    # Index each triangle/triad by its 2-subsets for the extension step.
    for group, kind in ((tri, TRIANGLE), (tra, TRIAD)):
        for t in group:
            a, b, c = bits_of(t)
            for pair, third in (((a, b), c), ((a, c), b), ((b, c), a)):
                key = (1 << pair[0]) | (1 << pair[1])
                two_sets.setdefault(key, []).append((third, kind))

    best: dict[tuple[int, str], tuple[int, ...]] = {}

    def record(seq: list[int], start: str) -> None:
        n = len(seq)
        if n % 2 == 0 and start != TRIANGLE:
            return  # even fans are read from the triangle end
        key = (sum(1 << e for e in seq), start)
        cand = tuple(seq)
        cur = best.get(key)
        if cur is None or cand < cur:
            best[key] = cand

    def extend(seq: list[int], used: int, last_kind: str, start: str) -> None:
        record(seq, start)
        if len(seq) >= max_len:
            return
        want = TRIAD if last_kind == TRIANGLE else TRIANGLE
        key = (1 << seq[-2]) | (1 << seq[-1])
        for third, kind in two_sets.get(key, ()):
            if kind == want and not (used >> third) & 1:
                seq.append(third)
                extend(seq, used | (1 << third), want, start)
                seq.pop()

    for group, kind in ((tri, TRIANGLE), (tra, TRIAD)):
        for t in group:
            for perm in itertools.permutations(bits_of(t)):
                extend(list(perm), t, kind, kind)
    return best


def require_3_connected(M: BinaryMatroid, what: str) -> None:
    if not is_3_connected(M):
        raise MatroidError(f"{what} needs a 3-connected matroid")


def find_fans(M: BinaryMatroid, max_len: int = 5, maximal_only: bool = False, check: bool = True) -> list[Fan]:
    """Fans of length 3..max_len, one canonical ordering per fan.

    Even-length fans are read from the triangle end, so a 4-fan's first and
    last elements are its guts and coguts elements.
    """
    if check:
        require_3_connected(M, "find_fans")
    best = fan_masks(M, max_len)
    items = list(best.items())
    if maximal_only:
        sets = [m for (m, _), _ in items]
        items = [it for it in items if not any(o != it[0][0] and o & it[0][0] == it[0][0] for o in sets)]
    fans = []
    for (mask, start), seq in items:
        fans.append(Fan(tuple(M.labels[e] for e in seq), _pattern(start, len(seq))))
    fans.sort(key=lambda f: (len(f.ordering), [M.index[x] for x in f.ordering]))
    return fans


def four_fans(M: BinaryMatroid, check: bool = True) -> list[Fan]:
    return [f for f in find_fans(M, 4, check=check) if len(f) == 4]


# -- classification --------------------------------------------------------


class Tier(enum.IntEnum):
    NOT_2_CONNECTED = 0
    TWO_CONNECTED = 1
    THREE_CONNECTED = 2
    SEQUENTIALLY_4_CONNECTED = 3
    FOUR_FIVE_S_PLUS = 4
    FOUR_FOUR_S = 5
    INTERNALLY_4_CONNECTED = 6
    FOUR_CONNECTED = 7

    @property
    def label(self) -> str:
        return TIER_LABELS[self]


TIER_LABELS = {
    Tier.NOT_2_CONNECTED: "not-2-connected",
    Tier.TWO_CONNECTED: "2-connected",
    Tier.THREE_CONNECTED: "3-connected",
    Tier.SEQUENTIALLY_4_CONNECTED: "sequentially-4-connected",
    Tier.FOUR_FIVE_S_PLUS: "(4,5,S,+)-connected",
    Tier.FOUR_FOUR_S: "(4,4,S)-connected",
    Tier.INTERNALLY_4_CONNECTED: "internally-4-connected",
    Tier.FOUR_CONNECTED: "4-connected",
}


@dataclass
class ConnectivityClass:
    tier: Tier
    witnesses: list[Separation] = field(default_factory=list)
    violators: dict[str, list[Separation]] = field(default_factory=dict)

    def at_least(self, tier: Tier) -> bool:
        return self.tier >= tier

    @property
    def label(self) -> str:
        return self.tier.label

    def __str__(self) -> str:
        return self.tier.label


def _side_flags(M: BinaryMatroid, a: int) -> tuple[int, bool, bool]:
    return popcount(a), sequential_mask(M, a) is not None, is_5_cofan_mask(M, a)


def classify(M: BinaryMatroid, cap: int = DEFAULT_CAP) -> ConnectivityClass:
    """Highest tier of the connectivity ladder that M reaches.

    Witnesses are the separations blocking the next tier up.
    """
    n = len(M)
    if n > cap:
        raise CapExceeded(f"classification refused: {n} elements exceeds cap {cap}")
    one = find_k_separations(M, 1, 1, cap=None)
    if one:
        return ConnectivityClass(Tier.NOT_2_CONNECTED, one, {"1-separation": one})
    two = find_k_separations(M, 2, 2, cap=None)
    if two:
        return ConnectivityClass(Tier.TWO_CONNECTED, two, {"2-separation": two})
    masks = separating_masks(M, 3, 3, cap=None)
    if not masks:
        return ConnectivityClass(Tier.FOUR_CONNECTED)

    nonseq, v455, v44s, v43 = [], [], [], []
    for a in masks:
        b = M.full & ~a
        if popcount(a) == 3 or popcount(b) == 3:
            continue  # triangles and triads are sequential, never violators
        fa, fb = _side_flags(M, a), _side_flags(M, b)
        sep = _sep_from_mask(M, a)
        v43.append(sep)
        if not fa[1] and not fb[1]:
            nonseq.append(sep)
        if all(size >= 6 or not seq or cofan for size, seq, cofan in (fa, fb)):
            v455.append(sep)
        if all(size >= 5 or not seq for size, seq, _ in (fa, fb)):
            v44s.append(sep)
    violators = {
        "non-sequential": nonseq,
        "(4,5,S,+)-violator": v455,
        "(4,4,S)-violator": v44s,
        "(4,3)-violator": v43,
    }
    if nonseq:
        tier, wit = Tier.THREE_CONNECTED, nonseq
    elif v455:
        tier, wit = Tier.SEQUENTIALLY_4_CONNECTED, v455
    elif v44s:
        tier, wit = Tier.FOUR_FIVE_S_PLUS, v44s
    elif v43:
        tier, wit = Tier.FOUR_FOUR_S, v43
    else:
        three = [_sep_from_mask(M, a) for a in masks]
        tier, wit = Tier.INTERNALLY_4_CONNECTED, three
        violators["3-separation"] = three
    wit = sorted(wit, key=lambda s: (len(s.side_x), sorted(M.index[x] for x in s.side_x)))
    return ConnectivityClass(tier, wit, violators)


def is_3_connected(M: BinaryMatroid) -> bool:
    return not separating_masks(M, 1, 1, cap=None) and not separating_masks(M, 2, 2, cap=None)


def is_internally_4_connected(M: BinaryMatroid, cap: int = DEFAULT_CAP) -> bool:
    if len(M) > cap:
        raise CapExceeded(f"{len(M)} elements exceeds cap {cap}")
    return is_3_connected(M) and not separating_masks(M, 3, 4, cap=None)


def is_44s_connected(M: BinaryMatroid, cap: int = DEFAULT_CAP) -> bool:
    """3-connected with no (4,4,S)-violator."""
    if len(M) > cap:
        raise CapExceeded(f"{len(M)} elements exceeds cap {cap}")
    if not is_3_connected(M):
        return False
    for a in separating_masks(M, 3, 4, cap=None):
        b = M.full & ~a
        sides = [_side_sizes_seq(M, a), _side_sizes_seq(M, b)]
        if all(size >= 5 or not seq for size, seq in sides):
            return False
    return True


def _side_sizes_seq(M: BinaryMatroid, a: int) -> tuple[int, bool]:
    size = popcount(a)
    if size >= 5:
        return size, True  # sequentiality is irrelevant at this size
    return size, sequential_mask(M, a) is not None


def tier_chain_consistent(c: ConnectivityClass, M: BinaryMatroid) -> bool:
    """Recheck the implication chain from the recorded violator lists."""
    v = c.violators
    if c.tier >= Tier.INTERNALLY_4_CONNECTED and v.get("(4,3)-violator"):
        return False
    if c.tier >= Tier.FOUR_FOUR_S and v.get("(4,4,S)-violator"):
        return False
    if c.tier >= Tier.FOUR_FIVE_S_PLUS and v.get("(4,5,S,+)-violator"):
        return False
    if c.tier >= Tier.SEQUENTIALLY_4_CONNECTED and v.get("non-sequential"):
        return False
    # Each violator type refines the next: a (4,4,S)-violator set contains
    # every (4,5,S,+)-violator, and so on.
    key = lambda s: s.side_x
    s43 = {key(s) for s in v.get("(4,3)-violator", [])}
    s44 = {key(s) for s in v.get("(4,4,S)-violator", [])}
    s45 = {key(s) for s in v.get("(4,5,S,+)-violator", [])}
    sns = {key(s) for s in v.get("non-sequential", [])}
    return sns <= s45 <= s44 <= s43
