"""Isomorphism, canonical forms and minor containment for binary matroids.

The canonical form is the lexicographically least encoding of the matroid
over all element orderings compatible with an invariant partition.  Reading
elements in order, an element already spanned by earlier ones is encoded by
its coordinates over the earlier basis elements; every other element starts a
new basis vector.  Binary matroids are uniquely representable, so equal
encodings mean isomorphic matroids.

Minor search places N as a restriction of a contraction M/C.  The embedding
is found by choosing images for a basis of N; every other element of N is
then forced, because its column must be the sum of its fundamental circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import CapExceeded, MatroidError
from .gf2 import Echelon
from .matroid import BinaryMatroid, bits_of, popcount

CANONICAL_CAP = 24
DEFAULT_GAP_CAP = 8


# -- invariants -----------------------------------------------------------


def element_invariants(M: BinaryMatroid) -> list[tuple]:
    """Per-element isomorphism invariants: small circuit and cocircuit degrees."""
    n = len(M)
    counts = [[0] * 8 for _ in range(n)]
    for m in M.circuit_masks(4):
        size = popcount(m)
        for e in bits_of(m):
            counts[e][size - 1] += 1
    for m in M.cocircuit_masks(4):
        size = popcount(m)
        for e in bits_of(m):
            counts[e][2 + size] += 1
    return [tuple(c) for c in counts]


def pair_incidence(M: BinaryMatroid) -> list[list[int]]:
    """How many circuits and cocircuits of size at most 4 contain each pair."""
    n = len(M)
    P = [[0] * n for _ in range(n)]
    for group in (M.circuit_masks(4), M.cocircuit_masks(4)):
        for m in group:
            members = list(bits_of(m))
            for a in members:
                for b in members:
                    if a != b:
                        P[a][b] += 1
    return P


def fingerprint(M: BinaryMatroid) -> tuple:
    """Cheap isomorphism invariant used to filter before canonical forms."""
    inv = element_invariants(M)
    return (len(M), M.rank, tuple(sorted(inv)))


# -- canonical form -------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    key: str
    ordering: tuple[str, ...]


def _encode(cells_sig: tuple, n: int, r: int, tokens: Sequence[int], big: int) -> str:
    body = ".".join("i" + format(t - big, "x") if t >= big else format(t, "x") for t in tokens)
    sig = ";".join(f"{size}x{','.join(map(str, inv))}" for inv, size in cells_sig)
    return f"n{n}r{r}|{sig}|{body}"


def canonical(M: BinaryMatroid, cap: int = CANONICAL_CAP) -> CanonicalForm:
    n = len(M)
    if n > cap:
        raise CapExceeded(f"canonical form refused: {n} elements exceeds cap {cap}")
    cached = M._cache.get("canonical")
    if cached is not None:
        return cached
    inv = element_invariants(M)
    values = sorted(set(inv))
    cell_of = [values.index(v) for v in inv]
    cells = [[e for e in range(n) if cell_of[e] == c] for c in range(len(values))]
    cells_sig = tuple((values[c], len(cells[c])) for c in range(len(values)))
    slot_cell = [c for c in range(len(values)) for _ in cells[c]]
    cols = M.cols
    P = pair_incidence(M)
    # Tokens at or above ``big`` mark new basis vectors; the low part ranks
    # candidates by their incidence with the elements already placed, which
    # is invariant and splits ties early.
    width = 8
    big = 1 << (width * n + 1)

    def affinity(e: int) -> int:
        out = 0
        row = P[e]
        for j, f in enumerate(order):
            out |= (255 - min(row[f], 255)) << (width * (n - 1 - j))
        return out

    best: list[int] | None = None
    best_order: list[int] | None = None
    cur: list[int] = []
    order: list[int] = []
    used = [False] * n
    # Echelon over chosen columns, tracking each vector as a combination of
    # basis positions (bit t = t-th element that started a new basis vector).
    basis: dict[int, tuple[int, int]] = {}

    def token(e: int) -> tuple[int, int, int]:
        v = cols[e]
        combo = 0
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                return big + affinity(e), v, combo
            v ^= b[0]
            combo ^= b[1]
        return combo, 0, 0

    def rec(i: int, nbasis: int) -> None:
        nonlocal best, best_order
        if i == n:
            if best is None or cur < best:
                best = cur.copy()
                best_order = order.copy()
            return
        cands = []
        low = None
        for e in cells[slot_cell[i]]:
            if used[e]:
                continue
            t, rest, combo = token(e)
            if low is None or t < low:
                low = t
                cands = [(e, rest, combo)]
            elif t == low:
                cands.append((e, rest, combo))
        if best is not None:
            prefix = best[:i]
            if cur < prefix:
                pass
            elif low > best[i]:
                return
        for e, rest, combo in cands:
            used[e] = True
            order.append(e)
            cur.append(low)
            if low >= big:
                top = rest.bit_length() - 1
                basis[top] = (rest, combo ^ (1 << nbasis))
                rec(i + 1, nbasis + 1)
                del basis[top]
            else:
                rec(i + 1, nbasis)
            cur.pop()
            order.pop()
            used[e] = False

    rec(0, 0)
    assert best is not None and best_order is not None
    form = CanonicalForm(_encode(cells_sig, n, M.rank, best, big), tuple(M.labels[e] for e in best_order))
    M._cache["canonical"] = form
    return form


def canonical_form(M: BinaryMatroid, cap: int = CANONICAL_CAP) -> str:
    """A string key equal exactly for isomorphic matroids."""
    return canonical(M, cap).key


# -- isomorphism ----------------------------------------------------------


@dataclass(frozen=True)
class IsoCertificate:
    mapping: dict[str, str]

    def inverse(self) -> "IsoCertificate":
        return IsoCertificate({v: k for k, v in self.mapping.items()})

    def validate(self, M: BinaryMatroid, N: BinaryMatroid) -> bool:
        return is_isomorphism(M, N, self.mapping)


def is_isomorphism(M: BinaryMatroid, N: BinaryMatroid, mapping: dict[str, str]) -> bool:
    """Exact check that ``mapping`` carries M onto N."""
    if len(mapping) != len(M) or set(mapping) != set(M.labels) or set(mapping.values()) != set(N.labels):
        return False
    return M.relabel(mapping).same_as(N)


def is_isomorphic(M: BinaryMatroid, N: BinaryMatroid, cap: int = CANONICAL_CAP) -> IsoCertificate | None:
    if len(M) != len(N) or M.rank != N.rank:
        return None
    if len(M) > cap or len(N) > cap:
        raise CapExceeded(f"isomorphism test refused: more than {cap} elements")
    if fingerprint(M) != fingerprint(N):
        return None
    cm, cn = canonical(M, cap), canonical(N, cap)
    if cm.key != cn.key:
        return None
    cert = IsoCertificate(dict(zip(cm.ordering, cn.ordering)))
    if not cert.validate(M, N):
        raise AssertionError("canonical orderings produced an invalid isomorphism")
    return cert


# -- restriction embedding ----------------------------------------------------


def _fundamental(N: BinaryMatroid) -> tuple[list[int], list[tuple[int, int]]]:
    """A basis of N (greedy in index order) and each other element's combination over it."""
    basis: list[int] = []
    table: dict[int, tuple[int, int]] = {}
    rest = []
    for e, v in enumerate(N.cols):
        combo = 0
        w = v
        while w:
            top = w.bit_length() - 1
            b = table.get(top)
            if b is None:
                break
            w ^= b[0]
            combo ^= b[1]
        if w:
            table[w.bit_length() - 1] = (w, combo ^ (1 << len(basis)))
            basis.append(e)
        else:
            rest.append((e, combo))
    return basis, rest


def embed_restriction(cols: Sequence[int], available: Sequence[int], N: BinaryMatroid) -> dict[int, int] | None:
    """Map N's positions to positions of ``available`` so the restriction equals N.

    ``cols`` are the column vectors of the host; the result maps each element
    position of N to a distinct host position.
    """
    basis, rest = _fundamental(N)
    r = len(basis)
    classes: dict[int, list[int]] = {}
    for p in available:
        classes.setdefault(cols[p], []).append(p)
    supply = {v: len(ps) for v, ps in classes.items()}
    # Non-basis elements are checked as soon as their highest basis position is fixed.
    due: list[list[tuple[int, int]]] = [[] for _ in range(r + 1)]
    for e, combo in rest:
        level = combo.bit_length()  # 0 for loops
        due[level].append((e, combo))
    class_list = sorted(v for v in classes if v)
    chosen: list[int] = []
    demand: dict[int, int] = {}

    def column(combo: int) -> int:
        v = 0
        for t in bits_of(combo):
            v ^= chosen[t]
        return v

    def take(items) -> list[int] | None:
        taken = []
        for _, combo in items:
            v = column(combo)
            if demand.get(v, 0) >= supply.get(v, 0):
                for w in taken:
                    demand[w] -= 1
                return None
            demand[v] = demand.get(v, 0) + 1
            taken.append(v)
        return taken

    def release(taken: list[int]) -> None:
        for w in taken:
            demand[w] -= 1

    ech = Echelon()

    def rec(i: int) -> bool:
        if i == r:
            return True
        for v in class_list:
            if demand.get(v, 0) >= supply[v]:
                continue
            key = ech.add(v)
            if key < 0:
                continue
            chosen.append(v)
            demand[v] = demand.get(v, 0) + 1
            taken = take(due[i + 1])
            if taken is not None:
                if rec(i + 1):
                    return True
                release(taken)
            demand[v] -= 1
            chosen.pop()
            ech.remove(key)
        return False

    loops = take(due[0])
    if loops is None or not rec(0):
        return None
    # Hand out concrete host elements class by class, in position order.
    pointer = {v: 0 for v in classes}
    out: dict[int, int] = {}
    for t, e in enumerate(basis):
        v = chosen[t]
        out[e] = classes[v][pointer[v]]
        pointer[v] += 1
    for e, combo in rest:
        v = column(combo)
        out[e] = classes[v][pointer[v]]
        pointer[v] += 1
    return out


def find_isomorphism(M: BinaryMatroid, N: BinaryMatroid) -> IsoCertificate | None:
    """Isomorphism by direct embedding search, independent of canonical forms."""
    if len(M) != len(N) or M.rank != N.rank:
        return None
    emb = embed_restriction(M.cols, range(len(M)), N)
    if emb is None:
        return None
    cert = IsoCertificate({M.labels[p]: N.labels[e] for e, p in emb.items()})
    if not cert.validate(M, N):
        raise AssertionError("embedding search produced an invalid isomorphism")
    return cert


# -- minors -----------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    deleted: frozenset[str]
    contracted: frozenset[str]
    iso: IsoCertificate

    def minor_of(self, M: BinaryMatroid) -> BinaryMatroid:
        return M.minor(self.deleted, self.contracted)

    def validate(self, M: BinaryMatroid, N: BinaryMatroid) -> bool:
        return self.iso.validate(self.minor_of(M), N)

    @property
    def empty(self) -> bool:
        return not self.deleted and not self.contracted


def _contraction_search(M: BinaryMatroid, N: BinaryMatroid) -> tuple[frozenset[int], dict[int, int]] | None:
    n, k = len(M), M.rank - N.rank
    n_has_loops = any(v == 0 for v in N.cols)
    n_classes = len({v for v in N.cols if v})
    seen: set[int] = set()
    for C in combinations(range(n), k):
        cmask = sum(1 << e for e in C)
        if M.rank_mask(cmask) != k:
            continue
        ech = Echelon()
        for e in C:
            ech.add(M.cols[e])
        cols = [ech.reduce_full(v) for v in M.cols]
        if not n_has_loops:
            # Contractions with the same closure agree off their loops.
            flat = sum(1 << e for e in range(n) if cols[e] == 0)
            if flat in seen:
                continue
            seen.add(flat)
            avail = [e for e in range(n) if cols[e]]
        else:
            avail = [e for e in range(n) if not (cmask >> e) & 1]
        if len(avail) < len(N) or len({cols[e] for e in avail if cols[e]}) < n_classes:
            continue
        emb = embed_restriction(cols, avail, N)
        if emb is not None:
            return frozenset(C), emb
    return None


def _cost(n: int, k: int, rank_n: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) + rank_n * math.log(max(n, 2))


def has_minor(M: BinaryMatroid, N: BinaryMatroid, gap_cap: int = DEFAULT_GAP_CAP) -> MinorWitness | None:
    """A witness that N is isomorphic to a minor of M, or None."""
    gap = len(M) - len(N)
    if gap < 0 or N.rank > M.rank or N.corank > M.corank:
        return None
    if gap > gap_cap:
        raise CapExceeded(f"minor search refused: size gap {gap} exceeds cap {gap_cap}")
    k, d = M.rank - N.rank, M.corank - N.corank
    use_dual = _cost(len(M), d, N.corank) < _cost(len(M), k, N.rank)
    host, target = (M.dual(), N.dual()) if use_dual else (M, N)
    found = _contraction_search(host, target)
    if found is None:
        return None
    C, emb = found
    image = set(emb.values())
    removed_c = frozenset(host.labels[e] for e in C)
    removed_d = frozenset(host.labels[e] for e in range(len(host)) if e not in image and e not in C)
    if use_dual:
        removed_c, removed_d = removed_d, removed_c
    mapping = {host.labels[p]: target.labels[e] for e, p in emb.items()}
    witness = MinorWitness(removed_d, removed_c, IsoCertificate(mapping))
    if not witness.validate(M, N):
        raise AssertionError("minor search produced an invalid witness")
    return witness
