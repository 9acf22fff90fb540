"""Binary matroids given by a GF(2) representation with labelled columns."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import MatroidError
from .gf2 import MAX_COLS, Echelon, Gf2Matrix, rref

Labels = Iterable[str]


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SubsetView:
    """A subset of a matroid's ground set, stored as a bitmask over positions."""

    owner: "BinaryMatroid"
    members: int

    def __post_init__(self) -> None:
        if self.members < 0 or self.members >> len(self.owner):
            raise MatroidError("subset addresses positions outside the ground set")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.owner.labels_of(self.members)

    def __len__(self) -> int:
        return popcount(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        pos = self.owner.index.get(label)  # type: ignore[arg-type]
        return pos is not None and bool((self.members >> pos) & 1)

    def as_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SubsetView):
            return self.owner is other.owner and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.as_set() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.owner), self.members))

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


Subset = Union[SubsetView, Labels]


class BinaryMatroid:
    """A binary matroid: an ordered ground set of labels and a representation.

    The stored matrix is always in reduced row echelon form with full row
    rank, so ``matrix.rows`` equals the rank.  Instances are immutable.
    """

    __slots__ = ("labels", "index", "cols", "rank", "_rank_cache", "_cache")

    def __init__(self, labels: Sequence[str], matrix: Gf2Matrix | Sequence[Sequence[int] | str]):
        labels = tuple(str(x) for x in labels)
        if not isinstance(matrix, Gf2Matrix):
            matrix = Gf2Matrix.from_rows(list(matrix), cols=len(labels))
        if matrix.cols != len(labels):
            raise MatroidError(f"{len(labels)} labels but {matrix.cols} matrix columns")
        if len(labels) > MAX_COLS:
            raise MatroidError(f"ground sets are limited to {MAX_COLS} elements")
        if len(set(labels)) != len(labels):
            raise MatroidError("element labels must be distinct")
        rows, _ = rref(matrix.bits, matrix.cols)
        reduced = Gf2Matrix(len(rows), matrix.cols, tuple(rows))
        self.labels: tuple[str, ...] = labels
        self.index: dict[str, int] = {lab: i for i, lab in enumerate(labels)}
        self.cols: tuple[int, ...] = tuple(reduced.columns())
        self.rank: int = len(rows)
        self._rank_cache: dict[int, int] = {}
        self._cache: dict = {}

    @classmethod
    def from_columns(cls, labels: Sequence[str], columns: Sequence[int], rows: int | None = None) -> "BinaryMatroid":
        if rows is None:
            rows = max((c.bit_length() for c in columns), default=0)
        return cls(labels, Gf2Matrix.from_columns(list(columns), rows))

    # -- basic accessors -------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.labels

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def matrix(self) -> Gf2Matrix:
        return Gf2Matrix.from_columns(self.cols, self.rank)

    @property
    def corank(self) -> int:
        return len(self.labels) - self.rank

    def __repr__(self) -> str:
        return f"BinaryMatroid(n={len(self)}, r={self.rank})"

    def mask(self, X: Subset | int) -> int:
        """Bitmask for a subset given as labels or a view of this matroid."""
        if isinstance(X, int):
            if X < 0 or X >> len(self.labels):
                raise MatroidError("mask addresses positions outside the ground set")
            return X
        if isinstance(X, SubsetView):
            if X.owner is not self:
                raise MatroidError("subset belongs to a different matroid")
            return X.members
        if isinstance(X, str):
            X = [X]
        m = 0
        for lab in X:
            pos = self.index.get(lab)
            if pos is None:
                raise MatroidError(f"unknown element {lab!r}")
            m |= 1 << pos
        return m

    def subset(self, X: Subset | int) -> SubsetView:
        return SubsetView(self, self.mask(X))

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits_of(mask))

    # -- rank ------------------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        basis: dict[int, int] = {}
        cols = self.cols
        for i in bits_of(mask):
            v = cols[i]
            while v:
                top = v.bit_length() - 1
                b = basis.get(top)
                if b is None:
                    basis[top] = v
                    break
                v ^= b
        r = len(basis)
        if len(self._rank_cache) < 200_000:
            self._rank_cache[mask] = r
        return r

    def corank_mask(self, mask: int) -> int:
        """Rank of ``mask`` in the dual matroid."""
        return popcount(mask) - self.rank + self.rank_mask(self.full & ~mask)

    def rank_of(self, X: Subset) -> int:
        return self.rank_mask(self.mask(X))

    def corank_of(self, X: Subset) -> int:
        return self.corank_mask(self.mask(X))

    def is_independent(self, X: Subset) -> bool:
        m = self.mask(X)
        return self.rank_mask(m) == popcount(m)

    def is_circuit(self, X: Subset) -> bool:
        m = self.mask(X)
        if not m:
            return False
        acc = 0
        for i in bits_of(m):
            acc ^= self.cols[i]
        return acc == 0 and self.rank_mask(m) == popcount(m) - 1

    def is_cocircuit(self, X: Subset) -> bool:
        m = self.mask(X)
        if not m:
            return False
        # Cocircuits are complements of hyperplanes.
        comp = self.full & ~m
        if self.rank_mask(comp) != self.rank - 1:
            return False
        return all(self.rank_mask(comp | (1 << i)) == self.rank for i in bits_of(m))

    def is_loop(self, label: str) -> bool:
        return self.cols[self.index[label]] == 0

    def is_coloop(self, label: str) -> bool:
        return self.rank_mask(self.full & ~(1 << self.index[label])) < self.rank

    def is_simple(self) -> bool:
        cols = self.cols
        return 0 not in cols and len(set(cols)) == len(cols)

    def is_cosimple(self) -> bool:
        return self.dual().is_simple()

    # -- duality and minors ----------------------------------------------

    def dual(self) -> "BinaryMatroid":
        """Standard-form dual with labels preserved.

        Writing the representation as ``[I | D]`` over its pivot columns, the
        dual is ``[D^T | I]``: one row per non-pivot element.
        """
        cached = self._cache.get("dual")
        if cached is not None:
            return cached
        n = len(self.labels)
        pivot_of_row: list[int] = []
        for i in range(self.rank):
            # After RREF each unit column e_i belongs to the row-i pivot.
            pivot_of_row.append(next(j for j in range(n) if self.cols[j] == 1 << i))
        pivots = set(pivot_of_row)
        rows = []
        for q in range(n):
            if q in pivots:
                continue
            row = 1 << q
            col = self.cols[q]
            for i, p in enumerate(pivot_of_row):
                if (col >> i) & 1:
                    row |= 1 << p
            rows.append(row)
        D = BinaryMatroid(self.labels, Gf2Matrix(len(rows), n, tuple(rows)))
        D._cache["dual"] = self
        self._cache["dual"] = D
        return D

    def restrict_mask(self, keep: int) -> "BinaryMatroid":
        idx = list(bits_of(keep))
        return BinaryMatroid.from_columns([self.labels[i] for i in idx], [self.cols[i] for i in idx], self.rank)

    def delete(self, X: Subset) -> "BinaryMatroid":
        m = self.mask(X)
        if not m:
            return self
        return self.restrict_mask(self.full & ~m)

    def contract(self, X: Subset) -> "BinaryMatroid":
        """Contract ``X`` literally; any loops this creates are kept."""
        m = self.mask(X)
        if not m:
            return self
        ech = Echelon()
        for i in bits_of(m):
            ech.add(self.cols[i])
        keep = [i for i in range(len(self.labels)) if not (m >> i) & 1]
        cols = [ech.reduce_full(self.cols[i]) for i in keep]
        return BinaryMatroid.from_columns([self.labels[i] for i in keep], cols, self.rank)

    def minor(self, deleted: Subset = (), contracted: Subset = ()) -> "BinaryMatroid":
        d = self.mask(deleted)
        c = self.mask(contracted)
        if d & c:
            raise MatroidError("deleted and contracted sets overlap")
        return self.contract(self.subset(c)).delete(self.labels_of(d))

    def relabel(self, mapping: dict[str, str]) -> "BinaryMatroid":
        new = [mapping.get(lab, lab) for lab in self.labels]
        return BinaryMatroid.from_columns(new, self.cols, self.rank)

    def reorder(self, order: Sequence[str]) -> "BinaryMatroid":
        if sorted(order) != sorted(self.labels):
            raise MatroidError("reorder needs a permutation of the ground set")
        return BinaryMatroid.from_columns(list(order), [self.cols[self.index[x]] for x in order], self.rank)

    # -- circuits --------------------------------------------------------

    def circuit_masks(self, max_size: int | None = None) -> list[int]:
        """All circuits of size at most ``max_size`` as bitmasks, sorted."""
        n = len(self.labels)
        cap = n + 1 if max_size is None else max_size
        key = ("circuits", cap)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        cols = self.cols
        found: list[int] = []
        ech = Echelon()

        # Circuits are found by extending independent sets in index order: a
        # dependent extension is a circuit exactly when its column sum is zero.
        def extend(start: int, mask: int, acc: int, size: int) -> None:
            for e in range(start, n):
                v = cols[e]
                if acc ^ v == 0:
                    found.append(mask | (1 << e))
                    continue
                if size + 1 >= cap:
                    continue
                key_e = ech.add(v)
                if key_e < 0:
                    continue
                extend(e + 1, mask | (1 << e), acc ^ v, size + 1)
                ech.remove(key_e)

        if cap >= 1:
            extend(0, 0, 0, 0)
        found.sort(key=lambda m: sorted(bits_of(m)))
        self._cache[key] = found
        return found

    def cocircuit_masks(self, max_size: int | None = None) -> list[int]:
        return self.dual().circuit_masks(max_size)

    def circuits(self, max_size: int = 6) -> list[tuple[str, ...]]:
        """Circuits of size at most ``max_size``, each in ground-set order."""
        return [self.labels_of(m) for m in self.circuit_masks(max_size)]

    def cocircuits(self, max_size: int = 6) -> list[tuple[str, ...]]:
        return [self.labels_of(m) for m in self.cocircuit_masks(max_size)]

    def triangles(self) -> list[int]:
        return [m for m in self.circuit_masks(3) if popcount(m) == 3]

    def triads(self) -> list[int]:
        return [m for m in self.cocircuit_masks(3) if popcount(m) == 3]

    # -- closures --------------------------------------------------------

    def closure_mask(self, mask: int) -> int:
        r = self.rank_mask(mask)
        out = mask
        for i in range(len(self.labels)):
            if not (mask >> i) & 1 and self.rank_mask(mask | (1 << i)) == r:
                out |= 1 << i
        return out

    def coclosure_mask(self, mask: int) -> int:
        # e is in cl*(X) iff deleting it from E - X drops the rank.
        comp = self.full & ~mask
        r = self.rank_mask(comp)
        out = mask
        for i in bits_of(comp):
            if self.rank_mask(comp & ~(1 << i)) < r:
                out |= 1 << i
        return out

    def full_closure_mask(self, mask: int) -> int:
        while True:
            nxt = self.coclosure_mask(self.closure_mask(mask))
            if nxt == mask:
                return mask
            mask = nxt

    def closure(self, X: Subset) -> SubsetView:
        return SubsetView(self, self.closure_mask(self.mask(X)))

    def coclosure(self, X: Subset) -> SubsetView:
        return SubsetView(self, self.coclosure_mask(self.mask(X)))

    def full_closure(self, X: Subset) -> SubsetView:
        return SubsetView(self, self.full_closure_mask(self.mask(X)))

    # -- comparisons -----------------------------------------------------

    def same_as(self, other: "BinaryMatroid") -> bool:
        """Equal as labelled matroids (same labels, same cycle space)."""
        if set(self.labels) != set(other.labels) or self.rank != other.rank:
            return False
        cols = [other.cols[other.index[lab]] for lab in self.labels]
        stacked = BinaryMatroid.from_columns(self.labels, [a | (b << self.rank) for a, b in zip(self.cols, cols)], 2 * self.rank)
        return stacked.rank == self.rank

    def signature(self) -> tuple:
        """Bit-exact identity of the stored representation (for determinism checks)."""
        return (self.labels, self.rank, self.cols)
