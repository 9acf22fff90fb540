"""Bit-packed linear algebra over GF(2).

Rows are Python ints; bit ``j`` of a row is the entry in column ``j``.  At the
sizes this package targets (at most 64 columns) a row fits in one machine
word, and row operations are single XORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, MatroidError

MAX_COLS = 64


def _check_cols(cols: int) -> None:
    if cols > MAX_COLS:
        raise CapExceeded(f"matrices are limited to {MAX_COLS} columns, got {cols}")


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix with rows packed into ints."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_cols(self.cols)
        if len(self.bits) != self.rows:
            raise MatroidError(f"expected {self.rows} rows, got {len(self.bits)}")
        mask = (1 << self.cols) - 1
        for row in self.bits:
            if row < 0 or row & ~mask:
                raise MatroidError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str], cols: int | None = None) -> "Gf2Matrix":
        """Build from 0/1 sequences or strings such as ``"0110"``."""
        packed = []
        width = cols
        for row in rows:
            if isinstance(row, str):
                entries = [int(ch) for ch in row]
            else:
                entries = [int(x) & 1 for x in row]
            if width is None:
                width = len(entries)
            if len(entries) != width:
                raise MatroidError("rows have unequal length")
            value = 0
            for j, bit in enumerate(entries):
                if bit not in (0, 1):
                    raise MatroidError(f"entry {bit!r} is not 0 or 1")
                if bit:
                    value |= 1 << j
            packed.append(value)
        return cls(len(packed), width or 0, tuple(packed))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "Gf2Matrix":
        """Build from column vectors; bit ``i`` of a column is its row-``i`` entry."""
        bits = []
        for i in range(rows):
            value = 0
            for j, col in enumerate(columns):
                if (col >> i) & 1:
                    value |= 1 << j
            bits.append(value)
        return cls(rows, len(columns), tuple(bits))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    def entry(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def columns(self) -> list[int]:
        """Column vectors, bit ``i`` holding the row-``i`` entry."""
        out = []
        for j in range(self.cols):
            value = 0
            for i, row in enumerate(self.bits):
                if (row >> j) & 1:
                    value |= 1 << i
            out.append(value)
        return out

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.cols, self.rows, tuple(self.columns()))

    def to_strings(self) -> list[str]:
        return ["".join(str((row >> j) & 1) for j in range(self.cols)) for row in self.bits]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def rref(bits: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed rows.

    Pivots are taken at the lowest-index nonzero column.  Returns the nonzero
    reduced rows and their pivot columns, in pivot order.
    """
    work = [row for row in bits if row]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(cols):
        bit = 1 << col
        idx = next((k for k, row in enumerate(work) if row & bit), None)
        if idx is None:
            continue
        pivot_row = work.pop(idx)
        work = [row ^ pivot_row if row & bit else row for row in work]
        out = [row ^ pivot_row if row & bit else row for row in out]
        out.append(pivot_row)
        pivots.append(col)
        work = [row for row in work if row]
        if not work:
            break
    return out, pivots


def rank(A: Gf2Matrix) -> int:
    return len(rref(A.bits, A.cols)[1])


def span_rank(vectors: Iterable[int]) -> int:
    """Rank of a collection of packed vectors (the rows of some matrix)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def column_space_rank(A: Gf2Matrix, cols: Iterable[int]) -> int:
    chosen = sorted(set(cols))
    for j in chosen:
        if not 0 <= j < A.cols:
            raise MatroidError(f"column index {j} out of range for {A.cols} columns")
    all_cols = A.columns()
    return span_rank(all_cols[j] for j in chosen)


def solve_membership(A: Gf2Matrix, basis_cols: Iterable[int], target_col: int | Sequence[int]) -> frozenset[int] | None:
    """Express a target column as a GF(2) sum of the given columns.

    ``target_col`` is either a column index of ``A`` or an explicit column given
    as a 0/1 sequence of length ``A.rows``.  Returns the unique subset of
    ``basis_cols`` summing to the target, or ``None`` when the target lies
    outside their span.
    """
    chosen = sorted(set(basis_cols))
    columns = A.columns()
    for j in chosen:
        if not 0 <= j < A.cols:
            raise MatroidError(f"column index {j} out of range for {A.cols} columns")
    if isinstance(target_col, int):
        if not 0 <= target_col < A.cols:
            raise MatroidError(f"column index {target_col} out of range")
        target = columns[target_col]
    else:
        if len(target_col) != A.rows:
            raise MatroidError("explicit target column has the wrong length")
        target = sum((int(b) & 1) << i for i, b in enumerate(target_col))

    # Track which chosen columns each echelon vector is built from.
    basis: dict[int, tuple[int, int]] = {}
    for pos, j in enumerate(chosen):
        v, combo = columns[j], 1 << pos
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = (v, combo)
                break
            bv, bc = basis[top]
            v ^= bv
            combo ^= bc
        else:
            raise MatroidError("basis columns are dependent")

    v, combo = target, 0
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return None
        bv, bc = basis[top]
        v ^= bv
        combo ^= bc
    return frozenset(chosen[pos] for pos in range(len(chosen)) if (combo >> pos) & 1)


class Echelon:
    """Incremental echelon basis of packed vectors with undo support.

    Used by the separation and minor searches, which add one vector per
    search step and need to retract it on backtrack.
    """

    __slots__ = ("basis", "rank")

    def __init__(self) -> None:
        self.basis: dict[int, int] = {}
        self.rank = 0

    def add(self, v: int) -> int:
        """Insert ``v``; return the new pivot key, or -1 if ``v`` was in the span."""
        basis = self.basis
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                self.rank += 1
                return top
            v ^= b
        return -1

    def remove(self, key: int) -> None:
        if key >= 0:
            del self.basis[key]
            self.rank -= 1

    def reduce(self, v: int) -> int:
        basis = self.basis
        while v:
            b = basis.get(v.bit_length() - 1)
            if b is None:
                return v
            v ^= b
        return 0

    def reduce_full(self, v: int) -> int:
        """Canonical coset representative: every pivot bit cleared."""
        for key in sorted(self.basis, reverse=True):
            if (v >> key) & 1:
                v ^= self.basis[key]
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0
