"""Reading and writing ``.bmat`` matroid files and template-binding files.

A ``.bmat`` file::

    BMATROID 1
    <n> <r>
    <n labels>
    <rows of the matrix over {0,1}, each of length n>

``#`` starts a comment; blank lines are ignored.  Rows need not be reduced,
but their rank must equal ``r``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator

from .errors import MatroidError, ParseError
from .gf2 import Gf2Matrix, rank
from .matroid import BinaryMatroid

MAGIC = "BMATROID"
VERSION = "1"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_bmat(text: str) -> BinaryMatroid:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty file", 1)
    lineno, head = lines[0]
    if head.split() != [MAGIC, VERSION]:
        raise ParseError(f"expected header '{MAGIC} {VERSION}', got {head!r}", lineno)
    if len(lines) < 3:
        raise ParseError("missing size line or label line", lines[-1][0])
    lineno, sizes = lines[1]
    try:
        n, r = (int(x) for x in sizes.split())
    except ValueError:
        raise ParseError(f"expected two integers 'n r', got {sizes!r}", lineno) from None
    if n < 0 or r < 0:
        raise ParseError("sizes must be non-negative", lineno)
    lineno, label_line = lines[2]
    labels = label_line.split()
    if len(labels) != n:
        raise ParseError(f"expected {n} labels, got {len(labels)}", lineno)
    if len(set(labels)) != n:
        raise ParseError("labels must be distinct", lineno)
    rows = []
    for lineno, row in lines[3:]:
        if len(row) != n or set(row) - {"0", "1"}:
            raise ParseError(f"expected a 0/1 row of length {n}, got {row!r}", lineno)
        rows.append(row)
    last = lines[-1][0]
    try:
        matrix = Gf2Matrix.from_rows(rows, cols=n)
    except MatroidError as exc:
        raise ParseError(str(exc), last) from None
    actual = rank(matrix)
    if actual != r:
        raise ParseError(f"declared rank {r} but the rows have rank {actual}", lines[1][0])
    try:
        return BinaryMatroid(labels, matrix)
    except MatroidError as exc:
        raise ParseError(str(exc), lines[2][0]) from None


def format_bmat(M: BinaryMatroid, comment: str | None = None) -> str:
    for lab in M.labels:
        if not lab or any(ch.isspace() for ch in lab) or "#" in lab:
            raise MatroidError(f"label {lab!r} cannot be written to a .bmat file")
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out.append(f"{MAGIC} {VERSION}")
    out.append(f"{len(M)} {M.rank}")
    out.append(" ".join(M.labels))
    out += M.matrix.to_strings()
    return "\n".join(out) + "\n"


def read_bmat(path: str | os.PathLike) -> BinaryMatroid:
    with open(path, encoding="utf-8") as fh:
        return parse_bmat(fh.read())


def write_bmat(M: BinaryMatroid, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_bmat(M, comment))


@dataclass
class Bindings:
    """A template reference plus a partial variable-to-label assignment.

    File format: a ``TEMPLATE <name> [param=value ...]`` line, then one
    ``<variable> <label>`` pair per line.
    """

    template: str
    params: dict[str, int] = field(default_factory=dict)
    assignment: dict[str, str] = field(default_factory=dict)


def parse_bindings(text: str) -> Bindings:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty bindings file", 1)
    lineno, head = lines[0]
    words = head.split()
    if words[0] != "TEMPLATE" or len(words) < 2:
        raise ParseError("expected 'TEMPLATE <name> [param=value ...]'", lineno)
    params = {}
    for w in words[2:]:
        key, eq, val = w.partition("=")
        if not eq:
            raise ParseError(f"expected param=value, got {w!r}", lineno)
        try:
            params[key] = int(val)
        except ValueError:
            raise ParseError(f"parameter {key} needs an integer value", lineno) from None
    assignment = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<variable> <label>', got {line!r}", lineno)
        if parts[0] in assignment:
            raise ParseError(f"variable {parts[0]} bound twice", lineno)
        assignment[parts[0]] = parts[1]
    return Bindings(words[1], params, assignment)


def read_bindings(path: str | os.PathLike) -> Bindings:
    with open(path, encoding="utf-8") as fh:
        return parse_bindings(fh.read())


def format_bindings(b: Bindings) -> str:
    head = " ".join(["TEMPLATE", b.template] + [f"{k}={v}" for k, v in b.params.items()])
    return "\n".join([head] + [f"{v} {lab}" for v, lab in b.assignment.items()]) + "\n"
