"""Generators for the named matroid families.

All generators are deterministic.  The labeling of every family is listed in
``docs/labeling.md``; tests refer to elements by those labels.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Sequence

from .errors import MatroidError
from .gf2 import Gf2Matrix
from .matroid import BinaryMatroid


def graphic(edges: Sequence[tuple[Hashable, Hashable]], labels: Sequence[str] | None = None,
            vertices: Sequence[Hashable] | None = None) -> BinaryMatroid:
    """Cycle matroid from a vertex-edge incidence matrix over GF(2).

    The row of the last vertex (in ``vertices`` order, default sorted) is
    dropped.  A loop edge gives a zero column.
    """
    if labels is None:
        labels = [f"e{k}" for k in range(len(edges))]
    if len(labels) != len(edges):
        raise MatroidError("one label per edge is required")
    if vertices is None:
        seen = {v for e in edges for v in e}
        try:
            vertices = sorted(seen)
        except TypeError:
            vertices = sorted(seen, key=repr)
    pos = {v: i for i, v in enumerate(vertices)}
    keep = len(vertices) - 1
    cols = []
    for u, v in edges:
        if u not in pos or v not in pos:
            raise MatroidError(f"edge ({u}, {v}) uses an unknown vertex")
        col = 0
        if u != v:
            for x in (u, v):
                if pos[x] < keep:
                    col ^= 1 << pos[x]
        cols.append(col)
    return BinaryMatroid(labels, Gf2Matrix.from_columns(cols, max(keep, 0)))


def binary_projective(r: int, labels: Sequence[str] | None = None) -> BinaryMatroid:
    """PG(r-1, 2): every nonzero vector of GF(2)^r, in increasing order."""
    cols = list(range(1, 1 << r))
    if labels is None:
        labels = [str(c) for c in cols]
    return BinaryMatroid(labels, Gf2Matrix.from_columns(cols, r))


def fano() -> BinaryMatroid:
    """F_7 on labels ``1..7``; label ``k`` is the binary expansion of ``k``."""
    return binary_projective(3)


def fano_dual() -> BinaryMatroid:
    return fano().dual()


def _pair(i: int, j: int, n: int) -> str:
    return f"e{i}{j}" if n <= 9 else f"e{i}_{j}"


def complete_graph(n: int) -> BinaryMatroid:
    """M(K_n) with vertices ``1..n``; edge ``ij`` (i < j) is labeled ``e{i}{j}``."""
    if n < 1:
        raise MatroidError("complete_graph needs n >= 1")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return graphic(pairs, [_pair(i, j, n) for i, j in pairs], list(range(1, n + 1)))


def complete_bipartite(m: int, n: int) -> BinaryMatroid:
    """M(K_{m,n}); edge from ``a{i}`` to ``b{j}`` is labeled ``a{i}b{j}``."""
    edges = [(("a", i), ("b", j)) for i in range(1, m + 1) for j in range(1, n + 1)]
    labels = [f"a{i}b{j}" for (_, i), (_, j) in edges]
    verts = [("a", i) for i in range(1, m + 1)] + [("b", j) for j in range(1, n + 1)]
    return graphic(edges, labels, verts)


def wheel(n: int) -> BinaryMatroid:
    """M(W_n): spokes ``x1..xn``, rim ``y1..yn``, {x_i, y_i, x_{i+1}} a triangle."""
    if n < 2:
        raise MatroidError("wheel needs n >= 2")
    hub = 0
    edges, labels = [], []
    for i in range(1, n + 1):
        edges.append((hub, i))
        labels.append(f"x{i}")
    for i in range(1, n + 1):
        edges.append((i, i % n + 1))
        labels.append(f"y{i}")
    return graphic(edges, labels, list(range(n + 1)))


def m_n(n: int) -> BinaryMatroid:
    """The wheel of rank n plus ``g`` (gamma), whose fundamental circuit over the spokes is all spokes plus ``g``."""
    if n < 3:
        raise MatroidError("m_n needs n >= 3")
    W = wheel(n)
    spokes = [W.index[f"x{i}"] for i in range(1, n + 1)]
    gamma = 0
    for s in spokes:
        gamma ^= W.cols[s]
    return BinaryMatroid.from_columns(W.labels + ("g",), list(W.cols) + [gamma], W.rank)


def triadic_mobius(r: int) -> BinaryMatroid:
    """Upsilon_r, realized as the dual of M_{r-1} (defined here for even r)."""
    if r < 4 or r % 2:
        raise MatroidError("triadic_mobius is provided for even r >= 4")
    return m_n(r - 1).dual()


def _biwheel_edges(n: int) -> tuple[list, list[str], list]:
    # Rim vertices 1..n, hubs "u" and "w" (listed last, so "w" is the dropped row).
    edges, labels = [], []
    for i in range(1, n + 1):
        edges.append((i, i % n + 1))
        labels.append(f"r{i}")
    for i in range(1, n + 1):
        edges.append(("u", i))
        labels.append(f"u{i}")
    for i in range(1, n + 1):
        edges.append(("w", i))
        labels.append(f"w{i}")
    verts = list(range(1, n + 1)) + ["u", "w"]
    return edges, labels, verts


def biwheel(n: int) -> BinaryMatroid:
    """M(G_{n+2}): rim ``r_i = v_i v_{i+1}``, spokes ``u_i = u v_i`` and ``w_i = w v_i``."""
    if n < 3:
        raise MatroidError("biwheel needs n >= 3")
    edges, labels, verts = _biwheel_edges(n)
    return graphic(edges, labels, verts)


def biwheel_plus(n: int) -> BinaryMatroid:
    """M(G+_{n+2}): the biwheel plus ``z`` joining the hubs."""
    if n < 3:
        raise MatroidError("biwheel_plus needs n >= 3")
    edges, labels, verts = _biwheel_edges(n)
    return graphic(edges + [("u", "w")], labels + ["z"], verts)


def biwheel_alternating(n: int) -> BinaryMatroid:
    """The biwheel on a 2m-cycle with spokes deleted alternately around the rim.

    ``u_i`` is deleted for odd i and ``w_i`` for even i.
    """
    if n < 4 or n % 2:
        raise MatroidError("biwheel_alternating needs an even rim length >= 4")
    return biwheel(n).delete(alternating_spokes(n))


def alternating_spokes(n: int) -> list[str]:
    return [f"u{i}" if i % 2 else f"w{i}" for i in range(1, n + 1)]


def triangular_mobius(r: int, delete_z: bool = False) -> BinaryMatroid:
    """Delta_r, built from M(G+_{r+1}) by swapping ``r_{n}`` for ``t``.

    With n = r - 1 rim vertices, the rim edge v_n v_1 is deleted and ``t`` is
    the sum of the columns of ``w_n`` and ``u_1``.
    """
    if r < 4:
        raise MatroidError("triangular_mobius needs r >= 4")
    n = r - 1
    G = biwheel_plus(n)
    t = G.cols[G.index[f"w{n}"]] ^ G.cols[G.index[f"u1"]]
    base = G.delete([f"r{n}"])
    M = BinaryMatroid.from_columns(base.labels + ("t",), list(base.cols) + [t], base.rank)
    return M.delete(["z"]) if delete_z else M


def cubic_ladder(n: int, mobius: bool = False) -> BinaryMatroid:
    """Prism (or Möbius) ladder with n rungs.

    Rails ``p_i = P_i P_{i+1}``, ``q_i = Q_i Q_{i+1}``, rungs ``s_i = P_i Q_i``.
    The Möbius version re-routes only the wrap edges: ``p_n = P_n Q_1`` and
    ``q_n = Q_n P_1``.
    """
    if n < 3:
        raise MatroidError("cubic_ladder needs n >= 3")
    edges, labels = [], []
    for i in range(1, n + 1):
        j = i % n + 1
        if mobius and i == n:
            edges.append((("P", i), ("Q", j)))
        else:
            edges.append((("P", i), ("P", j)))
        labels.append(f"p{i}")
    for i in range(1, n + 1):
        j = i % n + 1
        if mobius and i == n:
            edges.append((("Q", i), ("P", j)))
        else:
            edges.append((("Q", i), ("Q", j)))
        labels.append(f"q{i}")
    for i in range(1, n + 1):
        edges.append((("P", i), ("Q", i)))
        labels.append(f"s{i}")
    verts = [("P", i) for i in range(1, n + 1)] + [("Q", i) for i in range(1, n + 1)]
    return graphic(edges, labels, verts)


def quartic_ladder_edges(n: int, mobius: bool = False) -> tuple[list[tuple[int, int]], list[str], int]:
    """Edges of the square of a cycle: C_{2n}^2 (planar) or C_{2n+1}^2 (Möbius).

    ``a_j = (2j, 2j+1)``, ``b_j = (2j, 2j+2)``, ``c_j = (2j+1, 2j+2)``,
    ``d_j = (2j+1, 2j+3)``, vertices mod the cycle length.  The Möbius version
    has the extra edges ``e = (2n, 0)`` and ``f = (2n, 1)``.
    """
    if n < 3:
        raise MatroidError("quartic_ladder needs n >= 3")
    m = 2 * n + (1 if mobius else 0)
    edges, labels = [], []
    for j in range(n):
        for name, (x, y) in (("a", (2 * j, 2 * j + 1)), ("b", (2 * j, 2 * j + 2)),
                             ("c", (2 * j + 1, 2 * j + 2)), ("d", (2 * j + 1, 2 * j + 3))):
            edges.append((x % m, y % m))
            labels.append(f"{name}{j}")
    if mobius:
        edges += [(2 * n, 0), (2 * n, 1)]
        labels += ["e", "f"]
    return edges, labels, m


def quartic_ladder(n: int, mobius: bool = False) -> BinaryMatroid:
    """Cycle matroid of the quartic planar ladder C_{2n}^2 or Möbius ladder C_{2n+1}^2."""
    edges, labels, m = quartic_ladder_edges(n, mobius)
    return graphic(edges, labels, list(range(m)))


def terrahawk() -> BinaryMatroid:
    """Cube on vertices 0..7 (bit patterns) plus apex 8 joined to face {0,1,2,3}.

    Cube edges are ``c{u}{v}`` (u < v, differing in one bit); apex edges ``h{v}``.
    """
    edges, labels = [], []
    for u in range(8):
        for bit in (1, 2, 4):
            v = u ^ bit
            if u < v:
                edges.append((u, v))
                labels.append(f"c{u}{v}")
    for v in range(4):
        edges.append((8, v))
        labels.append(f"h{v}")
    return graphic(edges, labels, list(range(9)))


GENERATORS = {
    "fano": fano,
    "fano_dual": fano_dual,
    "complete_graph": complete_graph,
    "complete_bipartite": complete_bipartite,
    "wheel": wheel,
    "m_n": m_n,
    "triadic_mobius": triadic_mobius,
    "biwheel": biwheel,
    "biwheel_plus": biwheel_plus,
    "biwheel_alternating": biwheel_alternating,
    "triangular_mobius": triangular_mobius,
    "cubic_ladder": cubic_ladder,
    "quartic_ladder": quartic_ladder,
    "terrahawk": terrahawk,
    "projective": binary_projective,
}


def generate(name: str, *args, **kwargs) -> BinaryMatroid:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise MatroidError(f"unknown family {name!r}; known: {', '.join(sorted(GENERATORS))}") from None
    return gen(*args, **kwargs)
