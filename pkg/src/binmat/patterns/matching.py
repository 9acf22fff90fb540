"""Backtracking matcher placing a template's variables on elements of a matroid."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from ..errors import MatroidError
from ..matroid import BinaryMatroid, bits_of, popcount
from .template import ConfigTemplate


@dataclass(frozen=True)
class ConfigMatch:
    template: ConfigTemplate
    assignment: Mapping[str, str]

    def __getitem__(self, var: str) -> str:
        return self.assignment[var]

    def images(self, variables) -> frozenset[str]:
        return frozenset(self.assignment[v] for v in variables)

    @property
    def deleted(self) -> frozenset[str]:
        return self.images(self.template.delete)

    @property
    def contracted(self) -> frozenset[str]:
        return self.images(self.template.contract)

    def key(self, M: BinaryMatroid) -> tuple[int, ...]:
        return tuple(M.index[self.assignment[v]] for v in self.template.variables)

    def revalidate(self, M: BinaryMatroid) -> bool:
        """Independent recheck of every requirement against M."""
        return not violations(M, self.template, self.assignment)

    def __str__(self) -> str:
        body = " ".join(f"{v}={self.assignment[v]}" for v in self.template.variables)
        return f"{self.template.name}: {body}"


def violations(M: BinaryMatroid, t: ConfigTemplate, assignment: Mapping[str, str]) -> list[str]:
    """Reasons why ``assignment`` is not a valid match of ``t`` in M (empty if valid)."""
    out = []
    missing = [v for v in t.variables if v not in assignment]
    if missing:
        return [f"unassigned variables {missing}"]
    for v in t.variables:
        if assignment[v] not in M.index:
            out.append(f"{v} -> {assignment[v]!r} is not an element")
    if out:
        return out
    for group in t.required_circuits:
        labels = [assignment[v] for v in group]
        if len(set(labels)) != len(labels) or not M.is_circuit(labels):
            out.append(f"{{{' '.join(group)}}} -> {{{' '.join(labels)}}} is not a circuit")
    for group in t.required_cocircuits:
        labels = [assignment[v] for v in group]
        if len(set(labels)) != len(labels) or not M.is_cocircuit(labels):
            out.append(f"{{{' '.join(group)}}} -> {{{' '.join(labels)}}} is not a cocircuit")
    if not t.assignment_ok(assignment):
        out.append("distinctness requirements fail")
    return out


def validate_match(M: BinaryMatroid, match: ConfigMatch, template_name: str | None = None) -> None:
    """Raise a domain error unless ``match`` is valid in M."""
    if template_name is not None and not match.template.name.startswith(template_name):
        raise MatroidError(f"expected a {template_name} match, got {match.template.name}")
    bad = violations(M, match.template, match.assignment)
    if bad:
        raise MatroidError("invalid match: " + "; ".join(bad))


def match(M: BinaryMatroid, t: ConfigTemplate, limit: int | None = None,
          bindings: Mapping[str, str] | None = None, require_simple: bool = True,
          enumerate_free: bool = False) -> list[ConfigMatch]:
    """Up to ``limit`` matches of ``t`` in M, one per orbit of the template's automorphisms.

    Matches are in a deterministic order (by element positions in variable
    order).  Free variables must be bound through ``bindings`` unless
    ``enumerate_free`` is set.
    """
    if require_simple and not (M.is_simple() and M.is_cosimple()):
        raise MatroidError("matching needs a simple and cosimple matroid")
    bindings = dict(bindings or {})
    unknown = set(bindings) - set(t.variables)
    if unknown:
        raise MatroidError(f"bindings name unknown variables {sorted(unknown)}")
    for v, lab in bindings.items():
        if lab not in M.index:
            raise MatroidError(f"binding {v}={lab!r} is not an element")
    unbound_free = [v for v in t.free if v not in bindings]
    if unbound_free and not enumerate_free:
        raise MatroidError(f"template {t.name} has free variables {unbound_free}; supply bindings")

    var_index = {v: i for i, v in enumerate(t.variables)}
    cons = [(kind, tuple(var_index[v] for v in group)) for kind, group in t.constraints()]
    sizes = {len(g) for _, g in cons}
    max_c = max((len(g) for k, g in cons if k == "circuit"), default=0)
    max_d = max((len(g) for k, g in cons if k == "cocircuit"), default=0)
    pools = {
        "circuit": [m for m in M.circuit_masks(max_c)] if max_c else [],
        "cocircuit": [m for m in M.cocircuit_masks(max_d)] if max_d else [],
    }
    by_size = {(k, s): [m for m in pools[k] if popcount(m) == s] for k in pools for s in sizes}
    members = {key: set(ms) for key, ms in by_size.items()}
    by_elem: dict[tuple[str, int], dict[int, list[int]]] = {}
    for key, ms in by_size.items():
        idx: dict[int, list[int]] = {}
        for m in ms:
            for e in bits_of(m):
                idx.setdefault(e, []).append(m)
        by_elem[key] = idx

    nv = len(t.variables)
    may = [[True] * nv for _ in range(nv)]
    for i, u in enumerate(t.variables):
        for j, v in enumerate(t.variables):
            if i != j:
                may[i][j] = t.may_coincide(u, v)
    var_cons = [[c for c, (_, g) in enumerate(cons) if i in g] for i in range(nv)]

    assign: list[int | None] = [None] * nv
    for v, lab in bindings.items():
        assign[var_index[v]] = M.index[lab]
    for i in range(nv):
        for j in range(i + 1, nv):
            if assign[i] is not None and assign[i] == assign[j] and not may[i][j]:
                raise MatroidError(f"bindings put {t.variables[i]} and {t.variables[j]} on one element")

    group = t.group_elements()
    perms = [[var_index[g[v]] for v in t.variables] for g in group]
    seen: set[tuple[int, ...]] = set()
    results: list[tuple[tuple[int, ...], dict[str, str]]] = []

    def compatible(i: int, e: int) -> bool:
        for j in range(nv):
            if j != i and assign[j] == e and not may[i][j]:
                return False
        return True

    def cons_ok(c: int) -> bool:
        kind, g = cons[c]
        imgs = [assign[i] for i in g]
        if any(x is None for x in imgs):
            return True
        m = 0
        for x in imgs:
            m |= 1 << x
        return popcount(m) == len(g) and m in members[(kind, len(g))]

    def finish() -> bool:
        free_slots = [i for i in range(nv) if assign[i] is None]
        if free_slots:
            return assign_free(free_slots, 0)
        labels = {t.variables[i]: M.labels[assign[i]] for i in range(nv)}
        if not t.assignment_ok(labels):
            return False
        key = tuple(assign)  # type: ignore[arg-type]
        # Orbit representative: the least permuted position tuple.
        rep = min(tuple(key[p[i]] for i in range(nv)) for p in perms)
        if rep in seen:
            return False
        seen.add(rep)
        results.append((key, labels))
        return limit is not None and len(results) >= limit

    def assign_free(slots: list[int], k: int) -> bool:
        if k == len(slots):
            return finish()
        i = slots[k]
        for e in range(len(M)):
            if compatible(i, e):
                assign[i] = e
                if assign_free(slots, k + 1):
                    assign[i] = None
                    return True
                assign[i] = None
        return False

    def pick() -> int | None:
        best, best_key = None, None
        for c, (_, g) in enumerate(cons):
            n_set = sum(assign[i] is not None for i in g)
            if n_set == len(g):
                continue
            key = (-n_set, c)
            if best_key is None or key < best_key:
                best, best_key = c, key
        return best

    def rec() -> bool:
        c = pick()
        if c is None:
            return finish()
        kind, g = cons[c]
        fixed = [assign[i] for i in g if assign[i] is not None]
        open_vars = [i for i in g if assign[i] is None]
        key = (kind, len(g))
        if fixed:
            fmask = 0
            for x in fixed:
                fmask |= 1 << x
            if popcount(fmask) != len(fixed):
                return False
            cands = [m for m in by_elem[key].get(fixed[0], ()) if m & fmask == fmask]
        else:
            cands = by_size[key]
        for m in cands:
            rest = [e for e in bits_of(m) if not any(e == x for x in fixed)]
            for perm in itertools.permutations(rest):
                ok = True
                done = []
                for i, e in zip(open_vars, perm):
                    if not compatible(i, e):
                        ok = False
                        break
                    assign[i] = e
                    done.append(i)
                if ok:
                    touched = {cc for i in open_vars for cc in var_cons[i]}
                    ok = all(cons_ok(cc) for cc in touched)
                if ok and rec():
                    for i in done:
                        assign[i] = None
                    return True
                for i in done:
                    assign[i] = None
        return False

    if all(cons_ok(c) for c in range(len(cons))):
        rec()
    results.sort(key=lambda kv: kv[0])
    return [ConfigMatch(t, labels) for _, labels in results]


def brute_force_bowties(M: BinaryMatroid) -> set[tuple[frozenset[str], frozenset[str], frozenset[str]]]:
    """Every (T1, T2, D*) with disjoint triangles and a 4-cocircuit inside their union."""
    tris = M.triangles()
    fours = [m for m in M.cocircuit_masks(4) if popcount(m) == 4]
    out = set()
    for t1 in tris:
        for t2 in tris:
            if t1 & t2:
                continue
            for d in fours:
                if d & ~(t1 | t2) == 0:
                    out.add((frozenset(M.labels_of(t1)), frozenset(M.labels_of(t2)), frozenset(M.labels_of(d))))
    return out


def bowtie_triple(m: ConfigMatch) -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    a = m.assignment
    return (
        frozenset(a[v] for v in ("x1", "x2", "x3")),
        frozenset(a[v] for v in ("x4", "x5", "x6")),
        frozenset(a[v] for v in ("x2", "x3", "x4", "x5")),
    )
