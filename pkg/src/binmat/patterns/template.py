"""Configuration templates: a small declarative format and its parser.

See ``docs/template_format.md`` for the grammar.  A template names element
variables and lists the sets of variables that must map to circuits and
cocircuits, which variables must be distinct, and which may coincide.
"""

from __future__ import annotations

import ast
import itertools
import operator
import re
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from ..errors import MatroidError, ParseError

SECTIONS = (
    "NAME", "PARAMS", "REQUIRE", "FLAGS", "VARIABLES", "FREE", "CIRCUITS", "COCIRCUITS",
    "DISTINCT", "MAY_EQUAL", "AUTOMORPHISMS", "DELETE", "CONTRACT",
)
# Sections whose expanded lines merge into one entry; the rest give one entry per expansion.
_MERGED = {"VARIABLES", "FREE", "DISTINCT", "DELETE", "CONTRACT", "AUTOMORPHISMS", "FLAGS"}


# -- integer expressions ------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
    ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge,
}


def evaluate(expr: str, env: Mapping[str, int], line: int | None = None) -> int | bool:
    """Evaluate integer arithmetic, comparisons and and/or/not over ``env``."""
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError:
        raise ParseError(f"bad expression {expr!r}", line) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ParseError(f"unknown name {node.id!r} in {expr!r}", line)
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
            return not ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                if type(op) not in _CMPOPS:
                    break
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            else:
                return True
        raise ParseError(f"unsupported expression {expr!r}", line)

    return ev(tree)


_BRACE = re.compile(r"\{([^{}]*)\}")


def _subst(token: str, env: Mapping[str, int], line: int) -> str:
    return _BRACE.sub(lambda m: str(evaluate(m.group(1), env, line)), token)


_INLINE = re.compile(r"\[([^\[\]@]*)@([^\[\]]*)\]")


def _inline(body: str, env: Mapping[str, int], line: int) -> str:
    """Expand ``[tokens @ i=a..b]`` groups in place."""
    def repl(m: re.Match) -> str:
        return " ".join(_subst(m.group(1), e, line) for e in _ranges(m.group(2), env, line))
    return _INLINE.sub(repl, body)


def _ranges(ranges: str, env: Mapping[str, int], line: int) -> list[dict[str, int]]:
    """``i=0..n-1, j=0..2`` -> every binding; later ranges may use earlier names."""
    parts = [p.strip() for p in ranges.split(",") if p.strip()]
    envs = [dict(env)]
    for part in parts:
        m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.+?)\s*\.\.\s*(.+)", part)
        if not m:
            raise ParseError(f"bad range {part!r}", line)
        name, lo, hi = m.groups()
        nxt = []
        for e in envs:
            a, b = evaluate(lo, e, line), evaluate(hi, e, line)
            for v in range(a, b + 1):
                nxt.append({**e, name: v})
        envs = nxt
    return envs


# -- the template value ---------------------------------------------------------


@dataclass(frozen=True)
class ConfigTemplate:
    name: str
    variables: tuple[str, ...]
    required_circuits: tuple[tuple[str, ...], ...]
    required_cocircuits: tuple[tuple[str, ...], ...]
    distinct_groups: tuple[tuple[str, ...], ...]
    allowed_identifications: tuple[tuple[str, str], ...] = ()
    set_identifications: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()
    automorphisms: tuple[tuple[tuple[str, str], ...], ...] = ()
    arity_params: tuple[tuple[str, int], ...] = ()
    flags: frozenset[str] = frozenset()
    free: tuple[str, ...] = ()
    delete: tuple[str, ...] = ()
    contract: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        self.validate()

    @property
    def params(self) -> dict[str, int]:
        return dict(self.arity_params)

    @property
    def figure_reconstructed(self) -> bool:
        return "figure-reconstructed" in self.flags

    def constraints(self) -> list[tuple[str, tuple[str, ...]]]:
        return [("circuit", c) for c in self.required_circuits] + [("cocircuit", c) for c in self.required_cocircuits]

    def validate(self) -> None:
        vs = set(self.variables)
        if len(vs) != len(self.variables):
            raise MatroidError(f"template {self.name}: repeated variable")
        used = set()
        for kind, group in self.constraints():
            if len(set(group)) != len(group):
                raise MatroidError(f"template {self.name}: repeated variable in {kind} {group}")
            unknown = set(group) - vs
            if unknown:
                raise MatroidError(f"template {self.name}: unknown variables {sorted(unknown)}")
            used |= set(group)
        for group in (self.free, self.delete, self.contract, *self.distinct_groups):
            unknown = set(group) - vs
            if unknown:
                raise MatroidError(f"template {self.name}: unknown variables {sorted(unknown)}")
        orphans = vs - used - set(self.free)
        if orphans:
            raise MatroidError(f"template {self.name}: variables {sorted(orphans)} occur in no circuit or cocircuit")
        if set(self.delete) & set(self.contract):
            raise MatroidError(f"template {self.name}: DELETE and CONTRACT overlap")
        for a, b in self.allowed_identifications:
            if a not in vs or b not in vs or a == b:
                raise MatroidError(f"template {self.name}: bad identification {a} {b}")
            for group in self.distinct_groups:
                if len(group) == 2 and set(group) == {a, b}:
                    raise MatroidError(f"template {self.name}: {a} and {b} are both forced distinct and allowed equal")
        for left, right in self.set_identifications:
            if len(left) != len(right) or not (set(left) | set(right)) <= vs:
                raise MatroidError(f"template {self.name}: bad set identification")
        circ = {frozenset(c) for c in self.required_circuits}
        cocirc = {frozenset(c) for c in self.required_cocircuits}
        for perm in self.automorphisms:
            p = dict(perm)
            if set(p) - vs or set(p.values()) - vs or sorted(p) != sorted(p.values()):
                raise MatroidError(f"template {self.name}: automorphism is not a permutation of variables")
            img = lambda g: frozenset(p.get(v, v) for v in g)
            if {img(c) for c in circ} != circ or {img(c) for c in cocirc} != cocirc:
                raise MatroidError(f"template {self.name}: automorphism does not preserve the constraints")
            if img(self.delete) != frozenset(self.delete) or img(self.contract) != frozenset(self.contract):
                raise MatroidError(f"template {self.name}: automorphism moves the DELETE or CONTRACT set")

    # Distinctness -----------------------------------------------------------

    def may_coincide(self, u: str, v: str) -> bool:
        """Whether u and v may map to one element (ignoring set identifications' all-or-nothing rule)."""
        if not any(u in g and v in g for g in self.distinct_groups):
            return True
        if (u, v) in self._allowed or (v, u) in self._allowed:
            return True
        for left, right in self.set_identifications:
            if (u in left and v in right) or (u in right and v in left):
                return True
        return False

    @property
    def _allowed(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.allowed_identifications)

    def assignment_ok(self, assignment: Mapping[str, str]) -> bool:
        """Full distinctness check for a complete assignment."""
        by_image: dict[str, list[str]] = {}
        for v in self.variables:
            by_image.setdefault(assignment[v], []).append(v)
        for group in by_image.values():
            for u, v in itertools.combinations(group, 2):
                if not self.may_coincide(u, v):
                    return False
                if not any(u in g and v in g for g in self.distinct_groups):
                    continue
                if (u, v) in self._allowed or (v, u) in self._allowed:
                    continue
                # Only a set identification allows this pair: it must hold in full.
                if not any(
                    ((u in l and v in r) or (u in r and v in l))
                    and {assignment[x] for x in l} == {assignment[x] for x in r}
                    for l, r in self.set_identifications
                ):
                    return False
        return True

    def group_elements(self) -> list[dict[str, str]]:
        """All permutations generated by the declared automorphisms (identity first)."""
        ident = {v: v for v in self.variables}
        gens = [{**ident, **dict(p)} for p in self.automorphisms]
        seen = {tuple(ident[v] for v in self.variables)}
        out = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    comp = {v: h[g[v]] for v in self.variables}
                    key = tuple(comp[v] for v in self.variables)
                    if key not in seen:
                        seen.add(key)
                        out.append(comp)
                        nxt.append(comp)
            frontier = nxt
        return out


# -- parsing -----------------------------------------------------------------------


def parse_template(text: str, params: Mapping[str, int] | None = None, name: str | None = None) -> ConfigTemplate:
    """Parse template text, instantiating its parameters."""
    params = dict(params or {})
    raw: dict[str, list[tuple[int, str]]] = {s: [] for s in SECTIONS}
    section = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head in SECTIONS:
            section = head
            if rest.strip():
                raw[section].append((lineno, rest.strip()))
            continue
        if section is None:
            raise ParseError(f"content before any section: {line!r}", lineno)
        raw[section].append((lineno, line))

    declared: dict[str, int] = {}
    for lineno, entry in raw["PARAMS"]:
        toks = entry.split()
        if len(toks) != 2:
            raise ParseError("PARAMS lines are 'name default'", lineno)
        try:
            declared[toks[0]] = int(toks[1])
        except ValueError:
            raise ParseError(f"default for {toks[0]} is not an integer", lineno) from None
    unknown = set(params) - set(declared)
    tname = " ".join(entry for _, entry in raw["NAME"]) or name or "template"
    if unknown:
        raise MatroidError(f"template {tname}: unknown parameters {sorted(unknown)}")
    env = {**declared, **{k: int(v) for k, v in params.items()}}
    for lineno, entry in raw["REQUIRE"]:
        if not evaluate(entry, env, lineno):
            shown = ", ".join(f"{k}={v}" for k, v in sorted(env.items()))
            raise MatroidError(f"template {tname}: parameters ({shown}) violate requirement {entry}")

    def expand(sec: str) -> list[list[str]]:
        out: list[list[str]] = []
        for lineno, entry in raw[sec]:
            parts = re.split(r"(?:^|\s)if\s", entry, maxsplit=1)
            body = parts[0]
            cond = parts[1] if len(parts) > 1 else None
            body = _inline(body, env, lineno)
            envs = [env]
            if "@" in body:
                body, _, ranges = body.partition("@")
                envs = _ranges(ranges, env, lineno)
            pieces = []
            for e in envs:
                if cond is not None and not evaluate(cond, e, lineno):
                    continue
                pieces.append(_subst(body, e, lineno).split())
            if sec in _MERGED:
                merged = [t for p in pieces for t in p]
                if merged:
                    out.append(merged)
            else:
                out.extend(p for p in pieces if p)
        return out

    variables: list[str] = []
    for toks in expand("VARIABLES"):
        variables.extend(toks)
    free = [t for toks in expand("FREE") for t in toks]
    for v in free:
        if v not in variables:
            variables.append(v)
    all_vars = tuple(variables)

    distinct = []
    for toks in expand("DISTINCT"):
        distinct.append(all_vars if toks == ["*"] else tuple(dict.fromkeys(toks)))
    pairs, sets = [], []
    for toks in expand("MAY_EQUAL"):
        if "=" in toks:
            i = toks.index("=")
            sets.append((tuple(toks[:i]), tuple(toks[i + 1:])))
        elif len(toks) == 2:
            pairs.append((toks[0], toks[1]))
        else:
            raise MatroidError(f"template {tname}: MAY_EQUAL entries are 'x y' or 'x y = u v'")
    autos = []
    for toks in expand("AUTOMORPHISMS"):
        autos.append(_parse_cycles(" ".join(toks), tname))

    return ConfigTemplate(
        name=tname,
        variables=all_vars,
        required_circuits=tuple(tuple(t) for t in expand("CIRCUITS")),
        required_cocircuits=tuple(tuple(t) for t in expand("COCIRCUITS")),
        distinct_groups=tuple(distinct),
        allowed_identifications=tuple(pairs),
        set_identifications=tuple(sets),
        automorphisms=tuple(autos),
        arity_params=tuple(sorted(env.items())),
        flags=frozenset(t for toks in expand("FLAGS") for t in toks),
        free=tuple(free),
        delete=tuple(t for toks in expand("DELETE") for t in toks),
        contract=tuple(t for toks in expand("CONTRACT") for t in toks),
    )


def _parse_cycles(text: str, tname: str) -> tuple[tuple[str, str], ...]:
    mapping: dict[str, str] = {}
    for cyc in re.findall(r"\(([^()]*)\)", text):
        items = cyc.split()
        if len(set(items)) == 1:
            continue  # a fixed point written as (x x)
        if len(set(items)) != len(items):
            raise MatroidError(f"template {tname}: cycle ({cyc}) repeats a variable")
        for a, b in zip(items, items[1:] + items[:1]):
            if a in mapping:
                raise MatroidError(f"template {tname}: cycles in one automorphism overlap at {a}")
            mapping[a] = b
    return tuple(sorted(mapping.items()))


def load_template(path: str, params: Mapping[str, int] | None = None) -> ConfigTemplate:
    with open(path, encoding="utf-8") as fh:
        return parse_template(fh.read(), params)


def builtin_names() -> list[str]:
    folder = resources.files(__package__) / "templates"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".tmpl"))


def builtin_text(name: str) -> str:
    folder = resources.files(__package__) / "templates"
    path = folder / f"{name}.tmpl"
    if not path.is_file():
        raise MatroidError(f"unknown template {name!r}; known: {', '.join(builtin_names())}")
    return path.read_text(encoding="utf-8")


def builtin(name: str, **params: int) -> ConfigTemplate:
    """A shipped template, instantiated with the given parameters."""
    return parse_template(builtin_text(name), params, name)
