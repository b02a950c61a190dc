"""Gentle quivers: arrows, quadratic monomial relations and nonzero paths.

Paths compose left to right: ``ab`` means first ``a`` then ``b``, so it
needs ``target(a) == source(b)``.  A path is nonzero in ``kQ/I`` exactly
when none of its length-two subwords is a relation.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


class QuiverError(ValueError):
    """Raised for malformed or non-gentle quiver descriptions.

    ``clause`` names the failed condition: ``syntax``, ``unknown``,
    ``composable``, ``valency``, ``continuation`` or ``finite``.
    """

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A nonzero path; the trivial path at ``v`` has no arrows."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def first(self) -> str | None:
        return self.arrows[0] if self.arrows else None

    @property
    def last(self) -> str | None:
        return self.arrows[-1] if self.arrows else None

    def __str__(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e({self.source})"


@dataclass(frozen=True, eq=False)
class GentleQuiver:
    """A validated gentle quiver with relations.

    Build with :func:`make_quiver`, :func:`parse_quiver` or
    :func:`quiver_from_json`; the constructor itself does not validate.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.name)
        return {v: tuple(xs) for v, xs in out.items()}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.name)
        return {v: tuple(xs) for v, xs in inc.items()}

    def out_arrows(self, v: str) -> tuple[str, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[str, ...]:
        return self._in[v]

    def source(self, a: str) -> str:
        return self.arrow[a].source

    def target(self, a: str) -> str:
        return self.arrow[a].target

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations

    def successor(self, a: str, in_relation: bool) -> str | None:
        """The arrow ``b`` after ``a`` with ``ab`` in I (or not in I)."""
        for b in self._out[self.target(a)]:
            if ((a, b) in self.relations) == in_relation:
                return b
        return None

    def predecessor(self, b: str, in_relation: bool) -> str | None:
        for a in self._in[self.source(b)]:
            if ((a, b) in self.relations) == in_relation:
                return a
        return None

    def other_out(self, v: str, a: str | None) -> str | None:
        """The outgoing arrow at ``v`` different from ``a``, if any."""
        for b in self._out[v]:
            if b != a:
                return b
        return None

    def other_in(self, v: str, a: str | None) -> str | None:
        for b in self._in[v]:
            if b != a:
                return b
        return None

    # paths -----------------------------------------------------------------

    def trivial(self, v: str) -> Path:
        return Path(v, v, ())

    def path(self, arrows: Iterable[str], start: str | None = None) -> Path:
        """Build a path from arrow names, raising ``ValueError`` if it is zero."""
        arrows = tuple(arrows)
        if not arrows:
            if start is None:
                raise ValueError("empty path needs a base vertex")
            return self.trivial(start)
        for a in arrows:
            if a not in self.arrow:
                raise ValueError(f"unknown arrow {a!r}")
        for a, b in zip(arrows, arrows[1:]):
            if self.target(a) != self.source(b):
                raise ValueError(f"arrows {a} and {b} are not composable")
            if (a, b) in self.relations:
                raise ValueError(f"path meets the relation {a}{b}")
        return Path(self.source(arrows[0]), self.target(arrows[-1]), arrows)

    def compose(self, p: Path, q: Path) -> Path | None:
        """``pq`` if it is a nonzero path, else ``None``."""
        if p.target != q.source:
            return None
        if p.arrows and q.arrows and (p.last, q.first) in self.relations:
            return None
        return Path(p.source, q.target, p.arrows + q.arrows)

    def maximal_path_from(self, v: str, slot: int) -> Path:
        """Longest nonzero path leaving ``v`` through its ``slot``-th arrow.

        Slots follow declaration order of the outgoing arrows; an empty
        slot gives the trivial path.
        """
        outs = self._out[v]
        if slot >= len(outs):
            return self.trivial(v)
        return self.maximal_path_starting(outs[slot])

    def maximal_path_starting(self, a: str) -> Path:
        arrows = [a]
        while True:
            b = self.successor(arrows[-1], False)
            if b is None:
                break
            arrows.append(b)
        return Path(self.source(a), self.target(arrows[-1]), tuple(arrows))

    def paths_from(self, v: str) -> list[Path]:
        """Basis of ``P(v) = e_v A``: all nonzero paths starting at ``v``."""
        out = [self.trivial(v)]
        for a in self._out[v]:
            p = self.maximal_path_starting(a)
            out.extend(Path(v, self.target(p.arrows[k - 1]), p.arrows[:k]) for k in range(1, len(p) + 1))
        return out

    def paths_to(self, v: str) -> list[Path]:
        """Basis of ``A e_v``: all nonzero paths ending at ``v``."""
        out = [self.trivial(v)]
        for b in self._in[v]:
            arrows = [b]
            while True:
                a = self.predecessor(arrows[0], False)
                if a is None:
                    break
                arrows.insert(0, a)
            for k in range(len(arrows) - 1, -1, -1):
                tail = tuple(arrows[k:])
                out.append(Path(self.source(tail[0]), v, tail))
        return out

    def enumerate_paths(self, max_len: int | None = None) -> list[Path]:
        """All nonzero paths of length at most ``max_len``, grouped by source."""
        out = []
        for v in self.vertices:
            out.extend(p for p in self.paths_from(v) if max_len is None or len(p) <= max_len)
        return out

    @cached_property
    def dimension(self) -> int:
        return sum(len(self.paths_from(v)) for v in self.vertices)

    # serialisation ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
            "relations": sorted([list(r) for r in self.relations], key=lambda r: (self.arrow_index[r[0]], self.arrow_index[r[1]])),
        }

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.name} : {a.source} -> {a.target}" for a in self.arrows]
        lines += [f"rel {a} {b}" for a, b in self.to_json()["relations"]]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"GentleQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.relations)} relations)"


def make_quiver(vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]], relations: Iterable[tuple[str, str]] = ()) -> GentleQuiver:
    """Build and validate a gentle quiver from plain tuples."""
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise QuiverError("syntax", "duplicate vertex")
    vset = set(vertices)
    arrow_list = []
    names = set()
    for name, s, t in arrows:
        name, s, t = str(name), str(s), str(t)
        if name in names:
            raise QuiverError("syntax", f"duplicate arrow {name}")
        if s not in vset or t not in vset:
            raise QuiverError("unknown", f"arrow {name} uses an undeclared vertex")
        names.add(name)
        arrow_list.append(Arrow(name, s, t))
    rels = set()
    for a, b in relations:
        a, b = str(a), str(b)
        if a not in names or b not in names:
            raise QuiverError("unknown", f"relation {a} {b} uses an undeclared arrow")
        rels.add((a, b))
    q = GentleQuiver(vertices, tuple(arrow_list), frozenset(rels))
    check_gentle(q)
    return q


def check_gentle(q: GentleQuiver) -> None:
    for a, b in sorted(q.relations):
        if q.target(a) != q.source(b):
            raise QuiverError("composable", f"relation {a}{b} is not a composable pair")
    for v in q.vertices:
        if len(q.out_arrows(v)) > 2:
            raise QuiverError("valency", f"vertex {v} is the source of more than two arrows")
        if len(q.in_arrows(v)) > 2:
            raise QuiverError("valency", f"vertex {v} is the target of more than two arrows")
    for x in q.arrows:
        a = x.name
        after = q.out_arrows(x.target)
        n_rel = sum((a, b) in q.relations for b in after)
        if n_rel > 1 or len(after) - n_rel > 1:
            raise QuiverError("continuation", f"arrow {a} has two continuations of the same kind")
        before = q.in_arrows(x.source)
        n_rel = sum((b, a) in q.relations for b in before)
        if n_rel > 1 or len(before) - n_rel > 1:
            raise QuiverError("continuation", f"arrow {a} has two predecessors of the same kind")
    cycle = _relation_free_cycle(q)
    if cycle:
        raise QuiverError("finite", "relation-free oriented cycle " + ".".join(cycle) + " makes the algebra infinite-dimensional")


def _relation_free_cycle(q: GentleQuiver) -> list[str] | None:
    # arrows a -> b whenever ab is a nonzero path; a cycle here is an infinite path
    colour: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(a: str) -> list[str] | None:
        colour[a] = 1
        stack_path.append(a)
        b = q.successor(a, False)
        if b is not None:
            if colour.get(b) == 1:
                return stack_path[stack_path.index(b):]
            if b not in colour:
                found = visit(b)
                if found:
                    return found
        colour[a] = 2
        stack_path.pop()
        return None

    for x in q.arrows:
        if x.name not in colour:
            found = visit(x.name)
            if found:
                return found
    return None


_NAME = r"[^\s:#]+"
_VERTEX_RE = re.compile(rf"^vertex\s+({_NAME})$")
_ARROW_RE = re.compile(rf"^arrow\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$")
_REL_RE = re.compile(rf"^rel\s+({_NAME})\s+({_NAME})$")


def parse_quiver(text: str) -> GentleQuiver:
    """Parse the line format (``vertex``, ``arrow n : s -> t``, ``rel a b``).

    Text starting with ``{`` is read as the JSON mirror instead.
    """
    if text.lstrip().startswith("{"):
        try:
            return quiver_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise QuiverError("syntax", f"bad JSON: {exc}") from None
    vertices, arrows, rels = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VERTEX_RE.match(line):
            vertices.append(m.group(1))
        elif m := _ARROW_RE.match(line):
            arrows.append(m.groups())
        elif m := _REL_RE.match(line):
            rels.append(m.groups())
        else:
            raise QuiverError("syntax", f"line {lineno}: cannot parse {raw.strip()!r}")
    return make_quiver(vertices, arrows, rels)


def quiver_from_json(data: dict) -> GentleQuiver:
    try:
        vertices = data["vertices"]
        arrows = []
        for a in data["arrows"]:
            if isinstance(a, dict):
                arrows.append((a["name"], a["source"], a["target"]))
            else:
                arrows.append(tuple(a))
        rels = [tuple(r) for r in data.get("relations", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise QuiverError("syntax", f"malformed quiver JSON: {exc}") from None
    return make_quiver(vertices, arrows, rels)


def iter_composable_pairs(q: GentleQuiver) -> Iterator[tuple[str, str]]:
    for a in q.arrows:
        for b in q.out_arrows(a.target):
            yield a.name, b
