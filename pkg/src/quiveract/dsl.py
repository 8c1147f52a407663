"""Line-oriented text format for groups, quivers and actions.

::

    group cyclic 4
    quiver Q
      vertex 1 2 3 4
      arrow a : 1 -> 2
    end
    global beta on Q
      act t vertex 1 -> 2
      act t arrow a -> b
    end
    partial alpha on Q
      domain t vertices {2,3} arrows {b}
      map t 1 -> 2
      map t arrow a -> b
    end
    restrict beta to vertices {1,2,3} arrows {a,b}
    truncate 3

A table group is written as a block::

    group table K4
      elements e a b c
      row e : e a b c
      ...
    end

``#`` starts a comment. Parsing resolves every name and raises
:class:`DSLError` carrying the line and column of the first problem.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .group import FiniteGroup, GroupError, from_table, make_cyclic
from .quiver import Quiver, QuiverError, Subquiver
from .quiver_paction import (
    GlobalQuiverAction,
    QuiverPartialAction,
    global_action_from_generators,
    restrict_global_action,
)

# a parenthesized run such as "(t2,v1)" is part of a single identifier
_TOKEN = re.compile(r"->|[{},:]|(?:\([^()\s{}#]*\)|(?!->)[^\s{},:#()])+")


class DSLError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class GroupBlock:
    kind: str  # "cyclic" or "table"
    order: int = 0
    name: str = ""
    elements: tuple = ()
    rows: tuple = ()  # one tuple of products per element
    line: int = field(default=0, compare=False)


@dataclass
class QuiverBlock:
    name: str
    vertices: tuple = ()
    arrows: tuple = ()  # (name, source, target)
    line: int = field(default=0, compare=False)
    arrow_lines: tuple = field(default=(), compare=False)


@dataclass
class GlobalBlock:
    name: str
    quiver: str
    acts: tuple = ()  # (g, "vertex" | "arrow", x, y)
    line: int = field(default=0, compare=False)
    act_lines: tuple = field(default=(), compare=False)


@dataclass
class PartialBlock:
    name: str
    quiver: str
    domains: tuple = ()  # (g, vertices, arrows)
    maps: tuple = ()  # (g, sort or None, x, y)
    line: int = field(default=0, compare=False)
    domain_lines: tuple = field(default=(), compare=False)
    map_lines: tuple = field(default=(), compare=False)


@dataclass
class RestrictBlock:
    global_name: str
    vertices: tuple = ()
    arrows: tuple = ()
    line: int = field(default=0, compare=False)


@dataclass
class InstanceDocument:
    group: GroupBlock | None = None
    quivers: list = field(default_factory=list)
    globals: list = field(default_factory=list)
    partials: list = field(default_factory=list)
    restrictions: list = field(default_factory=list)
    truncate: int | None = None
    # resolved objects, filled in by resolve()
    built_group: FiniteGroup | None = field(default=None, compare=False, repr=False)
    built_quivers: dict = field(default_factory=dict, compare=False, repr=False)
    built_globals: dict = field(default_factory=dict, compare=False, repr=False)
    built_partials: dict = field(default_factory=dict, compare=False, repr=False)
    built_restrictions: list = field(default_factory=list, compare=False, repr=False)

    def quiver(self, name) -> Quiver:
        return self.built_quivers[name]

    def global_action(self, name) -> GlobalQuiverAction:
        return self.built_globals[name]

    def partial_action(self, name) -> QuiverPartialAction:
        return self.built_partials[name]

    def subject(self):
        """The single top-level object a command acts on.

        Partial actions (``partial`` blocks and ``restrict`` lines) take
        precedence over global actions, which take precedence over bare
        quivers. Returns ``(kind, block)``.
        """
        tiers = [
            [("partial", b) for b in self.partials] + [("restrict", r) for r in self.restrictions],
            [("global", b) for b in self.globals],
            [("quiver", b) for b in self.quivers],
        ]
        for tier in tiers:
            if len(tier) == 1:
                return tier[0]
            if len(tier) > 1:
                names = ", ".join(f"{k} at line {b.line}" for k, b in tier)
                raise DSLError(f"ambiguous subject: {names}")
        raise DSLError("no subject: the document defines no quiver or action")

    def subject_partial_action(self) -> QuiverPartialAction:
        kind, block = self.subject()
        if kind == "partial":
            return self.built_partials[block.name]
        if kind == "restrict":
            return self.built_restrictions[self.restrictions.index(block)]
        raise DSLError(f"this command needs a partial action, but the subject is a {kind}")


class _Lines:
    def __init__(self, text):
        self.items = []
        for n, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
            if toks:
                self.items.append((n, toks))
        self.pos = 0

    def next(self):
        if self.pos >= len(self.items):
            return None
        item = self.items[self.pos]
        self.pos += 1
        return item


class _Cursor:
    def __init__(self, line, toks):
        self.line, self.toks, self.i = line, toks, 0

    def error(self, msg, col=None):
        if col is None:
            col = self.toks[self.i][1] if self.i < len(self.toks) else (
                self.toks[-1][1] + len(self.toks[-1][0]) if self.toks else 1)
        return DSLError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, what="identifier"):
        if self.i >= len(self.toks):
            raise self.error(f"expected {what}, found end of line")
        tok = self.toks[self.i][0]
        if tok in ("->", "{", "}", ",", ":"):
            raise self.error(f"expected {what}, found {tok!r}")
        self.i += 1
        return tok

    def expect(self, literal):
        tok = self.peek()
        if tok != literal:
            raise self.error(f"expected {literal!r}, found {tok!r}" if tok else f"expected {literal!r}")
        self.i += 1

    def set_literal(self):
        self.expect("{")
        items = []
        if self.peek() == "}":
            self.i += 1
            return tuple(items)
        while True:
            items.append(self.take())
            tok = self.peek()
            if tok == ",":
                self.i += 1
            elif tok == "}":
                self.i += 1
                return tuple(items)
            else:
                raise self.error("expected ',' or '}' in set")

    def done(self):
        if self.i < len(self.toks):
            raise self.error(f"unexpected {self.toks[self.i][0]!r}")


def _block_lines(lines: _Lines, header_line, kind):
    while True:
        item = lines.next()
        if item is None:
            raise DSLError(f"{kind} block starting here is missing 'end'", header_line)
        n, toks = item
        if toks[0][0] == "end":
            _Cursor(n, toks[1:]).done()
            return
        yield _Cursor(n, toks)


def _parse_int(cur, what):
    tok = cur.take(what)
    if not re.fullmatch(r"\d+", tok):
        cur.i -= 1
        raise cur.error(f"expected {what}, found {tok!r}")
    return int(tok)


def parse_instance(text: str) -> InstanceDocument:
    """Parse and resolve a document. Raises :class:`DSLError` on any problem."""
    doc = InstanceDocument()
    lines = _Lines(text)
    names = {}
    while True:
        item = lines.next()
        if item is None:
            break
        n, toks = item
        cur = _Cursor(n, toks)
        head = cur.take("keyword")
        if head == "group":
            if doc.group is not None:
                raise DSLError("a document has at most one group", n, 1)
            kind = cur.take("'cyclic' or 'table'")
            if kind == "cyclic":
                doc.group = GroupBlock("cyclic", order=_parse_int(cur, "group order"), line=n)
                cur.done()
            elif kind == "table":
                doc.group = _parse_table(cur, lines, n)
            else:
                cur.i -= 1
                raise cur.error(f"unknown group kind {kind!r}")
        elif head in ("quiver", "global", "partial"):
            name = cur.take("name")
            if name in names:
                raise DSLError(f"duplicate name {name!r} (first defined on line {names[name]})", n, toks[1][1])
            names[name] = n
            if head == "quiver":
                cur.done()
                doc.quivers.append(_parse_quiver(name, lines, n))
            else:
                cur.expect("on")
                qname = cur.take("quiver name")
                cur.done()
                if head == "global":
                    doc.globals.append(_parse_global(name, qname, lines, n))
                else:
                    doc.partials.append(_parse_partial(name, qname, lines, n))
        elif head == "restrict":
            gname = cur.take("global action name")
            cur.expect("to")
            cur.expect("vertices")
            vs = cur.set_literal()
            cur.expect("arrows")
            arrs = cur.set_literal()
            cur.done()
            doc.restrictions.append(RestrictBlock(gname, vs, arrs, line=n))
        elif head == "truncate":
            if doc.truncate is not None:
                raise DSLError("duplicate truncate line", n, 1)
            doc.truncate = _parse_int(cur, "window length")
            cur.done()
        else:
            raise DSLError(f"unknown statement {head!r}", n, 1)
    resolve(doc)
    return doc


def _parse_table(cur, lines, n):
    name = cur.take("group name")
    cur.done()
    elements, rows, row_lines = None, {}, {}
    for c in _block_lines(lines, n, "group table"):
        kw = c.take("keyword")
        if kw == "elements":
            if elements is not None:
                raise c.error("duplicate 'elements' line", 1)
            elements = []
            while c.peek() is not None:
                elements.append(c.take())
            if len(set(elements)) != len(elements):
                raise c.error("duplicate group element", 1)
        elif kw == "row":
            if elements is None:
                raise c.error("'row' before 'elements'", 1)
            g = c.take("element")
            if g not in elements:
                c.i -= 1
                raise c.error(f"unknown group element {g!r}")
            if g in rows:
                raise c.error(f"duplicate row for {g!r}", 1)
            c.expect(":")
            vals = []
            while c.peek() is not None:
                tok = c.take()
                if tok not in elements:
                    c.i -= 1
                    raise c.error(f"unknown group element {tok!r}")
                vals.append(tok)
            if len(vals) != len(elements):
                raise c.error(f"row has {len(vals)} entries, expected {len(elements)}", 1)
            rows[g], row_lines[g] = tuple(vals), c.line
        else:
            raise c.error(f"unknown group table statement {kw!r}", 1)
    if not elements:
        raise DSLError("group table has no elements", n)
    missing = [g for g in elements if g not in rows]
    if missing:
        raise DSLError(f"group table is missing rows for {missing}", n)
    return GroupBlock("table", name=name, elements=tuple(elements),
                      rows=tuple(rows[g] for g in elements), line=n)


def _parse_quiver(name, lines, n):
    vertices, arrows, arrow_lines = [], [], []
    for c in _block_lines(lines, n, "quiver"):
        kw = c.take("keyword")
        if kw == "vertex":
            if c.peek() is None:
                raise c.error("expected at least one vertex name")
            while c.peek() is not None:
                col = c.toks[c.i][1]
                v = c.take()
                if v in vertices:
                    raise DSLError(f"duplicate vertex {v!r}", c.line, col)
                vertices.append(v)
        elif kw == "arrow":
            col = c.toks[c.i][1] if c.peek() else None
            a = c.take("arrow name")
            c.expect(":")
            s = c.take("source vertex")
            c.expect("->")
            t = c.take("target vertex")
            c.done()
            if any(x[0] == a for x in arrows):
                raise DSLError(f"duplicate arrow {a!r}", c.line, col)
            arrows.append((a, s, t))
            arrow_lines.append(c.line)
        else:
            raise c.error(f"unknown quiver statement {kw!r}", 1)
    return QuiverBlock(name, tuple(vertices), tuple(arrows), line=n, arrow_lines=tuple(arrow_lines))


def _parse_global(name, qname, lines, n):
    acts, act_lines = [], []
    for c in _block_lines(lines, n, "global"):
        c.expect("act")
        g = c.take("group element")
        sort = c.take("'vertex' or 'arrow'")
        if sort not in ("vertex", "arrow"):
            c.i -= 1
            raise c.error(f"expected 'vertex' or 'arrow', found {sort!r}")
        x = c.take()
        c.expect("->")
        y = c.take()
        c.done()
        acts.append((g, sort, x, y))
        act_lines.append(c.line)
    return GlobalBlock(name, qname, tuple(acts), line=n, act_lines=tuple(act_lines))


def _parse_partial(name, qname, lines, n):
    domains, maps, dlines, mlines = [], [], [], []
    for c in _block_lines(lines, n, "partial"):
        kw = c.take("keyword")
        if kw == "domain":
            g = c.take("group element")
            c.expect("vertices")
            vs = c.set_literal()
            c.expect("arrows")
            arrs = c.set_literal()
            c.done()
            domains.append((g, vs, arrs))
            dlines.append(c.line)
        elif kw == "map":
            g = c.take("group element")
            sort = None
            if c.peek() in ("vertex", "arrow") and len(c.toks) - c.i == 4:
                sort = c.take()
            x = c.take()
            c.expect("->")
            y = c.take()
            c.done()
            maps.append((g, sort, x, y))
            mlines.append(c.line)
        else:
            raise c.error(f"unknown partial statement {kw!r}", 1)
    return PartialBlock(name, qname, tuple(domains), tuple(maps), line=n,
                        domain_lines=tuple(dlines), map_lines=tuple(mlines))


def resolve(doc: InstanceDocument) -> InstanceDocument:
    """Build the group, quivers and actions a parsed document describes."""
    gb = doc.group
    if gb is not None:
        try:
            if gb.kind == "cyclic":
                doc.built_group = make_cyclic(gb.order)
            else:
                doc.built_group = from_table(gb.elements, [list(r) for r in gb.rows], name=gb.name)
        except GroupError as exc:
            raise DSLError(str(exc), gb.line) from None

    for qb in doc.quivers:
        for (a, s, t), ln in zip(qb.arrows, qb.arrow_lines or [qb.line] * len(qb.arrows)):
            for end in (s, t):
                if end not in qb.vertices:
                    raise DSLError(f"arrow {a!r} refers to unknown vertex {end!r}", ln)
        doc.built_quivers[qb.name] = Quiver.build(qb.vertices, qb.arrows)

    def need_group(line):
        if doc.built_group is None:
            raise DSLError("a group must be declared before actions can be used", line)
        return doc.built_group

    def need_quiver(name, line):
        if name not in doc.built_quivers:
            raise DSLError(f"unknown quiver {name!r}", line)
        return doc.built_quivers[name]

    def need_element(G, g, line):
        if g not in G:
            raise DSLError(f"{g!r} is not an element of the group", line)

    for blk in doc.globals:
        G, q = need_group(blk.line), need_quiver(blk.quiver, blk.line)
        images = {}
        for (g, sort, x, y), ln in zip(blk.acts, blk.act_lines or [blk.line] * len(blk.acts)):
            need_element(G, g, ln)
            vm, am = images.setdefault(g, ({}, {}))
            if sort == "vertex":
                if not q.has_vertex(x) or not q.has_vertex(y):
                    raise DSLError(f"unknown vertex in 'act {g} vertex {x} -> {y}'", ln)
                target = vm
            else:
                if not q.has_arrow(x) or not q.has_arrow(y):
                    raise DSLError(f"unknown arrow in 'act {g} arrow {x} -> {y}'", ln)
                target = am
            if x in target:
                raise DSLError(f"image of {x!r} under {g!r} given twice", ln)
            target[x] = y
        try:
            doc.built_globals[blk.name] = global_action_from_generators(G, q, images)
        except ValueError as exc:
            raise DSLError(f"global action {blk.name!r}: {exc}", blk.line) from None

    for blk in doc.partials:
        G, q = need_group(blk.line), need_quiver(blk.quiver, blk.line)
        doms, vmaps, amaps = {}, {g: {} for g in G}, {g: {} for g in G}
        for (g, vs, arrs), ln in zip(blk.domains, blk.domain_lines or [blk.line] * len(blk.domains)):
            need_element(G, g, ln)
            if g in doms:
                raise DSLError(f"domain of {g!r} given twice", ln)
            for v in vs:
                if not q.has_vertex(v):
                    raise DSLError(f"unknown vertex {v!r}", ln)
            for a in arrs:
                if not q.has_arrow(a):
                    raise DSLError(f"unknown arrow {a!r}", ln)
            doms[g] = Subquiver(q, frozenset(vs), frozenset(arrs))
        for (g, sort, x, y), ln in zip(blk.maps, blk.map_lines or [blk.line] * len(blk.maps)):
            need_element(G, g, ln)
            is_v, is_a = q.has_vertex(x), q.has_arrow(x)
            if sort == "vertex" or (sort is None and is_v and not is_a):
                if not (is_v and q.has_vertex(y)):
                    raise DSLError(f"unknown vertex in 'map {g} {x} -> {y}'", ln)
                target = vmaps[g]
            elif sort == "arrow" or (sort is None and is_a and not is_v):
                if not (is_a and q.has_arrow(y)):
                    raise DSLError(f"unknown arrow in 'map {g} {x} -> {y}'", ln)
                target = amaps[g]
            elif is_v and is_a:
                raise DSLError(f"{x!r} names both a vertex and an arrow; write 'vertex' or 'arrow'", ln)
            else:
                raise DSLError(f"{x!r} is neither a vertex nor an arrow", ln)
            if x in target:
                raise DSLError(f"image of {x!r} under {g!r} given twice", ln)
            target[x] = y
        e = G.identity
        if e not in doms:
            doms[e] = q.full()
            if not any(m[0] == e for m in blk.maps):
                vmaps[e] = {v: v for v in q.vertices}
                amaps[e] = {a: a for a in q.arrow_names}
        for g in G:
            doms.setdefault(g, Subquiver(q, frozenset(), frozenset()))
        doc.built_partials[blk.name] = QuiverPartialAction(G, q, doms, vmaps, amaps)

    for r in doc.restrictions:
        if r.global_name not in doc.built_globals:
            raise DSLError(f"unknown global action {r.global_name!r}", r.line)
        b = doc.built_globals[r.global_name]
        q = b.quiver
        for v in r.vertices:
            if not q.has_vertex(v):
                raise DSLError(f"unknown vertex {v!r}", r.line)
        for a in r.arrows:
            if not q.has_arrow(a):
                raise DSLError(f"unknown arrow {a!r}", r.line)
        try:
            doc.built_restrictions.append(restrict_global_action(b, q.subquiver(r.vertices, r.arrows)))
        except QuiverError as exc:
            raise DSLError(f"cannot restrict: {exc}", r.line) from None
    return doc


def _set(items) -> str:
    return "{" + ",".join(items) + "}"


def serialize_instance(doc: InstanceDocument) -> str:
    """Inverse of :func:`parse_instance` on the document model."""
    out = []
    gb = doc.group
    if gb is not None:
        if gb.kind == "cyclic":
            out.append(f"group cyclic {gb.order}")
        else:
            out.append(f"group table {gb.name}")
            out.append("  elements " + " ".join(gb.elements))
            for g, row in zip(gb.elements, gb.rows):
                out.append(f"  row {g} : " + " ".join(row))
            out.append("end")
    for qb in doc.quivers:
        out.append(f"quiver {qb.name}")
        if qb.vertices:
            out.append("  vertex " + " ".join(qb.vertices))
        for a, s, t in qb.arrows:
            out.append(f"  arrow {a} : {s} -> {t}")
        out.append("end")
    for blk in doc.globals:
        out.append(f"global {blk.name} on {blk.quiver}")
        for g, sort, x, y in blk.acts:
            out.append(f"  act {g} {sort} {x} -> {y}")
        out.append("end")
    for blk in doc.partials:
        out.append(f"partial {blk.name} on {blk.quiver}")
        for g, vs, arrs in blk.domains:
            out.append(f"  domain {g} vertices {_set(vs)} arrows {_set(arrs)}")
        for g, sort, x, y in blk.maps:
            out.append(f"  map {g} " + (f"{sort} " if sort else "") + f"{x} -> {y}")
        out.append("end")
    for r in doc.restrictions:
        out.append(f"restrict {r.global_name} to vertices {_set(r.vertices)} arrows {_set(r.arrows)}")
    if doc.truncate is not None:
        out.append(f"truncate {doc.truncate}")
    return "\n".join(out) + "\n"


def group_block(G: FiniteGroup) -> GroupBlock:
    """A table block describing ``G``."""
    return GroupBlock(
        "table",
        name=G.name,
        elements=G.elements,
        rows=tuple(tuple(G.mul(g, h) for h in G) for g in G),
    )


def quiver_block(name: str, q: Quiver) -> QuiverBlock:
    return QuiverBlock(name, q.vertices, tuple((a.name, a.source, a.target) for a in q.arrows))


def global_block(name: str, quiver_name: str, b: GlobalQuiverAction, elements=None) -> GlobalBlock:
    """Block listing the images of ``elements`` (default: a generating set)."""
    elements = elements if elements is not None else b.group.generating_set()
    acts = []
    for g in elements:
        f = b[g]
        acts += [(g, "vertex", v, f.vertex_map[v]) for v in b.quiver.vertices]
        acts += [(g, "arrow", a, f.arrow_map[a]) for a in b.quiver.arrow_names]
    return GlobalBlock(name, quiver_name, tuple(acts))


def partial_block(name: str, quiver_name: str, a: QuiverPartialAction) -> PartialBlock:
    """Block listing every domain and every map, identity included."""
    domains, maps = [], []
    for g in a.group:
        d = a.domain(g)
        domains.append((g, tuple(d.ordered_vertices()), tuple(d.ordered_arrows())))
    for g in a.group:
        vm, am = a.vertex_maps.get(g, {}), a.arrow_maps.get(g, {})
        for v in a.quiver.vertices:
            if v in vm:
                maps.append((g, "vertex", v, vm[v]))
        for x in a.quiver.arrow_names:
            if x in am:
                maps.append((g, "arrow", x, am[x]))
    return PartialBlock(name, quiver_name, tuple(domains), tuple(maps))
