"""Finite quivers, subquivers and quiver morphisms.

Vertices and arrows are named by strings. Names are unique within each
sort; loops and parallel arrows are allowed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import permutations, product

from .report import ValidationReport

DEFAULT_AUTOMORPHISM_CAP = 100_000


class QuiverError(ValueError):
    pass


class AutomorphismLimitError(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    def __str__(self):
        return f"{self.name}: {self.source} -> {self.target}"


@dataclass(frozen=True, eq=False)
class Quiver:
    """A finite quiver. Equality ignores listing order."""

    vertices: tuple = ()
    arrows: tuple = ()
    _by_name: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    @classmethod
    def build(cls, vertices, arrows) -> "Quiver":
        """``arrows`` is an iterable of ``(name, source, target)`` triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and set(self.arrows) == set(other.arrows)

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(self.arrows)))

    @property
    def arrow_names(self) -> tuple:
        return tuple(a.name for a in self.arrows)

    def arrow(self, name) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"no arrow named {name!r}") from None

    def source(self, name):
        return self.arrow(name).source

    def target(self, name):
        return self.arrow(name).target

    def has_vertex(self, v) -> bool:
        return v in self.vertices

    def has_arrow(self, name) -> bool:
        return name in self._by_name

    def full(self) -> "Subquiver":
        return Subquiver(self, frozenset(self.vertices), frozenset(self.arrow_names))

    def subquiver(self, vertices, arrows=()) -> "Subquiver":
        return Subquiver(self, frozenset(vertices), frozenset(arrows))

    def identity(self) -> "QuiverMorphism":
        return QuiverMorphism(
            self, self, {v: v for v in self.vertices}, {a: a for a in self.arrow_names}
        )

    def __str__(self):
        vs = ", ".join(self.vertices)
        arrs = ", ".join(map(str, self.arrows))
        return f"Quiver(vertices: {vs}; arrows: {arrs})"


@dataclass(frozen=True)
class Subquiver:
    parent: Quiver
    vertices: frozenset
    arrows: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "arrows", frozenset(self.arrows))

    def as_quiver(self) -> Quiver:
        """The subquiver as a quiver in its own right, listed in parent order."""
        return Quiver(
            tuple(v for v in self.parent.vertices if v in self.vertices),
            tuple(a for a in self.parent.arrows if a.name in self.arrows),
        )

    def ordered_vertices(self):
        return [v for v in self.parent.vertices if v in self.vertices]

    def ordered_arrows(self):
        return [a for a in self.parent.arrow_names if a in self.arrows]

    def __and__(self, other: "Subquiver") -> "Subquiver":
        return Subquiver(self.parent, self.vertices & other.vertices, self.arrows & other.arrows)

    def __or__(self, other: "Subquiver") -> "Subquiver":
        return Subquiver(self.parent, self.vertices | other.vertices, self.arrows | other.arrows)

    def __le__(self, other: "Subquiver") -> bool:
        return self.vertices <= other.vertices and self.arrows <= other.arrows

    def is_empty(self) -> bool:
        return not self.vertices and not self.arrows


@dataclass(frozen=True)
class QuiverMorphism:
    """A pair of maps (on vertices, on arrows) from ``source`` to ``target``."""

    source: Quiver
    target: Quiver
    vertex_map: dict
    arrow_map: dict

    def __call__(self, x):
        """Image of a vertex or arrow name; vertices take precedence on a clash."""
        if x in self.vertex_map:
            return self.vertex_map[x]
        return self.arrow_map[x]

    def image(self, s: Subquiver | None = None) -> Subquiver:
        vs = s.vertices if s is not None else self.source.vertices
        arrs = s.arrows if s is not None else self.source.arrow_names
        return Subquiver(
            self.target,
            frozenset(self.vertex_map[v] for v in vs),
            frozenset(self.arrow_map[a] for a in arrs),
        )


def validate_quiver(q: Quiver) -> ValidationReport:
    rep = ValidationReport("quiver", ("unique", "endpoints"))
    seen = set()
    for v in q.vertices:
        if v in seen:
            rep.add("unique", "duplicate vertex", v)
        seen.add(v)
    seen = set()
    for a in q.arrows:
        if a.name in seen:
            rep.add("unique", "duplicate arrow", a.name)
        seen.add(a.name)
        for end in (a.source, a.target):
            if end not in q.vertices:
                rep.add("endpoints", "arrow endpoint is not a vertex", a.name, end)
    return rep


def validate_subquiver(s: Subquiver) -> ValidationReport:
    rep = ValidationReport("subquiver", ("membership", "closure"))
    for v in sorted(s.vertices - set(s.parent.vertices), key=str):
        rep.add("membership", "vertex not in the parent quiver", v)
    for a in s.ordered_arrows() + sorted(s.arrows - set(s.parent.arrow_names), key=str):
        if not s.parent.has_arrow(a):
            rep.add("membership", "arrow not in the parent quiver", a)
            continue
        arr = s.parent.arrow(a)
        for end in dict.fromkeys((arr.source, arr.target)):
            if end not in s.vertices:
                rep.add("closure", "arrow endpoint missing from the subquiver", a, end)
    return rep


def validate_morphism(f: QuiverMorphism) -> ValidationReport:
    rep = ValidationReport("quiver morphism", ("total", "compatibility"))
    for v in f.source.vertices:
        if v not in f.vertex_map or not f.target.has_vertex(f.vertex_map[v]):
            rep.add("total", "vertex image missing or not a target vertex", v)
    for a in f.source.arrow_names:
        if a not in f.arrow_map or not f.target.has_arrow(f.arrow_map[a]):
            rep.add("total", "arrow image missing or not a target arrow", a)
    if not rep.ok:
        return rep
    for arr in f.source.arrows:
        img = f.target.arrow(f.arrow_map[arr.name])
        if img.source != f.vertex_map[arr.source]:
            rep.add("compatibility", "source(f(x)) != f(source(x))", arr.name)
        if img.target != f.vertex_map[arr.target]:
            rep.add("compatibility", "target(f(x)) != f(target(x))", arr.name)
    return rep


def is_morphism(f: QuiverMorphism) -> bool:
    return validate_morphism(f).ok


def compose_morphisms(f: QuiverMorphism, g: QuiverMorphism) -> QuiverMorphism:
    """``f o g``: apply ``g`` first."""
    if g.target != f.source:
        raise QuiverError("cannot compose: target of g is not the source of f")
    return QuiverMorphism(
        g.source,
        f.target,
        {v: f.vertex_map[w] for v, w in g.vertex_map.items()},
        {a: f.arrow_map[b] for a, b in g.arrow_map.items()},
    )


def _bijective(m: dict, domain, codomain) -> bool:
    return (
        set(m) == set(domain)
        and len(set(m.values())) == len(m)
        and set(m.values()) == set(codomain)
    )


def is_isomorphism(f: QuiverMorphism) -> bool:
    return (
        is_morphism(f)
        and _bijective(f.vertex_map, f.source.vertices, f.target.vertices)
        and _bijective(f.arrow_map, f.source.arrow_names, f.target.arrow_names)
    )


def invert_morphism(f: QuiverMorphism) -> QuiverMorphism:
    if not _bijective(f.vertex_map, f.source.vertices, f.target.vertices):
        raise QuiverError("vertex map is not bijective")
    if not _bijective(f.arrow_map, f.source.arrow_names, f.target.arrow_names):
        raise QuiverError("arrow map is not bijective")
    return QuiverMorphism(
        f.target,
        f.source,
        {w: v for v, w in f.vertex_map.items()},
        {b: a for a, b in f.arrow_map.items()},
    )


def restrict_morphism(f: QuiverMorphism, s: Subquiver) -> QuiverMorphism:
    """Restrict ``f`` to ``s`` and corestrict to the image of ``s``."""
    img = f.image(s)
    if not validate_subquiver(img).ok:
        raise QuiverError("image of the subquiver is not closed under source/target")
    return QuiverMorphism(
        s.as_quiver(),
        img.as_quiver(),
        {v: f.vertex_map[v] for v in s.ordered_vertices()},
        {a: f.arrow_map[a] for a in s.ordered_arrows()},
    )


def inclusion(s: Subquiver) -> QuiverMorphism:
    return QuiverMorphism(
        s.as_quiver(),
        s.parent,
        {v: v for v in s.ordered_vertices()},
        {a: a for a in s.ordered_arrows()},
    )


def automorphisms(q: Quiver, cap: int = DEFAULT_AUTOMORPHISM_CAP) -> list[QuiverMorphism]:
    """All automorphisms of ``q``, by backtracking over vertex bijections.

    Vertices are only matched to vertices with the same (in-degree,
    out-degree, loop count) profile, and each partial assignment must
    preserve arrow multiplicities between assigned vertices. Each surviving
    vertex bijection is extended by every matching of parallel arrow bundles.
    Raises :class:`AutomorphismLimitError` once more than ``cap`` are found.
    """
    if not validate_quiver(q).ok:
        raise QuiverError("automorphisms need a valid quiver")
    verts = list(q.vertices)
    bundles = defaultdict(list)
    for a in q.arrows:
        bundles[a.source, a.target].append(a.name)
    mult = {k: len(v) for k, v in bundles.items()}

    def profile(v):
        out = sum(n for (s, _), n in mult.items() if s == v)
        inn = sum(n for (_, t), n in mult.items() if t == v)
        return out, inn, mult.get((v, v), 0)

    prof = {v: profile(v) for v in verts}
    result = []
    assignment = {}
    used = set()

    def consistent(v, w):
        for u, x in assignment.items():
            if mult.get((v, u), 0) != mult.get((w, x), 0):
                return False
            if mult.get((u, v), 0) != mult.get((x, w), 0):
                return False
        return mult.get((v, v), 0) == mult.get((w, w), 0)

    def extend_arrows():
        keys = sorted(bundles, key=lambda k: (verts.index(k[0]), verts.index(k[1])))
        choices = []
        for k in keys:
            src = bundles[k]
            dst = bundles[assignment[k[0]], assignment[k[1]]]
            choices.append([dict(zip(src, p)) for p in permutations(dst)])
        for combo in product(*choices):
            amap = {}
            for part in combo:
                amap.update(part)
            result.append(QuiverMorphism(q, q, dict(assignment), amap))
            if len(result) > cap:
                raise AutomorphismLimitError(f"more than {cap} automorphisms")

    def search(i):
        if i == len(verts):
            extend_arrows()
            return
        v = verts[i]
        for w in verts:
            if w in used or prof[w] != prof[v] or not consistent(v, w):
                continue
            assignment[v] = w
            used.add(w)
            search(i + 1)
            del assignment[v]
            used.discard(w)

    search(0)
    return result


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(q: Quiver, highlight: Subquiver | None = None, name: str | None = None) -> str:
    """Graphviz ``digraph`` text; ``highlight`` elements are drawn bold red."""
    hv = highlight.vertices if highlight is not None else frozenset()
    ha = highlight.arrows if highlight is not None else frozenset()
    lines = ["digraph " + (_quote(name) + " " if name else "") + "{"]
    for v in q.vertices:
        attrs = ' [color="red", penwidth=2]' if v in hv else ""
        lines.append(f"  {_quote(v)}{attrs};")
    for a in q.arrows:
        attrs = f"label={_quote(a.name)}"
        if a.name in ha:
            attrs += ', color="red", penwidth=2'
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
