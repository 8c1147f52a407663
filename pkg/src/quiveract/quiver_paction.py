"""Partial and global group actions on quivers and their enveloping actions."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import product

from .group import FiniteGroup
from .quiver import (
    Quiver,
    QuiverError,
    QuiverMorphism,
    Subquiver,
    compose_morphisms,
    inclusion,
    is_isomorphism,
    validate_morphism,
    validate_quiver,
    validate_subquiver,
)
from .report import ValidationReport
from .setaction import (
    GlobalSetAction,
    InvalidActionError,
    SetPartialAction,
    check_partial_set_action,
    globalize_set_action,
    restrict_set_action,
)


class WellDefinednessError(RuntimeError):
    """Source/target of an enveloping arrow depend on the chosen representative."""


class NotIsomorphicError(ValueError):
    pass


@dataclass(frozen=True)
class GlobalQuiverAction:
    group: FiniteGroup
    quiver: Quiver
    maps: dict  # g -> QuiverMorphism quiver -> quiver

    def __getitem__(self, g) -> QuiverMorphism:
        return self.maps[g]

    def vertex_action(self) -> GlobalSetAction:
        return GlobalSetAction(
            self.group,
            self.quiver.vertices,
            {(g, v): self.maps[g].vertex_map[v] for g in self.group for v in self.quiver.vertices},
        )

    def arrow_action(self) -> GlobalSetAction:
        names = self.quiver.arrow_names
        return GlobalSetAction(
            self.group,
            names,
            {(g, a): self.maps[g].arrow_map[a] for g in self.group for a in names},
        )

    def translate(self, g, s: Subquiver) -> Subquiver:
        return self.maps[g].image(s)


@dataclass(frozen=True)
class QuiverPartialAction:
    """Domains Gamma^g with isomorphisms alpha_g: Gamma^{g^-1} -> Gamma^g.

    ``vertex_maps[g]`` and ``arrow_maps[g]`` hold the two components of alpha_g.
    """

    group: FiniteGroup
    quiver: Quiver
    domains: dict  # g -> Subquiver
    vertex_maps: dict
    arrow_maps: dict

    def domain(self, g) -> Subquiver:
        return self.domains.get(g) or Subquiver(self.quiver, frozenset(), frozenset())

    def vertex_action(self) -> SetPartialAction:
        return SetPartialAction(
            self.group,
            self.quiver.vertices,
            {g: self.domain(g).vertices for g in self.group},
            {g: dict(self.vertex_maps.get(g, {})) for g in self.group},
        )

    def arrow_action(self) -> SetPartialAction:
        return SetPartialAction(
            self.group,
            self.quiver.arrow_names,
            {g: self.domain(g).arrows for g in self.group},
            {g: dict(self.arrow_maps.get(g, {})) for g in self.group},
        )

    def morphism(self, g) -> QuiverMorphism:
        """alpha_g as a morphism between the domain subquivers."""
        G = self.group
        return QuiverMorphism(
            self.domain(G.inv(g)).as_quiver(),
            self.domain(g).as_quiver(),
            dict(self.vertex_maps.get(g, {})),
            dict(self.arrow_maps.get(g, {})),
        )


@dataclass(frozen=True)
class EnvelopingQuiverAction:
    global_action: GlobalQuiverAction
    embedding: QuiverMorphism  # original.quiver -> global_action.quiver
    original: QuiverPartialAction

    @property
    def quiver(self) -> Quiver:
        return self.global_action.quiver

    def embedded(self) -> Subquiver:
        return self.embedding.image()


def make_partial_action(group, quiver, domains, maps=None) -> QuiverPartialAction:
    """Convenience constructor.

    ``domains`` maps g to ``(vertices, arrows)``; ``maps`` maps g to a dict
    ``{x: alpha_g(x)}`` over vertex and arrow names together. The identity
    defaults to the whole quiver and the identity map when not given;
    other missing domains are empty.
    """
    maps = maps or {}
    e = group.identity
    doms, vmaps, amaps = {}, {}, {}
    for g in group:
        if g in domains:
            vs, arrs = domains[g]
            doms[g] = quiver.subquiver(vs, arrs)
        elif g == e:
            doms[g] = quiver.full()
        else:
            doms[g] = quiver.subquiver((), ())
    for g in group:
        given = maps.get(g)
        if given is None and g == e and e not in domains:
            given = {x: x for x in quiver.vertices + quiver.arrow_names}
        vmaps[g], amaps[g] = {}, {}
        for x, y in (given or {}).items():
            if quiver.has_vertex(x):
                vmaps[g][x] = y
            elif quiver.has_arrow(x):
                amaps[g][x] = y
            else:
                raise QuiverError(f"{x!r} is neither a vertex nor an arrow")
    return QuiverPartialAction(group, quiver, doms, vmaps, amaps)


def _relabel_set_report(rep: ValidationReport, sort: str, clause: str, out: ValidationReport):
    for v in rep.violations:
        target = "i" if v.clause == "i" else clause
        out.add(target, f"{sort}: {v.message}", *v.witness)


def check_quiver_partial_action(a: QuiverPartialAction) -> ValidationReport:
    """Clauses: ``i``; ``ii`` and ``iii`` (vertex and arrow set actions);
    ``iv`` (each domain is a closed subquiver); ``morphism`` (each alpha_g
    commutes with source and target)."""
    G = a.group
    rep = ValidationReport("quiver partial action", ("quiver", "i", "ii", "iii", "iv", "morphism"))
    for v in validate_quiver(a.quiver).violations:
        rep.add("quiver", v.message, *v.witness)
    dom_e = a.domain(G.identity)
    if dom_e != a.quiver.full():
        rep.add("i", "Gamma^e is not the whole quiver", G.identity)
    _relabel_set_report(check_partial_set_action(a.vertex_action()), "vertices", "ii", rep)
    _relabel_set_report(check_partial_set_action(a.arrow_action()), "arrows", "iii", rep)
    for g in G:
        sub = validate_subquiver(a.domain(g))
        for v in sub.violations:
            rep.add("iv", f"Gamma^{g}: {v.message}", g, *v.witness)
    for g in G:
        vm, am = a.vertex_maps.get(g, {}), a.arrow_maps.get(g, {})
        for name in a.domain(G.inv(g)).ordered_arrows():
            if name not in am or not a.quiver.has_arrow(am[name]):
                continue
            arr, img = a.quiver.arrow(name), a.quiver.arrow(am[name])
            if arr.source in vm and vm[arr.source] != img.source:
                rep.add("morphism", "alpha_g(source(x)) != source(alpha_g(x))", g, name)
            if arr.target in vm and vm[arr.target] != img.target:
                rep.add("morphism", "alpha_g(target(x)) != target(alpha_g(x))", g, name)
    return rep


def check_global_quiver_action(b: GlobalQuiverAction) -> ValidationReport:
    G = b.group
    rep = ValidationReport("global quiver action", ("automorphism", "identity", "hom"))
    for g in G:
        f = b.maps.get(g)
        if f is None or not is_isomorphism(f) or f.source != b.quiver or f.target != b.quiver:
            rep.add("automorphism", "beta_g is not an automorphism of the quiver", g)
    if not rep.ok:
        return rep
    if b.maps[G.identity] != b.quiver.identity():
        rep.add("identity", "beta_e is not the identity", G.identity)
    for g, h in product(G, repeat=2):
        if compose_morphisms(b.maps[g], b.maps[h]) != b.maps[G.mul(g, h)]:
            rep.add("hom", "beta_g o beta_h != beta_gh", g, h)
    return rep


def global_action_from_generators(group: FiniteGroup, quiver: Quiver, images: dict) -> GlobalQuiverAction:
    """Extend the automorphisms given for some elements to the whole group.

    ``images`` maps group elements to a :class:`QuiverMorphism` or to a pair
    ``(vertex_map, arrow_map)``. The given elements must generate the group.
    Elements are reached breadth-first as ``s*h``; the result is not checked
    here, use :func:`check_global_quiver_action` for that.
    """
    gens = {}
    for g, f in images.items():
        if g not in group:
            raise ValueError(f"{g!r} is not an element of the group")
        if not isinstance(f, QuiverMorphism):
            f = QuiverMorphism(quiver, quiver, dict(f[0]), dict(f[1]))
        rep = validate_morphism(f)
        if rep.failed("total"):
            raise ValueError(f"image of {g!r} is incomplete:\n{rep}")
        gens[g] = f
    missing = set(group) - group.generated_by(list(gens))
    if missing:
        raise ValueError(
            f"images given for {sorted(gens)} do not generate the group; "
            f"unreachable elements: {sorted(missing, key=group.index)}"
        )
    maps = {group.identity: quiver.identity()}
    maps.update(gens)
    queue = deque(maps)
    while queue:
        h = queue.popleft()
        for s, f in gens.items():
            x = group.mul(s, h)
            if x not in maps:
                maps[x] = compose_morphisms(f, maps[h])
                queue.append(x)
    return GlobalQuiverAction(group, quiver, maps)


def restrict_global_action(b: GlobalQuiverAction, s: Subquiver) -> QuiverPartialAction:
    """Lambda^g = beta_g(Lambda) & Lambda, with alpha_g the restriction of beta_g."""
    rep = validate_subquiver(s)
    if not rep.ok or s.parent != b.quiver:
        raise QuiverError(f"not a valid subquiver of the acted-on quiver\n{rep}")
    va = restrict_set_action(b.vertex_action(), s.vertices)
    aa = restrict_set_action(b.arrow_action(), s.arrows)
    sq = s.as_quiver()
    G = b.group
    domains = {g: Subquiver(sq, va.domains[g], aa.domains[g]) for g in G}
    return QuiverPartialAction(G, sq, domains, va.maps, aa.maps)


def class_name(rep) -> str:
    g, x = rep
    return f"({g},{x})"


def envelope_quiver_action(a: QuiverPartialAction, rng: random.Random | None = None) -> EnvelopingQuiverAction:
    """Build the enveloping action of ``a``.

    Vertices and arrows are globalized separately. An arrow class containing
    (g, y) gets source [g, source(y)] and target [g, target(y)]; this is
    recomputed from every member of the class and a
    :class:`WellDefinednessError` is raised if two members disagree.
    """
    report = check_quiver_partial_action(a)
    if not report.ok:
        raise InvalidActionError("cannot envelope an invalid partial action", report)
    G, gamma = a.group, a.quiver
    vglob = globalize_set_action(a.vertex_action(), rng)
    aglob = globalize_set_action(a.arrow_action(), rng)
    vclass = {p: c for c, members in vglob.classes.items() for p in members}

    arrows = []
    for c in aglob.action.carrier:
        ends = set()
        for g, y in aglob.classes[c]:
            arr = gamma.arrow(y)
            ends.add((vclass[g, arr.source], vclass[g, arr.target]))
        if len(ends) != 1:
            raise WellDefinednessError(f"arrow class {c} has conflicting endpoints {sorted(ends)}")
        (src, tgt), = ends
        arrows.append((class_name(c), class_name(src), class_name(tgt)))
    Q = Quiver.build([class_name(c) for c in vglob.action.carrier], arrows)

    maps = {}
    for g in G:
        maps[g] = QuiverMorphism(
            Q,
            Q,
            {class_name(c): class_name(vglob.action.apply(g, c)) for c in vglob.action.carrier},
            {class_name(c): class_name(aglob.action.apply(g, c)) for c in aglob.action.carrier},
        )
    beta = GlobalQuiverAction(G, Q, maps)
    embedding = QuiverMorphism(
        gamma,
        Q,
        {v: class_name(vglob.embedding[v]) for v in gamma.vertices},
        {x: class_name(aglob.embedding[x]) for x in gamma.arrow_names},
    )
    return EnvelopingQuiverAction(beta, embedding, a)


def _injective(m: dict) -> bool:
    return len(set(m.values())) == len(m)


def restrict_along(e: EnvelopingQuiverAction) -> QuiverPartialAction:
    """Restrict the global action to the embedded copy and pull it back to the original names."""
    i = e.embedding
    if not (_injective(i.vertex_map) and _injective(i.arrow_map)):
        raise QuiverError("embedding is not injective")
    r = restrict_global_action(e.global_action, i.image())
    vback = {w: v for v, w in i.vertex_map.items()}
    aback = {w: x for x, w in i.arrow_map.items()}
    gamma = e.original.quiver
    G = r.group
    return QuiverPartialAction(
        G,
        gamma,
        {
            g: Subquiver(
                gamma,
                frozenset(vback[v] for v in r.domain(g).vertices),
                frozenset(aback[x] for x in r.domain(g).arrows),
            )
            for g in G
        },
        {g: {vback[x]: vback[y] for x, y in r.vertex_maps[g].items()} for g in G},
        {g: {aback[x]: aback[y] for x, y in r.arrow_maps[g].items()} for g in G},
    )


def partial_action_differences(a1: QuiverPartialAction, a2: QuiverPartialAction) -> list[tuple]:
    """Componentwise differences between two partial actions on the same group."""
    diffs = []
    if a1.quiver != a2.quiver:
        diffs.append(("quiver",))
    for g in a1.group:
        d1, d2 = a1.domain(g), a2.domain(g)
        if d1.vertices != d2.vertices or d1.arrows != d2.arrows:
            diffs.append(("domain", g))
        if a1.vertex_maps.get(g, {}) != a2.vertex_maps.get(g, {}):
            diffs.append(("vertex map", g))
        if a1.arrow_maps.get(g, {}) != a2.arrow_maps.get(g, {}):
            diffs.append(("arrow map", g))
    return diffs


def check_enveloping(e: EnvelopingQuiverAction) -> ValidationReport:
    """Re-verify that ``e`` is an enveloping action of ``e.original``.

    Clauses: ``global`` (beta is a global action), ``a`` (the embedding is an
    injective quiver morphism), ``b`` (restricting beta along the embedding
    gives back the original partial action), ``c``/``d`` (every vertex/arrow
    lies in some translate beta_g(i(Gamma))).
    """
    rep = ValidationReport("enveloping action", ("global", "a", "b", "c", "d"))
    b, i, a = e.global_action, e.embedding, e.original
    for v in check_global_quiver_action(b).violations:
        rep.add("global", v.message, *v.witness)
    mrep = validate_morphism(i)
    for v in mrep.violations:
        rep.add("a", f"embedding: {v.message}", *v.witness)
    if i.source != a.quiver or i.target != b.quiver:
        rep.add("a", "embedding does not go from the original quiver to the enveloping quiver")
    if not (_injective(i.vertex_map) and _injective(i.arrow_map)):
        rep.add("a", "embedding is not injective")
    if not rep.ok:
        return rep
    for diff in partial_action_differences(restrict_along(e), a):
        rep.add("b", "restriction along the embedding differs from the partial action", *diff)
    image = i.image()
    covered_v, covered_a = set(), set()
    for g in b.group:
        t = b.translate(g, image)
        covered_v |= t.vertices
        covered_a |= t.arrows
    for v in b.quiver.vertices:
        if v not in covered_v:
            rep.add("c", "vertex lies in no translate of the embedded quiver", v)
    for x in b.quiver.arrow_names:
        if x not in covered_a:
            rep.add("d", "arrow lies in no translate of the embedded quiver", x)
    return rep


def enveloping_isomorphism(e1: EnvelopingQuiverAction, e2: EnvelopingQuiverAction) -> QuiverMorphism:
    """The equivariant isomorphism sending beta_g(i1(x)) to beta'_g(i2(x)).

    Raises :class:`NotIsomorphicError` if that assignment is not a well
    defined, bijective, equivariant quiver isomorphism.
    """
    if e1.original.quiver != e2.original.quiver or e1.global_action.group != e2.global_action.group:
        raise NotIsomorphicError("enveloping actions of different partial actions")
    b1, b2 = e1.global_action, e2.global_action
    G, gamma = b1.group, e1.original.quiver
    vmap, amap = {}, {}

    def assign(m, x, y, what):
        if m.setdefault(x, y) != y:
            raise NotIsomorphicError(f"{what} {x} would map to both {m[x]} and {y}")

    for g in G:
        for v in gamma.vertices:
            assign(vmap, b1[g].vertex_map[e1.embedding.vertex_map[v]],
                   b2[g].vertex_map[e2.embedding.vertex_map[v]], "vertex")
        for x in gamma.arrow_names:
            assign(amap, b1[g].arrow_map[e1.embedding.arrow_map[x]],
                   b2[g].arrow_map[e2.embedding.arrow_map[x]], "arrow")
    phi = QuiverMorphism(b1.quiver, b2.quiver, vmap, amap)
    if not is_isomorphism(phi):
        raise NotIsomorphicError("canonical map is not a quiver isomorphism")
    for g in G:
        if compose_morphisms(phi, b1[g]) != compose_morphisms(b2[g], phi):
            raise NotIsomorphicError(f"canonical map does not commute with the action of {g}")
    return phi


def orbit_subaction(b: GlobalQuiverAction, s: Subquiver) -> EnvelopingQuiverAction:
    """The action of ``b`` on the orbit of ``s``, as an enveloping action of ``b`` restricted to ``s``."""
    orbit = s
    for g in b.group:
        orbit = orbit | b.translate(g, s)
    oq = orbit.as_quiver()
    maps = {
        g: QuiverMorphism(
            oq,
            oq,
            {v: b[g].vertex_map[v] for v in oq.vertices},
            {x: b[g].arrow_map[x] for x in oq.arrow_names},
        )
        for g in b.group
    }
    emb = inclusion(Subquiver(oq, s.vertices, s.arrows))
    return EnvelopingQuiverAction(GlobalQuiverAction(b.group, oq, maps), emb, restrict_global_action(b, s))


def as_enveloping(b: GlobalQuiverAction, s: Subquiver) -> EnvelopingQuiverAction:
    """Pair ``b`` with its restriction to ``s`` and the inclusion map, without checking minimality."""
    return EnvelopingQuiverAction(b, inclusion(s), restrict_global_action(b, s))


def relabel(e: EnvelopingQuiverAction, vertex_names: dict, arrow_names: dict) -> EnvelopingQuiverAction:
    """Copy of ``e`` with the enveloping quiver's vertices and arrows renamed."""
    Q = e.quiver
    Q2 = Quiver.build(
        [vertex_names[v] for v in Q.vertices],
        [(arrow_names[a.name], vertex_names[a.source], vertex_names[a.target]) for a in Q.arrows],
    )
    maps = {
        g: QuiverMorphism(
            Q2,
            Q2,
            {vertex_names[v]: vertex_names[w] for v, w in f.vertex_map.items()},
            {arrow_names[x]: arrow_names[y] for x, y in f.arrow_map.items()},
        )
        for g, f in e.global_action.maps.items()
    }
    emb = QuiverMorphism(
        e.original.quiver,
        Q2,
        {v: vertex_names[w] for v, w in e.embedding.vertex_map.items()},
        {x: arrow_names[y] for x, y in e.embedding.arrow_map.items()},
    )
    return EnvelopingQuiverAction(GlobalQuiverAction(e.global_action.group, Q2, maps), emb, e.original)
