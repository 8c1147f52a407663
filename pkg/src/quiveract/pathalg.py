"""Path algebras over the rationals and partial actions by subalgebras.

Paths are written right to left as products: the path ``b*a`` traverses
``a`` first, so ``p*q`` is nonzero only when ``source(p) == target(q)``.
Path algebras of quivers with oriented cycles are infinite dimensional, so
every algebra-level check works inside the window of paths of length at
most ``L`` and says so in its report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

from .group import FiniteGroup
from .linalg import Echelon, span_intersection
from .quiver import Arrow, Quiver, QuiverMorphism, Subquiver
from .quiver_paction import (
    EnvelopingQuiverAction,
    QuiverPartialAction,
    check_quiver_partial_action,
    restrict_along,
)
from .report import ValidationReport
from .setaction import InvalidActionError

DEFAULT_WINDOW = 4


class OutsideDomainError(ValueError):
    pass


class AlgebraMismatchError(ValueError):
    pass


class IsomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """A path ``arrows[0] * ... * arrows[-1]`` from ``source`` to ``target``.

    A trivial path has no arrows and ``source == target``.
    """

    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"e_{self.source}" if not self.arrows else "*".join(self.arrows)

    def __mul__(self, other: "Path"):
        """Concatenation, or None when the product vanishes."""
        if self.source != other.target:
            return None
        if self.is_trivial:
            return other
        if other.is_trivial:
            return self
        return Path(other.source, self.target, self.arrows + other.arrows)


def trivial_path(v) -> Path:
    return Path(v, v, ())


def make_path(q: Quiver, *arrows) -> Path:
    """The path ``arrows[0] * arrows[1] * ...`` (last arrow traversed first)."""
    if not arrows:
        raise ValueError("use trivial_path for length-zero paths")
    arrs = [q.arrow(a) for a in arrows]
    for left, right in zip(arrs, arrs[1:]):
        if left.source != right.target:
            raise ValueError(f"{left.name}*{right.name} is not a path")
    return Path(arrs[-1].source, arrs[0].target, tuple(arrows))


def _enumerate(vertices, arrows: Iterable[Arrow], L: int) -> list[Path]:
    arrows = list(arrows)
    layer = [trivial_path(v) for v in vertices]
    out = list(layer)
    if L >= 1:
        layer = [Path(a.source, a.target, (a.name,)) for a in arrows]
        out.extend(layer)
    for _ in range(2, L + 1):
        if not layer:
            break
        layer = [
            Path(p.source, a.target, (a.name,) + p.arrows)
            for p in layer
            for a in arrows
            if a.source == p.target
        ]
        out.extend(layer)
    return out


def enumerate_paths(q: Quiver, L: int) -> list[Path]:
    """All paths of length at most ``L``: by length, then in arrow listing order."""
    if L < 0:
        raise ValueError("window length must be >= 0")
    return _enumerate(q.vertices, q.arrows, L)


def truncated_dimension(q: Quiver, L: int) -> int:
    return len(enumerate_paths(q, L))


def map_path(p: Path, f: QuiverMorphism) -> Path:
    """Image of a path under a quiver morphism."""
    return Path(
        f.vertex_map[p.source],
        f.vertex_map[p.target],
        tuple(f.arrow_map[a] for a in p.arrows),
    )


class PathAlgebra:
    """The path algebra of ``quiver`` over the rationals."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver

    def __eq__(self, other):
        return isinstance(other, PathAlgebra) and self.quiver == other.quiver

    def __hash__(self):
        return hash(self.quiver)

    def __repr__(self):
        return f"PathAlgebra({self.quiver})"

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def element(self, terms: dict) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def basis_element(self, p: Path) -> "AlgebraElement":
        return AlgebraElement(self, {p: Fraction(1)})

    def e(self, v) -> "AlgebraElement":
        if not self.quiver.has_vertex(v):
            raise ValueError(f"no vertex {v!r}")
        return self.basis_element(trivial_path(v))

    def arrow(self, a) -> "AlgebraElement":
        arr = self.quiver.arrow(a)
        return self.basis_element(Path(arr.source, arr.target, (a,)))

    def path(self, *arrows) -> "AlgebraElement":
        return self.basis_element(make_path(self.quiver, *arrows))

    def one(self) -> "AlgebraElement":
        """Sum of all vertex idempotents."""
        return AlgebraElement(self, {trivial_path(v): Fraction(1) for v in self.quiver.vertices})

    def basis(self, L: int) -> list[Path]:
        return enumerate_paths(self.quiver, L)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """A finite rational combination of paths. Zero coefficients are dropped."""

    algebra: PathAlgebra
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {p: Fraction(c) for p, c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError("elements of different path algebras")
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        return AlgebraElement(self.algebra, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return AlgebraElement(self.algebra, {p: c * v for p, v in self.terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                pq = p * q
                if pq is not None:
                    out[pq] = out.get(pq, 0) + c * d
        return AlgebraElement(self.algebra, out)

    @property
    def support(self) -> list[Path]:
        return sorted(self.terms)

    @property
    def degree(self) -> int:
        return max((p.length for p in self.terms), default=-1)

    def truncate(self, L: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {p: c for p, c in self.terms.items() if p.length <= L})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in self.support:
            c = self.terms[p]
            parts.append(str(p) if c == 1 else f"{c}*{p}")
        return " + ".join(parts)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def _key(p: Path):
    return p.sort_key()


@dataclass(frozen=True)
class SubalgebraSpan:
    """A subspace of a path algebra spanned by paths of a subquiver, or by explicit elements.

    In subquiver form membership is exact: a path belongs iff its arrows (or,
    for a trivial path, its vertex) lie in ``vertices``/``arrows``. In
    explicit form the span is only known inside the window ``L``.
    """

    quiver: Quiver
    vertices: frozenset | None = None
    arrows: frozenset | None = None
    elements: tuple = ()
    window: int | None = None

    @classmethod
    def from_subquiver(cls, s: Subquiver) -> "SubalgebraSpan":
        return cls(s.parent, frozenset(s.vertices), frozenset(s.arrows))

    @classmethod
    def explicit(cls, quiver: Quiver, elements, L: int) -> "SubalgebraSpan":
        return cls(quiver, None, None, tuple(elements), L)

    @property
    def is_subquiver_form(self) -> bool:
        return self.vertices is not None

    def contains_path(self, p: Path) -> bool:
        if self.is_subquiver_form:
            if p.is_trivial:
                return p.source in self.vertices
            return all(a in self.arrows for a in p.arrows)
        return {p: 1} in self.echelon()

    def paths(self, L: int) -> list[Path]:
        """Basis paths of the span of length at most ``L`` (subquiver form only)."""
        if not self.is_subquiver_form:
            raise ValueError("explicit spans have no path basis; use echelon()")
        arrs = [a for a in self.quiver.arrows if a.name in self.arrows]
        verts = [v for v in self.quiver.vertices if v in self.vertices]
        return _enumerate(verts, arrs, L)

    def echelon(self, L: int | None = None) -> Echelon:
        if self.is_subquiver_form:
            if L is None:
                raise ValueError("a window length is needed for subquiver spans")
            return Echelon(({p: 1} for p in self.paths(L)), key=_key)
        cached = self.__dict__.get("_echelon")
        if cached is None:
            cached = Echelon((x.terms for x in self.elements), key=_key)
            object.__setattr__(self, "_echelon", cached)
        return cached

    def basis(self, L: int | None = None) -> list[AlgebraElement]:
        alg = PathAlgebra(self.quiver)
        if self.is_subquiver_form:
            return [alg.basis_element(p) for p in self.paths(L)]
        return [AlgebraElement(alg, row) for row in self.echelon().basis()]

    def contains(self, x: AlgebraElement, L: int | None = None) -> bool:
        if self.is_subquiver_form:
            return all(self.contains_path(p) for p in x.terms)
        window = self.window if L is None else L
        return x.truncate(window).terms in self.echelon()

    def dimension(self, L: int | None = None) -> int:
        if self.is_subquiver_form:
            return len(self.paths(L))
        return self.echelon().rank

    def same_span(self, other: "SubalgebraSpan", L: int) -> bool:
        return _window_echelon(self, L).same_span(_window_echelon(other, L))


def _window_echelon(s: SubalgebraSpan, L: int) -> Echelon:
    if s.is_subquiver_form:
        return s.echelon(L)
    return Echelon((x.truncate(L).terms for x in s.elements), key=_key)


@dataclass(frozen=True)
class AlgebraPartialAction:
    """Partial action by subalgebras whose domains are spanned by path sets.

    ``domains[g]`` gives R_g as a :class:`SubalgebraSpan` in subquiver form;
    alpha_g is determined multiplicatively by ``vertex_maps[g]`` and
    ``arrow_maps[g]``.
    """

    group: FiniteGroup
    quiver: Quiver
    domains: dict
    vertex_maps: dict
    arrow_maps: dict

    @property
    def algebra(self) -> PathAlgebra:
        return PathAlgebra(self.quiver)

    def domain(self, g) -> SubalgebraSpan:
        return self.domains.get(g) or SubalgebraSpan(self.quiver, frozenset(), frozenset())

    def map_path(self, g, p: Path) -> AlgebraElement:
        """alpha_g on a basis path of R_{g^-1}."""
        alg = self.algebra
        if not self.domain(self.group.inv(g)).contains_path(p):
            raise OutsideDomainError(f"{p} is not in the domain of alpha_{g}")
        vm, am = self.vertex_maps.get(g, {}), self.arrow_maps.get(g, {})
        try:
            if p.is_trivial:
                return alg.e(vm[p.source])
            out = alg.arrow(am[p.arrows[0]])
            for a in p.arrows[1:]:
                out = out * alg.arrow(am[a])
            return out
        except KeyError as exc:
            raise OutsideDomainError(f"alpha_{g} is undefined on {exc.args[0]!r}") from None

    def apply(self, g, x: AlgebraElement) -> AlgebraElement:
        out = self.algebra.zero()
        for p, c in x.terms.items():
            out = out + c * self.map_path(g, p)
        return out


def induced_partial_action(a: QuiverPartialAction) -> AlgebraPartialAction:
    """R_g is spanned by the paths of Gamma^g; alpha_g acts arrow by arrow."""
    rep = check_quiver_partial_action(a)
    if not rep.ok:
        raise InvalidActionError("cannot induce from an invalid partial action", rep)
    return AlgebraPartialAction(
        a.group,
        a.quiver,
        {g: SubalgebraSpan.from_subquiver(a.domain(g)) for g in a.group},
        {g: dict(a.vertex_maps.get(g, {})) for g in a.group},
        {g: dict(a.arrow_maps.get(g, {})) for g in a.group},
    )


def _meet(s: SubalgebraSpan, t: SubalgebraSpan) -> SubalgebraSpan:
    return SubalgebraSpan(s.quiver, s.vertices & t.vertices, s.arrows & t.arrows)


def check_subalgebra_partial_action(a: AlgebraPartialAction, L: int = DEFAULT_WINDOW) -> ValidationReport:
    """Check the partial-action-by-subalgebras axioms.

    ``i`` is exact. ``ii`` is checked exactly on vertex/arrow sets and again
    on the window basis; since the domains are spanned by path sets, the
    intersection of two domains is spanned by the common paths. ``iii`` and
    ``hom`` (alpha_g is multiplicative, zero products included) are checked on
    every window basis path.
    """
    G, q = a.group, a.quiver
    rep = ValidationReport("partial action by subalgebras", ("i", "ii", "iii", "hom"), window=L)
    e = G.identity
    de = a.domain(e)
    if de.vertices != frozenset(q.vertices) or de.arrows != frozenset(q.arrow_names):
        rep.add("i", "R_e is not the whole algebra", e)
    for x in q.vertices:
        if a.vertex_maps.get(e, {}).get(x, x) != x:
            rep.add("i", "alpha_e is not the identity", x)
    for x in q.arrow_names:
        if a.arrow_maps.get(e, {}).get(x, x) != x:
            rep.add("i", "alpha_e is not the identity", x)

    for g, h in product(G, repeat=2):
        gi, gh = G.inv(g), G.mul(g, h)
        src = _meet(a.domain(gi), a.domain(h))
        tgt = _meet(a.domain(g), a.domain(gh))
        vm, am = a.vertex_maps.get(g, {}), a.arrow_maps.get(g, {})
        undefined = sorted(src.vertices - vm.keys(), key=str) + sorted(src.arrows - am.keys(), key=str)
        if undefined:
            rep.add("ii", "alpha_g undefined on R_{g^-1} & R_h", g, h, undefined[0])
            continue
        img_v = frozenset(vm[v] for v in src.vertices)
        img_a = frozenset(am[x] for x in src.arrows)
        if img_v != tgt.vertices or img_a != tgt.arrows:
            rep.add("ii", "alpha_g(R_{g^-1} & R_h) != R_g & R_gh on generators", g, h,
                    set((img_v ^ tgt.vertices) | (img_a ^ tgt.arrows)))
            continue
        image = Echelon(key=_key)
        try:
            for p in src.paths(L):
                image.add(a.map_path(g, p).terms)
        except OutsideDomainError as exc:
            rep.add("ii", str(exc), g, h)
            continue
        if not image.same_span(tgt.echelon(L)):
            rep.add("ii", "alpha_g(R_{g^-1} & R_h) != R_g & R_gh in the window", g, h)

    for g, h in product(G, repeat=2):
        gh, hi = G.mul(g, h), G.inv(h)
        for y in _meet(a.domain(h), a.domain(G.inv(g))).paths(L):
            try:
                x = a.map_path(hi, y)
                lhs = a.apply(g, a.apply(h, x))
                rhs = a.apply(gh, x)
            except OutsideDomainError as exc:
                rep.add("iii", str(exc), g, h, str(y))
                continue
            if lhs != rhs:
                rep.add("iii", "alpha_g(alpha_h(x)) != alpha_gh(x)", g, h, repr(x))

    for g in G:
        basis = a.domain(G.inv(g)).paths(L)
        try:
            images = {p: a.map_path(g, p) for p in basis}
        except OutsideDomainError as exc:
            rep.add("hom", str(exc), g)
            continue
        for p, r in product(basis, repeat=2):
            if p.length + r.length > L:
                continue
            pr = p * r
            lhs = images[pr] if pr is not None else a.algebra.zero()
            if lhs != images[p] * images[r]:
                rep.add("hom", "alpha_g(pq) != alpha_g(p) alpha_g(q)", g, str(p), str(r))
    return rep


@dataclass(frozen=True)
class IdealWitness:
    """``left * right`` is not in the span although one factor is."""

    left: Path
    right: Path
    product: Path

    def __str__(self):
        return f"{self.left} . {self.right} = {self.product}"


def check_not_ideal(s: SubalgebraSpan, L: int = DEFAULT_WINDOW) -> IdealWitness | None:
    """First product of an ambient basis path with a basis element of ``s``
    that leaves ``s``, or None if ``s`` is closed under both-sided
    multiplication within the window."""
    ambient = enumerate_paths(s.quiver, L)
    alg = PathAlgebra(s.quiver)
    if s.is_subquiver_form:
        members = [alg.basis_element(p) for p in s.paths(L)]
    else:
        members = s.basis()
    for x in members:
        for p in ambient:
            pe = alg.basis_element(p)
            for left, right in ((pe, x), (x, pe)):
                prod = (left * right).truncate(L)
                if prod and not s.contains(prod, L):
                    lp, rp = left.support[0], right.support[0]
                    return IdealWitness(lp, rp, prod.support[0])
    return None


def _translate_paths(e: EnvelopingQuiverAction, g, L: int) -> list[Path]:
    f = e.global_action[g]
    return [map_path(map_path(p, e.embedding), f) for p in enumerate_paths(e.original.quiver, L)]


def sum_of_translates(e: EnvelopingQuiverAction, L: int = DEFAULT_WINDOW) -> SubalgebraSpan:
    """The linear span of all beta_g(K Gamma), inside the window."""
    alg = PathAlgebra(e.quiver)
    elts = {}
    for g in e.global_action.group:
        for p in _translate_paths(e, g, L):
            elts.setdefault(p, alg.basis_element(p))
    return SubalgebraSpan.explicit(e.quiver, sorted(elts.values(), key=lambda x: x.support[0]), L)


def multiplicative_closure(quiver: Quiver, elements, L: int) -> SubalgebraSpan:
    """Smallest window subspace containing ``elements`` and closed under products truncated to the window."""
    alg = PathAlgebra(quiver)
    ech = Echelon(key=_key)
    gens = []
    for x in elements:
        x = x.truncate(L)
        if ech.add(x.terms):
            gens.append(x)
    i = 0
    while i < len(gens):
        u = gens[i]
        for j in range(i + 1):
            v = gens[j]
            for prod in (u * v, v * u):
                prod = prod.truncate(L)
                if prod and ech.add(prod.terms):
                    gens.append(prod)
        i += 1
    return SubalgebraSpan.explicit(quiver, [AlgebraElement(alg, r) for r in ech.basis()], L)


def generated_subalgebra(e: EnvelopingQuiverAction, L: int = DEFAULT_WINDOW) -> SubalgebraSpan:
    """The subalgebra generated by all beta_g(K Gamma), inside the window."""
    return multiplicative_closure(e.quiver, sum_of_translates(e, L).elements, L)


def check_algebra_globalization(e: EnvelopingQuiverAction, L: int = DEFAULT_WINDOW) -> ValidationReport:
    """Check that (KQ, beta) globalizes the induced action on K Gamma within the window.

    Clauses: ``i`` the embedding is an injective algebra map on window
    paths; ``ii`` the translates generate the whole window; ``iii`` each
    D_g = beta_g(K Gamma) & K Gamma is spanned by the paths of
    beta_g(Gamma) & Gamma and contains its own unit; ``iv`` restricting beta
    to K Gamma gives the induced partial action.
    """
    rep = ValidationReport("algebra globalization", ("i", "ii", "iii", "iv"), window=L)
    G, gamma, Q = e.global_action.group, e.original.quiver, e.quiver
    i = e.embedding
    base = enumerate_paths(gamma, L)
    image = {p: map_path(p, i) for p in base}
    if len(set(image.values())) != len(image):
        rep.add("i", "embedding is not injective on window paths")
    for p, r in product(base, repeat=2):
        if p.length + r.length > L:
            continue
        pr = p * r
        ip, ir = image[p], image[r]
        lhs = image[pr] if pr is not None else None
        if lhs != ip * ir:
            rep.add("i", "embedding is not multiplicative", str(p), str(r))

    gen = generated_subalgebra(e, L)
    total = truncated_dimension(Q, L)
    rep.notes["sum_dimension"] = sum_of_translates(e, L).dimension()
    rep.notes["generated_dimension"] = gen.dimension()
    rep.notes["window_dimension"] = total
    if gen.dimension() != total:
        rep.add("ii", "translates do not generate the window", gen.dimension(), total)

    embedded = i.image()
    home = [{image[p]: 1} for p in base]
    unital = {}
    for g in G:
        moved = [{p: 1} for p in _translate_paths(e, g, L)]
        meet = span_intersection(moved, home, key=_key)
        sub = e.global_action.translate(g, embedded) & embedded
        expected = SubalgebraSpan.from_subquiver(sub)
        if not meet.same_span(expected.echelon(L)):
            rep.add("iii", "D_g is not spanned by the paths of beta_g(Gamma) & Gamma", g)
        alg = PathAlgebra(Q)
        unit = alg.element({Path(v, v): 1 for v in sub.vertices})
        ok = unit.terms in meet if sub.vertices else not meet.rank
        for row in meet.basis():
            x = AlgebraElement(alg, row)
            if unit * x != x or x * unit != x:
                ok = False
        unital[g] = ok
        if not ok:
            rep.add("iii", "D_g does not contain its own identity", g)
    rep.notes["unital"] = unital

    restricted = restrict_along(e)
    induced = induced_partial_action(e.original)
    for g in G:
        rd, ind = restricted.domain(g), induced.domain(g)
        if rd.vertices != ind.vertices or rd.arrows != ind.arrows:
            rep.add("iv", "domain of the restriction differs from the induced domain", g)
            continue
        for p in induced.domain(G.inv(g)).paths(L):
            moved = map_path(image[p], e.global_action[g])
            back = induced.map_path(g, p)
            if {map_path(r, i): c for r, c in back.terms.items()} != {moved: 1}:
                rep.add("iv", "beta_g differs from alpha_g on a window path", g, str(p))
    return rep


def canonical_algebra_isomorphism(
    e1: EnvelopingQuiverAction, e2: EnvelopingQuiverAction, L: int = DEFAULT_WINDOW
) -> dict:
    """The map KQ -> KQ' determined by beta_g(i(x)) -> beta'_g(i'(x)), on window paths.

    Vertices and arrows are sent through that rule (checked to be independent
    of the chosen g and x) and paths arrow by arrow. Raises
    :class:`IsomorphismError` unless the result is a multiplicative
    bijection between the two windows that agrees with the rule on every
    translate of a Gamma path.
    """
    if e1.original.quiver != e2.original.quiver:
        raise IsomorphismError("enveloping data for different quivers")
    G, gamma = e1.global_action.group, e1.original.quiver
    vmap, amap = {}, {}
    for g in G:
        b1, b2 = e1.global_action[g], e2.global_action[g]
        for v in gamma.vertices:
            x, y = b1.vertex_map[e1.embedding.vertex_map[v]], b2.vertex_map[e2.embedding.vertex_map[v]]
            if vmap.setdefault(x, y) != y:
                raise IsomorphismError(f"eta is not well defined at vertex {x}")
        for a in gamma.arrow_names:
            x, y = b1.arrow_map[e1.embedding.arrow_map[a]], b2.arrow_map[e2.embedding.arrow_map[a]]
            if amap.setdefault(x, y) != y:
                raise IsomorphismError(f"eta is not well defined at arrow {x}")
    Q1, Q2 = e1.quiver, e2.quiver
    if set(vmap) != set(Q1.vertices) or set(amap) != set(Q1.arrow_names):
        raise IsomorphismError("translates of Gamma do not cover the quiver")
    eta = {}
    for p in enumerate_paths(Q1, L):
        try:
            img = Path(vmap[p.source], vmap[p.target], tuple(amap[a] for a in p.arrows))
        except KeyError as exc:
            raise IsomorphismError(f"eta undefined on {exc.args[0]}") from None
        eta[p] = img
    target = enumerate_paths(Q2, L)
    if set(eta.values()) != set(target) or len(set(eta.values())) != len(eta):
        raise IsomorphismError("eta is not a bijection between the windows")
    for p, r in product(eta, repeat=2):
        if p.length + r.length > L:
            continue
        pr = p * r
        if (eta[pr] if pr is not None else None) != eta[p] * eta[r]:
            raise IsomorphismError(f"eta is not multiplicative at {p}, {r}")
    for g in G:
        for p in enumerate_paths(gamma, L):
            src = map_path(map_path(p, e1.embedding), e1.global_action[g])
            dst = map_path(map_path(p, e2.embedding), e2.global_action[g])
            if eta[src] != dst:
                raise IsomorphismError(f"eta disagrees with the translate rule at {src}")
    return eta
