"""Finite groups presented by explicit Cayley tables."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .report import ValidationReport

DEFAULT_SIZE_CAP = 10_000


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group with elements named by strings.

    ``mul_table[a, b]`` is the product ``a*b``; ``inv_table[a]`` the inverse.
    Instances are never mutated after construction.
    """

    elements: tuple[str, ...]
    mul_table: dict = field(repr=False)
    identity: str
    inv_table: dict = field(repr=False)
    name: str = field(default="G", compare=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.inv_table

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a, b):
        try:
            return self.mul_table[a, b]
        except KeyError:
            raise GroupError(f"unknown group element in product {a!r}*{b!r}") from None

    def inv(self, a):
        try:
            return self.inv_table[a]
        except KeyError:
            raise GroupError(f"unknown group element {a!r}") from None

    def prod(self, *elts):
        out = self.identity
        for g in elts:
            out = self.mul(out, g)
        return out

    def index(self, a) -> int:
        return self.elements.index(a)

    def element_order(self, a) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def generated_by(self, gens) -> set:
        """Elements of the subgroup generated by ``gens``."""
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            h = queue.popleft()
            for s in gens:
                x = self.mul(s, h)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen

    def subgroups(self) -> list[frozenset]:
        """All subgroups, found as closures of at most two elements.

        Every group of order < 8 is 2-generated, which is the regime this is
        used in; larger groups may miss some subgroups.
        """
        found = {}
        for a in self.elements:
            for b in self.elements:
                h = frozenset(self.generated_by([a, b]))
                found.setdefault(h, None)
        return sorted(found, key=lambda h: (len(h), sorted(map(self.index, h))))

    def generating_set(self) -> list[str]:
        """A small generating set chosen greedily in element order."""
        gens, span = [], {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = self.generated_by(gens)
        return gens


def mul(g: FiniteGroup, a, b):
    return g.mul(a, b)


def inv(g: FiniteGroup, a):
    return g.inv(a)


def cyclic_name(k: int) -> str:
    if k == 0:
        return "e"
    return "t" if k == 1 else f"t{k}"


def make_cyclic(n: int) -> FiniteGroup:
    """The cyclic group of order ``n`` with elements ``e, t, t2, ..., t{n-1}``."""
    if not isinstance(n, int) or n < 1:
        raise GroupError(f"cyclic group order must be a positive integer, got {n!r}")
    names = [cyclic_name(k) for k in range(n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    inverses = {names[i]: names[-i % n] for i in range(n)}
    return FiniteGroup(tuple(names), table, "e", inverses, name=f"C{n}")


def from_table(elements, table, name="G") -> FiniteGroup:
    """Build a group from a table given as ``{(a, b): a*b}`` or as rows.

    ``table`` may also be a list of rows, ``table[i][j] = elements[i]*elements[j]``.
    The identity and inverses are read off the table; if the table has no
    identity, the first element is used and :func:`validate_group` will say so.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise GroupError("duplicate group element names")
    if not isinstance(table, dict):
        table = {
            (a, b): table[i][j]
            for i, a in enumerate(elements)
            for j, b in enumerate(elements)
        }
    identity = elements[0] if elements else None
    for x in elements:
        if all(table.get((x, y)) == y and table.get((y, x)) == y for y in elements):
            identity = x
            break
    inverses = {}
    for x in elements:
        for y in elements:
            if table.get((x, y)) == identity and table.get((y, x)) == identity:
                inverses[x] = y
                break
        else:
            inverses[x] = x
    return FiniteGroup(elements, dict(table), identity, inverses, name=name)


def validate_group(g: FiniteGroup) -> ValidationReport:
    rep = ValidationReport(f"group {g.name}", ("closure", "associativity", "identity", "inverse"))
    elts = set(g.elements)
    if not g.elements:
        rep.add("identity", "a group has at least one element")
        return rep
    closed = True
    for a, b in product(g.elements, repeat=2):
        ab = g.mul_table.get((a, b))
        if ab not in elts:
            rep.add("closure", "product missing or outside the element list", a, b, ab)
            closed = False
    if closed:
        for a, b, c in product(g.elements, repeat=3):
            left = g.mul_table[g.mul_table[a, b], c]
            right = g.mul_table[a, g.mul_table[b, c]]
            if left != right:
                rep.add("associativity", "(ab)c != a(bc)", a, b, c)
    e = g.identity
    for a in g.elements:
        if g.mul_table.get((e, a)) != a or g.mul_table.get((a, e)) != a:
            rep.add("identity", f"{e!r} is not neutral for this element", a)
        b = g.inv_table.get(a)
        if g.mul_table.get((a, b)) != e or g.mul_table.get((b, a)) != e:
            rep.add("inverse", "inv_table entry is not a two-sided inverse", a, b)
    return rep


def _compose_perm(p, q):
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def from_permutations(generators: dict, size_cap: int = DEFAULT_SIZE_CAP, name="G") -> FiniteGroup:
    """Close a set of named permutations (tuples of images of 0..n-1) into a group.

    Elements are named by the shortest generator word found breadth-first,
    written left to right as the product, joined with ``.``; the identity is ``e``.
    Products read right to left as maps: ``a.b`` applies ``b`` first.
    """
    gens = list(generators.items())
    if not gens:
        raise GroupError("at least one generator is required")
    degree = len(gens[0][1])
    for gname, p in gens:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise GroupError(f"generator {gname!r} is not a permutation of 0..{degree - 1}")
        if gname == "e":
            raise GroupError("'e' is reserved for the identity")
    ident = tuple(range(degree))
    names = {ident: "e"}
    order = [ident]
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for gname, s in gens:
            q = _compose_perm(p, s)
            if q not in names:
                if len(names) >= size_cap:
                    raise GroupError(f"generated group exceeds the size cap of {size_cap}")
                names[q] = gname if p == ident else f"{names[p]}.{gname}"
                order.append(q)
                queue.append(q)
    table = {(names[p], names[q]): names[_compose_perm(p, q)] for p in order for q in order}
    inverses = {}
    for p in order:
        pinv = [0] * degree
        for i, j in enumerate(p):
            pinv[j] = i
        inverses[names[p]] = names[tuple(pinv)]
    return FiniteGroup(tuple(names[p] for p in order), table, "e", inverses, name=name)
