"""Partial and global actions of a finite group on a finite set.

The globalization is the usual quotient of ``G x X`` by

    (g, x) ~ (h, y)  iff  x in X_{g^-1 h}  and  alpha_{h^-1 g}(x) = y,

with ``G`` acting by left multiplication on the first coordinate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Hashable, NamedTuple

from scipy.cluster.hierarchy import DisjointSet

from .group import FiniteGroup
from .report import ValidationReport


class InvalidActionError(ValueError):
    """Raised when a construction needs a valid action and did not get one."""

    def __init__(self, message, report: ValidationReport | None = None):
        super().__init__(message if report is None else f"{message}\n{report}")
        self.report = report


@dataclass(frozen=True)
class SetPartialAction:
    """``domains[g]`` is X_g; ``maps[g]`` is alpha_g as a dict X_{g^-1} -> X_g."""

    group: FiniteGroup
    carrier: tuple
    domains: dict
    maps: dict

    def domain(self, g) -> frozenset:
        return self.domains.get(g, frozenset())

    def apply(self, g, x):
        return self.maps[g][x]


@dataclass(frozen=True)
class GlobalSetAction:
    group: FiniteGroup
    carrier: tuple
    action: dict  # (g, y) -> g.y

    def apply(self, g, y):
        return self.action[g, y]

    def image(self, g, subset) -> frozenset:
        return frozenset(self.action[g, y] for y in subset)

    def as_partial(self) -> SetPartialAction:
        full = frozenset(self.carrier)
        return SetPartialAction(
            self.group,
            self.carrier,
            {g: full for g in self.group},
            {g: {y: self.action[g, y] for y in self.carrier} for g in self.group},
        )


class Globalization(NamedTuple):
    action: GlobalSetAction
    embedding: dict  # x -> class name of (e, x)
    classes: dict  # class name -> tuple of (g, x) members in G x X order


def _ordered(a, subset):
    pos = {x: i for i, x in enumerate(a.carrier)}
    return sorted(subset, key=lambda x: (pos.get(x, len(pos)), repr(x)))


def check_partial_set_action(a: SetPartialAction) -> ValidationReport:
    """Check the partial-action axioms, collecting every failing instance.

    Clauses: ``carrier`` (domains inside X), ``i`` (X_e = X, alpha_e = id),
    ``bijection`` (alpha_g is a bijection X_{g^-1} -> X_g), ``ii`` and ``iii``.
    """
    G = a.group
    rep = ValidationReport("set partial action", ("carrier", "i", "bijection", "ii", "iii"))
    X = frozenset(a.carrier)
    e = G.identity
    for g in G:
        extra = a.domain(g) - X
        if extra:
            rep.add("carrier", "domain not contained in the carrier", g, set(extra))
    if a.domain(e) != X:
        rep.add("i", "X_e differs from X", e, set(X ^ a.domain(e)))
    for x, y in a.maps.get(e, {}).items():
        if x != y:
            rep.add("i", "alpha_e is not the identity", x, y)

    def image(g, subset):
        m = a.maps.get(g, {})
        return frozenset(m[x] for x in subset if x in m)

    for g in G:
        src, tgt = a.domain(G.inv(g)), a.domain(g)
        m = a.maps.get(g, {})
        for x in sorted(src - m.keys(), key=repr):
            rep.add("bijection", "alpha_g undefined on X_{g^-1}", g, x)
        for x in sorted(m.keys() - src, key=repr):
            rep.add("bijection", "alpha_g defined outside X_{g^-1}", g, x)
        for x in sorted(src & m.keys(), key=repr):
            if m[x] not in tgt:
                rep.add("bijection", "alpha_g(x) lies outside X_g", g, x, m[x])
        vals = [m[x] for x in src if x in m]
        if len(set(vals)) != len(vals):
            rep.add("bijection", "alpha_g is not injective", g)
        if image(g, src) != tgt and all(v in tgt for v in vals):
            rep.add("bijection", "alpha_g is not onto X_g", g, set(tgt - image(g, src)))

    for g, h in product(G, repeat=2):
        lhs = image(g, a.domain(G.inv(g)) & a.domain(h))
        rhs = a.domain(g) & a.domain(G.mul(g, h))
        if lhs != rhs:
            rep.add("ii", "alpha_g(X_{g^-1} & X_h) != X_g & X_gh", g, h, set(lhs ^ rhs))

    for g, h in product(G, repeat=2):
        gh = G.mul(g, h)
        hinv = G.inv(h)
        m_h, m_g, m_gh = a.maps.get(h, {}), a.maps.get(g, {}), a.maps.get(gh, {})
        # x ranges over alpha_{h^-1}(X_h & X_{g^-1})
        for y in _ordered(a, a.domain(h) & a.domain(G.inv(g))):
            x = a.maps.get(hinv, {}).get(y)
            if x is None:
                continue  # reported under bijection
            if x not in m_h or m_h[x] not in m_g:
                rep.add("iii", "alpha_g(alpha_h(x)) undefined", g, h, x)
            elif x not in m_gh:
                rep.add("iii", "alpha_gh(x) undefined", g, h, x)
            elif m_g[m_h[x]] != m_gh[x]:
                rep.add("iii", "alpha_g(alpha_h(x)) != alpha_gh(x)", g, h, x)
    return rep


def check_global_set_action(b: GlobalSetAction) -> ValidationReport:
    G = b.group
    rep = ValidationReport("global set action", ("total", "identity", "bijection", "hom"))
    Y = b.carrier
    Yset = frozenset(Y)
    for g, y in product(G, Y):
        if (g, y) not in b.action or b.action[g, y] not in Yset:
            rep.add("total", "action undefined or leaves the carrier", g, y)
    if not rep.ok:
        return rep
    for y in Y:
        if b.action[G.identity, y] != y:
            rep.add("identity", "identity element moves a point", y)
    for g in G:
        if len(b.image(g, Y)) != len(Y):
            rep.add("bijection", "beta_g is not a bijection", g)
    for g, h, y in product(G, G, Y):
        if b.action[g, b.action[h, y]] != b.action[G.mul(g, h), y]:
            rep.add("hom", "beta_g(beta_h(y)) != beta_gh(y)", g, h, y)
    return rep


def restrict_set_action(b: GlobalSetAction, s) -> SetPartialAction:
    """The partial action on ``s`` with X_g = beta_g(s) & s."""
    s = frozenset(s)
    bad = s - frozenset(b.carrier)
    if bad:
        raise ValueError(f"elements not in the carrier: {sorted(map(repr, bad))}")
    G = b.group
    carrier = tuple(y for y in b.carrier if y in s)
    domains = {g: b.image(g, s) & s for g in G}
    maps = {g: {y: b.action[g, y] for y in domains[G.inv(g)]} for g in G}
    return SetPartialAction(G, carrier, domains, maps)


def related(a: SetPartialAction, p, q) -> bool:
    """Whether (g, x) ~ (h, y) holds directly, without closure."""
    G = a.group
    (g, x), (h, y) = p, q
    if x not in a.domain(G.mul(G.inv(g), h)):
        return False
    return a.maps.get(G.mul(G.inv(h), g), {}).get(x) == y


def globalize_set_action(a: SetPartialAction, rng: random.Random | None = None) -> Globalization:
    """Construct the enveloping global action of ``a``.

    Classes are named by their least member in (group order, carrier order).
    Passing ``rng`` shuffles the merge order and names each class by an
    arbitrary member instead, giving an independently labelled but
    isomorphic result.
    """
    report = check_partial_set_action(a)
    if not report.ok:
        raise InvalidActionError("cannot globalize an invalid partial action", report)
    G = a.group
    pairs = [(g, x) for g in G for x in a.carrier]
    dsu = DisjointSet(pairs)
    merges = []
    for g, h in product(G, repeat=2):
        k, kk = G.mul(G.inv(g), h), G.mul(G.inv(h), g)
        for x in _ordered(a, a.domain(k)):
            merges.append(((g, x), (h, a.maps[kk][x])))
    if rng is not None:
        rng.shuffle(merges)
    for p, q in merges:
        dsu.merge(p, q)

    position = {p: i for i, p in enumerate(pairs)}
    roots = {}
    for p in pairs:
        roots.setdefault(dsu[p], []).append(p)
    classes = {}
    for members in roots.values():
        members.sort(key=position.__getitem__)
        for p in members:
            for q in members:
                if not related(a, p, q):
                    raise InvalidActionError(
                        f"orbit relation is not an equivalence: {p} ~* {q} but not {p} ~ {q}"
                    )
        name = members[0] if rng is None else rng.choice(members)
        classes[name] = tuple(members)

    order = sorted(classes, key=lambda c: position[classes[c][0]])
    if rng is not None:
        rng.shuffle(order)
    cls_of = {p: c for c, members in classes.items() for p in members}
    action = {
        (g, c): cls_of[G.mul(g, classes[c][0][0]), classes[c][0][1]]
        for g in G
        for c in order
    }
    embedding = {x: cls_of[G.identity, x] for x in a.carrier}
    return Globalization(
        GlobalSetAction(G, tuple(order), action),
        embedding,
        {c: classes[c] for c in order},
    )
