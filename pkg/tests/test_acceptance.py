"""Acceptance criteria, one test each.

The terminal summary prints a PASS/FAIL line per criterion (see conftest).
"""

import random
import time
from dataclasses import replace

import pytest

from quiveract.dsl import parse_instance
from quiveract.linalg import Echelon
from quiveract.pathalg import (
    AlgebraPartialAction,
    PathAlgebra,
    canonical_algebra_isomorphism,
    check_not_ideal,
    check_subalgebra_partial_action,
    enumerate_paths,
    generated_subalgebra,
    induced_partial_action,
    sum_of_translates,
    truncated_dimension,
)
from quiveract.quiver import is_isomorphism
from quiveract.quiver_paction import (
    WellDefinednessError,
    check_enveloping,
    check_quiver_partial_action,
    envelope_quiver_action,
    enveloping_isomorphism,
    orbit_subaction,
    partial_action_differences,
    restrict_along,
)

from conftest import FIXTURES
from instances import random_restriction
from oracles import closure_partition, relation_pairs

criterion = pytest.mark.criterion


def _ordered_cycle(q):
    """Vertices of q in cycle order if q is a single directed cycle, else None."""
    out = {}
    for a in q.arrows:
        if a.source in out:
            return None
        out[a.source] = a.target
    if len(out) != len(q.vertices) or len(q.arrows) != len(q.vertices):
        return None
    start = q.vertices[0]
    cyc, v = [start], out[start]
    while v != start:
        cyc.append(v)
        v = out[v]
    return cyc if len(cyc) == len(q.vertices) else None


@criterion("Arrow quiver envelope: 3 vertices, 3 arrows, one directed 3-cycle, all enveloping clauses, < 1 s")
def test_arrow_envelope_end_to_end():
    start = time.perf_counter()
    a = parse_instance((FIXTURES / "arrow3.qv").read_text()).subject_partial_action()
    env = envelope_quiver_action(a)
    rep = check_enveloping(env)
    elapsed = time.perf_counter() - start
    Q = env.quiver
    assert len(Q.vertices) == 3 and len(Q.arrows) == 3
    assert _ordered_cycle(Q) is not None
    assert set(Q.vertices) == {"(e,v1)", "(e,v2)", "(t,v1)"}
    assert env.embedding.vertex_map == {"v1": "(e,v1)", "v2": "(e,v2)"}
    assert rep.ok and set(rep.clauses) >= {"a", "b", "c", "d"}
    assert elapsed < 1.0


@criterion("Cycle restriction: exact domains and maps of the restricted C4 rotation")
def test_cycle_restriction():
    a = parse_instance((FIXTURES / "cycle4.qv").read_text()).subject_partial_action()
    expected = {
        "e": ({"1", "2", "3"}, {"a", "b"}),
        "t": ({"2", "3"}, {"b"}),
        "t2": ({"1", "3"}, set()),
        "t3": ({"1", "2"}, {"a"}),
    }
    for g, (vs, arrs) in expected.items():
        assert set(a.domain(g).vertices) == vs
        assert set(a.domain(g).arrows) == arrs
    assert a.arrow_maps["t"] == {"a": "b"}
    assert a.arrow_maps["t3"] == {"b": "a"}
    assert a.arrow_maps["t2"] == {}
    assert a.vertex_maps["t"] == {"1": "2", "2": "3"}
    assert a.vertex_maps["t2"] == {"1": "3", "3": "1"}
    assert a.vertex_maps["t3"] == {"2": "1", "3": "2"}
    assert check_quiver_partial_action(a).ok


@criterion("Cycle algebra claim: at L=3 sum of translates has dim 12 = paths of length <= 2, generated dim 16, < 5 s")
def test_cycle_algebra_claim():
    start = time.perf_counter()
    a = parse_instance((FIXTURES / "cycle4.qv").read_text()).subject_partial_action()
    env = envelope_quiver_action(a)
    total = sum_of_translates(env, 3)
    gen = generated_subalgebra(env, 3)
    short = Echelon(({p: 1} for p in enumerate_paths(env.quiver, 2)), key=lambda p: p.sort_key())
    elapsed = time.perf_counter() - start
    assert total.dimension() == 12
    assert total.echelon().same_span(short)
    assert gen.dimension() == 16 == truncated_dimension(env.quiver, 3)
    assert elapsed < 5.0


@criterion("Arrow quiver non-ideal claim: witnesses for span{e_v1} and span{e_v2} at L=1")
def test_arrow_not_ideal():
    a = parse_instance((FIXTURES / "arrow3.qv").read_text()).subject_partial_action()
    ia = induced_partial_action(a)
    for g, v in (("t", "v1"), ("t2", "v2")):
        dom = ia.domain(g)
        assert dom.paths(1) == enumerate_paths(a.quiver.subquiver([v]).as_quiver(), 1)
        w = check_not_ideal(dom, 1)
        assert w is not None
        assert w.left * w.right == w.product
        assert not dom.contains_path(w.product)
        assert dom.contains_path(w.left) or dom.contains_path(w.right)


def _quotient_matches_oracle(env, a, sort):
    G = a.group
    beta, i = env.global_action, env.embedding
    if sort == "vertex":
        carrier = list(a.quiver.vertices)
        domains = {g: a.domain(g).vertices for g in G}
        maps, emb, act = a.vertex_maps, i.vertex_map, lambda g, y: beta[g].vertex_map[y]
        size = len(env.quiver.vertices)
    else:
        carrier = list(a.quiver.arrow_names)
        domains = {g: a.domain(g).arrows for g in G}
        maps, emb, act = a.arrow_maps, i.arrow_map, lambda g, y: beta[g].arrow_map[y]
        size = len(env.quiver.arrows)
    points = [(g, x) for g in G for x in carrier]
    expected = closure_partition(points, relation_pairs(G, carrier, domains, maps))
    produced = {}
    for g, x in points:
        produced.setdefault(act(g, emb[x]), set()).add((g, x))
    return {frozenset(c) for c in produced.values()} == expected and len(expected) == size


@criterion("Property suite: 200 random instances satisfy (a)-(e) with zero failures")
def test_property_suite():
    failures = []
    for seed in range(200):
        b, s, a = random_restriction(random.Random(seed))
        if not check_quiver_partial_action(a).ok:
            failures.append((seed, "a"))
            continue
        try:
            env = envelope_quiver_action(a)
        except WellDefinednessError:
            failures.append((seed, "d"))
            continue
        if partial_action_differences(restrict_along(env), a):
            failures.append((seed, "b"))
        try:
            if not is_isomorphism(enveloping_isomorphism(env, orbit_subaction(b, s))):
                failures.append((seed, "c"))
        except ValueError:
            failures.append((seed, "c"))
        for sort in ("vertex", "arrow"):
            if not _quotient_matches_oracle(env, a, sort):
                failures.append((seed, "e", sort))
    assert failures == []


def _mutate(ia: AlgebraPartialAction, rng):
    """One perturbed domain or map, chosen so that some axiom must break."""
    G, q = ia.group, ia.quiver
    doms = dict(ia.domains)
    vmaps = {g: dict(m) for g, m in ia.vertex_maps.items()}
    amaps = {g: dict(m) for g, m in ia.arrow_maps.items()}
    options = []
    for g in G:
        d = ia.domain(g)
        d_inv = ia.domain(G.inv(g))
        involution = G.inv(g) == g
        for sort, members, universe, m in (
            ("vertices", d.vertices, q.vertices, vmaps),
            ("arrows", d.arrows, q.arrow_names, amaps),
        ):
            if g == G.identity:
                for x in members:
                    options.append(("shrink R_e", g, sort, x))
                continue
            if not involution:
                options += [("drop", g, sort, x) for x in members]
                options += [("add", g, sort, y) for y in universe if y not in members]
            src = sorted(d_inv.vertices if sort == "vertices" else d_inv.arrows)
            options += [("collide", g, sort, (x, y)) for x in src for y in src if x != y]
            options += [("escape", g, sort, (x, z)) for x in src for z in universe if z not in members]
    kind, g, sort, arg = rng.choice(options)
    d = ia.domain(g)
    if kind in ("drop", "shrink R_e"):
        doms[g] = replace(d, **{sort: getattr(d, sort) - {arg}})
    elif kind == "add":
        doms[g] = replace(d, **{sort: getattr(d, sort) | {arg}})
    else:
        m = (vmaps if sort == "vertices" else amaps)[g]
        x, y = arg
        m[x] = m[y] if kind == "collide" else y
    return kind, AlgebraPartialAction(G, q, doms, vmaps, amaps)


@criterion("Subalgebra checker soundness: random induced actions pass at L=4, 50 mutants each fail with a witness")
def test_subalgebra_checker_soundness():
    rng = random.Random(2024)
    induced = []
    for seed in range(60):
        _, _, a = random_restriction(random.Random(10_000 + seed))
        ia = induced_partial_action(a)
        rep = check_subalgebra_partial_action(ia, 4)
        assert rep.ok, (seed, str(rep))
        induced.append(ia)
    # an empty subquiver leaves nothing to perturb
    targets = [ia for ia in induced if ia.quiver.vertices]
    kinds = set()
    for n in range(50):
        kind, mutant = _mutate(targets[n % len(targets)], rng)
        kinds.add(kind)
        rep = check_subalgebra_partial_action(mutant, 4)
        assert not rep.ok, (n, kind)
        assert all(v.witness for v in rep.violations), (n, kind)
    assert len(kinds) >= 3


@criterion("Uniqueness: 20 shuffled envelopes are isomorphic, canonical algebra isomorphism at L=3")
def test_uniqueness():
    for seed in range(20):
        _, _, a = random_restriction(random.Random(20_000 + seed))
        e1 = envelope_quiver_action(a)
        e2 = envelope_quiver_action(a, rng=random.Random(seed))
        phi = enveloping_isomorphism(e1, e2)
        assert is_isomorphism(phi)
        eta = canonical_algebra_isomorphism(e1, e2, 3)
        window = enumerate_paths(e1.quiver, 3)
        assert set(eta) == set(window)
        assert len(set(eta.values())) == len(window) == truncated_dimension(e2.quiver, 3)
        A2 = PathAlgebra(e2.quiver)
        for p in window:
            for r in window:
                pr = p * r
                if pr is not None and pr.length <= 3:
                    assert A2.basis_element(eta[p]) * A2.basis_element(eta[r]) == A2.basis_element(eta[pr])
                elif pr is None:
                    assert A2.basis_element(eta[p]) * A2.basis_element(eta[r]) == A2.zero()
