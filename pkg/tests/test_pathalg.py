import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiveract.group import make_cyclic
from quiveract.linalg import Echelon, span_intersection
from quiveract.pathalg import (
    AlgebraMismatchError,
    AlgebraPartialAction,
    IsomorphismError,
    Path,
    PathAlgebra,
    SubalgebraSpan,
    canonical_algebra_isomorphism,
    check_algebra_globalization,
    check_not_ideal,
    check_subalgebra_partial_action,
    enumerate_paths,
    generated_subalgebra,
    induced_partial_action,
    make_path,
    multiply,
    sum_of_translates,
    truncated_dimension,
)
from quiveract.quiver import Quiver
from quiveract.quiver_paction import (
    as_enveloping,
    envelope_quiver_action,
    make_partial_action,
    relabel,
)

from instances import random_closed_subquiver, random_global_quiver_action, random_restriction
from oracles import count_paths


def _key(p):
    return p.sort_key()


def test_idempotents(cycle4):
    A = PathAlgebra(cycle4)
    assert A.e("1") * A.e("1") == A.e("1")
    assert A.e("1") * A.e("2") == 0


def test_concatenation(cycle4):
    A = PathAlgebra(cycle4)
    ba = A.arrow("b") * A.arrow("a")
    (p,) = ba.support
    assert p.length == 2 and (p.source, p.target) == ("1", "3")
    assert ba == A.path("b", "a")
    assert A.arrow("a") * A.arrow("b") == 0


def test_unit_laws_example(cycle4):
    A = PathAlgebra(cycle4)
    x = 2 * A.arrow("a") + 3 * A.e("1")
    assert multiply(x, A.e("1")) == x
    assert A.e("2") * A.arrow("a") == A.arrow("a")


def test_mixed_algebras(cycle4, arrow_quiver):
    with pytest.raises(AlgebraMismatchError):
        PathAlgebra(cycle4).e("1") * PathAlgebra(arrow_quiver).e("v1")


def test_make_path_rejects(cycle4):
    with pytest.raises(ValueError):
        make_path(cycle4, "a", "b")


@pytest.mark.parametrize(
    "vertices, arrows, L, expected",
    [
        (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")], 0, 4),
        (["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")], 3, 16),
        (["1", "2", "3"], [("x", "1", "2"), ("y", "2", "3")], 9, 6),
    ],
)
def test_path_counts(vertices, arrows, L, expected):
    q = Quiver.build(vertices, arrows)
    assert count_paths(vertices, arrows, L) == expected
    assert truncated_dimension(q, L) == expected
    paths = enumerate_paths(q, L)
    assert len(set(paths)) == len(paths)
    assert [p.length for p in paths] == sorted(p.length for p in paths)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_path_counts_random(seed, L):
    q = random_global_quiver_action(random.Random(seed)).quiver
    assert truncated_dimension(q, L) == count_paths(
        list(q.vertices), [(a.name, a.source, a.target) for a in q.arrows], L
    )


LOOPY = Quiver.build(["u", "v"], [("x", "u", "v"), ("y", "u", "v"), ("l", "v", "v"), ("z", "v", "u")])


def _elements(q, L=3):
    basis = enumerate_paths(q, L)
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=3)
    return st.dictionaries(st.sampled_from(basis), coeffs, max_size=5).map(
        lambda d: PathAlgebra(q).element(d)
    )


@settings(max_examples=80, deadline=None)
@given(_elements(LOOPY), _elements(LOOPY), _elements(LOOPY))
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    one = PathAlgebra(LOOPY).one()
    assert one * x == x == x * one


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_intersection_of_path_spans(seed, L):
    rng = random.Random(seed)
    q = random_global_quiver_action(rng).quiver
    s, t = random_closed_subquiver(rng, q), random_closed_subquiver(rng, q)
    S, T = SubalgebraSpan.from_subquiver(s), SubalgebraSpan.from_subquiver(t)
    meet = span_intersection(
        [{p: 1} for p in S.paths(L)], [{p: 1} for p in T.paths(L)], key=_key
    )
    assert meet.same_span(SubalgebraSpan.from_subquiver(s & t).echelon(L))


def test_induced_arrow(arrow_action):
    ia = induced_partial_action(arrow_action)
    assert ia.domain("t").paths(5) == [Path("v1", "v1")]
    assert ia.domain("t2").paths(5) == [Path("v2", "v2")]
    A = ia.algebra
    assert ia.apply("t", A.e("v2")) == A.e("v1")
    assert ia.domain("e").paths(1) == enumerate_paths(arrow_action.quiver, 1)


def test_induced_cycle(restricted_rotation):
    ia = induced_partial_action(restricted_rotation)
    assert {str(p) for p in ia.domain("t").paths(4)} == {"e_2", "e_3", "b"}
    A = ia.algebra
    assert ia.apply("e", A.path("b", "a")) == A.path("b", "a")


@pytest.mark.parametrize("L", [0, 1, 2, 5])
def test_subalgebra_axioms_arrow(arrow_action, L):
    assert check_subalgebra_partial_action(induced_partial_action(arrow_action), L).ok


def test_subalgebra_axioms_cycle(restricted_rotation):
    assert check_subalgebra_partial_action(induced_partial_action(restricted_rotation), 4).ok


def test_hand_built_bad_action(arrow_action):
    ia = induced_partial_action(arrow_action)
    q = ia.quiver
    domains = dict(ia.domains)
    domains["t"] = SubalgebraSpan(q, frozenset({"v1"}), frozenset({"f"}))
    bad = AlgebraPartialAction(ia.group, q, domains, ia.vertex_maps, ia.arrow_maps)
    rep = check_subalgebra_partial_action(bad, 3)
    assert rep.failed("ii")
    assert all(v.witness for v in rep.failed("ii"))


def test_not_ideal_arrow(arrow_action):
    ia = induced_partial_action(arrow_action)
    w1 = check_not_ideal(ia.domain("t"), 1)
    assert (str(w1.left), str(w1.right), str(w1.product)) == ("f", "e_v1", "f")
    w2 = check_not_ideal(ia.domain("t2"), 1)
    assert (str(w2.left), str(w2.right), str(w2.product)) == ("e_v2", "f", "f")
    assert check_not_ideal(ia.domain("e"), 3) is None


def test_not_ideal_explicit(arrow_action):
    A = PathAlgebra(arrow_action.quiver)
    s = SubalgebraSpan.explicit(arrow_action.quiver, [A.e("v1") + A.e("v2")], 2)
    w = check_not_ideal(s, 2)
    assert w is not None


def test_sum_and_generated_cycle(restricted_rotation):
    env = envelope_quiver_action(restricted_rotation)
    total = sum_of_translates(env, 3)
    gen = generated_subalgebra(env, 3)
    assert total.dimension() == 12
    short = Echelon(({p: 1} for p in enumerate_paths(env.quiver, 2)), key=_key)
    assert total.echelon().same_span(short)
    assert gen.dimension() == 16 == truncated_dimension(env.quiver, 3)


def test_trivial_group_sum_equals_generated(cycle4):
    a = make_partial_action(make_cyclic(1), cycle4, {})
    env = envelope_quiver_action(a)
    for L in range(4):
        assert sum_of_translates(env, L).dimension() == generated_subalgebra(env, L).dimension()
        assert sum_of_translates(env, L).dimension() == truncated_dimension(cycle4, L)
    rep = check_algebra_globalization(env, 3)
    assert rep.ok and rep.notes["unital"] == {"e": True}


def test_globalization_arrow(arrow_action):
    rep = check_algebra_globalization(envelope_quiver_action(arrow_action), 6)
    assert rep.ok, str(rep)


def test_globalization_cycle(restricted_rotation):
    env = envelope_quiver_action(restricted_rotation)
    rep = check_algebra_globalization(env, 3)
    assert rep.ok, str(rep)
    assert rep.notes["sum_dimension"] < rep.notes["generated_dimension"] == rep.notes["window_dimension"]


def test_globalization_detects_missing_generation(rotation, cycle4):
    # pairing the rotation with a single vertex: translates cover vertices only
    env = as_enveloping(rotation, cycle4.subquiver(["1"]))
    rep = check_algebra_globalization(env, 2)
    assert rep.failed("ii")


def test_canonical_iso_identity(arrow_action):
    env = envelope_quiver_action(arrow_action)
    eta = canonical_algebra_isomorphism(env, env, 3)
    assert all(p == q for p, q in eta.items())


def test_canonical_iso_relabel(arrow_action):
    env = envelope_quiver_action(arrow_action)
    vn = {v: f"x{i}" for i, v in enumerate(env.quiver.vertices)}
    an = {a: f"y{i}" for i, a in enumerate(env.quiver.arrow_names)}
    eta = canonical_algebra_isomorphism(env, relabel(env, vn, an), 3)
    for p, q in eta.items():
        assert q.arrows == tuple(an[a] for a in p.arrows)
        assert q.source == vn[p.source]


def test_canonical_iso_cycle(restricted_rotation, rotation, path123):
    eta = canonical_algebra_isomorphism(envelope_quiver_action(restricted_rotation), as_enveloping(rotation, path123), 3)
    assert len(eta) == 16
    assert len(set(eta.values())) == 16


def test_canonical_iso_rejects(restricted_rotation, arrow_action):
    with pytest.raises(IsomorphismError):
        canonical_algebra_isomorphism(envelope_quiver_action(restricted_rotation), envelope_quiver_action(arrow_action), 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_induced_maps_are_multiplicative(seed):
    _, _, a = random_restriction(random.Random(seed))
    ia = induced_partial_action(a)
    G = a.group
    for g in G:
        basis = ia.domain(G.inv(g)).paths(4)
        for x in basis:
            for y in basis:
                xy = x * y
                if xy is None or xy.length > 4:
                    continue
                A = ia.algebra
                assert ia.apply(g, A.basis_element(xy)) == ia.apply(g, A.basis_element(x)) * ia.apply(g, A.basis_element(y))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 3))
def test_sum_inside_generated(seed, L):
    _, _, a = random_restriction(random.Random(seed))
    env = envelope_quiver_action(a)
    total, gen = sum_of_translates(env, L), generated_subalgebra(env, L)
    assert gen.echelon().contains_span(total.echelon())
