import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import brute_preceq, random_point_language
from monadlang import catalog, pointed
from monadlang.core import Language, Letter, Morphism, Node, evaluate, moore_syntactic, validate


def test_pointed_term_shapes():
    assert pointed.pointed_term("", "a", "") == Letter("a")
    assert pointed.pointed_term("", "a", "b") == Node("extR", (Letter("a"), Letter("b")))
    assert pointed.pointed_term("b", "a", "") == Node("extL", (Letter("b"), Letter("a")))


def test_successor_of_b_marks_b():
    L = catalog.successor_query()
    assert evaluate(L.morphism, pointed.pointed_term("b", "a", "b")) == "bn"
    assert evaluate(L.morphism, pointed.pointed_term("b", "a", "a")) == "by"
    assert evaluate(L.morphism, pointed.pointed_term("b", "a", "")) == "bp"


@pytest.mark.parametrize("make", [catalog.successor_query, catalog.two_as_after, catalog.label_a])
def test_fixtures_validate(make):
    assert validate(make().algebra).ok


def test_one_element_algebra_validates():
    assert validate(pointed.point_algebra(["x"], lambda a, y: "x", lambda y, b: "x")).ok


def test_perturbed_entry_breaks_commutation():
    alg = catalog.successor_query().algebra
    table = dict(alg.table)
    table[("extL", ("ap", "ay"))] = "an"
    report = validate(type(alg)(alg.signature, alg.elements, table))
    assert not report.ok
    assert "commutation" in {v.axiom for v in report.violations}


def test_monoids_of_successor_query():
    S = catalog.successor_query().algebra
    assert len(pointed.left_monoid(S)) == 3
    assert len(pointed.right_monoid(S)) == 3
    one = pointed.point_algebra(["x"], lambda a, y: "x", lambda y, b: "x")
    assert len(pointed.left_monoid(one)) == len(pointed.right_monoid(one)) == 1


def test_monoids_are_closed_with_identity():
    for make in (catalog.successor_query, catalog.two_as_after):
        for M in (pointed.left_monoid(make().algebra), pointed.right_monoid(make().algebra),
                  pointed.mon(make().algebra)):
            assert M.identity in M.maps
            assert all(pointed.compose(f, g) in M.maps for f in M.maps for g in M.maps)


def test_index_period():
    M = pointed.TransformationMonoid.generated((0, 1, 2), {"s": (1, 2, 1)})
    assert M.index_period((1, 2, 1)) == (1, 2)
    assert M.index_period((0, 0, 0)) == (1, 1)
    assert M.index_period((1, 2, 2)) == (2, 1)


def test_preceq_examples():
    S = catalog.successor_query().algebra
    rel = pointed.preceq(S)
    assert all((e, e) in rel for e in S.elements)
    assert ("ap", "ay") in rel
    assert pointed.preceq_rules(S) <= rel


def small_pointed_algebras():
    algs = [catalog.label_a().algebra]
    rng = random.Random(3)
    while len(algs) < 25:
        S = moore_syntactic(random_point_language(rng, rng.randint(1, 2), 2)).algebra
        if len(S) <= 4:
            algs.append(S)
    return algs


@pytest.mark.parametrize("alg", small_pointed_algebras(), ids=lambda a: f"size{len(a)}")
def test_preceq_matches_letter_subset_oracle(alg):
    assert pointed.preceq(alg) == brute_preceq(alg, 5)
    assert pointed.preceq_rules(alg) <= pointed.preceq(alg)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_left_and_right_extensions_commute(seed):
    alg = random_point_language(random.Random(seed)).algebra
    for a in alg.elements:
        for b in alg.elements:
            la, rb = pointed.left_map(alg, a), pointed.right_map(alg, b)
            assert pointed.compose(la, rb) == pointed.compose(rb, la)


def test_fo2_verdicts():
    succ = pointed.fo2_definable(catalog.successor_query())
    assert not succ.definable
    assert succ.left_in_DA and succ.right_in_DA
    assert succ.failure["a"] == "ap" and "power condition" in succ.describe()
    assert pointed.fo2_definable(catalog.label_a()).definable
    assert pointed.fo2_definable(catalog.two_as_after()).definable


def test_fo2_label_a_syntactic_algebra_is_trivial_on_extensions():
    r = pointed.fo2_definable(catalog.label_a())
    assert r.syntactic_size == 2 and r.left_monoid_size == r.right_monoid_size == 1


def test_fo2_rejects_other_monads():
    with pytest.raises(ValueError):
        pointed.fo2_definable(catalog.parity_odd())


def renamed(L: Language, prefix: str) -> Language:
    alg = L.algebra
    rn = {e: prefix + e for e in alg.elements}
    table = {(name, tuple(rn[a] for a in args)): rn[v] for (name, args), v in alg.table.items()}
    new = type(alg)(alg.signature, {rn[e]: s for e, s in alg.elements.items()}, table)
    h = Morphism(L.alphabet, new, {x: rn[v] for x, v in L.morphism.units.items()})
    return Language(h, frozenset(rn[a] for a in L.accepting))


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_fo2_invariant_under_renaming(seed):
    L = random_point_language(random.Random(seed), 2, 2)
    assert pointed.fo2_definable(L).definable == pointed.fo2_definable(renamed(L, "z_")).definable


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_power_condition_stable_beyond_one_period(seed):
    S = moore_syntactic(random_point_language(random.Random(seed), 2, 2)).algebra
    once = pointed.power_condition_failure(S) is None
    assert once == (pointed.power_condition_failure(S, extra_periods=2) is None)
