import itertools
import random

import pytest

from helpers import omega_set_oracle, random_wilke_language
from monadlang import catalog, infty
from monadlang.core import Letter, Node, evaluate, validate

A, B = Letter("a"), Letter("b")


def two_element_wilke():
    return infty.wilke_algebra(["A", "B"], lambda x, y: x, lambda x: x)


def parity_with_top():
    def prod(x, y):
        return "top" if "top" in (x, y) else "e" if x == y else "o"
    return infty.wilke_algebra(["o", "e", "top"], prod, lambda x: "top")


def test_up_term_shapes():
    assert infty.up_term("", "a") == Node("omega", (A,))
    assert infty.up_term("a", "b") == Node("concat", (A, Node("omega", (B,))))
    with pytest.raises(ValueError):
        infty.up_term("a", "")


def test_b_then_a_forever_has_infinitely_many_a():
    L = catalog.infinitely_many_a()
    assert evaluate(L.morphism, infty.up_term("b", "a")) == "top"
    assert infty.evaluate_up(L.morphism, "aa", "b") == "bot"


@pytest.mark.parametrize("make", [two_element_wilke, catalog.count_a_algebra,
                                  catalog.begins_with_algebra, parity_with_top])
def test_wilke_fixtures_validate(make):
    report = validate(make())
    assert report.ok
    assert "necessary conditions" in report.note


def test_omega_power_violation():
    # a*a = b, so (a^2)^w = b^w = b while a^w = a
    alg = infty.wilke_algebra(["a", "b"], lambda x, y: "b", lambda x: x)
    violations = list(validate(alg).violations)
    assert [v.axiom for v in violations] == ["omega-power"]
    assert violations[0].witness == ("a", 2)


def test_idempotent_letter_cannot_break_omega_power():
    # with a*a = a the only power of a is a itself, whatever the omega table says
    for wa, wb in itertools.product("ab", repeat=2):
        alg = infty.wilke_algebra(["a", "b"], lambda x, y: x, {"a": wa, "b": wb})
        assert "omega-power" not in {v.axiom for v in validate(alg).violations}


def test_powers_lists_cycle():
    z2 = parity_with_top()
    assert infty.powers(z2, "o") == ["o", "e"]
    assert infty.powers(z2, "e") == ["e"]


def test_powerset_examples():
    alg = parity_with_top()
    assert infty.powerset_eval_infty(alg, "omega", ({"o"},)) == {"top"}
    assert infty.concat_closure(alg, {"o"}) == {"o", "e"}
    assert infty.powerset_eval_infty(alg, "omega", (frozenset(),)) == frozenset()
    count = catalog.count_a_algebra()
    assert infty.powerset_eval_infty(count, "concat", ({"a"}, {"top"})) == {"top"}
    assert infty.powerset_eval_infty(count, "concat", (frozenset(), {"top"})) == frozenset()


def fixture_algebras():
    algs = [two_element_wilke(), catalog.count_a_algebra(), catalog.begins_with_algebra(),
            parity_with_top()]
    rng = random.Random(7)
    algs += [random_wilke_language(rng, 4).algebra for _ in range(6)]
    return algs


@pytest.mark.parametrize("alg", fixture_algebras(), ids=lambda a: f"size{len(a)}")
def test_infinite_absorption(alg):
    infinite = {alg.mul("omega", x) for x in alg.elements}
    for x in infinite:
        for y in alg.elements:
            assert alg.mul("concat", x, y) == x


@pytest.mark.parametrize("alg", fixture_algebras(), ids=lambda a: f"size{len(a)}")
def test_omega_formula_matches_ultimately_periodic_words(alg):
    elems = list(alg.elements)
    for k in range(1, 4):
        for S in itertools.combinations(elems, k):
            assert infty.omega_of_set(alg, S) == omega_set_oracle(alg, S, 4, 4), S


def test_up_words_enumeration():
    pairs = list(infty.up_words("ab", 1, 1))
    assert ("", "a") in pairs and ("b", "a") in pairs
    assert len(pairs) == 2 + 4
