import itertools

import pytest

from helpers import context_partition, omega_set_oracle
from monadlang import catalog, chains, infty
from monadlang.core import (AlgebraError, Letter, Node, PowersetUnsupported, boolean, find_witness,
                            inverse_image, moore_syntactic, powerset, relabel_image, validate)

VARIANTS = ["well", "scattered", "countable"]


def one_element(variant):
    return chains.chain_algebra(variant, ["x"], lambda name, *a: "x")


def test_op_counts():
    assert [len(chains.chain_instance(v).ops) for v in VARIANTS] == [2, 3, 4]
    with pytest.raises(AlgebraError):
        chains.chain_instance("dense")


def test_shuffle_table_has_one_entry_per_nonempty_subset():
    alg = catalog.zeros_before_ones("countable").algebra
    shuffles = [k for k in alg.table if k[0] == "shuffle"]
    assert len(shuffles) == 2 ** len(alg) - 1


@pytest.mark.parametrize("variant", VARIANTS)
def test_fixtures_validate(variant):
    assert validate(one_element(variant)).ok
    report = chains.validate_chain(catalog.zeros_before_ones(variant).algebra)
    assert report.ok, report.violations
    assert "necessary conditions" in report.note


def test_perturbed_shuffle_idempotence():
    alg = catalog.zeros_before_ones("countable").algebra
    e = alg.mul("shuffle", frozenset({"Z"}))
    table = dict(alg.table)
    table[("concat", (e, e))] = "ZO"
    report = validate(type(alg)(alg.signature, alg.elements, table), limit=200)
    axioms = {v.axiom for v in report.violations}
    assert "shuffle idempotent" in axioms


def test_romega_mirror_violation():
    # "first letter" makes sense for omega but not for romega, which has no first position
    alg = chains.chain_algebra("scattered", ["A", "B"], lambda name, *args: args[0])
    axioms = {v.axiom for v in validate(alg).violations}
    assert "romega-shift" in axioms and "omega-shift" not in axioms


@pytest.mark.parametrize("variant", ["well", "scattered"])
def test_powerset_omega_matches_infty_formula(variant):
    alg = catalog.zeros_before_ones(variant).algebra
    for k in range(1, 4):
        for S in itertools.combinations(list(alg.elements), k):
            got = chains.powerset_eval_chain(alg, "omega", (frozenset(S),))
            assert got == infty.omega_of_set(alg, S) == omega_set_oracle(alg, S)


def test_powerset_romega_mirror():
    alg = catalog.zeros_before_ones("scattered").algebra
    assert chains.powerset_eval_chain(alg, "romega", (frozenset(),)) == frozenset()
    assert chains.powerset_eval_chain(alg, "romega", ({"Z", "O"},)) == {"Z", "O", "ZO", "BAD"}
    assert chains.powerset_eval_chain(alg, "romega", ({"O"},)) == {"O"}
    assert len(powerset(alg)) == 2 ** 4


def test_shuffle_powerset_is_unsupported():
    alg = catalog.zeros_before_ones("countable").algebra
    with pytest.raises(PowersetUnsupported, match="powerset unsupported: shuffle"):
        chains.powerset_eval_chain(alg, "shuffle", (frozenset({frozenset({"Z"})}),))
    with pytest.raises(PowersetUnsupported):
        relabel_image(catalog.zeros_before_ones("countable"), {"0": "0", "1": "0"})


def test_relabel_on_scattered():
    L = relabel_image(catalog.zeros_before_ones("scattered"), {"0": "0", "1": "0"})
    w = Node("romega", (Letter("0"),))
    assert w in L


@pytest.mark.parametrize("variant", VARIANTS)
def test_boolean_emptiness_and_preimage(variant):
    L = catalog.zeros_before_ones(variant)
    bad = boolean("not", L)
    w = find_witness(bad)
    assert w is not None and w not in L
    assert find_witness(boolean("and", L, bad)) is None
    swapped = inverse_image(L, {"0": Letter("1"), "1": Letter("0")})
    one_zero = Node("concat", (Letter("1"), Letter("0")))
    assert one_zero in swapped and one_zero not in L


def test_shuffle_terms():
    L = catalog.zeros_before_ones("countable")
    dense = Node("shuffle", (frozenset({Letter("0"), Letter("1")}),))
    assert dense not in L
    assert Node("shuffle", (frozenset({Letter("0")}),)) in L


@pytest.mark.parametrize("variant", VARIANTS)
def test_moore_on_chains_matches_contexts(variant):
    L = catalog.zeros_before_ones(variant)
    S = moore_syntactic(L)
    size = 3 if variant == "countable" else 4
    assert len(S.algebra) == len(context_partition(L, size)) == 4
