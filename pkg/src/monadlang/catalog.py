"""Small hand-built algebras and languages, one per instance, used as fixtures and in examples."""

from __future__ import annotations

from . import chains, infty, pointed, trees, words
from .core import Algebra, Language

# -- finite words ------------------------------------------------------------

def parity_semigroup() -> Algebra:
    """Z2 on {o, e}: o for odd, e for even."""
    return words.semigroup(["o", "e"], lambda x, y: "e" if x == y else "o")


def u1() -> Algebra:
    """{1, 0} under multiplication."""
    return words.semigroup(["1", "0"], lambda x, y: "1" if x == y == "1" else "0")


def parity_odd(letters=("a",)) -> Language:
    return words.language(parity_semigroup(), dict.fromkeys(letters, "o"), ["o"])


def parity_even(letters=("a",)) -> Language:
    return words.language(parity_semigroup(), dict.fromkeys(letters, "o"), ["e"])


def contains_a() -> Language:
    alg = words.semigroup(["A", "B"], lambda x, y: "A" if "A" in (x, y) else "B")
    return words.language(alg, {"a": "A", "b": "B"}, ["A"])


def zeros() -> Language:
    """Words in 0+ over {0, 1}."""
    alg = words.semigroup(["Z", "X"], lambda x, y: "Z" if x == y == "Z" else "X")
    return words.language(alg, {"0": "Z", "1": "X"}, ["Z"])


_ZO = {
    ("Z", "Z"): "Z", ("Z", "O"): "ZO", ("Z", "ZO"): "ZO",
    ("O", "O"): "O", ("ZO", "O"): "ZO",
}


def zeros_then_ones() -> Language:
    """Words in 0*1* over {0, 1}; four elements Z = 0+, O = 1+, ZO = 0+1+, X = rest."""
    alg = words.semigroup(["Z", "O", "ZO", "X"], lambda x, y: _ZO.get((x, y), "X"))
    return words.language(alg, {"0": "Z", "1": "O"}, ["Z", "O", "ZO"])


def zeros_then_ones_dfa() -> Language:
    """Same language through the transition semigroup of the three-state DFA."""
    return words.transition_semigroup(
        ["zeros", "ones", "dead"],
        {"0": ["zeros", "dead", "dead"], "1": ["ones", "ones", "dead"]},
        accepting_states=["zeros", "ones"], initial="zeros")


# -- finite and infinite words ---------------------------------------------------

def _first_letter(x, y):
    return x if x.endswith("_inf") else x[0] + y[1:]


def begins_with_algebra() -> Algebra:
    """First letter and finiteness: A_f, A_inf, B_f, B_inf."""
    return infty.wilke_algebra(["A_f", "A_inf", "B_f", "B_inf"], _first_letter,
                               lambda x: x[0] + "_inf")


def begins_with(letter: str = "a") -> Language:
    alg = begins_with_algebra()
    acc = [e for e in alg.elements if e[0] == letter.upper()]
    return infty.language(alg, {"a": "A_f", "b": "B_f"}, acc)


def _count_a(x, y):
    if x in ("top", "bot"):
        return x
    if y in ("top", "bot"):
        return y
    return "a" if "a" in (x, y) else "1"


def count_a_algebra() -> Algebra:
    """1 and a are finite words without/with an a; top and bot are infinite words with infinitely/finitely many a."""
    return infty.wilke_algebra(["1", "a", "top", "bot"], _count_a,
                               lambda x: {"1": "bot", "a": "top"}.get(x, x))


def infinitely_many_a() -> Language:
    return infty.language(count_a_algebra(), {"a": "a", "b": "1"}, ["top"])


def finitely_many_a() -> Language:
    return infty.language(count_a_algebra(), {"a": "a", "b": "1"}, ["1", "a", "bot"])


# -- pointed words ---------------------------------------------------------------

def successor_query() -> Language:
    """Selected position is followed by an a.

    Elements are first letter (a, b) times status: p while the selected
    position is still last, then y or n.
    """
    elems = [f + s for f in "ab" for s in "pyn"]

    def ext_left(x, y):
        return x[0] + y[1]

    def ext_right(y, x):
        if y[1] != "p":
            return y
        return y[0] + ("y" if x[0] == "a" else "n")
    alg = pointed.point_algebra(elems, ext_left, ext_right)
    return pointed.language(alg, {"a": "ap", "b": "bp"}, ["ay", "by"])


def two_as_after() -> Language:
    """Selected position is followed by at least two a's.

    Element kt: k a's after the point, t a's in total, both capped at 2.
    """
    elems = [f"{k}{t}" for t in range(3) for k in range(t + 1)]

    def ext_left(x, y):
        return f"{y[0]}{min(2, int(x[1]) + int(y[1]))}"

    def ext_right(y, x):
        return f"{min(2, int(y[0]) + int(x[1]))}{min(2, int(y[1]) + int(x[1]))}"
    alg = pointed.point_algebra(elems, ext_left, ext_right)
    return pointed.language(alg, {"a": "01", "b": "00"}, ["22"])


def label_a() -> Language:
    """Selected position has label a."""
    alg = pointed.point_algebra(["A", "B"], lambda x, y: y, lambda y, x: y)
    return pointed.language(alg, {"a": "A", "b": "B"}, ["A"])


# -- trees and forests -------------------------------------------------------------

BOOLEAN_ALPHABET = {"and": 2, "or": 2, "t": 0, "f": 0}


def boolean_evaluation() -> Algebra:
    ops = {"and": min, "or": max, "t": lambda: "1", "f": lambda: "0"}
    return trees.tree_automaton(BOOLEAN_ALPHABET, ["0", "1"], lambda f, *xs: ops[f](*xs))


def true_trees() -> Language:
    return trees.ranked_language(boolean_evaluation(), ["1"])


def contains_label() -> Language:
    """Forests over {l, m} with some node labelled l; l0 and m0 are leaves, l and m inner nodes."""
    def fn(name, *args):
        sort = "c" if name in ("concat_fc", "concat_cf", "subst_cc") else "f"
        return sort + ("y" if any(a.endswith("y") for a in args) else "n")
    alg = trees.forest_algebra(["fy", "fn"], ["cy", "cn"], fn)
    return trees.forest_language(alg, {"l": "cy", "m": "cn", "l0": "fy", "m0": "fn"},
                                 ["fy"])


# -- countable chains --------------------------------------------------------------

_ZB = {("Z", "Z"): "Z", ("Z", "O"): "ZO", ("Z", "ZO"): "ZO", ("O", "O"): "O", ("ZO", "O"): "ZO"}


def _zeros_before_ones(name, *args):
    if name == "concat":
        return _ZB.get(args, "BAD")
    if name in ("omega", "romega"):
        return args[0] if args[0] in ("Z", "O") else "BAD"
    (Y,) = args
    return "Z" if Y <= {"Z"} else "O" if Y <= {"O"} else "BAD"


def zeros_before_ones(variant: str = "scattered") -> Language:
    """No 1 precedes a 0: Z (zeros only), O (ones only), ZO (both, in order), BAD."""
    alg = chains.chain_algebra(variant, ["Z", "O", "ZO", "BAD"], _zeros_before_ones)
    return chains.language(alg, {"0": "Z", "1": "O"}, ["Z", "O", "ZO"])
