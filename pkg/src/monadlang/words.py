"""Finite nonempty words: algebras are semigroups, presented by their binary product."""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .core import (Algebra, Instance, Language, Letter, Morphism, Node, Signature, Term,
                   Violation, op, register, tabulate, validate)

MONAD = "word"
SORT = "s"
SIGNATURE = Signature(MONAD, (SORT,), (op("concat", SORT, SORT),))


def signature(params=None) -> Signature:
    return SIGNATURE


def word_term(word: Sequence[str]) -> Term:
    """Left-associated concatenation of the letters of a nonempty word."""
    word = list(word)
    if not word:
        raise ValueError("the empty word is not a term of the word monad")
    t: Term = Letter(word[0])
    for x in word[1:]:
        t = Node("concat", (t, Letter(x)))
    return t


def term_word(t: Term) -> str:
    """Inverse of word_term up to reassociation (letters in order)."""
    if isinstance(t, Letter):
        return t.name
    return "".join(term_word(a) for a in t.args)


def associativity_violations(alg: Algebra, name: str = "concat"):
    elems = list(alg.elements)
    for x, y, z in itertools.product(elems, repeat=3):
        left = alg.mul(name, alg.mul(name, x, y), z)
        right = alg.mul(name, x, alg.mul(name, y, z))
        if left != right:
            yield Violation("associativity", (x, y, z), f"(x*y)*z = {left} but x*(y*z) = {right}")


def validate_semigroup(alg: Algebra):
    return validate(alg)


def powerset_eval_word(alg: Algebra, left: Iterable[str], right: Iterable[str]) -> frozenset:
    right = list(right)
    return frozenset(alg.mul("concat", s, t) for s in left for t in right)


def _powerset_op(alg: Algebra, name: str, args: tuple) -> frozenset:
    return powerset_eval_word(alg, *args)


INSTANCE = register(Instance(MONAD, signature, associativity_violations, _powerset_op))


# ---------------------------------------------------------------------------
# constructors

def semigroup(elements: Iterable[str], product) -> Algebra:
    """Tabulate a semigroup from a product function or a nested mapping ``product[x][y]``."""
    elements = list(elements)
    if isinstance(product, Mapping):
        table = product
        product = lambda x, y: table[x][y]  # noqa: E731
    return tabulate(SIGNATURE, dict.fromkeys(elements, SORT), lambda _, x, y: product(x, y))


def morphism(alg: Algebra, units: Mapping[str, str]) -> Morphism:
    return Morphism(dict.fromkeys(units, SORT), alg, dict(units))


def language(alg: Algebra, units: Mapping[str, str], accepting: Iterable[str]) -> Language:
    return Language(morphism(alg, units), frozenset(accepting))


def evaluate_word(h: Morphism, word: Sequence[str]) -> str:
    """Value of a word, folding left through the table."""
    word = list(word)
    value = h.units[word[0]]
    for x in word[1:]:
        value = h.target.mul("concat", value, h.units[x])
    return value


def accepts(L: Language, word: Sequence[str]) -> bool:
    return evaluate_word(L.morphism, word) in L.accepting


def transition_semigroup(states: Sequence, letters: Mapping[str, Sequence],
                         accepting_states: Iterable = (), initial=None) -> Language:
    """Language of a complete DFA, recognised by its transition semigroup.

    ``letters[x]`` lists the successor of each state (in ``states`` order).
    The accepting set holds the transformations sending ``initial`` into
    ``accepting_states``.
    """
    states = list(states)
    maps = {x: tuple(states.index(q) for q in succ) for x, succ in letters.items()}
    elems: dict[tuple, str] = {}
    frontier = [maps[x] for x in sorted(maps)]
    for m in frontier:
        elems.setdefault(m, None)
    gens = [maps[x] for x in sorted(maps)]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                c = tuple(g[i] for i in m)
                if c not in elems:
                    elems[c] = None
                    nxt.append(c)
        frontier = nxt
    names = {m: "t" + "".join(map(str, m)) for m in elems}

    by_name = {v: k for k, v in names.items()}

    def product(x, y):
        mx, my = by_name[x], by_name[y]
        return names[tuple(my[i] for i in mx)]

    alg = semigroup(names.values(), product)
    start = states.index(initial if initial is not None else states[0])
    finals = {states.index(q) for q in accepting_states}
    acc = [names[m] for m in elems if m[start] in finals]
    return language(alg, {x: names[maps[x]] for x in maps}, acc)


def all_words(alphabet: Sequence[str], max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)
