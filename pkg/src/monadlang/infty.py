"""Finite and infinite words (the ∞-word monad).

Finite algebras are one-sorted Wilke-style reducts: a binary product and an
ω-power.  Powersets are computed with the Ramsey-style formula: an infinite
product of sets picks out ``p * q^ω`` with ``p, q`` in the product closure.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .core import (Algebra, Instance, Language, Morphism, Node, Signature, Term,
                   Violation, evaluate, op, register, tabulate, validate)
from .words import associativity_violations, word_term

MONAD = "infty"
SORT = "s"
SIGNATURE = Signature(MONAD, (SORT,), (op("concat", SORT, SORT), op("omega", SORT)))

NOTE = "necessary conditions: associativity, (xy)^w = x(yx)^w, (x^n)^w = x^w"


def signature(params=None) -> Signature:
    return SIGNATURE


def up_term(prefix: Sequence[str], period: Sequence[str]) -> Term:
    """Term for the ultimately periodic word ``prefix period period ...``."""
    if not list(period):
        raise ValueError("the period of an ultimately periodic word must be nonempty")
    loop = Node("omega", (word_term(period),))
    if not list(prefix):
        return loop
    return Node("concat", (word_term(prefix), loop))


def powers(alg: Algebra, x: str, name: str = "concat") -> list[str]:
    """``[x, x^2, ...]`` up to the first repetition (index + period entries)."""
    seq = [x]
    while True:
        nxt = alg.mul(name, seq[-1], x)
        if nxt in seq:
            return seq
        seq.append(nxt)


def omega_violations(alg: Algebra, concat: str = "concat", omega: str = "omega",
                     mirror: bool = False):
    """Wilke's ω-axioms (or their mirror image for the reverse ω-power)."""
    elems = list(alg.elements)
    tag = omega
    for x, y in itertools.product(elems, repeat=2):
        xy = alg.mul(concat, x, y)
        yx = alg.mul(concat, y, x)
        if not mirror:
            left = alg.mul(omega, xy)
            right = alg.mul(concat, x, alg.mul(omega, yx))
            law = f"({x}*{y})^{tag} = {x}*({y}*{x})^{tag}"
        else:
            left = alg.mul(omega, xy)
            right = alg.mul(concat, alg.mul(omega, yx), y)
            law = f"({x}*{y})^{tag} = ({y}*{x})^{tag}*{y}"
        if left != right:
            yield Violation(f"{tag}-shift", (x, y), f"{law} fails: {left} != {right}")
    for x in elems:
        base = alg.mul(omega, x)
        for n, p in enumerate(powers(alg, x, concat)[1:], start=2):
            value = alg.mul(omega, p)
            if value != base:
                yield Violation(f"{tag}-power", (x, n),
                                f"({x}^{n})^{tag} = {value} but {x}^{tag} = {base}")


def wilke_violations(alg: Algebra):
    yield from associativity_violations(alg)
    yield from omega_violations(alg)


def validate_wilke(alg: Algebra):
    return validate(alg)


def concat_closure(alg: Algebra, S: Iterable[str], name: str = "concat") -> frozenset:
    """Closure of S under the binary product only."""
    closed = set(S)
    frontier = list(closed)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(closed):
                for z in (alg.mul(name, x, y), alg.mul(name, y, x)):
                    if z not in closed:
                        closed.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(closed)


def omega_of_set(alg: Algebra, S: Iterable[str], omega: str = "omega",
                 concat: str = "concat", mirror: bool = False) -> frozenset:
    """Values of all infinite products of elements of S."""
    C = concat_closure(alg, S, concat)
    out = set()
    for q in C:
        qw = alg.mul(omega, q)
        out.add(qw)
        for p in C:
            out.add(alg.mul(concat, qw, p) if mirror else alg.mul(concat, p, qw))
    return frozenset(out)


def powerset_eval_infty(alg: Algebra, name: str, args: tuple) -> frozenset:
    if any(not a for a in args):
        return frozenset()
    if name == "concat":
        S, T = args
        return frozenset(alg.mul("concat", s, t) for s in S for t in T)
    if name == "omega":
        return omega_of_set(alg, args[0])
    raise ValueError(f"unknown operation {name!r}")


INSTANCE = register(Instance(MONAD, signature, wilke_violations, powerset_eval_infty, NOTE))


# ---------------------------------------------------------------------------
# constructors

def wilke_algebra(elements: Iterable[str], product, omega) -> Algebra:
    elements = list(elements)
    if isinstance(product, Mapping):
        ptable = product
        product = lambda x, y: ptable[x][y]  # noqa: E731
    if isinstance(omega, Mapping):
        otable = omega
        omega = otable.__getitem__

    def fn(name, *args):
        return product(*args) if name == "concat" else omega(*args)
    return tabulate(SIGNATURE, dict.fromkeys(elements, SORT), fn)


def language(alg: Algebra, units: Mapping[str, str], accepting: Iterable[str]) -> Language:
    return Language(Morphism(dict.fromkeys(units, SORT), alg, dict(units)), frozenset(accepting))


def evaluate_up(h: Morphism, prefix: Sequence[str], period: Sequence[str]) -> str:
    return evaluate(h, up_term(prefix, period))


def up_words(alphabet: Sequence[str], max_prefix: int, max_period: int):
    """All (prefix, period) pairs with the given length bounds; prefix may be empty."""
    for m in range(0, max_prefix + 1):
        for u in itertools.product(alphabet, repeat=m):
            for n in range(1, max_period + 1):
                for v in itertools.product(alphabet, repeat=n):
                    yield "".join(u), "".join(v)
