"""Pointed words (one selected position) and two-variable definability of unary queries.

A reduct has two operations on one sort: ``extL(a, x)`` is the value of the
word ``a`` placed to the left of the pointed word ``x`` and ``extR(x, b)``
places ``b`` to the right.  Elements used in the plain slot lose their
selected position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .core import (Algebra, Instance, Language, Letter, Morphism, Node, Signature, Term,
                   Violation, moore_syntactic, op, register, tabulate)
from .omegaterms import in_DA

MONAD = "point"
SORT = "s"
SIGNATURE = Signature(MONAD, (SORT,), (op("extL", SORT, SORT), op("extR", SORT, SORT)))


def signature(params=None) -> Signature:
    return SIGNATURE


def pointed_term(left: Sequence[str], point: str, right: Sequence[str]) -> Term:
    """Term for ``left point right`` with the position of ``point`` selected."""
    t: Term = Letter(point)
    for b in right:
        t = Node("extR", (t, Letter(b)))
    for a in reversed(list(left)):
        t = Node("extL", (Letter(a), t))
    return t


def value_of(alg: Algebra, left: Sequence[str], point: str, right: Sequence[str]) -> str:
    """Value of a pointed word whose letters are carrier elements."""
    v = point
    for b in right:
        v = alg.mul("extR", v, b)
    for a in reversed(list(left)):
        v = alg.mul("extL", a, v)
    return v


def point_violations(alg: Algebra):
    """Laws forced by flattening pointed words of pointed words.

    Besides the commutation of left and right extensions, an element in a
    plain slot must act like the word it stands for.
    """
    L = lambda a, x: alg.mul("extL", a, x)  # noqa: E731
    R = lambda x, b: alg.mul("extR", x, b)  # noqa: E731
    elems = list(alg.elements)
    for a, x, b in itertools.product(elems, repeat=3):
        left, right = L(a, R(x, b)), R(L(a, x), b)
        if left != right:
            yield Violation("commutation", (a, x, b),
                            f"extL({a},extR({x},{b})) = {left} but extR(extL({a},{x}),{b}) = {right}")
    for a, b, y in itertools.product(elems, repeat=3):
        checks = (
            ("plain extL", L(L(a, b), y), L(a, L(b, y)), "extL(extL(a,b),y) = extL(a,extL(b,y))"),
            ("plain extR", L(R(a, b), y), L(a, L(b, y)), "extL(extR(a,b),y) = extL(a,extL(b,y))"),
            ("plain extL", R(y, L(a, b)), R(R(y, a), b), "extR(y,extL(a,b)) = extR(extR(y,a),b)"),
            ("plain extR", R(y, R(a, b)), R(R(y, a), b), "extR(y,extR(a,b)) = extR(extR(y,a),b)"),
        )
        for axiom, left, right, law in checks:
            if left != right:
                yield Violation(axiom, (a, b, y), f"{law} fails: {left} != {right}")


def _powerset_op(alg: Algebra, name: str, args: tuple) -> frozenset:
    S, T = args
    T = list(T)
    return frozenset(alg.mul(name, s, t) for s in S for t in T)


INSTANCE = register(Instance(MONAD, signature, point_violations, _powerset_op))


def point_algebra(elements: Iterable[str], ext_left: Callable[[str, str], str],
                  ext_right: Callable[[str, str], str]) -> Algebra:
    elements = list(elements)

    def fn(name, x, y):
        return ext_left(x, y) if name == "extL" else ext_right(x, y)
    return tabulate(SIGNATURE, dict.fromkeys(elements, SORT), fn)


def language(alg: Algebra, units: Mapping[str, str], accepting: Iterable[str]) -> Language:
    return Language(Morphism(dict.fromkeys(units, SORT), alg, dict(units)), frozenset(accepting))


# ---------------------------------------------------------------------------
# transformation monoids

@dataclass
class TransformationMonoid:
    """Maps on a finite set, closed under composition, with the identity.

    A map is a tuple of indices into ``points``.  The product ``f * g`` applies
    ``f`` first.
    """

    points: tuple
    maps: list[tuple]
    generators: dict[str, tuple] = field(default_factory=dict)

    @classmethod
    def generated(cls, points: Sequence, generators: Mapping[str, tuple]) -> "TransformationMonoid":
        identity = tuple(range(len(points)))
        found = {identity: None}
        frontier = [identity]
        gens = list(generators.values())
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = compose(f, g)
                    if h not in found:
                        found[h] = None
                        nxt.append(h)
            frontier = nxt
        return cls(tuple(points), list(found), dict(generators))

    @property
    def identity(self) -> tuple:
        return tuple(range(len(self.points)))

    def __len__(self):
        return len(self.maps)

    def name(self, f: tuple) -> str:
        return "m" + str(self.maps.index(f))

    def as_algebra(self) -> Algebra:
        from .words import semigroup
        names = {f: self.name(f) for f in self.maps}
        back = {v: k for k, v in names.items()}
        return semigroup(names.values(), lambda x, y: names[compose(back[x], back[y])])

    def index_period(self, f: tuple) -> tuple[int, int]:
        """Least n0 >= 1 and p >= 1 with f^(n0 + p) = f^n0."""
        seq = [f]
        while True:
            nxt = compose(seq[-1], f)
            if nxt in seq:
                n0 = seq.index(nxt) + 1
                return n0, len(seq) + 1 - n0
            seq.append(nxt)


def compose(f: tuple, g: tuple) -> tuple:
    """Apply f, then g."""
    return tuple(g[i] for i in f)


def power(f: tuple, n: int) -> tuple:
    out = tuple(range(len(f)))
    for _ in range(n):
        out = compose(out, f)
    return out


def left_map(alg: Algebra, a: str) -> tuple:
    idx = {e: i for i, e in enumerate(alg.elements)}
    return tuple(idx[alg.mul("extL", a, b)] for b in alg.elements)


def right_map(alg: Algebra, a: str) -> tuple:
    idx = {e: i for i, e in enumerate(alg.elements)}
    return tuple(idx[alg.mul("extR", b, a)] for b in alg.elements)


def left_monoid(alg: Algebra) -> TransformationMonoid:
    return TransformationMonoid.generated(tuple(alg.elements),
                                          {a: left_map(alg, a) for a in alg.elements})


def right_monoid(alg: Algebra) -> TransformationMonoid:
    return TransformationMonoid.generated(tuple(alg.elements),
                                          {a: right_map(alg, a) for a in alg.elements})


def _pair_map(alg: Algebra, a: str) -> tuple:
    n = len(alg)
    return left_map(alg, a) + tuple(n + i for i in right_map(alg, a))


def mon(alg: Algebra) -> TransformationMonoid:
    """Pairs (left, right) of transformations, acting on two disjoint copies of the carrier."""
    points = tuple(("L", e) for e in alg.elements) + tuple(("R", e) for e in alg.elements)
    return TransformationMonoid.generated(points, {a: _pair_map(alg, a) for a in alg.elements})


# ---------------------------------------------------------------------------
# the relation a ⪯ b

def letter_sets(alg: Algebra) -> dict[str, set[frozenset]]:
    """For every element, the letter sets of the pointed words (over the carrier) with that value.

    Computed as the reachable pairs (value, letters) under one-letter extensions
    on either side, with or without moving the selected position.
    """
    elems = list(alg.elements)
    seen = {(e, frozenset([e])) for e in elems}
    todo = list(seen)
    while todo:
        x, S = todo.pop()
        for y in elems:
            T = S | {y}
            for nxt in (alg.mul("extL", y, x), alg.mul("extR", x, y),
                        alg.mul("extL", x, y), alg.mul("extR", y, x)):
                if (nxt, T) not in seen:
                    seen.add((nxt, T))
                    todo.append((nxt, T))
    out: dict[str, set[frozenset]] = {e: set() for e in elems}
    for x, S in seen:
        out[x].add(S)
    return out


def preceq(alg: Algebra, sets: Mapping[str, set] | None = None) -> set[tuple[str, str]]:
    """a ⪯ b iff some pointed word with value a uses only letters of some pointed word with value b."""
    sets = letter_sets(alg) if sets is None else sets
    minimal = {e: [S for S in ss if not any(T < S for T in ss)] for e, ss in sets.items()}
    rel = set()
    for a in alg.elements:
        for b in alg.elements:
            if any(S <= T for S in minimal[a] for T in sets[b]):
                rel.add((a, b))
    return rel


def preceq_rules(alg: Algebra) -> set[tuple[str, str]]:
    """Least relation containing a ⪯ a and closed under

        a ⪯ b          =>  a ⪯ extL(b, c)  and  a ⪯ extR(b, c)
        a ⪯ b, c ⪯ d   =>  extL(a, c) ⪯ extL(b, d)  and  extR(a, c) ⪯ extR(b, d)

    Every pair it derives belongs to ``preceq``, but it can miss pairs: the
    right-hand word only ever grows to the right.
    """
    elems = list(alg.elements)
    rel = {(a, a) for a in elems}
    todo = list(rel)
    L, R = (lambda x, y: alg.mul("extL", x, y)), (lambda x, y: alg.mul("extR", x, y))

    def add(pair):
        if pair not in rel:
            rel.add(pair)
            todo.append(pair)

    while todo:
        a, b = todo.pop()
        for c in elems:
            add((a, L(b, c)))
            add((a, R(b, c)))
        for c, d in list(rel):
            add((L(a, c), L(b, d)))
            add((R(a, c), R(b, d)))
            add((L(c, a), L(d, b)))
            add((R(c, a), R(d, b)))
    return rel


def preceq_bruteforce(alg: Algebra, max_len: int = 5) -> set[tuple[str, str]]:
    """a ⪯ b iff pointed words w, v (letters from the carrier, length <= max_len) have
    values a and b and every letter of w occurs in v."""
    elems = list(alg.elements)
    letter_sets: dict[str, set[frozenset]] = {e: set() for e in elems}
    for n in range(1, max_len + 1):
        for word in itertools.product(elems, repeat=n):
            letters = frozenset(word)
            for i in range(n):
                v = value_of(alg, word[:i], word[i], word[i + 1:])
                letter_sets[v].add(letters)
    rel = set()
    for a in elems:
        for b in elems:
            if any(S <= T for S in letter_sets[a] for T in letter_sets[b]):
                rel.add((a, b))
    return rel


# ---------------------------------------------------------------------------
# two-variable definability

@dataclass
class FO2Report:
    definable: bool
    syntactic_size: int
    left_monoid_size: int
    right_monoid_size: int
    left_in_DA: bool
    right_in_DA: bool
    failure: dict | None = None

    def describe(self) -> str:
        if self.definable:
            return "definable in two-variable first-order logic"
        if not self.left_in_DA:
            return "not definable: the left monoid is not in DA"
        if not self.right_in_DA:
            return "not definable: the right monoid is not in DA"
        f = self.failure
        return ("not definable: the power condition fails for "
                f"a={f['a']}, b={f['b']}, c={f['c']}, n={f['n']} "
                f"(values {f['values'][0]}, {f['values'][1]}, {f['values'][2]})")


def power_condition_failure(alg: Algebra, rel: set | None = None, extra_periods: int = 0):
    """First (a, b, c, n) breaking a^n b c̲ a^n = a^n c̲ a^n = a^n c̲ b a^n, or None.

    n ranges over one full period starting at the index of (λ_a, ρ_a); with
    ``extra_periods`` further periods are checked as well.
    """
    rel = preceq(alg) if rel is None else rel
    M = mon(alg)
    elems = list(alg.elements)
    idx = {e: i for i, e in enumerate(elems)}
    n_el = len(elems)
    for a in elems:
        tau = _pair_map(alg, a)
        n0, period = M.index_period(tau)
        below = [x for x in elems if (x, a) in rel]
        for n in range(n0, n0 + period * (1 + extra_periods)):
            tn = power(tau, n)
            lam = lambda i: elems[tn[idx[i]]]  # noqa: E731
            rho = lambda i: elems[tn[n_el + idx[i]] - n_el]  # noqa: E731
            for b in below:
                for c in below:
                    middle = lam(rho(c))
                    with_left = lam(alg.mul("extL", b, rho(c)))
                    with_right = lam(rho(alg.mul("extR", c, b)))
                    if not (with_left == middle == with_right):
                        return {"a": a, "b": b, "c": c, "n": n,
                                "values": [with_left, middle, with_right]}
    return None


def fo2_definable(L: Language) -> FO2Report:
    """Decide whether a unary query is definable in two-variable first-order logic."""
    if L.signature.monad != MONAD:
        raise ValueError(f"expected a pointed-word language, got monad {L.signature.monad!r}")
    S = moore_syntactic(L).algebra
    left, right = left_monoid(S), right_monoid(S)
    report = FO2Report(False, len(S), len(left), len(right), in_DA(left), in_DA(right))
    if report.left_in_DA and report.right_in_DA:
        report.failure = power_condition_failure(S)
        report.definable = report.failure is None
    return report
