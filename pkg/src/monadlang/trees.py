"""Ranked trees over a ranked alphabet, and two-sorted forests.

For a ranked alphabet Σ the reduct has one operation per symbol, so a finite
algebra is exactly a deterministic bottom-up tree automaton.  Forest
algebras have a forest sort and a context sort.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .core import (Algebra, AlgebraError, Instance, Language, Morphism, Node, Signature, Term,
                   Violation, op, register, tabulate, validate)

RANKED = "ranked"
FOREST = "forest"
SORT = "t"


def ranked_instance(alphabet) -> Signature:
    """Signature for a ranked alphabet given as ``{name: rank}`` or ``[{"name", "rank"}, ...]``."""
    if isinstance(alphabet, Mapping):
        items = list(alphabet.items())
    else:
        items = [(d["name"], d["rank"]) for d in alphabet]
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise AlgebraError(f"duplicate symbols in ranked alphabet {names}")
    for n, r in items:
        if not isinstance(r, int) or r < 0:
            raise AlgebraError(f"symbol {n!r} has invalid rank {r!r}")
    params = {"alphabet": [{"name": n, "rank": r} for n, r in items]}
    return Signature(RANKED, (SORT,), tuple(op(n, *([SORT] * r), result=SORT) for n, r in items),
                     params)


def _ranked_signature(params=None) -> Signature:
    if not params or "alphabet" not in params:
        raise AlgebraError("the ranked monad needs params {'alphabet': [...]}")
    return ranked_instance(params["alphabet"])


def powerset_eval_ranked(alg: Algebra, symbol: str, args: Sequence[Iterable[str]]) -> frozenset:
    args = [list(a) for a in args]
    return frozenset(alg.mul(symbol, *choice) for choice in itertools.product(*args))


def _no_axioms(alg: Algebra):
    return iter(())


register(Instance(RANKED, _ranked_signature, _no_axioms, powerset_eval_ranked))


def tree_automaton(alphabet, states: Iterable[str], delta: Callable[..., str] | Mapping) -> Algebra:
    """Tabulate a bottom-up automaton; ``delta(symbol, *child_states)`` or ``delta[symbol][children]``."""
    sig = ranked_instance(alphabet)
    if isinstance(delta, Mapping):
        table = delta
        delta = lambda f, *xs: table[f][tuple(xs)]  # noqa: E731
    return tabulate(sig, dict.fromkeys(states, SORT), delta)


def tree(symbol: str, *children: Term) -> Node:
    return Node(symbol, tuple(children))


def ranked_language(alg: Algebra, accepting: Iterable[str], units: Mapping[str, str] | None = None
                    ) -> Language:
    units = dict(units or {})
    return Language(Morphism(dict.fromkeys(units, SORT), alg, units), frozenset(accepting))


# ---------------------------------------------------------------------------
# forests

F, C = "forest", "context"
FOREST_SIGNATURE = Signature(FOREST, (F, C), (
    op("concat_ff", F, F, result=F),
    op("concat_fc", F, C, result=C),
    op("concat_cf", C, F, result=C),
    op("subst_cc", C, C, result=C),
    op("subst_cf", C, F, result=F),
))


def _forest_signature(params=None) -> Signature:
    return FOREST_SIGNATURE


def forest_violations(alg: Algebra):
    m = alg.mul
    by = alg.by_sort()
    fs, cs = by[F], by[C]
    laws = [
        ("forest concatenation associative", (fs, fs, fs),
         lambda x, y, z: (m("concat_ff", m("concat_ff", x, y), z), m("concat_ff", x, m("concat_ff", y, z)))),
        ("context composition associative", (cs, cs, cs),
         lambda a, b, c: (m("subst_cc", m("subst_cc", a, b), c), m("subst_cc", a, m("subst_cc", b, c)))),
        ("action", (cs, cs, fs),
         lambda a, b, c: (m("subst_cf", m("subst_cc", a, b), c), m("subst_cf", a, m("subst_cf", b, c)))),
        ("insertion left", (fs, cs, fs),
         lambda c, a, d: (m("subst_cf", m("concat_fc", c, a), d), m("concat_ff", c, m("subst_cf", a, d)))),
        ("insertion right", (cs, fs, fs),
         lambda a, c, d: (m("subst_cf", m("concat_cf", a, c), d), m("concat_ff", m("subst_cf", a, d), c))),
        ("insertion left (context)", (fs, cs, cs),
         lambda c, a, b: (m("subst_cc", m("concat_fc", c, a), b), m("concat_fc", c, m("subst_cc", a, b)))),
        ("insertion right (context)", (cs, fs, cs),
         lambda a, c, b: (m("subst_cc", m("concat_cf", a, c), b), m("concat_cf", m("subst_cc", a, b), c))),
        ("mixed concatenation ffc", (fs, fs, cs),
         lambda x, y, a: (m("concat_fc", m("concat_ff", x, y), a), m("concat_fc", x, m("concat_fc", y, a)))),
        ("mixed concatenation fcf", (fs, cs, fs),
         lambda x, a, y: (m("concat_cf", m("concat_fc", x, a), y), m("concat_fc", x, m("concat_cf", a, y)))),
        ("mixed concatenation cff", (cs, fs, fs),
         lambda a, x, y: (m("concat_cf", m("concat_cf", a, x), y), m("concat_cf", a, m("concat_ff", x, y)))),
    ]
    for name, pools, law in laws:
        for w in itertools.product(*pools):
            left, right = law(*w)
            if left != right:
                yield Violation(name, w, f"{left} != {right}")


def validate_forest(alg: Algebra):
    return validate(alg)


register(Instance(FOREST, _forest_signature, forest_violations, powerset_eval_ranked,
                  "necessary conditions: monoid, action and insertion laws"))


def forest_algebra(forests: Iterable[str], contexts: Iterable[str],
                   fn: Callable[..., str]) -> Algebra:
    elements = {**dict.fromkeys(forests, F), **dict.fromkeys(contexts, C)}
    return tabulate(FOREST_SIGNATURE, elements, fn)


def forest_language(alg: Algebra, units: Mapping[str, str], accepting: Iterable[str]) -> Language:
    alphabet = {x: alg.sort_of(e) for x, e in units.items()}
    return Language(Morphism(alphabet, alg, dict(units)), frozenset(accepting))
