"""Countable chains: well-ordered, scattered and arbitrary countable linear orders.

The reducts have a binary product and an ω-power; scattered chains add the
reverse power ``romega`` (order type -ω); countable chains add ``shuffle``,
which takes a nonempty set Y and describes the dense chain in which every
element of Y labels a dense set of positions.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .core import (AlgebraError, Algebra, Instance, Language, Morphism, PowersetUnsupported,
                   Signature, Violation, op, register, tabulate, validate)
from .infty import omega_of_set, omega_violations
from .words import associativity_violations

SORT = "s"
VARIANTS = {
    "well": "chain-well",
    "scattered": "chain-scattered",
    "countable": "chain-countable",
}
_OPS = {
    "well": (op("concat", SORT, SORT), op("omega", SORT)),
    "scattered": (op("concat", SORT, SORT), op("omega", SORT), op("romega", SORT)),
    "countable": (op("concat", SORT, SORT), op("omega", SORT), op("romega", SORT),
                  op("shuffle", {SORT})),
}
SIGNATURES = {v: Signature(m, (SORT,), _OPS[v]) for v, m in VARIANTS.items()}

NOTE = ("necessary conditions: Wilke axioms for omega, their mirror for romega, "
        "and idempotence/absorption laws for shuffle")


def chain_instance(variant: str) -> Signature:
    try:
        return SIGNATURES[variant]
    except KeyError:
        raise AlgebraError(f"unknown chain variant {variant!r}; "
                           f"expected one of {sorted(VARIANTS)}") from None


def shuffle_violations(alg: Algebra):
    m = alg.mul
    elems = list(alg.elements)
    for k in range(1, len(elems) + 1):
        for Y in itertools.combinations(elems, k):
            Y = frozenset(Y)
            e = m("shuffle", Y)
            checks = [
                ("shuffle idempotent", (e,), m("concat", e, e)),
                ("shuffle omega", (e,), m("omega", e)),
                ("shuffle romega", (e,), m("romega", e)),
                ("shuffle singleton", (e,), m("shuffle", {e})),
                ("shuffle absorbs", (e,), m("shuffle", Y | {e})),
            ]
            checks += [("shuffle absorbs member", (y,), m("concat", m("concat", e, y), e))
                       for y in sorted(Y)]
            for name, extra, value in checks:
                if value != e:
                    yield Violation(name, ("{" + ",".join(sorted(Y)) + "}", *extra),
                                    f"got {value}, expected shuffle = {e}")


def _violations(variant: str):
    def check(alg: Algebra):
        yield from associativity_violations(alg)
        yield from omega_violations(alg)
        if variant in ("scattered", "countable"):
            yield from omega_violations(alg, omega="romega", mirror=True)
        if variant == "countable":
            yield from shuffle_violations(alg)
    return check


def powerset_eval_chain(alg: Algebra, name: str, args: tuple) -> frozenset:
    if name == "shuffle":
        raise PowersetUnsupported("powerset unsupported: shuffle")
    if any(not a for a in args):
        return frozenset()
    if name == "concat":
        S, T = args
        return frozenset(alg.mul("concat", s, t) for s in S for t in T)
    if name == "omega":
        return omega_of_set(alg, args[0])
    if name == "romega":
        return omega_of_set(alg, args[0], omega="romega", mirror=True)
    raise AlgebraError(f"unknown operation {name!r}")


for _variant, _monad in VARIANTS.items():
    register(Instance(
        _monad,
        lambda params=None, _v=_variant: SIGNATURES[_v],
        _violations(_variant),
        powerset_eval_chain,
        NOTE,
    ))


def validate_chain(alg: Algebra):
    return validate(alg)


def chain_algebra(variant: str, elements: Iterable[str], fn) -> Algebra:
    """Tabulate from ``fn(op_name, *args)``; shuffle receives a frozenset."""
    return tabulate(chain_instance(variant), dict.fromkeys(elements, SORT), fn)


def language(alg: Algebra, units: Mapping[str, str], accepting: Iterable[str]) -> Language:
    return Language(Morphism(dict.fromkeys(units, SORT), alg, dict(units)), frozenset(accepting))
