"""Language expressions closed under boolean operations, preimages and relabelings.

Every intermediate language is minimized, which keeps product and powerset
targets small.  Satisfiability is emptiness of the compiled language.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import io
from .core import (AlgebraError, Language, Letter, Node, Term, boolean, find_witness,
                   inverse_image, moore_syntactic, relabel_image, substitute)


class MsoError(AlgebraError):
    pass


@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "MsoExpr"


@dataclass(frozen=True)
class And:
    left: "MsoExpr"
    right: "MsoExpr"


@dataclass(frozen=True)
class Or:
    left: "MsoExpr"
    right: "MsoExpr"


@dataclass(frozen=True)
class InvImage:
    """Preimage under the substitution ``letter -> ground term over the inner alphabet``."""
    arg: "MsoExpr"
    sub: tuple[tuple[str, Term], ...]

    @classmethod
    def of(cls, arg, sub: Mapping[str, Term]):
        return cls(arg, tuple(sorted(sub.items())))


@dataclass(frozen=True)
class Image:
    """Image under a letter-to-letter relabeling; ``extra`` adds letters with empty preimage."""
    arg: "MsoExpr"
    mapping: tuple[tuple[str, str], ...]
    extra: tuple[tuple[str, str], ...] = field(default=())

    @classmethod
    def of(cls, arg, mapping: Mapping[str, str], extra: Mapping[str, str] | None = None):
        return cls(arg, tuple(sorted(mapping.items())), tuple(sorted((extra or {}).items())))


MsoExpr = Base | Not | And | Or | InvImage | Image


def compile(e: MsoExpr, env: Mapping[str, Language], minimize: bool = True) -> Language:
    """The language denoted by ``e``; sub-results are shared within one call."""
    cache: dict = {}
    signature = None

    def finish(L):
        return moore_syntactic(L) if minimize else L

    def go(x):
        nonlocal signature
        if x in cache:
            return cache[x]
        if isinstance(x, Base):
            if x.name not in env:
                raise MsoError(f"unresolved language name {x.name!r}")
            L = env[x.name]
            if signature is None:
                signature = L.signature
            elif L.signature != signature:
                raise MsoError(f"language {x.name!r} is over monad {L.signature.monad!r}, "
                               f"expected {signature.monad!r}")
            out = finish(L)
        elif isinstance(x, Not):
            out = boolean("not", go(x.arg))
        elif isinstance(x, (And, Or)):
            out = finish(boolean("and" if isinstance(x, And) else "or", go(x.left), go(x.right)))
        elif isinstance(x, InvImage):
            out = finish(inverse_image(go(x.arg), dict(x.sub)))
        elif isinstance(x, Image):
            out = finish(relabel_image(go(x.arg), dict(x.mapping), dict(x.extra)))
        else:
            raise MsoError(f"not an expression: {x!r}")
        cache[x] = out
        return out

    return go(e)


def satisfiable(e: MsoExpr, env: Mapping[str, Language]) -> tuple[bool, Term | None]:
    w = find_witness(compile(e, env))
    return w is not None, w


def preimages(t: Term, mapping: Mapping[str, str]) -> set:
    """All terms that the relabeling sends to ``t``."""
    if isinstance(t, Letter):
        return {Letter(x) for x, y in mapping.items() if y == t.name}
    choices = []
    for a in t.args:
        if isinstance(a, frozenset):
            per_member = [[frozenset(c) for k in range(1, len(ps) + 1)
                           for c in itertools.combinations(sorted(ps, key=str), k)]
                          for ps in (preimages(m, mapping) for m in a)]
            choices.append({frozenset().union(*pick) for pick in itertools.product(*per_member)})
        else:
            choices.append(preimages(a, mapping))
    return {Node(t.op, args) for args in itertools.product(*choices)}


def member(e: MsoExpr, env: Mapping[str, Language], t: Term) -> bool:
    """Membership straight from the definitions, without building any algebra."""
    if isinstance(e, Base):
        return t in env[e.name]
    if isinstance(e, Not):
        return not member(e.arg, env, t)
    if isinstance(e, And):
        return member(e.left, env, t) and member(e.right, env, t)
    if isinstance(e, Or):
        return member(e.left, env, t) or member(e.right, env, t)
    if isinstance(e, InvImage):
        return member(e.arg, env, substitute(t, dict(e.sub)))
    return any(member(e.arg, env, u) for u in preimages(t, dict(e.mapping)))


# ---------------------------------------------------------------------------
# JSON: {"expr": {...}, "env": {name: language path}}

def expr_from_json(doc, where: str = "$") -> MsoExpr:
    kind = io.require(doc, "op", where, str)
    if kind == "base":
        return Base(io.require(doc, "name", where, str))
    if kind == "not":
        return Not(expr_from_json(io.require(doc, "arg", where), f"{where}.arg"))
    if kind in ("and", "or"):
        args = io.require(doc, "args", where, list)
        if len(args) < 2:
            raise io.FormatError(f"{kind!r} needs at least two arguments", f"{where}.args")
        parts = [expr_from_json(a, f"{where}.args[{i}]") for i, a in enumerate(args)]
        cls = And if kind == "and" else Or
        out = parts[0]
        for p in parts[1:]:
            out = cls(out, p)
        return out
    if kind == "inv_image":
        sub = io.require(doc, "sub", where, dict)
        terms = {x: io.term_from_json(t, f"{where}.sub.{x}") for x, t in sub.items()}
        return InvImage.of(expr_from_json(io.require(doc, "arg", where), f"{where}.arg"), terms)
    if kind == "image":
        mapping = io.require(doc, "map", where, dict)
        extra = doc.get("extra", {})
        return Image.of(expr_from_json(io.require(doc, "arg", where), f"{where}.arg"), mapping, extra)
    raise io.FormatError(f"unknown expression op {kind!r}", f"{where}.op")


def expr_to_json(e: MsoExpr):
    if isinstance(e, Base):
        return {"op": "base", "name": e.name}
    if isinstance(e, Not):
        return {"op": "not", "arg": expr_to_json(e.arg)}
    if isinstance(e, (And, Or)):
        return {"op": "and" if isinstance(e, And) else "or",
                "args": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, InvImage):
        return {"op": "inv_image", "arg": expr_to_json(e.arg),
                "sub": {x: io.term_to_json(t) for x, t in e.sub}}
    doc = {"op": "image", "arg": expr_to_json(e.arg), "map": dict(e.mapping)}
    if e.extra:
        doc["extra"] = dict(e.extra)
    return doc


def load_problem(path) -> tuple[MsoExpr, dict[str, Language]]:
    path = Path(path)
    doc = io.load_file(path)
    try:
        expr = expr_from_json(io.require(doc, "expr", "$"), "$.expr")
        env_doc = io.require(doc, "env", "$", dict)
    except io.FormatError as exc:
        raise io.with_source(exc, path) from None
    env = {}
    for name, ref in env_doc.items():
        if isinstance(ref, str):
            env[name] = io.load_language(path.parent / ref)
        else:
            try:
                env[name] = io.language_from_json(ref, path.parent, f"$.env.{name}")
            except io.FormatError as exc:
                raise io.with_source(exc, path) from None
    return expr, env
