"""JSON documents for algebras, morphisms, languages and ground terms.

Writers emit keys in a fixed order and list elements in carrier order and
table entries in canonical shape order, so a document read back and written
again is byte-identical.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .core import (Algebra, AlgebraError, Language, Letter, Morphism, Node, Term, instance_for,
                   iter_shapes)


class FormatError(ValueError):
    """A document that does not parse or does not match its schema."""

    def __init__(self, message: str, where: str = "", source: str | None = None):
        self.message = message
        self.where = where
        self.source = source
        prefix = f"{source}: " if source else ""
        suffix = f" (at {where})" if where else ""
        super().__init__(f"{prefix}{message}{suffix}")


# ---------------------------------------------------------------------------
# reading

def loads(text: str, source: str | None = None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}", source) from None


def load_file(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", source=str(path)) from None
    return loads(text, str(path))


_PATH_PART = re.compile(r"\.([^.\[]+)|\[(\d+)\]")
_WS = re.compile(r"\s*")
_DECODER = json.JSONDecoder()


def locate(text: str, where: str) -> tuple[int, int] | None:
    """Line and column of the value at a ``$.key[i]...`` path, or None."""
    parts = [k if k else int(i) for k, i in _PATH_PART.findall(where)]
    pos = _WS.match(text, 0).end()
    try:
        for part in parts:
            if isinstance(part, str) and text[pos] == "{":
                pos = _WS.match(text, pos + 1).end()
                while text[pos] != "}":
                    key, pos = _DECODER.raw_decode(text, pos)
                    pos = _WS.match(text, _WS.match(text, pos).end() + 1).end()
                    if key == part:
                        break
                    _, pos = _DECODER.raw_decode(text, pos)
                    pos = _WS.match(text, pos).end()
                    if text[pos] == ",":
                        pos = _WS.match(text, pos + 1).end()
                else:
                    return None
            elif isinstance(part, int) and text[pos] == "[":
                pos = _WS.match(text, pos + 1).end()
                for _ in range(part):
                    _, pos = _DECODER.raw_decode(text, pos)
                    pos = _WS.match(text, _WS.match(text, pos).end() + 1).end()
            else:
                return None
    except (IndexError, json.JSONDecodeError):
        return None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def require(doc, key, where, kind=None):
    if not isinstance(doc, dict):
        raise FormatError("expected an object", where)
    if key not in doc:
        raise FormatError(f"missing key {key!r}", where)
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise FormatError(f"{key!r} must be of type {names}", f"{where}.{key}")
    return value


def algebra_from_json(doc, where: str = "$") -> Algebra:
    monad = require(doc, "monad", where, str)
    params = doc.get("params") or {}
    try:
        sig = instance_for(monad).signature(params)
    except AlgebraError as exc:
        raise FormatError(str(exc), f"{where}.monad") from None
    sorts = require(doc, "sorts", where, list)
    if list(sorts) != list(sig.sorts):
        raise FormatError(f"sorts {sorts} do not match monad {monad!r} sorts {list(sig.sorts)}",
                          f"{where}.sorts")
    elements = {}
    for i, e in enumerate(require(doc, "elements", where, list)):
        w = f"{where}.elements[{i}]"
        eid = require(e, "id", w, str)
        if eid in elements:
            raise FormatError(f"duplicate element id {eid!r}", w)
        elements[eid] = require(e, "sort", w, str)
    table = {}
    for i, row in enumerate(require(doc, "table", where, list)):
        w = f"{where}.table[{i}]"
        name = require(row, "op", w, str)
        args = require(row, "args", w, list)
        value = require(row, "value", w, str)
        try:
            o = sig.op(name)
        except AlgebraError as exc:
            raise FormatError(str(exc), f"{w}.op") from None
        if len(args) != o.arity:
            raise FormatError(f"{name} expects {o.arity} arguments, got {len(args)}", f"{w}.args")
        canon = []
        for j, (slot, a) in enumerate(zip(o.slots, args)):
            if slot.is_set != isinstance(a, list):
                kind = "an array of ids" if slot.is_set else "an element id"
                raise FormatError(f"argument must be {kind}", f"{w}.args[{j}]")
            canon.append(frozenset(a) if slot.is_set else a)
        key = (name, tuple(canon))
        if key in table:
            raise FormatError("duplicate table entry", w)
        table[key] = value
    try:
        return Algebra(sig, elements, table)
    except AlgebraError as exc:
        raise FormatError(str(exc), f"{where}.table") from None


def _resolve_algebra(doc, base: Path | None, where: str) -> Algebra:
    ref = require(doc, "algebra", where)
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        return algebra_from_json(load_file(path))
    return algebra_from_json(ref, f"{where}.algebra")


def morphism_from_json(doc, base: Path | None = None, where: str = "$") -> Morphism:
    alg = _resolve_algebra(doc, base, where)
    alphabet = {}
    for i, entry in enumerate(require(doc, "alphabet", where, list)):
        w = f"{where}.alphabet[{i}]"
        alphabet[require(entry, "id", w, str)] = require(entry, "sort", w, str)
    units = require(doc, "units", where, dict)
    try:
        return Morphism(alphabet, alg, dict(units))
    except AlgebraError as exc:
        raise FormatError(str(exc), f"{where}.units") from None


def language_from_json(doc, base: Path | None = None, where: str = "$") -> Language:
    h = morphism_from_json(doc, base, where)
    accepting = require(doc, "accepting", where, list)
    try:
        return Language(h, frozenset(accepting))
    except AlgebraError as exc:
        raise FormatError(str(exc), f"{where}.accepting") from None


def term_from_json(doc, where: str = "$") -> Term:
    if isinstance(doc, str):
        return Letter(doc)
    if isinstance(doc, dict) and "set" in doc:
        raise FormatError("a set is only allowed as an argument", where)
    name = require(doc, "op", where, str)
    args = []
    for i, a in enumerate(require(doc, "args", where, list)):
        w = f"{where}.args[{i}]"
        if isinstance(a, dict) and "set" in a:
            members = require(a, "set", w, list)
            if not members:
                raise FormatError("a set argument must be nonempty", w)
            args.append(frozenset(term_from_json(m, f"{w}.set[{k}]") for k, m in enumerate(members)))
        else:
            args.append(term_from_json(a, w))
    return Node(name, tuple(args))


def load_algebra(path) -> Algebra:
    return _with_source(lambda doc, base: algebra_from_json(doc), path)


def load_morphism(path) -> Morphism:
    return _with_source(morphism_from_json, path)


def load_language(path) -> Language:
    return _with_source(language_from_json, path)


def load_term(path) -> Term:
    return _with_source(lambda doc, base: term_from_json(doc), path)


def with_source(exc: FormatError, path) -> FormatError:
    """Attach a file name and, for schema errors, the line and column of the offending value."""
    where = exc.where
    if where.startswith("$"):
        try:
            found = locate(Path(path).read_text(encoding="utf-8"), where)
        except OSError:
            found = None
        if found:
            where = f"{where}, line {found[0]}, column {found[1]}"
    return FormatError(exc.message, where, str(path))


def _with_source(reader, path):
    path = Path(path)
    try:
        return reader(load_file(path), path.parent)
    except FormatError as exc:
        if exc.source:
            raise
        raise with_source(exc, path) from None


# ---------------------------------------------------------------------------
# writing

def _arg_json(alg: Algebra, a):
    if isinstance(a, frozenset):
        order = {e: i for i, e in enumerate(alg.elements)}
        return sorted(a, key=order.__getitem__)
    return a


def algebra_to_json(alg: Algebra) -> dict:
    table = [{"op": name, "args": [_arg_json(alg, a) for a in args], "value": alg.table[(name, args)]}
             for name, args in iter_shapes(alg.signature, alg.by_sort())]
    return {
        "monad": alg.monad,
        "params": dict(alg.signature.params),
        "sorts": list(alg.signature.sorts),
        "elements": [{"id": e, "sort": s} for e, s in alg.elements.items()],
        "table": table,
    }


def morphism_to_json(h: Morphism) -> dict:
    return {
        "algebra": algebra_to_json(h.target),
        "alphabet": [{"id": x, "sort": s} for x, s in h.alphabet.items()],
        "units": dict(h.units),
    }


def language_to_json(L: Language) -> dict:
    doc = morphism_to_json(L.morphism)
    doc["accepting"] = [e for e in L.algebra.elements if e in L.accepting]
    return doc


def term_to_json(t: Term):
    if isinstance(t, Letter):
        return t.name
    args = []
    for a in t.args:
        if isinstance(a, frozenset):
            args.append({"set": sorted((term_to_json(m) for m in a), key=dumps)})
        else:
            args.append(term_to_json(a))
    return {"op": t.op, "args": args}


def dumps(doc) -> str:
    """Canonical JSON text: sorted keys, two-space indent, UTF-8 characters kept."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def save(doc, path) -> None:
    Path(path).write_text(dumps(doc) + "\n", encoding="utf-8")
