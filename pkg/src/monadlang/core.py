"""Finite algebras represented by reduct tables, and the generic constructions on them.

An algebra is stored as a total table over the *shapes* of a signature: an
operation symbol applied to carrier elements (single slots) or nonempty sets
of carrier elements (set slots).  Every monad instance contributes one
signature, an axiom checker and (where possible) a powerset evaluator; the
constructions here only ever consult the table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class AlgebraError(ValueError):
    """Base class for malformed algebras, morphisms and languages."""


class SortError(AlgebraError):
    pass


class IncompleteTable(AlgebraError):
    def __init__(self, shape):
        self.shape = shape
        super().__init__(f"table not total: missing {format_shape(shape)}")


class SignatureMismatch(AlgebraError):
    pass


class AlphabetMismatch(AlgebraError):
    pass


class PowersetUnsupported(AlgebraError):
    pass


class NotACongruence(AlgebraError):
    def __init__(self, first, second, first_value, second_value):
        self.witness = (first, second)
        super().__init__(
            "not a congruence: "
            f"{format_shape(first)} = {first_value} and "
            f"{format_shape(second)} = {second_value} land in different blocks"
        )


# ---------------------------------------------------------------------------
# signatures

@dataclass(frozen=True)
class Slot:
    sort: str
    is_set: bool = False


@dataclass(frozen=True)
class Op:
    name: str
    slots: tuple[Slot, ...]
    result: str

    @property
    def arity(self) -> int:
        return len(self.slots)


@dataclass(frozen=True, eq=False)
class Signature:
    monad: str
    sorts: tuple[str, ...]
    ops: tuple[Op, ...]
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if not self.sorts:
            raise SortError("a signature needs at least one sort")
        names = [op.name for op in self.ops]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate operation names in {names}")
        for op in self.ops:
            for s in (op.result, *(slot.sort for slot in op.slots)):
                if s not in self.sorts:
                    raise SortError(f"operation {op.name} uses unknown sort {s!r}")
        object.__setattr__(self, "_by_name", {op.name: op for op in self.ops})

    def op(self, name: str) -> Op:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown operation {name!r} for monad {self.monad!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return (self.monad, self.sorts, self.ops, dict(self.params)) == (
            other.monad, other.sorts, other.ops, dict(other.params))

    def __hash__(self):
        return hash((self.monad, self.sorts, self.ops))


def op(name: str, *slots, result: str = "s") -> Op:
    """Shorthand: ``op("concat", "s", "s")``; a slot given as ``{"s"}`` is a set slot."""
    parsed = []
    for slot in slots:
        if isinstance(slot, Slot):
            parsed.append(slot)
        elif isinstance(slot, (set, frozenset)):
            (sort,) = slot
            parsed.append(Slot(sort, True))
        else:
            parsed.append(Slot(slot))
    return Op(name, tuple(parsed), result)


# ---------------------------------------------------------------------------
# shapes

# A shape is ``(op_name, args)`` where each arg is an element id (single slot)
# or a frozenset of element ids (set slot).
Shape = tuple


def format_shape(shape) -> str:
    name, args = shape
    parts = []
    for arg in args:
        if isinstance(arg, frozenset):
            parts.append("{" + ",".join(sorted(arg)) + "}")
        else:
            parts.append(str(arg))
    return f"{name}({','.join(parts)})"


def nonempty_subsets(items: Sequence) -> Iterator[frozenset]:
    for k in range(1, len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def all_subsets(items: Sequence) -> Iterator[frozenset]:
    yield frozenset()
    yield from nonempty_subsets(items)


def iter_shapes(signature: Signature, by_sort: Mapping[str, Sequence[str]]) -> Iterator[Shape]:
    """All shapes over the given elements, in canonical order."""
    for o in signature.ops:
        choices = []
        for slot in o.slots:
            pool = list(by_sort.get(slot.sort, ()))
            choices.append(list(nonempty_subsets(pool)) if slot.is_set else pool)
        for args in itertools.product(*choices):
            yield (o.name, tuple(args))


# ---------------------------------------------------------------------------
# algebras

class Algebra:
    """A finite sorted carrier together with a reduct table."""

    def __init__(self, signature: Signature, elements: Mapping[str, str], table: Mapping):
        self.signature = signature
        self.elements: dict[str, str] = dict(elements)
        for e, s in self.elements.items():
            if s not in signature.sorts:
                raise SortError(f"element {e!r} has unknown sort {s!r}")
        self.table: dict = {}
        for shape, value in table.items():
            self.table[self._check_shape(shape)] = value
            if value not in self.elements:
                raise AlgebraError(f"{format_shape(shape)} = {value!r}: value not in carrier")
            if self.elements[value] != signature.op(shape[0]).result:
                raise SortError(f"{format_shape(shape)} = {value!r}: wrong result sort")

    def _check_shape(self, shape) -> Shape:
        name, args = shape
        o = self.signature.op(name)
        if len(args) != o.arity:
            raise AlgebraError(f"{name} expects {o.arity} arguments, got {len(args)}")
        canon = []
        for slot, arg in zip(o.slots, args):
            if slot.is_set:
                arg = frozenset(arg)
                members = arg
            else:
                members = (arg,)
            for m in members:
                if m not in self.elements:
                    raise AlgebraError(f"{format_shape(shape)}: {m!r} not in carrier")
                if self.elements[m] != slot.sort:
                    raise SortError(f"{format_shape(shape)}: {m!r} has sort "
                                    f"{self.elements[m]!r}, slot wants {slot.sort!r}")
            canon.append(arg)
        return (name, tuple(canon))

    # -- access ---------------------------------------------------------------

    @property
    def monad(self) -> str:
        return self.signature.monad

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.elements

    def __repr__(self):
        return f"<Algebra {self.monad} |{len(self)}| {list(self.elements)}>"

    def sort_of(self, e: str) -> str:
        return self.elements[e]

    def by_sort(self, subset: Iterable[str] | None = None) -> dict[str, list[str]]:
        keep = self.elements if subset is None else set(subset)
        out: dict[str, list[str]] = {s: [] for s in self.signature.sorts}
        for e, s in self.elements.items():
            if e in keep:
                out[s].append(e)
        return out

    def mul(self, name: str, *args) -> str:
        key = (name, tuple(frozenset(a) if isinstance(a, (set, frozenset)) else a for a in args))
        try:
            return self.table[key]
        except KeyError:
            raise IncompleteTable(key) from None

    def apply(self, name: str, args: tuple) -> str:
        """Table lookup for a canonical shape ``(name, args)``."""
        try:
            return self.table[(name, args)]
        except KeyError:
            raise IncompleteTable((name, args)) from None

    def shapes(self, subset: Iterable[str] | None = None) -> Iterator[Shape]:
        return iter_shapes(self.signature, self.by_sort(subset))

    def missing_shape(self):
        for shape in self.shapes():
            if shape not in self.table:
                return shape
        return None

    def same_as(self, other: "Algebra") -> bool:
        return (self.signature == other.signature and self.elements == other.elements
                and self.table == other.table)


def tabulate(signature: Signature, elements: Mapping[str, str],
             fn: Callable[..., str]) -> Algebra:
    """Build an algebra by calling ``fn(op_name, *args)`` on every shape."""
    by_sort: dict[str, list[str]] = {s: [] for s in signature.sorts}
    for e, s in elements.items():
        by_sort[s].append(e)
    table = {shape: fn(shape[0], *shape[1]) for shape in iter_shapes(signature, by_sort)}
    return Algebra(signature, elements, table)


def restrict(alg: Algebra, subset: Iterable[str]) -> Algebra:
    """The subalgebra on a closed subset."""
    keep = set(subset)
    elements = {e: s for e, s in alg.elements.items() if e in keep}
    table = {shape: alg.table[shape] for shape in iter_shapes(alg.signature, _group(elements, alg))}
    for shape, value in table.items():
        if value not in keep:
            raise AlgebraError(f"subset not closed: {format_shape(shape)} = {value}")
    return Algebra(alg.signature, elements, table)


def _group(elements: Mapping[str, str], alg: Algebra) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {s: [] for s in alg.signature.sorts}
    for e, s in elements.items():
        out[s].append(e)
    return out


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(map(str, self.witness))
        return f"{self.axiom} fails at ({w})" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    monad: str
    violations: list[Violation]
    missing: Shape | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.missing is None and not self.violations

    def __bool__(self):
        return self.ok


@dataclass
class Instance:
    """What a monad instance contributes to the generic machinery."""

    monad: str
    signature: Callable[..., Signature]
    axioms: Callable[[Algebra], Iterator[Violation]]
    powerset_op: Callable[[Algebra, str, tuple], frozenset] | None = None
    note: str = ""


_INSTANCES: dict[str, Instance] = {}


def register(instance: Instance) -> Instance:
    _INSTANCES[instance.monad] = instance
    return instance


def instance_for(monad: str) -> Instance:
    try:
        return _INSTANCES[monad]
    except KeyError:
        raise AlgebraError(f"unknown monad {monad!r}") from None


def validate(alg: Algebra, limit: int | None = None) -> ValidationReport:
    inst = instance_for(alg.monad)
    missing = alg.missing_shape()
    if missing is not None:
        return ValidationReport(alg.monad, [], missing=missing, note=inst.note)
    violations = list(itertools.islice(inst.axioms(alg), limit))
    return ValidationReport(alg.monad, violations, note=inst.note)


# ---------------------------------------------------------------------------
# ground terms

@dataclass(frozen=True)
class Letter:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple  # each arg a term, or a frozenset of terms for set slots

    def __str__(self):
        parts = []
        for a in self.args:
            if isinstance(a, frozenset):
                parts.append("{" + ",".join(sorted(map(str, a))) + "}")
            else:
                parts.append(str(a))
        return f"{self.op}({','.join(parts)})"


Term = Letter | Node


def term_size(t: Term) -> int:
    """Number of shape nodes."""
    if isinstance(t, Letter):
        return 0
    n = 1
    for a in t.args:
        n += sum(map(term_size, a)) if isinstance(a, frozenset) else term_size(a)
    return n


def term_letters(t: Term) -> set[str]:
    if isinstance(t, Letter):
        return {t.name}
    out: set[str] = set()
    for a in t.args:
        for sub in (a if isinstance(a, frozenset) else (a,)):
            out |= term_letters(sub)
    return out


def relabel_term(t: Term, f: Mapping[str, str]) -> Term:
    if isinstance(t, Letter):
        return Letter(f[t.name])
    return Node(t.op, tuple(frozenset(relabel_term(s, f) for s in a) if isinstance(a, frozenset)
                            else relabel_term(a, f) for a in t.args))


def substitute(t: Term, sub: Mapping[str, Term]) -> Term:
    if isinstance(t, Letter):
        return sub[t.name]
    return Node(t.op, tuple(frozenset(substitute(s, sub) for s in a) if isinstance(a, frozenset)
                            else substitute(a, sub) for a in t.args))


def term_sort(signature: Signature, alphabet: Mapping[str, str], t: Term) -> str:
    """Sort of a ground term, checking sort-correctness throughout."""
    if isinstance(t, Letter):
        try:
            return alphabet[t.name]
        except KeyError:
            raise AlgebraError(f"unknown letter {t.name!r}") from None
    o = signature.op(t.op)
    if len(t.args) != o.arity:
        raise AlgebraError(f"{t.op} expects {o.arity} arguments")
    for slot, a in zip(o.slots, t.args):
        subs = a if slot.is_set else (a,)
        if slot.is_set and not isinstance(a, frozenset):
            raise AlgebraError(f"{t.op}: set slot needs a set of terms")
        if slot.is_set and not a:
            raise AlgebraError(f"{t.op}: empty set slot")
        for sub in subs:
            if term_sort(signature, alphabet, sub) != slot.sort:
                raise SortError(f"{t.op}: argument {sub} has the wrong sort")
    return o.result


def _enumerate(signature: Signature, alphabet: Mapping[str, str], max_size: int,
               morphisms: Sequence["Morphism"] = ()) -> dict[str, list[list[tuple]]]:
    """Entries ``(term, values)`` by sort and node count; values under each morphism."""
    out: dict[str, list[list[tuple]]] = {s: [[] for _ in range(max_size + 1)]
                                         for s in signature.sorts}
    for x, s in sorted(alphabet.items()):
        out[s][0].append((Letter(x), tuple(h.units[x] for h in morphisms)))

    def sets_of(sort, budget, start_size=0, start_index=0):
        # distinct members in (size, index) order so each set is produced once
        if budget == 0:
            yield ()
            return
        for size in range(start_size, budget + 1):
            pool = out[sort][size]
            first = start_index if size == start_size else 0
            for i in range(first, len(pool)):
                for rest in sets_of(sort, budget - size, size, i + 1):
                    yield (pool[i], *rest)

    def fill(slots, budget):
        if not slots:
            if budget == 0:
                yield ()
            return
        slot, rest = slots[0], slots[1:]
        for k in range(budget + 1):
            if slot.is_set:
                choices = [(frozenset(t for t, _ in m),
                            tuple(frozenset(v[j] for _, v in m) for j in range(len(morphisms))))
                           for m in sets_of(slot.sort, k) if m]
            else:
                choices = out[slot.sort][k]
            for c in choices:
                for tail in fill(rest, budget - k):
                    yield (c, *tail)

    def plain(slots, budget):
        # no set slots: split the budget, then take every combination
        for sizes in itertools.product(range(budget + 1), repeat=len(slots)):
            if sum(sizes) == budget:
                yield from itertools.product(*(out[sl.sort][k] for sl, k in zip(slots, sizes)))

    tables = [h.target.table for h in morphisms]
    for n in range(1, max_size + 1):
        for o in signature.ops:
            name = o.name
            layer = out[o.result][n]
            args_of = fill if any(sl.is_set for sl in o.slots) else plain
            for args in args_of(o.slots, n - 1):
                term = Node(name, tuple([t for t, _ in args]))
                values = tuple([tab[(name, tuple([v[j] for _, v in args]))]
                                for j, tab in enumerate(tables)])
                layer.append((term, values))
    return out


def ground_terms(signature: Signature, alphabet: Mapping[str, str],
                 max_size: int) -> dict[str, list[list[Term]]]:
    """All ground terms with at most ``max_size`` shape nodes, as ``out[sort][n]``.

    Set slots take nonempty sets of distinct terms.
    """
    table = _enumerate(signature, alphabet, max_size)
    return {s: [[t for t, _ in layer] for layer in layers] for s, layers in table.items()}


def evaluated_terms(morphisms: Sequence["Morphism"], max_size: int):
    """Yield ``(term, values)`` for every ground term up to ``max_size`` nodes.

    All morphisms must share alphabet and signature; values are computed
    bottom-up, one table lookup per node and morphism.
    """
    first = morphisms[0]
    for h in morphisms[1:]:
        if h.alphabet != first.alphabet:
            raise AlphabetMismatch("morphisms must share an alphabet")
        _check_same_signature(first.target, h.target)
    table = _enumerate(first.signature, first.alphabet, max_size, morphisms)
    for s in first.signature.sorts:
        for layer in table[s]:
            yield from layer


def iter_ground_terms(signature: Signature, alphabet: Mapping[str, str], max_size: int):
    table = ground_terms(signature, alphabet, max_size)
    for s in signature.sorts:
        for layer in table[s]:
            yield from layer


# ---------------------------------------------------------------------------
# morphisms and languages

@dataclass(eq=False)
class Morphism:
    alphabet: dict[str, str]
    target: Algebra
    units: dict[str, str]

    def __post_init__(self):
        for letter, sort in self.alphabet.items():
            if letter not in self.units:
                raise AlgebraError(f"letter {letter!r} has no unit image")
            e = self.units[letter]
            if e not in self.target.elements:
                raise AlgebraError(f"unit image {e!r} of {letter!r} not in carrier")
            if self.target.sort_of(e) != sort:
                raise SortError(f"letter {letter!r} of sort {sort!r} mapped to {e!r} "
                                f"of sort {self.target.sort_of(e)!r}")
        extra = set(self.units) - set(self.alphabet)
        if extra:
            raise AlgebraError(f"unit images for letters outside the alphabet: {sorted(extra)}")

    @property
    def signature(self) -> Signature:
        return self.target.signature

    def __call__(self, t: Term) -> str:
        return evaluate(self, t)


@dataclass(eq=False)
class Language:
    morphism: Morphism
    accepting: frozenset

    def __post_init__(self):
        self.accepting = frozenset(self.accepting)
        bad = self.accepting - set(self.morphism.target.elements)
        if bad:
            raise AlgebraError(f"accepting elements not in carrier: {sorted(bad)}")

    @property
    def alphabet(self) -> dict[str, str]:
        return self.morphism.alphabet

    @property
    def algebra(self) -> Algebra:
        return self.morphism.target

    @property
    def signature(self) -> Signature:
        return self.morphism.target.signature

    def __contains__(self, t: Term) -> bool:
        return evaluate(self.morphism, t) in self.accepting


def evaluate(h: Morphism, t: Term) -> str:
    """Homomorphic extension of the unit images."""
    if isinstance(t, Letter):
        try:
            return h.units[t.name]
        except KeyError:
            raise AlgebraError(f"unknown letter {t.name!r}") from None
    alg = h.target
    o = alg.signature.op(t.op)
    if len(t.args) != o.arity:
        raise AlgebraError(f"{t.op} expects {o.arity} arguments")
    args = []
    for slot, a in zip(o.slots, t.args):
        if slot.is_set:
            if not isinstance(a, frozenset) or not a:
                raise AlgebraError(f"{t.op}: set slot needs a nonempty set of terms")
            vals = frozenset(evaluate(h, s) for s in a)
            if any(alg.sort_of(v) != slot.sort for v in vals):
                raise SortError(f"{t.op}: argument of the wrong sort")
            args.append(vals)
        else:
            if isinstance(a, frozenset):
                raise AlgebraError(f"{t.op}: single slot given a set")
            v = evaluate(h, a)
            if alg.sort_of(v) != slot.sort:
                raise SortError(f"{t.op}: argument {a} has sort {alg.sort_of(v)!r}, "
                                f"slot wants {slot.sort!r}")
            args.append(v)
    return alg.mul(t.op, *args)


# ---------------------------------------------------------------------------
# closure

def _close(signature: Signature, seeds: Mapping[str, object], sort_of: Callable[[str], str],
           apply: Callable[[str, tuple], str]) -> dict[str, object]:
    """Breadth-first closure under all shapes, remembering one producing term per element.

    ``seeds`` maps element -> provenance (a term, or None).  Each round applies
    every shape over the elements known at the start of the round, so the
    first recorded provenance of an element has minimal depth.
    """
    found: dict[str, object] = dict(seeds)
    seen_shapes: set = set()
    while True:
        by_sort: dict[str, list[str]] = {s: [] for s in signature.sorts}
        for e in found:
            by_sort[sort_of(e)].append(e)
        new: dict[str, object] = {}
        for shape in iter_shapes(signature, by_sort):
            if shape in seen_shapes:
                continue
            seen_shapes.add(shape)
            value = apply(*shape)
            if value in found or value in new:
                continue
            new[value] = _provenance(shape, found)
        if not new:
            return found
        found.update(new)


def _provenance(shape, found):
    name, args = shape
    parts = []
    for a in args:
        if isinstance(a, frozenset):
            subs = [found[m] for m in a]
            if any(s is None for s in subs):
                return None
            parts.append(frozenset(subs))
        else:
            if found[a] is None:
                return None
            parts.append(found[a])
    return Node(name, tuple(parts))


def subalgebra_closure(alg: Algebra, subset: Iterable[str]) -> frozenset:
    """Least superset of ``subset`` closed under the table."""
    seeds = dict.fromkeys(subset)
    for e in seeds:
        if e not in alg.elements:
            raise AlgebraError(f"{e!r} not in carrier")
    return frozenset(_close(alg.signature, seeds, alg.sort_of, alg.apply))


def _unit_seeds(h: Morphism) -> dict[str, Term]:
    seeds: dict[str, Term] = {}
    for letter in sorted(h.alphabet):
        seeds.setdefault(h.units[letter], Letter(letter))
    return seeds


def reachable(h: Morphism) -> dict[str, Term]:
    """Every element in the image of ``h``, with a minimal-depth ground term mapping to it."""
    return _close(h.signature, _unit_seeds(h), h.target.sort_of, h.target.apply)


def image(h: Morphism) -> frozenset:
    return frozenset(reachable(h))


def _ordered(alg: Algebra, subset) -> list[str]:
    return [e for e in alg.elements if e in subset]


def reachable_part(h: Morphism) -> Morphism:
    """Corestriction of ``h`` to its image."""
    img = image(h)
    return Morphism(dict(h.alphabet), restrict(h.target, _ordered(h.target, img)), dict(h.units))


# ---------------------------------------------------------------------------
# generated algebras (products, powersets)

def generate(signature: Signature, seeds: Mapping[str, str], apply: Callable[[str, tuple], str],
             sort_of: Callable[[str], str] | None = None) -> Algebra:
    """Subalgebra generated by ``seeds`` (id -> sort) inside an implicitly given algebra."""
    sorts = dict(seeds)

    def _sort(e):
        return sorts[e]

    table: dict = {}

    def _apply(name, args):
        value = apply(name, args)
        table[(name, args)] = value
        sorts[value] = signature.op(name).result
        return value

    found = _close(signature, dict.fromkeys(seeds), _sort, _apply)
    elements = {e: sorts[e] for e in found}
    # the closure may have skipped shapes whose value was already known; fill them in
    by_sort = {s: [e for e in elements if elements[e] == s] for s in signature.sorts}
    for shape in iter_shapes(signature, by_sort):
        if shape not in table:
            table[shape] = apply(*shape)
    return Algebra(signature, elements, {k: table[k] for k in iter_shapes(signature, by_sort)})


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def _check_same_signature(A: Algebra, B: Algebra):
    if A.signature != B.signature:
        raise SignatureMismatch(f"signatures differ: {A.monad!r} vs {B.monad!r}")


def _pair_apply(A: Algebra, B: Algebra, components: dict[str, tuple[str, str]]):
    def apply(name, args):
        left, right = [], []
        for a in args:
            if isinstance(a, frozenset):
                left.append(frozenset(components[x][0] for x in a))
                right.append(frozenset(components[x][1] for x in a))
            else:
                left.append(components[a][0])
                right.append(components[a][1])
        pa, pb = A.mul(name, *left), B.mul(name, *right)
        pid = pair_id(pa, pb)
        components.setdefault(pid, (pa, pb))
        return pid
    return apply


def product(A: Algebra, B: Algebra) -> Algebra:
    """Componentwise product over sort-wise pairs.

    A set slot over pairs is evaluated on the two projections of the set.
    """
    _check_same_signature(A, B)
    components: dict[str, tuple[str, str]] = {}
    elements = {}
    for a, s in A.elements.items():
        for b, t in B.elements.items():
            if s == t:
                pid = pair_id(a, b)
                if pid in components:
                    raise AlgebraError(f"pair id collision at {pid!r}")
                components[pid] = (a, b)
                elements[pid] = s
    apply = _pair_apply(A, B, components)
    return tabulate(A.signature, elements, lambda name, *args: apply(name, args))


def pair_morphism(h: Morphism, g: Morphism, full: bool = False) -> Morphism:
    """The morphism ``t -> (h(t), g(t))``.

    By default the target is the subalgebra of the product generated by the
    unit images; ``full=True`` targets the whole product.
    """
    _check_same_signature(h.target, g.target)
    if h.alphabet != g.alphabet:
        raise AlphabetMismatch("morphisms have different alphabets")
    units = {x: pair_id(h.units[x], g.units[x]) for x in h.alphabet}
    if full:
        return Morphism(dict(h.alphabet), product(h.target, g.target), units)
    components = {pair_id(h.units[x], g.units[x]): (h.units[x], g.units[x]) for x in h.alphabet}
    seeds = {units[x]: h.alphabet[x] for x in sorted(h.alphabet)}
    apply = _pair_apply(h.target, g.target, components)
    target = generate(h.signature, seeds, apply)
    return Morphism(dict(h.alphabet), target, units)


def components_of(alg: Algebra, A: Algebra, B: Algebra) -> dict[str, tuple[str, str]]:
    """Recover the pair decomposition of product element ids."""
    lookup = {pair_id(a, b): (a, b) for a in A.elements for b in B.elements}
    return {e: lookup[e] for e in alg.elements}


def subset_id(alg: Algebra, subset: Iterable[str], sort: str) -> str:
    members = _ordered(alg, set(subset))
    if not members:
        return "{}" if len(alg.signature.sorts) == 1 else "{}" + sort
    return "{" + ",".join(members) + "}"


def _powerset_apply(A: Algebra, sets: dict[str, frozenset]):
    inst = instance_for(A.monad)
    if inst.powerset_op is None:
        raise PowersetUnsupported(f"powerset unsupported for monad {A.monad!r}")

    def apply(name, args):
        o = A.signature.op(name)
        concrete = []
        for slot, a in zip(o.slots, args):
            if slot.is_set:
                concrete.append(frozenset(sets[x] for x in a))
            else:
                concrete.append(sets[a])
        if any(not slot.is_set and not c for slot, c in zip(o.slots, concrete)):
            value = frozenset()
        else:
            value = frozenset(inst.powerset_op(A, name, tuple(concrete)))
        sid = subset_id(A, value, o.result)
        sets.setdefault(sid, value)
        return sid
    return apply


def powerset(A: Algebra) -> Algebra:
    """The powerset algebra: carrier is every subset of every sort, products taken pointwise."""
    elements: dict[str, str] = {}
    sets: dict[str, frozenset] = {}
    for s, members in A.by_sort().items():
        for sub in all_subsets(members):
            sid = subset_id(A, sub, s)
            elements[sid] = s
            sets[sid] = sub
    apply = _powerset_apply(A, sets)
    return tabulate(A.signature, elements, lambda name, *args: apply(name, args))


def powerset_members(alg: Algebra, A: Algebra) -> dict[str, frozenset]:
    """Decode powerset element ids back into subsets of ``A``."""
    out = {}
    for s, members in A.by_sort().items():
        for sub in all_subsets(members):
            out[subset_id(A, sub, s)] = sub
    return {e: out[e] for e in alg.elements}


# ---------------------------------------------------------------------------
# languages: boolean operations, emptiness, preimages and images

def _combine(L1: Language, L2: Language, accept: Callable[[bool, bool], bool]) -> Language:
    if L1.alphabet != L2.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {sorted(L1.alphabet)} vs {sorted(L2.alphabet)}")
    _check_same_signature(L1.algebra, L2.algebra)
    h = pair_morphism(L1.morphism, L2.morphism)
    comps = components_of(h.target, L1.algebra, L2.algebra)
    acc = {e for e, (a, b) in comps.items() if accept(a in L1.accepting, b in L2.accepting)}
    return Language(h, frozenset(acc))


def complement(L: Language) -> Language:
    return Language(L.morphism, frozenset(L.algebra.elements) - L.accepting)


def intersection(L1: Language, L2: Language) -> Language:
    return _combine(L1, L2, lambda x, y: x and y)


def union(L1: Language, L2: Language) -> Language:
    return _combine(L1, L2, lambda x, y: x or y)


def symmetric_difference(L1: Language, L2: Language) -> Language:
    return _combine(L1, L2, lambda x, y: x != y)


def boolean(op_name: str, L1: Language, L2: Language | None = None) -> Language:
    if op_name == "not":
        if L2 is not None:
            raise TypeError("'not' takes one language")
        return complement(L1)
    if L2 is None:
        raise TypeError(f"{op_name!r} takes two languages")
    if op_name == "and":
        return intersection(L1, L2)
    if op_name == "or":
        return union(L1, L2)
    raise ValueError(f"unknown boolean operation {op_name!r}")


def find_witness(L: Language) -> Term | None:
    """A minimal-depth ground term in the language, or None if it is empty."""
    found = reachable(L.morphism)
    for e in L.algebra.elements:
        if e in L.accepting and e in found:
            return found[e]
    return None


def is_empty(L: Language) -> bool:
    return find_witness(L) is None


def equivalent(L1: Language, L2: Language) -> bool:
    return is_empty(symmetric_difference(L1, L2))


def distinguishing_term(L1: Language, L2: Language) -> Term | None:
    return find_witness(symmetric_difference(L1, L2))


def inverse_image(L: Language, sub: Mapping[str, Term]) -> Language:
    """Preimage under the substitution sending each new letter to a ground term over L's alphabet."""
    h = L.morphism
    alphabet, units = {}, {}
    for letter in sub:
        t = sub[letter]
        alphabet[letter] = term_sort(h.signature, h.alphabet, t)
        units[letter] = evaluate(h, t)
    return Language(Morphism(alphabet, h.target, units), L.accepting)


def relabel_image(L: Language, f: Mapping[str, str],
                  extra_letters: Mapping[str, str] | None = None) -> Language:
    """Image of L under a sort-preserving letter-to-letter relabelling.

    Letters in ``extra_letters`` (letter -> sort) have empty preimage and map to the empty set.
    The target is the subalgebra of the powerset algebra generated by the unit sets.
    """
    h = L.morphism
    A = h.target
    if set(f) != set(h.alphabet):
        raise AlphabetMismatch("relabelling must be defined on every letter")
    new_alphabet: dict[str, str] = {}
    members: dict[str, set] = {}
    for letter in sorted(f):
        g = f[letter]
        s = h.alphabet[letter]
        if new_alphabet.setdefault(g, s) != s:
            raise SortError(f"relabelling to {g!r} is not sort-preserving")
        members.setdefault(g, set()).add(h.units[letter])
    for g, s in (extra_letters or {}).items():
        if new_alphabet.setdefault(g, s) != s:
            raise SortError(f"letter {g!r} declared with two sorts")
        members.setdefault(g, set())
    sets: dict[str, frozenset] = {}
    units, seeds = {}, {}
    for g in sorted(new_alphabet):
        sid = subset_id(A, members[g], new_alphabet[g])
        sets[sid] = frozenset(members[g])
        units[g] = sid
        seeds[sid] = new_alphabet[g]
    apply = _powerset_apply(A, sets)
    target = generate(A.signature, seeds, apply)
    accepting = frozenset(e for e in target.elements if sets[e] & L.accepting)
    return Language(Morphism(new_alphabet, target, units), accepting)


# ---------------------------------------------------------------------------
# partitions, quotients and the syntactic morphism

def block_names(partition: Iterable[Iterable[str]]) -> dict[str, str]:
    """Map every element to its block's name (the block's least id)."""
    names = {}
    for block in partition:
        block = list(block)
        name = min(block)
        for x in block:
            names[x] = name
    return names


def check_partition(alg: Algebra, partition) -> dict[str, str]:
    names = block_names(partition)
    covered = [x for block in partition for x in block]
    if len(covered) != len(set(covered)) or set(covered) != set(alg.elements):
        raise AlgebraError("partition blocks must be disjoint and cover the carrier")
    for block in partition:
        if len({alg.sort_of(x) for x in block}) > 1:
            raise SortError(f"block {sorted(block)} mixes sorts")
    return names


def quotient(alg: Algebra, partition) -> Algebra:
    """The quotient by a congruence; raises NotACongruence with two witnessing shapes otherwise."""
    names = check_partition(alg, partition)
    seen: dict = {}
    for shape in alg.shapes():
        name, args = shape
        key = (name, tuple(frozenset(names[x] for x in a) if isinstance(a, frozenset) else names[a]
                           for a in args))
        value = names[alg.table[shape]]
        if key in seen:
            other, other_value = seen[key]
            if other_value != value:
                raise NotACongruence(other, shape, alg.table[other], alg.table[shape])
        else:
            seen[key] = (shape, value)
    elements = {}
    for x, s in alg.elements.items():
        elements.setdefault(names[x], s)
    table = {key: value for key, (_, value) in seen.items()}
    return Algebra(alg.signature, elements, table)


def _contexts(alg: Algebra) -> dict[str, list[tuple]]:
    """One-hole contexts grouped by the sort of the hole.

    A context is ``(op, args, position, member)``; ``member`` is False for a hole
    in a single slot and True for a hole added to the set in a set slot.
    """
    by_sort = alg.by_sort()
    out: dict[str, list[tuple]] = {s: [] for s in alg.signature.sorts}
    for o in alg.signature.ops:
        for i, slot in enumerate(o.slots):
            choices = []
            for j, other in enumerate(o.slots):
                if j == i:
                    if slot.is_set:
                        choices.append(list(all_subsets(by_sort[slot.sort])))
                    else:
                        choices.append([None])
                elif other.is_set:
                    choices.append(list(nonempty_subsets(by_sort[other.sort])))
                else:
                    choices.append(by_sort[other.sort])
            for args in itertools.product(*choices):
                out[slot.sort].append((o.name, args, i, slot.is_set))
    return out


def _plug(alg: Algebra, ctx, x: str) -> str:
    name, args, i, member = ctx
    filled = list(args)
    filled[i] = args[i] | {x} if member else x
    return alg.table[(name, tuple(filled))]


def moore_partition(alg: Algebra, accepting: Iterable[str]) -> list[list[str]]:
    """Coarsest congruence of ``alg`` that saturates ``accepting``, by partition refinement.

    Blocks are listed in order of their first element; elements keep carrier order.
    """
    acc = set(accepting)
    contexts = _contexts(alg)
    block = {x: (alg.sort_of(x), x in acc) for x in alg.elements}
    count = len(set(block.values()))
    while True:
        keys = {}
        for x in alg.elements:
            keys[x] = (block[x], tuple(block[_plug(alg, c, x)] for c in contexts[alg.sort_of(x)]))
        index: dict = {}
        for x in alg.elements:
            index.setdefault(keys[x], len(index))
        block = {x: index[keys[x]] for x in alg.elements}
        if len(index) == count:
            break
        count = len(index)
    groups: dict[int, list[str]] = {}
    for x in alg.elements:
        groups.setdefault(block[x], []).append(x)
    return list(groups.values())


def quotient_language(L: Language, partition) -> Language:
    names = block_names(partition)
    target = quotient(L.algebra, partition)
    units = {x: names[e] for x, e in L.morphism.units.items()}
    acc = frozenset(names[e] for e in L.accepting if e in names)
    return Language(Morphism(dict(L.alphabet), target, units), acc)


def moore_syntactic(L: Language) -> Language:
    """The syntactic morphism of L, with the accepting set carried over to the quotient."""
    h = reachable_part(L.morphism)
    reduced = Language(h, L.accepting & frozenset(h.target.elements))
    return quotient_language(reduced, moore_partition(h.target, reduced.accepting))


minimize = moore_syntactic
