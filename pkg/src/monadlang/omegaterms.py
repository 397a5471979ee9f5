"""ω-terms: concatenation plus the idempotent power ``#``, evaluated in finite algebras.

Also houses identity checking (on algebras and, through syntactic algebras,
on languages), aperiodicity and DA tests, and the letter-counting
abstraction for profinite words over {0, 1}.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Algebra, AlgebraError, Language, moore_syntactic

INF = math.inf


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    """A carrier element (when evaluating in an algebra) or a letter (when counting)."""
    value: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Cat:
    left: "OmegaTerm"
    right: "OmegaTerm"

    def __str__(self):
        return f"({self.left} . {self.right})"


@dataclass(frozen=True)
class IPow:
    base: "OmegaTerm"

    def __str__(self):
        return f"({self.base})^#"


OmegaTerm = Var | Const | Cat | IPow


def variables(t: OmegaTerm) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, Cat):
        return variables(t.left) | variables(t.right)
    return variables(t.base)


# ---------------------------------------------------------------------------
# text syntax: identifiers, (s . t), (s)^#

class ParseError(ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z0-9_]+)|(?P<sym>\^#|[().]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             len(text) - len(text[pos:].lstrip()))
        out.append((m.group("ident") or m.group("sym"), m.start(m.lastindex)))
        pos = m.end()
    out.append(("", len(text)))
    return out


def parse(text: str, variables: Iterable[str] | None = None) -> OmegaTerm:
    """Parse the ω-term text syntax.

    ``.`` is a right-associative infix product; ``(s)^#`` is the idempotent
    power.  Identifiers listed in ``variables`` become variables, all other
    identifiers constants.  With ``variables=None`` lowercase single letters
    x, y, z, u, v, w are variables.
    """
    toks = _tokenize(text)
    names = set(variables) if variables is not None else set("xyzuvw")
    i = 0

    def peek():
        return toks[i][0]

    def take(expected=None):
        nonlocal i
        tok, p = toks[i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok or 'end of input'!r}", p)
        i += 1
        return tok

    def product():
        left = atom()
        if peek() == ".":
            take(".")
            return Cat(left, product())
        return left

    def atom():
        tok, p = toks[i]
        if tok == "(":
            take("(")
            inner = product()
            take(")")
            t = inner
        elif tok and tok not in ").^#":
            take()
            t = Var(tok) if tok in names else Const(tok)
        else:
            raise ParseError(f"unexpected {tok or 'end of input'!r}", p)
        while peek() == "^#":
            take("^#")
            t = IPow(t)
        return t

    t = product()
    if peek() != "":
        raise ParseError(f"unexpected {peek()!r}", toks[i][1])
    return t


# ---------------------------------------------------------------------------
# evaluation in algebras with an associative binary product

def idempotent_power(alg: Algebra, a: str, name: str = "concat") -> str:
    """The unique idempotent among a, a^2, a^3, ..."""
    seq = [a]
    while True:
        x = seq[-1]
        if alg.mul(name, x, x) == x:
            return x
        nxt = alg.mul(name, x, a)
        if nxt in seq:
            # the cycle is entered; search it for the idempotent
            start = seq.index(nxt)
            for y in seq[start:]:
                if alg.mul(name, y, y) == y:
                    return y
            raise AlgebraError(f"no idempotent power of {a!r}: product not associative?")
        seq.append(nxt)


def eval_term(alg: Algebra, t: OmegaTerm, valuation: Mapping[str, str] | None = None,
              name: str = "concat") -> str:
    valuation = valuation or {}
    if isinstance(t, Var):
        try:
            return valuation[t.name]
        except KeyError:
            raise AlgebraError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Const):
        if t.value not in alg.elements:
            raise AlgebraError(f"constant {t.value!r} not in carrier")
        return t.value
    if isinstance(t, Cat):
        return alg.mul(name, eval_term(alg, t.left, valuation, name),
                       eval_term(alg, t.right, valuation, name))
    return idempotent_power(alg, eval_term(alg, t.base, valuation, name), name)


def _as_text(t):
    return parse(t) if isinstance(t, str) else t


def identity_counterexample(alg: Algebra, lhs, rhs, name: str = "concat"):
    """First valuation where the two sides differ, or None."""
    lhs, rhs = _as_text(lhs), _as_text(rhs)
    names = sorted(variables(lhs) | variables(rhs))
    for values in itertools.product(list(alg.elements), repeat=len(names)):
        val = dict(zip(names, values))
        left, right = eval_term(alg, lhs, val, name), eval_term(alg, rhs, val, name)
        if left != right:
            return val, left, right
    return None


def satisfies_identity(alg: Algebra, lhs, rhs, name: str = "concat") -> bool:
    return identity_counterexample(alg, lhs, rhs, name) is None


APERIODIC = ("(x)^#", "(x)^# . x")
DA = ("((x . y . z)^#) . y . ((x . y . z)^#)", "(x . y . z)^#")


def is_aperiodic(alg: Algebra, name: str = "concat") -> bool:
    return satisfies_identity(alg, *APERIODIC, name=name)


def in_DA(m) -> bool:
    """DA membership via (xyz)^# y (xyz)^# = (xyz)^#.

    Accepts an algebra with a ``concat`` product or a transformation monoid.
    """
    alg = m.as_algebra() if hasattr(m, "as_algebra") else m
    return satisfies_identity(alg, *DA)


def with_identity(alg: Algebra, unit: str = "1") -> Algebra:
    """Adjoin a fresh identity element to a semigroup."""
    from .words import semigroup
    while unit in alg.elements:
        unit += "'"

    def product(x, y):
        if x == unit:
            return y
        if y == unit:
            return x
        return alg.mul("concat", x, y)
    return semigroup([unit, *alg.elements], product)


def language_satisfies_identity(L: Language, lhs, rhs) -> bool:
    """Identity check on the syntactic semigroup of a word language."""
    if L.signature.monad not in ("word", "infty"):
        raise AlgebraError(f"identities on languages need an associative product; "
                           f"monad {L.signature.monad!r} is unsupported")
    S = moore_syntactic(L).algebra
    return satisfies_identity(S, lhs, rhs)


# ---------------------------------------------------------------------------
# counting letters in profinite words

def count_letters(t: OmegaTerm, marked: Iterable[str]) -> float:
    """Number of marked letters in the profinite word denoted by a closed term (INF if unbounded)."""
    marked = set(marked)
    if isinstance(t, Var):
        raise AlgebraError(f"open term: variable {t.name!r}")
    if isinstance(t, Const):
        return 1 if t.value in marked else 0
    if isinstance(t, Cat):
        return count_letters(t.left, marked) + count_letters(t.right, marked)
    return 0 if count_letters(t.base, marked) == 0 else INF


UNBOUNDEDNESS = ("0", "1", "inf")


def eval_unboundedness_algebra(t: OmegaTerm) -> str:
    """Value in the three-element algebra {0, 1, inf} of a closed term over the letters 0 and 1."""
    if isinstance(t, Var):
        raise AlgebraError(f"open term: variable {t.name!r}")
    if isinstance(t, Const):
        if t.value not in ("0", "1"):
            raise AlgebraError(f"letter {t.value!r} is not 0 or 1")
        return t.value
    if isinstance(t, Cat):
        left, right = eval_unboundedness_algebra(t.left), eval_unboundedness_algebra(t.right)
        if "inf" in (left, right):
            return "inf"
        return "1" if "1" in (left, right) else "0"
    return "0" if eval_unboundedness_algebra(t.base) == "0" else "inf"


def closed_terms(letters: Iterable[str], depth: int):
    """All closed terms with at most ``depth`` levels (a lone letter has depth 1)."""
    seen = [Const(x) for x in letters]
    for _ in range(depth - 1):
        new = [IPow(t) for t in seen]
        new += [Cat(a, b) for a in seen for b in seen]
        seen = list(dict.fromkeys(seen + new))
    return seen
