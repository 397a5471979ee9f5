"""Random fixtures and brute-force oracles shared by the test modules.

Oracles work from the definitions (words, trees, ultimately periodic words)
and never call the refinement or powerset code they are checking.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from monadlang import infty, pointed, trees, words
from monadlang.core import Language, Letter, Morphism, evaluated_terms, generate, reachable

FIXTURES = Path(__file__).parent / "fixtures"


# ---------------------------------------------------------------------------
# random word languages

def random_transition_language(rng: random.Random, max_size: int = 5, n_letters=None,
                               n_states=None) -> Language:
    """Transition semigroup of a random complete DFA, with a random accepting set.

    Retries until the semigroup has at most ``max_size`` elements.
    """
    while True:
        k = n_states or rng.choice([2, 3])
        sigma = n_letters or rng.randint(1, 3)
        letters = "abc"[:sigma]
        states = list(range(k))
        delta = {x: [rng.randrange(k) for _ in states] for x in letters}
        L = words.transition_semigroup(states, delta)
        if len(L.algebra) > max_size:
            continue
        elems = list(L.algebra.elements)
        acc = [e for e in elems if rng.random() < 0.5]
        return Language(L.morphism, frozenset(acc))


def random_semigroup(rng: random.Random, max_size: int = 4):
    return random_transition_language(rng, max_size).algebra


# ---------------------------------------------------------------------------
# random Wilke algebras: the ∞-word algebra of a deterministic Büchi automaton
#
# A finite word acts as (transformation, flags) where flags[q] records whether
# the run from q meets an accepting state; an infinite word is the tuple of
# verdicts per start state.

def _compose(x, y):
    (f, m), (g, n) = x, y
    return tuple(g[i] for i in f), tuple(m[i] or n[f[i]] for i in range(len(f)))


def _omega(x):
    f, m = x
    out = []
    for q in range(len(f)):
        seen, r = [], q
        while r not in seen:
            seen.append(r)
            r = f[r]
        cycle = seen[seen.index(r):]
        out.append(any(m[s] for s in cycle))
    return ("inf", tuple(out))


def random_wilke_language(rng: random.Random, max_size: int = 8) -> Language:
    while True:
        k = 2
        letters = "ab"[:rng.randint(1, 2)]
        final = {q for q in range(k) if rng.random() < 0.5}
        gens = {}
        for x in letters:
            f = tuple(rng.randrange(k) for _ in range(k))
            gens[x] = (f, tuple(q in final or f[q] in final for q in range(k)))
        ids: dict = {}
        back: dict = {}

        def name(v):
            if v not in ids:
                ids[v] = f"w{len(ids)}"
                back[ids[v]] = v
            return ids[v]

        def apply(op, args):
            vals = [back[a] for a in args]
            if op == "omega":
                v = vals[0]
                return name(v if v[0] == "inf" else _omega(v))
            x, y = vals
            if x[0] == "inf":
                return name(x)
            if y[0] == "inf":
                return name(("inf", tuple(y[1][x[0][q]] for q in range(k))))
            return name(_compose(x, y))

        seeds = {name(gens[x]): infty.SORT for x in letters}
        alg = generate(infty.SIGNATURE, seeds, apply)
        if len(alg) > max_size:
            continue
        units = {x: ids[gens[x]] for x in letters}
        acc = [e for e in alg.elements if back[e][0] == "inf" and back[e][1][0]]
        return infty.language(alg, units, acc)


# ---------------------------------------------------------------------------
# random pointed languages from pairs (pointed transformation, plain transformation)

def random_point_language(rng: random.Random, sigma: int = 2, k: int = 2) -> Language:
    letters = "abc"[:sigma]
    plain = {x: tuple(rng.randrange(k) for _ in range(k)) for x in letters}
    under = {x: tuple(rng.randrange(k) for _ in range(k)) for x in letters}

    def comp(f, g):
        return tuple(g[i] for i in f)

    def ext_left(a, x):
        return comp(a[1], x[0]), comp(a[1], x[1])

    def ext_right(x, b):
        return comp(x[0], b[1]), comp(x[1], b[1])

    seeds = {(under[x], plain[x]) for x in letters}
    found, todo = set(seeds), list(seeds)
    while todo:
        e = todo.pop()
        for f in list(found):
            for v in (ext_left(f, e), ext_right(e, f), ext_left(e, f), ext_right(f, e)):
                if v not in found:
                    found.add(v)
                    todo.append(v)
    names = {e: f"e{i}" for i, e in enumerate(sorted(found))}
    back = {v: e for e, v in names.items()}
    alg = pointed.point_algebra(list(names.values()),
                                lambda x, y: names[ext_left(back[x], back[y])],
                                lambda y, x: names[ext_right(back[y], back[x])])
    acc = [names[e] for e in found if e[0][0] == 0]
    return pointed.language(alg, {x: names[(under[x], plain[x])] for x in letters}, acc)


# ---------------------------------------------------------------------------
# random bottom-up tree automata

RANKED = {"f": 2, "g": 1, "a": 0, "b": 0}


def random_tree_language(rng: random.Random, max_states: int = 5) -> Language:
    k = rng.randint(2, max_states)
    states = [f"q{i}" for i in range(k)]
    delta = {s: {} for s in RANKED}
    for s, r in RANKED.items():
        for args in itertools.product(states, repeat=r):
            delta[s][args] = rng.choice(states)
    alg = trees.tree_automaton(RANKED, states, delta)
    acc = [q for q in states if rng.random() < 0.5]
    return trees.ranked_language(alg, acc)


# ---------------------------------------------------------------------------
# oracles

def word_values(L: Language, max_len: int) -> dict[str, str]:
    """value -> a shortest word with that value, over words of length ≤ max_len."""
    out: dict[str, str] = {}
    for w in words.all_words(sorted(L.alphabet), max_len):
        out.setdefault(words.evaluate_word(L.morphism, w), w)
    return out


def blocks(classes: dict) -> set[frozenset]:
    groups: dict = {}
    for x, key in classes.items():
        groups.setdefault(key, set()).add(x)
    return {frozenset(g) for g in groups.values()}


def word_syntactic_partition(L: Language, material: int = 4) -> set[frozenset]:
    """Identify x, y iff u x v and u y v agree on acceptance for all contexts u □ v.

    u and v range over the empty word and words of ground terms with at most
    ``material`` concat nodes (so up to material + 1 letters).
    """
    vals = word_values(L, material + 1)
    sides = [None, *vals]
    m = L.algebra.mul

    def plug(u, x, v):
        y = x if u is None else m("concat", u, x)
        return y if v is None else m("concat", y, v)

    elems = list(vals)
    key = {x: tuple(plug(u, x, v) in L.accepting for u in sides for v in sides) for x in elems}
    return blocks(key)


def omega_set_oracle(alg, S, max_prefix: int = 4, max_period: int = 4) -> frozenset:
    """Values of the ultimately periodic sequences u v v v ... over S with |u| ≤ 4, 1 ≤ |v| ≤ 4."""
    if not S:
        return frozenset()
    m = alg.mul
    layers = [set(S)]
    for _ in range(max(max_prefix, max_period) - 1):
        layers.append({m("concat", p, s) for p in layers[-1] for s in S})
    periods = set().union(*layers[:max_period])
    prefixes = set().union(*layers[:max_prefix])
    out = {m("omega", v) for v in periods}
    out |= {m("concat", u, m("omega", v)) for u in prefixes for v in periods}
    return frozenset(out)


def tree_myhill_nerode(L: Language, depth: int = 3) -> set[frozenset]:
    """Partition of the reachable states by one-hole contexts of depth ≤ ``depth``.

    Contexts stack up to ``depth`` symbols around the hole; the other slots
    take every reachable state.
    """
    alg = L.algebra
    sig = alg.signature
    reach: set[str] = set()
    while True:
        new = {alg.mul(o.name, *args) for o in sig.ops
               for args in itertools.product(sorted(reach), repeat=o.arity)}
        if new <= reach:
            break
        reach |= new
    steps = []
    for o in sig.ops:
        for i in range(o.arity):
            for rest in itertools.product(sorted(reach), repeat=o.arity - 1):
                steps.append((o.name, i, rest))

    def apply(step, x):
        name, i, rest = step
        return alg.mul(name, *rest[:i], x, *rest[i:])

    contexts = [()]
    layer = [()]
    for _ in range(depth):
        layer = [c + (s,) for c in layer for s in steps]
        contexts += layer

    def outcome(x, ctx):
        for s in ctx:
            x = apply(s, x)
        return x in L.accepting

    key = {x: tuple(outcome(x, c) for c in contexts) for x in sorted(reach)}
    return blocks(key)


def brute_preceq(alg, max_len: int = 5) -> set[tuple[str, str]]:
    """a ⪯ b via pointed words up to ``max_len`` letters whose letters are carrier elements.

    Let(x) collects the sets of letters of pointed words with value x; a ⪯ b
    iff some letter set of a is contained in some letter set of b.
    """
    elems = list(alg.elements)
    sets: dict[str, set] = {e: set() for e in elems}
    for n in range(1, max_len + 1):
        for word in itertools.product(elems, repeat=n):
            letters = frozenset(word)
            for p in range(n):
                v = pointed.value_of(alg, word[:p], word[p], word[p + 1:])
                sets[v].add(letters)
    return {(a, b) for a in elems for b in elems
            if any(S <= T for S in sets[a] for T in sets[b])}


HOLE = "_hole"


def _hole_count(t) -> int:
    if isinstance(t, Letter):
        return t.name == HOLE
    return sum(sum(map(_hole_count, a)) if isinstance(a, frozenset) else _hole_count(a)
               for a in t.args)


def context_partition(L: Language, size: int) -> set[frozenset]:
    """Brute-force syntactic partition of the reachable elements, any monad.

    A context is a ground term with exactly one occurrence of a fresh hole
    letter and at most ``size`` nodes; x ~ y iff plugging x or y into every
    context gives the same acceptance.
    """
    h = L.morphism
    elems = list(reachable(h))
    by_sort: dict[str, list[str]] = {}
    for e in elems:
        by_sort.setdefault(h.target.sort_of(e), []).append(e)
    key: dict[str, tuple] = {}
    for sort, group in by_sort.items():
        alphabet = {**h.alphabet, HOLE: sort}
        plugged = [Morphism(alphabet, h.target, {**h.units, HOLE: x}) for x in group]
        rows = [values for t, values in evaluated_terms(plugged, size) if _hole_count(t) == 1]
        for i, x in enumerate(group):
            key[x] = (sort, tuple(r[i] in L.accepting for r in rows))
    return blocks(key)


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first], *p]
        for i in range(len(p)):
            yield [*p[:i], [first, *p[i]], *p[i + 1:]]


def is_congruence(alg, partition) -> bool:
    """Direct check: every shape's value block depends only on the argument blocks."""
    block = {x: i for i, b in enumerate(partition) for x in b}
    seen: dict = {}
    for (name, args), value in alg.table.items():
        key = (name, tuple(frozenset(block[y] for y in a) if isinstance(a, frozenset) else block[a]
                           for a in args))
        if seen.setdefault(key, block[value]) != block[value]:
            return False
    return True


# ---------------------------------------------------------------------------
# random expressions over the word languages 0+ and 0*1*, with a regex oracle

MSO_BASES = {"zeros": "0+", "zeros_then_ones": "0*1*"}
_LETTER_MAPS = [dict(zip("01", img)) for img in ("00", "01", "10", "11")]


def random_mso_expr(rng: random.Random, depth: int):
    """Random expression of depth ≤ ``depth``; every node is over the alphabet {0, 1}."""
    from monadlang import mso
    if depth <= 1 or rng.random() < 0.25:
        return mso.Base(rng.choice(sorted(MSO_BASES)))
    kind = rng.choice(["not", "and", "or", "inv_image", "image"])
    arg = random_mso_expr(rng, depth - 1)
    if kind == "not":
        return mso.Not(arg)
    if kind in ("and", "or"):
        cls = mso.And if kind == "and" else mso.Or
        return cls(arg, random_mso_expr(rng, depth - 1))
    f = rng.choice(_LETTER_MAPS)
    if kind == "inv_image":
        return mso.InvImage.of(arg, {x: Letter(y) for x, y in f.items()})
    missing = {x: words.SORT for x in "01" if x not in f.values()}
    return mso.Image.of(arg, f, missing)


def regex_oracle(e, max_len: int = 8) -> frozenset[str]:
    """The words of length ≤ ``max_len`` in the language of ``e``, computed on sets of strings."""
    import re

    from monadlang import mso
    universe = frozenset(words.all_words("01", max_len))
    if isinstance(e, mso.Base):
        return frozenset(w for w in universe if re.fullmatch(MSO_BASES[e.name], w))
    if isinstance(e, mso.Not):
        return universe - regex_oracle(e.arg, max_len)
    if isinstance(e, mso.And):
        return regex_oracle(e.left, max_len) & regex_oracle(e.right, max_len)
    if isinstance(e, mso.Or):
        return regex_oracle(e.left, max_len) | regex_oracle(e.right, max_len)
    inner = regex_oracle(e.arg, max_len)
    if isinstance(e, mso.InvImage):
        sub = {x: t.name for x, t in e.sub}
        return frozenset(w for w in universe if "".join(sub[c] for c in w) in inner)
    f = dict(e.mapping)
    return frozenset("".join(f[c] for c in w) for w in inner)


def mso_env():
    from monadlang import catalog
    return {"zeros": catalog.zeros(), "zeros_then_ones": catalog.zeros_then_ones()}


# ---------------------------------------------------------------------------
# command lines covering every command on every fixture file

def cli_invocations():
    files = sorted(p.name for p in FIXTURES.glob("*.json"))
    out = []
    for name in files:
        f = str(FIXTURES / name)
        out += [["validate", f], ["minimize", f], ["empty", f, "--witness"],
                ["equivalent", f, f], ["equivalent", f, str(FIXTURES / "parity_odd.lang.json")],
                ["identity", f, "--named", "aperiodic"], ["fo2", f], ["mso-sat", f, "--witness"],
                ["eval", f, str(FIXTURES / "aaa.term.json")], ["powerset", f]]
    return [argv + ["--json"] for argv in out]


def cli_transcript() -> str:
    """Exit code and --json output of every invocation, concatenated."""
    import contextlib
    import io as textio

    from monadlang.cli import main
    parts = []
    for argv in cli_invocations():
        out = textio.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(textio.StringIO()):
            code = main(argv)
        parts.append(f"$ {' '.join(argv)}\n{code}\n{out.getvalue()}")
    return "".join(parts)


if __name__ == "__main__":
    import hashlib
    import sys
    sys.stdout.write(hashlib.sha256(cli_transcript().encode()).hexdigest() + "\n")
