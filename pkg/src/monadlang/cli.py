"""Command-line front end: ``monadlang <command> FILE... [flags]``.

Exit codes: 0 for the positive verdict of the command (ok, empty, equivalent,
holds, definable, satisfiable, accepted), 1 for the negative one, 2 for
unreadable input or any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io, mso
from .core import (Algebra, AlgebraError, Language, Morphism, evaluate, evaluated_terms,
                   find_witness, format_shape, moore_syntactic, powerset, symmetric_difference,
                   validate)
from .omegaterms import APERIODIC, DA, ParseError, identity_counterexample
from .pointed import fo2_definable, preceq, preceq_bruteforce

NAMED_IDENTITIES = {"aperiodic": APERIODIC, "da": DA}


# ---------------------------------------------------------------------------
# loading

def load_any(path):
    """Algebra, Morphism, Language, or an (expr, env) pair, by the document's keys."""
    path = Path(path)
    doc = io.load_file(path)
    if isinstance(doc, dict) and "expr" in doc:
        return mso.load_problem(path)
    if isinstance(doc, dict) and "monad" in doc:
        return io.load_algebra(path)
    if isinstance(doc, dict) and "algebra" in doc:
        return io.load_language(path) if "accepting" in doc else io.load_morphism(path)
    raise io.FormatError("not an algebra, morphism, language or expression document",
                         "$", str(path))


def _language(path) -> Language:
    x = load_any(path)
    if not isinstance(x, Language):
        raise io.FormatError("expected a language document (with 'accepting')", "$", str(path))
    return x


def _algebra(path) -> Algebra:
    x = load_any(path)
    if isinstance(x, Language):
        return x.algebra
    if isinstance(x, Morphism):
        return x.target
    if isinstance(x, tuple):
        raise io.FormatError("expected an algebra, morphism or language document", "$", str(path))
    return x


def _term(text: str):
    """A term given inline as JSON (or a bare letter), or as a path to a JSON file."""
    p = Path(text)
    if p.suffix == ".json" and p.exists():
        return io.load_term(p)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = text
    return io.term_from_json(doc)


def _witness(t, h: Morphism | None, verify: bool):
    out = {"witness": io.term_to_json(t), "witness_text": str(t)}
    if verify and h is not None:
        out["witness_value"] = evaluate(h, t)
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args):
    alg = _algebra(args.file)
    report = validate(alg, limit=args.max_report_violations)
    out = {
        "monad": alg.monad,
        "size": len(alg),
        "ok": report.ok,
        "note": report.note,
        "violations": [{"axiom": v.axiom, "witness": [str(w) for w in v.witness],
                        "detail": v.detail} for v in report.violations],
    }
    if report.missing is not None:
        out["error"] = f"table not total: missing {format_shape(report.missing)}"
    return out, report.ok


def _oracle(morphisms, depth, agree):
    """Count ground terms up to ``depth`` nodes on which ``agree(values)`` fails."""
    n = bad = 0
    first = None
    for t, values in evaluated_terms(morphisms, depth):
        n += 1
        if not agree(values):
            bad += 1
            first = first or str(t)
    out = {"depth": depth, "terms": n, "mismatches": bad}
    if first:
        out["first_mismatch"] = first
    return out


def cmd_minimize(args):
    L = _language(args.file)
    S = moore_syntactic(L)
    out = {"input_size": len(L.algebra), "size": len(S.algebra), "language": io.language_to_json(S)}
    ok = True
    if args.oracle_depth:
        out["oracle"] = _oracle([L.morphism, S.morphism], args.oracle_depth,
                                lambda v: (v[0] in L.accepting) == (v[1] in S.accepting))
        ok = out["oracle"]["mismatches"] == 0
    return out, ok


def cmd_empty(args):
    L = _language(args.file)
    w = find_witness(L)
    out = {"empty": w is None}
    if w is not None:
        out.update(_witness(w, L.morphism, args.witness))
    if args.oracle_depth:
        out["oracle"] = _oracle([L.morphism], args.oracle_depth,
                                lambda v: w is not None or v[0] not in L.accepting)
    return out, w is None


def cmd_equivalent(args):
    L1, L2 = _language(args.file), _language(args.other)
    D = symmetric_difference(L1, L2)
    w = find_witness(D)
    out = {"equivalent": w is None}
    if w is not None:
        out.update(_witness(w, D.morphism, args.witness))
        out["in_first"] = w in L1
        out["in_second"] = w in L2
    if args.oracle_depth:
        out["oracle"] = _oracle([L1.morphism, L2.morphism], args.oracle_depth,
                                lambda v: w is not None
                                or (v[0] in L1.accepting) == (v[1] in L2.accepting))
    return out, w is None


def cmd_identity(args):
    if args.named:
        lhs, rhs = NAMED_IDENTITIES[args.named]
    elif args.lhs and args.rhs:
        lhs, rhs = args.lhs, args.rhs
    else:
        raise ParseError("give --lhs and --rhs, or --named", 0)
    x = load_any(args.file)
    if isinstance(x, Language):
        alg, source = moore_syntactic(x).algebra, "syntactic algebra"
    else:
        alg, source = _algebra(args.file), "algebra"
    if "concat" not in {o.name for o in alg.signature.ops}:
        raise AlgebraError(f"identities need a binary concat; monad {alg.monad!r} has none")
    cex = identity_counterexample(alg, lhs, rhs)
    out = {"lhs": lhs, "rhs": rhs, "checked_on": source, "size": len(alg), "holds": cex is None}
    if cex is not None:
        valuation, left, right = cex
        out["counterexample"] = {"valuation": valuation, "lhs_value": left, "rhs_value": right}
    return out, cex is None


def cmd_fo2(args):
    L = _language(args.file)
    r = fo2_definable(L)
    out = {
        "definable": r.definable,
        "reason": r.describe(),
        "syntactic_size": r.syntactic_size,
        "left_monoid_size": r.left_monoid_size,
        "right_monoid_size": r.right_monoid_size,
        "left_in_DA": r.left_in_DA,
        "right_in_DA": r.right_in_DA,
        "failure": r.failure,
    }
    ok = r.definable
    if args.oracle_depth:
        S = moore_syntactic(L).algebra
        exact, brute = preceq(S), preceq_bruteforce(S, args.oracle_depth)
        out["oracle"] = {"depth": args.oracle_depth, "preceq_pairs": len(exact),
                         "mismatches": len(exact ^ brute)}
    return out, ok


def cmd_mso_sat(args):
    x = load_any(args.file)
    if not isinstance(x, tuple):
        raise io.FormatError("expected an expression document (with 'expr')", "$", args.file)
    expr, env = x
    L = mso.compile(expr, env)
    w = find_witness(L)
    out = {"satisfiable": w is not None, "compiled_size": len(L.algebra)}
    if w is not None:
        out.update(_witness(w, L.morphism, args.witness))
    if args.oracle_depth:
        n = bad = 0
        for t, _ in evaluated_terms([L.morphism], args.oracle_depth):
            n += 1
            bad += mso.member(expr, env, t) != (t in L)
        out["oracle"] = {"depth": args.oracle_depth, "terms": n, "mismatches": bad}
    return out, w is not None


def cmd_eval(args):
    x = load_any(args.file)
    if not isinstance(x, (Language, Morphism)):
        raise io.FormatError("expected a morphism or language document", "$", args.file)
    t = _term(args.term)
    h = x.morphism if isinstance(x, Language) else x
    value = evaluate(h, t)
    out = {"term": str(t), "value": value}
    if isinstance(x, Language):
        out["accepted"] = value in x.accepting
        return out, out["accepted"]
    return out, True


def cmd_powerset(args):
    alg = _algebra(args.file)
    P = powerset(alg)
    return {"size": len(P), "algebra": io.algebra_to_json(P)}, True


COMMANDS = {
    "validate": (cmd_validate, "check table totality and the instance axioms", ["file"]),
    "minimize": (cmd_minimize, "compute the syntactic algebra of a language", ["file"]),
    "empty": (cmd_empty, "decide emptiness (exit 0 when empty)", ["file"]),
    "equivalent": (cmd_equivalent, "decide language equivalence", ["file", "other"]),
    "identity": (cmd_identity, "check an omega-term identity", ["file"]),
    "fo2": (cmd_fo2, "decide two-variable definability of a pointed-word query", ["file"]),
    "mso-sat": (cmd_mso_sat, "decide satisfiability of a language expression", ["file"]),
    "eval": (cmd_eval, "evaluate a ground term", ["file", "term"]),
    "powerset": (cmd_powerset, "tabulate the powerset algebra", ["file"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--witness", action="store_true",
                        help="re-evaluate reported witnesses and include their values")
    common.add_argument("--max-report-violations", type=int, default=5, metavar="N")
    common.add_argument("--oracle-depth", type=int, default=0, metavar="K",
                        help="cross-check against brute force on terms with up to K nodes")
    parser = argparse.ArgumentParser(prog="monadlang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        for pos in positionals:
            p.add_argument(pos)
        if name == "identity":
            p.add_argument("--lhs")
            p.add_argument("--rhs")
            p.add_argument("--named", choices=sorted(NAMED_IDENTITIES))
    return parser


def _print_text(command: str, report: dict) -> None:
    for key in sorted(report):
        value = report[key]
        if key in ("language", "algebra"):
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True, ensure_ascii=False)
        print(f"{key}: {value}")
    for key in ("language", "algebra"):
        if key in report:
            print(io.dumps(report[key]))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        report, positive = fn(args)
    except (io.FormatError, ParseError, AlgebraError, ValueError) as exc:
        if args.json:
            print(io.dumps({"command": args.command, "error": str(exc)}))
        print(f"monadlang {args.command}: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, **report}
    if args.json:
        print(io.dumps(report))
    else:
        _print_text(args.command, report)
    return 0 if positive else 1


if __name__ == "__main__":
    sys.exit(main())
