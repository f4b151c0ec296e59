"""Command-line driver and the derivation interchange format.

Exit codes: 0 success or relation true, 1 relation false, 2 type error,
3 fuel exhausted, 4 parse error, 5 derivation rejected. The global
--fuel flag (default 10000) can also be set through the ECC_FUEL
environment variable; the flag wins.

Derivation files are JSON trees; each node carries `rule`, `ctx` (list
of {name, type}), `term`, `type`, `side`, and `premises`, with all terms
in surface syntax so a verifier re-parses and re-checks from scratch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .counterexamples import descending_chain, level_transfer_triple, self_application
from .cumulativity import min_subtype_level, strict_subtype, subtype, subtype_at_level
from .inference import TypeCheckError, check_context, check_type, infer_type
from .kernel import Derivation, DerivationError, principal_of, verify
from .reduction import DEFAULT_FUEL, FuelExhausted, conv, normalize, whnf
from .stratify import classify, measure
from .surface import ParseError, parse_context, parse_term, print_term
from .terms import Context, Judgment

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_TYPE_ERROR = 2
EXIT_FUEL = 3
EXIT_PARSE = 4
EXIT_REJECTED = 5


def derivation_to_dict(d: Derivation) -> dict:
    side: dict = {}
    if d.level is not None:
        side["level"] = d.level
    if d.sub is not None:
        side["sub"] = print_term(d.sub)
    if d.sup is not None:
        side["sup"] = print_term(d.sup)
    return {
        "rule": d.rule,
        "ctx": [{"name": n, "type": print_term(t)} for n, t in d.conclusion.ctx],
        "term": print_term(d.conclusion.subject),
        "type": print_term(d.conclusion.type),
        "side": side,
        "premises": [derivation_to_dict(p) for p in d.premises],
    }


def derivation_from_dict(obj: dict) -> Derivation:
    try:
        ctx = Context(tuple((e["name"], parse_term(e["type"])) for e in obj["ctx"]))
        conclusion = Judgment(ctx, parse_term(obj["term"]), parse_term(obj["type"]))
        side = obj.get("side", {})
        return Derivation(
            rule=obj["rule"],
            conclusion=conclusion,
            premises=tuple(derivation_from_dict(p) for p in obj["premises"]),
            level=side.get("level"),
            sub=parse_term(side["sub"]) if "sub" in side else None,
            sup=parse_term(side["sup"]) if "sup" in side else None,
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise DerivationError("file", f"malformed derivation node: {e!r}") from e


def save_derivation(d: Derivation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(derivation_to_dict(d), handle, indent=1)
        handle.write("\n")


def load_derivation(path: str) -> Derivation:
    with open(path, encoding="utf-8") as handle:
        return derivation_from_dict(json.load(handle))


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _read_term(path: str):
    return parse_term(_read(path))


def _read_ctx(path: str | None) -> Context:
    if path is None:
        return Context()
    return parse_context(_read(path))


def _bool_line(value: bool) -> str:
    return "true" if value else "false"


def _build_parser() -> argparse.ArgumentParser:
    fuel_parent = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand-less occurrence from being overwritten
    fuel_parent.add_argument(
        "--fuel", type=int, default=argparse.SUPPRESS, help="reduction step budget"
    )

    parser = argparse.ArgumentParser(prog="ecc", description="kernel and type inference driver")
    parser.add_argument("--fuel", type=int, default=None, help="reduction step budget")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("infer", parents=[fuel_parent], help="print the principal type")
    p.add_argument("--ctx", default=None)
    p.add_argument("termfile")

    p = sub.add_parser("check", parents=[fuel_parent], help="check a term against an ascription")
    p.add_argument("--ctx", default=None)
    p.add_argument("termfile")
    p.add_argument("typefile")

    p = sub.add_parser("nf", parents=[fuel_parent], help="print the normal form")
    p.add_argument("termfile")

    p = sub.add_parser("whnf", parents=[fuel_parent], help="print the weak-head normal form")
    p.add_argument("termfile")

    p = sub.add_parser("sub", parents=[fuel_parent], help="decide the cumulativity relation")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("minlevel", parents=[fuel_parent], help="least level relating two terms")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("phi", parents=[fuel_parent], help="well-foundedness measure")
    p.add_argument("termfile")

    p = sub.add_parser("classify", parents=[fuel_parent], help="stratification class")
    p.add_argument("termfile")

    p = sub.add_parser("elab", parents=[fuel_parent], help="write a verified kernel derivation")
    p.add_argument("--ctx", default=None)
    p.add_argument("termfile")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", parents=[fuel_parent], help="re-check a derivation file")
    p.add_argument("file")

    p = sub.add_parser("demo", parents=[fuel_parent], help="built-in demonstrations")
    p.add_argument("which", choices=["prop2", "prop3"])
    p.add_argument("--steps", type=int, default=4)

    return parser


def run_command(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    fuel = args.fuel
    if fuel is None:
        fuel = int(os.environ.get("ECC_FUEL", DEFAULT_FUEL))

    try:
        return _dispatch(args, fuel)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except FuelExhausted:
        print("fuel exhausted", file=sys.stderr)
        return EXIT_FUEL
    except TypeCheckError as e:
        print(f"type error: {e} at {print_term(e.offender)}", file=sys.stderr)
        return EXIT_TYPE_ERROR
    except DerivationError as e:
        print(f"derivation rejected: {e}", file=sys.stderr)
        return EXIT_REJECTED


def _dispatch(args: argparse.Namespace, fuel: int) -> int:
    match args.cmd:
        case "infer":
            ctx = _read_ctx(args.ctx)
            check_context(ctx, fuel)
            outcome = infer_type(ctx, _read_term(args.termfile), fuel)
            print(print_term(outcome.principal))
            return EXIT_OK

        case "check":
            ctx = _read_ctx(args.ctx)
            check_context(ctx, fuel)
            ok = check_type(ctx, _read_term(args.termfile), _read_term(args.typefile), fuel)
            print(_bool_line(ok))
            return EXIT_OK if ok else EXIT_FALSE

        case "nf":
            print(print_term(normalize(_read_term(args.termfile), fuel)))
            return EXIT_OK

        case "whnf":
            print(print_term(whnf(_read_term(args.termfile), fuel)))
            return EXIT_OK

        case "sub":
            left, right = _read_term(args.left), _read_term(args.right)
            if args.level is not None:
                holds = subtype_at_level(left, right, args.level, fuel)
                if args.strict:
                    holds = holds and not conv(left, right, fuel)
            elif args.strict:
                holds = strict_subtype(left, right, fuel)
            else:
                holds = subtype(left, right, fuel)
            print(_bool_line(holds))
            return EXIT_OK if holds else EXIT_FALSE

        case "minlevel":
            lvl = min_subtype_level(_read_term(args.left), _read_term(args.right), fuel)
            if lvl is None:
                print("none")
                return EXIT_FALSE
            print(lvl)
            return EXIT_OK

        case "phi":
            print(measure(_read_term(args.termfile), fuel))
            return EXIT_OK

        case "classify":
            cls = classify(_read_term(args.termfile), fuel)
            print(f"{cls.kind.value} level={cls.level} measure={cls.measure}")
            return EXIT_OK

        case "elab":
            ctx = _read_ctx(args.ctx)
            check_context(ctx, fuel)
            _, derivation = principal_of(ctx, _read_term(args.termfile), fuel)
            verify(derivation, fuel)
            save_derivation(derivation, args.out)
            print(f"wrote {args.out}")
            return EXIT_OK

        case "verify":
            try:
                derivation = load_derivation(args.file)
                verify(derivation, fuel)
            except (DerivationError, ParseError, TypeCheckError, json.JSONDecodeError, ValueError) as e:
                print(f"rejected: {e}", file=sys.stderr)
                return EXIT_REJECTED
            print("accepted")
            return EXIT_OK

        case "demo":
            if args.which == "prop2":
                return _demo_prop2(fuel)
            return _demo_prop3(args.steps, fuel)

    raise AssertionError(f"unhandled command {args.cmd!r}")


def _demo_prop2(fuel: int) -> int:
    c, a, b = level_transfer_triple()
    print(f"C = {print_term(c)}")
    print(f"A = {print_term(a)}")
    print(f"B = {print_term(b)}")
    print(f"cumLe(C, A) = {_bool_line(subtype(c, a, fuel))}")
    strict_ab = strict_subtype(a, b, fuel)
    print(
        f"cumLeAtLevel(A, B, 1) = {_bool_line(subtype_at_level(a, b, 1, fuel))}"
        f" (strict: cumLt(A, B) = {_bool_line(strict_ab)})"
    )
    print(f"cumLeAtLevel(C, A, 1) = {_bool_line(subtype_at_level(c, a, 1, fuel))}")
    print(f"minLevel(C, A) = {min_subtype_level(c, a, fuel)}")
    print(f"minLevel(A, B) = {min_subtype_level(a, b, fuel)}")
    return EXIT_OK


def _demo_prop3(steps: int, fuel: int) -> int:
    loop = self_application()
    print(f"start = {print_term(loop)}")
    print(f"whnf(start) = {print_term(whnf(loop, fuel))}")
    chain = descending_chain(steps)
    for i, t in enumerate(chain, start=1):
        print(f"A{i} = {print_term(t)}")
    for i in range(len(chain) - 1):
        holds = strict_subtype(chain[i + 1], chain[i], fuel)
        print(f"cumLt(A{i + 2}, A{i + 1}) = {_bool_line(holds)}")
    try:
        normalize(loop, fuel)
        print("normalize(start) reached a normal form")
    except FuelExhausted:
        print(f"normalize(start): fuel exhausted after {fuel} steps (no normal form)")
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())
