"""Command-line front end.

Expression commands print one canonical line to stdout; the verify
command prints a verdict report (text or JSON).  Exit codes: 0 on
success, 1 when a verification suite found a failing identity, 2 for
usage, parse, or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .base import ConfigError
from .poly import ParseError
from .ring import NotInRingError
from .rt0 import (
    InvalidElementError,
    RT0Element,
    dot_mul,
    evaluate_involution_word,
    evaluate_structure_word,
    iota,
    odot,
    odot_basis_expand,
    odot_basis_expand_iota,
)
from .verify import SUITES, Bounds, run_suite

USAGE_ERRORS = (
    ParseError,
    InvalidElementError,
    NotInRingError,
    ConfigError,
    ValueError,
    OSError,
)


def _element(text: str) -> RT0Element:
    return RT0Element.from_text(text)


def _structure_word_text(word: tuple[int, ...]) -> str:
    def factor(a: int) -> str:
        return "1" if a == 0 else ("t0" if a == 1 else f"t0^{a}")

    return " (*) ".join(factor(a) for a in word)


def _involution_word_text(word: tuple[int, ...]) -> str:
    def factor(a: int) -> str:
        return "1" if a == 0 else ("(t0+t1)" if a == 1 else f"(t0+t1)^{a}")

    return " (*) ".join(factor(a) for a in word)


def _coeff_text(c) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cmd_eval(args: argparse.Namespace) -> int:
    print(_element(args.expression))
    return 0


def cmd_dot(args: argparse.Namespace) -> int:
    print(dot_mul(_element(args.left), _element(args.right)))
    return 0


def cmd_odot(args: argparse.Namespace) -> int:
    print(odot(_element(args.left), _element(args.right)))
    return 0


def cmd_iota(args: argparse.Namespace) -> int:
    print(iota(_element(args.expression)))
    return 0


def cmd_basis(args: argparse.Namespace) -> int:
    x = _element(args.expression)
    if args.which == "structure":
        expansion = odot_basis_expand(x)
        render = _structure_word_text
        evaluate = evaluate_structure_word
    else:
        expansion = odot_basis_expand_iota(x)
        render = _involution_word_text
        evaluate = evaluate_involution_word
    rebuilt = RT0Element.zero()
    for word, coeff in expansion.items():
        rebuilt = rebuilt + evaluate(word).scale(coeff)
    if rebuilt != x:
        print("internal error: expansion does not re-evaluate to the input", file=sys.stderr)
        return 1
    if not expansion:
        print("0")
        return 0
    ordered = sorted(expansion.items(), key=lambda kv: (len(kv[0]), kv[0]))
    print(" + ".join(f"{_coeff_text(c)} * ({render(w)})" for w, c in ordered))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.base is not None:
        from .base import resolve_base

        resolve_base(args.base)  # fail fast on a bad path or config
    bounds = Bounds(
        max_degree=args.max_degree,
        max_n=args.max_n,
        max_arity=args.max_arity,
        dim=args.dim,
        seed=args.seed,
        base=args.base,
    )
    report = run_suite(args.suite, bounds)
    if args.json:
        print(json.dumps(report.to_dict(with_timings=args.timings), indent=2))
    else:
        print(report.render_text(with_timings=args.timings))
    return 0 if report.all_passed() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tring",
        description=(
            "Exact computations in the graded ring of truncation-compatible "
            "polynomial families over t0, t1, ... and its verification suites."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="parse, validate, and reprint an expression")
    p.add_argument("expression")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dot", help="commutative product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("odot", help="degree-raising product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_odot)

    p = sub.add_parser("iota", help="apply the involution")
    p.add_argument("expression")
    p.set_defaults(func=cmd_iota)

    p = sub.add_parser("basis", help="expand an element in an odot-word basis")
    p.add_argument("expression")
    p.add_argument(
        "--which",
        choices=("structure", "iota-basis"),
        default="structure",
        help="word basis to expand in (default: structure)",
    )
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--timings", action="store_true", help="include wall-clock durations")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-arity", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--base", default=None, help="base config: path or builtin name")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
