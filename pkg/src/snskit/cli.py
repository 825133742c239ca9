"""Command-line driver: ``snskit <subcommand> ...``.

Exit status is 0 when the command succeeds (or its check passes), 1 when a
check fails, and 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .algebra import HalfInt, IndexDomain, Window, bracket, verify_superalgebra
from .bialgebra import (
    CoproductTable, DLemmaParams, DNaturalParams, NotAntisymmetric, OddCoboundary,
    check_bialgebra, check_derivation, delta_r, delta_r_table,
    dlemma_table, dnatural_table, verify_lemma21,
)
from .cohomology import solve_h1_window
from .dsl import ParseError, format_any, parse_any, parse_element, parse_tensor
from .report import Report
from .tensors import (
    Tensor3, TensorElement, WindowTooSmall, adjoint_act, centralizer_window, cybe_c,
    mybe_check, random_even_antisymmetric, subspace_as_tensors, super_cycle, super_twist,
)


class UsageError(Exception):
    pass


def _fractions(text: str, n: int) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated rationals, got {text!r}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a list of rationals: {text!r}") from None


def _halfint(text: str) -> HalfInt:
    try:
        return HalfInt.of(text)
    except (ValueError, TypeError):
        raise UsageError(f"not an integer or half-integer: {text!r}") from None


def _radius(text: str) -> HalfInt:
    r = _halfint(text)
    if r.twice < 0:
        raise UsageError("radius must be non-negative")
    return r


def _result(command, inputs, verdict="pass", counterexamples=(), dimensions=None, lines=()):
    return {
        "report": {
            "command": command,
            "inputs": inputs,
            "verdict": verdict,
            "counterexamples": [ce.as_dict() for ce in counterexamples],
            "dimensions": dimensions or {},
            "version": __version__,
        },
        "lines": list(lines),
    }


def _from_report(rep: Report, inputs, dimensions=None, lines=()):
    dims = {"checked": rep.checked_count, "failures": rep.failure_count}
    dims.update(dimensions or {})
    return _result(rep.command, inputs, rep.verdict, rep.counterexamples, dims,
                   [rep.summary(), *lines])


# ---------------------------------------------------------------------------
# Subcommands


def cmd_bracket(args):
    x, y = parse_element(args.x), parse_element(args.y)
    z = bracket(x, y)
    return _result("bracket", {"x": str(x), "y": str(y)}, lines=[format_any(z)])


def cmd_act(args):
    x, t = parse_element(args.x), parse_any(args.t)
    out = adjoint_act(x, t)
    return _result("act", {"x": str(x), "t": str(t)}, lines=[format_any(out)])


def cmd_twist(args):
    t = parse_any(args.t)
    if isinstance(t, TensorElement):
        out = super_twist(t)
    elif isinstance(t, Tensor3):
        out = super_cycle(t)
    else:
        raise UsageError("twist needs a tensor square (super-twist) or cube (super-cycle)")
    return _result("twist", {"t": str(t)}, lines=[format_any(out)])


def cmd_cybe(args):
    r = parse_tensor(args.r)
    c = cybe_c(r)
    verdict = "pass" if c.is_zero() else "fail"
    return _result("cybe", {"r": str(r)}, verdict, dimensions={"terms": len(c)},
                   lines=[f"c(r) = {format_any(c)}"])


def cmd_mybe(args):
    r = parse_tensor(args.r)
    rep = mybe_check(r, Window(args.radius), args.max_counterexamples)
    return _from_report(rep, {"r": str(r), "radius": str(args.radius)})


def cmd_delta(args):
    r, x = parse_tensor(args.r), parse_element(args.x)
    return _result("delta", {"r": str(r), "x": str(x)}, lines=[format_any(delta_r(r, x))])


def _table_from_args(args, arity_one_ok=False) -> tuple[CoproductTable, dict]:
    radius = args.radius
    chosen = [a for a in ("r", "dnatural", "dlemma") if getattr(args, a, None) is not None]
    if len(chosen) != 1:
        names = "--r, --dnatural" + (" or --dlemma" if arity_one_ok else "")
        raise UsageError(f"give exactly one of {names}")
    if args.r is not None:
        r = parse_tensor(args.r)
        reach = max((abs(b.twice) for key in r.keys() for b in key), default=0)
        return delta_r_table(r, HalfInt(radius.twice + reach)), {"r": str(r)}
    if args.dnatural is not None:
        p = DNaturalParams.of(_fractions(args.dnatural, 4))
        return dnatural_table(p, radius), {"dnatural": [str(v) for v in
                                                        (p.alpha, p.alpha_dag, p.beta, p.beta_dag)]}
    p = DLemmaParams(*_fractions(args.dlemma, 2))
    return dlemma_table(p, radius), {"dlemma": [str(p.alpha), str(p.beta)]}


def cmd_check_bialgebra(args):
    table, inputs = _table_from_args(args)
    inputs["radius"] = str(args.radius)
    rep = check_bialgebra(table, Window(args.radius), args.max_counterexamples)
    return _from_report(rep, inputs)


def cmd_check_derivation(args):
    table, inputs = _table_from_args(args, arity_one_ok=True)
    inputs["radius"] = str(args.radius)
    rep = check_derivation(table, Window(args.radius),
                           max_counterexamples=args.max_counterexamples)
    return _from_report(rep, inputs)


def cmd_lemma21(args):
    if (args.r is None) == (args.random is None):
        raise UsageError("give exactly one of --r or --random")
    if args.r is not None:
        rs = [parse_tensor(args.r)]
        inputs = {"r": str(rs[0])}
    else:
        rng = random.Random(args.seed)
        rs = [random_even_antisymmetric(rng) for _ in range(args.random)]
        inputs = {"random": args.random, "seed": args.seed}
    inputs["radius"] = str(args.radius)
    rep = Report("lemma21", max_counterexamples=args.max_counterexamples)
    for r in rs:
        for x in Window(args.radius).generators():
            rep.merge(verify_lemma21(r, x, args.max_counterexamples))
    return _from_report(rep, inputs)


def cmd_centralizer(args):
    window = Window(args.radius, args.comp_radius)
    space = centralizer_window(window, args.arity)
    lines = [f"centralizer (arity {args.arity}, {window}): dimension {space.dim}"]
    lines += [f"  {format_any(t)}" for t in subspace_as_tensors(space)]
    return _result("centralizer", {"radius": str(window.gen_radius),
                                   "comp_radius": str(window.comp_radius),
                                   "arity": args.arity},
                   dimensions={"dimension": space.dim, "ambient": len(space.labels)},
                   lines=lines)


def cmd_h1(args):
    degree = _halfint(args.degree)
    comp = args.comp_radius
    if comp is None:
        comp = HalfInt(2 * args.radius.twice + abs(degree.twice))
    window = Window(args.radius, comp)
    rep = solve_h1_window(degree, args.parity, window, args.target)
    inputs = {"degree": str(degree), "parity": args.parity, "target": args.target,
              "radius": str(window.gen_radius), "comp_radius": str(window.comp_radius)}
    return _result("h1", inputs, rep.verdict, dimensions=rep.dimensions(),
                   lines=[rep.summary()])


def cmd_verify_algebra(args):
    rep = verify_superalgebra(Window(args.radius), args.max_counterexamples)
    return _from_report(rep, {"radius": str(args.radius)})


# ---------------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommand copies use SUPPRESS so they never overwrite flags given earlier
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--json", metavar="PATH", default=d(None),
                   help="write a JSON report to PATH")
    p.add_argument("--max-counterexamples", type=int, default=d(10), metavar="N")
    p.add_argument("--seed", type=int, default=d(0), metavar="S",
                   help="seed for randomized suites")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)

    parser = argparse.ArgumentParser(prog="snskit",
                                     description="Exact computations in the twisted N=1 "
                                                 "Schroedinger-Neveu-Schwarz superalgebra.")
    _global_flags(parser, defaults=True)
    parser.add_argument("--version", action="version", version=f"snskit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("bracket", cmd_bracket, "super bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")

    p = add("act", cmd_act, "adjoint action x * t on an element, square or cube")
    p.add_argument("x")
    p.add_argument("t")

    p = add("twist", cmd_twist, "super-twist of a square or super-cycle of a cube")
    p.add_argument("t")

    p = add("cybe", cmd_cybe, "evaluate c(r)")
    p.add_argument("--r", required=True)

    p = add("mybe", cmd_mybe, "check x * c(r) = 0 on a window")
    p.add_argument("--r", required=True)
    p.add_argument("--radius", type=_radius, default=HalfInt(6))

    p = add("delta", cmd_delta, "coboundary Delta_r(x)")
    p.add_argument("--r", required=True)
    p.add_argument("--x", required=True)

    for name, fn, extra in (("check-bialgebra", cmd_check_bialgebra, False),
                            ("check-derivation", cmd_check_derivation, True)):
        p = add(name, fn, "coalgebra and compatibility checks" if not extra
                else "derivation identity check")
        p.add_argument("--r", help="use the coboundary of this tensor")
        p.add_argument("--dnatural", metavar="A,AD,B,BD",
                       help="use the four-parameter tensor-valued family")
        if extra:
            p.add_argument("--dlemma", metavar="A,B",
                           help="use the two-parameter algebra-valued family")
        p.add_argument("--radius", type=_radius, default=HalfInt(4))

    p = add("lemma21", cmd_lemma21, "compare both sides of the coboundary Jacobi identity")
    p.add_argument("--r")
    p.add_argument("--random", type=int, metavar="K",
                   help="use K seeded random even antisymmetric tensors instead")
    p.add_argument("--radius", type=_radius, default=HalfInt(3))

    p = add("centralizer", cmd_centralizer, "tensors killed by every window generator")
    p.add_argument("--radius", type=_radius, default=HalfInt(3))
    p.add_argument("--comp-radius", type=_radius, default=None)
    p.add_argument("--arity", type=int, choices=(2, 3), default=2)

    p = add("h1", cmd_h1, "windowed derivations modulo inner ones")
    p.add_argument("--degree", default="0")
    p.add_argument("--parity", choices=("even", "odd"), default="even")
    p.add_argument("--target", choices=("self", "tensor"), default="tensor")
    p.add_argument("--radius", type=_radius, default=HalfInt(4))
    p.add_argument("--comp-radius", type=_radius, default=None)

    p = add("verify-algebra", cmd_verify_algebra, "skew-symmetry, grading and Jacobi")
    p.add_argument("--radius", type=_radius, default=HalfInt(4))
    return parser


def _dump(payload: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result = args.func(args)
    except (ParseError, IndexDomain, UsageError, WindowTooSmall, OddCoboundary,
            NotAntisymmetric, ValueError) as exc:
        print(f"snskit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    for line in result["lines"]:
        print(line)
    if args.json:
        _dump(result["report"], args.json)
    return 0 if result["report"]["verdict"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
