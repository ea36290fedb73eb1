"""Command-line interface: construct, analyze, solve, netlist, verify, table1."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import replace
from typing import Sequence

from boolfn.circuits import (
    count_gates,
    read_netlist,
    synth_construction,
    verify_equivalence,
    write_netlist,
)
from boolfn.constructions import (
    FAMILIES,
    ConstructionParams,
    TradeoffSolution,
    build,
    gate_lower_bound,
    parse_seed,
    solve_tradeoff,
    table1,
)
from boolfn.core import LIMITS, BitPermutation, BoolFnError, read_function, write_function
from boolfn.report import analyze

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """Report usage errors as one line and exit 1 instead of argparse's 2."""

    def error(self, message: str):
        raise BoolFnError(f"{self.prog}: {message}")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--psi", help="identity, random, random:<seed>, or a list like 2,3,1")
    p.add_argument("--seed", type=int, default=0, help="seed for --psi random (default 0)")
    p.add_argument("--g", help="seed function spec for step/iter, e.g. thm_even:m=0,n=5")
    p.add_argument("--h", help="second seed spec for step/iter, e.g. ~thm_even:m=0,n=5")
    p.add_argument("--which", choices=("G", "H"), default="G", help="step output")
    p.add_argument("--complement", action="store_true")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-tt", type=int, help=f"truth-table variable cap (default {LIMITS.tt})")
    p.add_argument("--max-ai", type=int, help=f"exact AI variable cap (default {LIMITS.ai})")
    p.add_argument("--max-fai", type=int, help=f"FAI variable cap (default {LIMITS.fai})")
    p.add_argument(
        "--max-exhaustive", type=int, help=f"exhaustive check input cap (default {LIMITS.exhaustive})"
    )


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="boolfn", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="build a family member and write its truth table")
    _add_family_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--msb-first", action="store_true")
    _add_caps(p)

    p = sub.add_parser("analyze", help="report spectral and algebraic properties of a function file")
    p.add_argument("file")
    p.add_argument("--ai", action="store_true", help="compute algebraic immunity")
    p.add_argument("--ai-cap", type=int, help="only check annihilator degrees <= D (lower bound)")
    p.add_argument("--fai", action="store_true", help="compute fast algebraic immunity")
    p.add_argument("--msb-first", action="store_true")
    _add_caps(p)

    p = sub.add_parser("solve", help="smallest n per construction for targets (m0, x0, a0)")
    p.add_argument("--m0", type=int, required=True)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--a0", type=int, required=True)
    p.add_argument("--case", default="all", choices=("all", "1", "2", "3", "4"))
    p.add_argument("--emit", help="write the truth table of the selected case")
    p.add_argument("--emit-netlist", help="write the netlist of the selected case")
    p.add_argument("--csv", action="store_true")
    _add_caps(p)

    p = sub.add_parser("netlist", help="synthesize a family member as a 2-input gate netlist")
    _add_family_args(p)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("verify", help="check a netlist against a function file")
    p.add_argument("--netlist", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--msb-first", action="store_true")
    _add_caps(p)

    p = sub.add_parser("table1", help="solver output for the standard twelve target rows")
    p.add_argument("--csv", action="store_true")
    return ap


def _apply_caps(args) -> None:
    for flag, attr in (("max_tt", "tt"), ("max_ai", "ai"), ("max_fai", "fai"), ("max_exhaustive", "exhaustive")):
        v = getattr(args, flag, None)
        if v is not None:
            if v < 1:
                raise BoolFnError(f"--{flag.replace('_', '-')} must be positive")
            setattr(LIMITS, attr, v)


def _params(args) -> ConstructionParams:
    g = parse_seed(args.g) if args.g else None
    h = parse_seed(args.h) if args.h else None
    if args.family in ("step", "iter") and (g is None or h is None):
        raise BoolFnError(f"--family {args.family} needs --g and --h seed specs")
    p = ConstructionParams(
        args.family, n=args.n, m=args.m, t=args.t, k=args.k, g=g, h=h,
        complement=args.complement, which=args.which,
    )
    if args.psi is not None:
        k = p.mm_k()
        if k is None:
            raise BoolFnError(f"--psi does not apply to family {args.family}")
        spec = f"random:{args.seed}" if args.psi == "random" else args.psi
        p = replace(p, psi=BitPermutation.parse(spec, k))
    p.validate()
    return p


def _describe(p: ConstructionParams, args) -> list[str]:
    out = [f"family = {p.family}", f"n = {p.num_vars()}", f"spec = {p.describe()}"]
    k = p.mm_k()
    if k is not None:
        out.append(f"psi = {p.psi_or_identity()}")
    if args.psi is not None and args.psi.startswith("random"):
        out.append(f"seed = {args.seed}")
    if p.family == "step":
        out.append(f"which = {p.which}")
    if p.g is not None:
        out.append(f"g = {p.g.describe()}")
        out.append(f"h = {p.h.describe()}")
    return out


def cmd_construct(args, out) -> int:
    p = _params(args)
    f = build(p)
    write_function(args.output, f, args.msb_first)
    for line in _describe(p, args) + [f"output = {args.output}"]:
        print(line, file=out)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    f = read_function(args.file, args.msb_first)
    report = analyze(f, ai=args.ai, ai_cap=args.ai_cap, fai=args.fai)
    out.write(report.text())
    return EXIT_OK


def _solution_rows(sol: TradeoffSolution) -> list[list]:
    sel = sol.selected.case
    return [
        [sol.m0, sol.x0, sol.a0, c.case, c.n, c.m, c.x, c.a, "" if c.t is None else c.t, int(c.case == sel)]
        for c in sol.cases
    ]


_SOLVE_HEADER = ["m0", "x0", "a0", "case", "n", "m", "x", "a", "t", "selected"]


def _print_solutions(sols: Sequence[TradeoffSolution], as_csv: bool, out) -> None:
    if as_csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_SOLVE_HEADER)
        for sol in sols:
            w.writerows(_solution_rows(sol))
        out.write(buf.getvalue())
        return
    for i, sol in enumerate(sols):
        if i:
            print(file=out)
        print(f"targets = m0={sol.m0} x0={sol.x0} a0={sol.a0}", file=out)
        for c in sol.cases:
            t = "-" if c.t is None else c.t
            print(f"case_{c.case} = n={c.n} m={c.m} x={c.x} a={c.a} t={t}", file=out)
        print(f"selected = {sol.selected.case}", file=out)
        print(f"gate_lower_bound = {gate_lower_bound(sol.m0, sol.x0, sol.a0)}", file=out)


def cmd_solve(args, out) -> int:
    cases = (1, 2, 3, 4) if args.case == "all" else (int(args.case),)
    sol = solve_tradeoff(args.m0, args.x0, args.a0, cases)
    _print_solutions([sol], args.csv, out)
    p = sol.selected.params()
    if args.emit:
        write_function(args.emit, build(p))
        print(f"emitted = {args.emit}", file=out)
    if args.emit_netlist:
        nl = synth_construction(p)
        write_netlist(args.emit_netlist, nl)
        print(f"emitted_netlist = {args.emit_netlist}", file=out)
        print(f"gates = {count_gates(nl)}", file=out)
    return EXIT_OK


def cmd_netlist(args, out) -> int:
    p = _params(args)
    nl = synth_construction(p)
    write_netlist(args.output, nl)
    c = count_gates(nl)
    lines = _describe(p, args) + [
        f"gates_xor = {c.XOR}",
        f"gates_and = {c.AND}",
        f"gates_or = {c.OR}",
        f"gates_nand = {c.NAND}",
        f"gates_total = {c.total}",
        f"output = {args.output}",
    ]
    for line in lines:
        print(line, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    nl = read_netlist(args.netlist)
    f = read_function(args.function, args.msb_first)
    cert = verify_equivalence(nl, f, args.mode, args.samples, args.seed)
    for line in cert.lines():
        print(line, file=out)
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_table1(args, out) -> int:
    _print_solutions(table1(), args.csv, out)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "solve": cmd_solve,
    "netlist": cmd_netlist,
    "verify": cmd_verify,
    "table1": cmd_table1,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    saved = LIMITS.__dict__.copy()
    try:
        args = _parser().parse_args(argv)
        _apply_caps(args)
        return COMMANDS[args.command](args, out)
    except BoolFnError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror}", file=err)
        return EXIT_INVALID
    finally:
        LIMITS.__dict__.update(saved)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
