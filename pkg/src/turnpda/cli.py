"""Command line front end.

Exit codes: 0 success (or property holds), 1 property fails, 2 resource cap
hit, 64 usage error, 65 malformed input.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import languages as lang
from .catalog import NAMES, lookup, sample_stream
from .core import Pda, parse_automaton, serialize_automaton
from .decision import decide_zero_turn
from .errors import BudgetExceeded, StateBudgetExceeded, TurnPdaError
from .mathkit import TOLERANCE, BoundFn
from .normal import normalize
from .search import CurveTable, Outcome, SearchCaps, format_trace, min_turns, turn_curve
from .tm import (
    build_halting_reduction_oca,
    build_invalid_oca,
    build_pnotvalid_oca,
    parse_tm,
)

EX_OK, EX_FAIL, EX_CAP, EX_USAGE, EX_DATAERR = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> bytes:
    try:
        return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _load_pda(path: str) -> Pda:
    return parse_automaton(_read(path))


def _word(args: argparse.Namespace, pda: Pda) -> tuple[str, ...]:
    w = tuple(args.input.split()) if args.tokens else tuple(args.input)
    unknown = sorted(set(w) - pda.input_alphabet)
    if unknown:
        raise DataError(f"input symbols not in the alphabet: {', '.join(unknown)}")
    return w


def _caps(args: argparse.Namespace) -> SearchCaps:
    kwargs = {}
    if getattr(args, "max_stack", None) is not None:
        kwargs["max_stack_height"] = args.max_stack
    if getattr(args, "max_steps", None) is not None:
        kwargs["max_visited"] = args.max_steps
    return SearchCaps(**kwargs)


def _write(data: bytes, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def emit_curve_csv(table: CurveTable, bound: BoundFn) -> bytes:
    lines = ["n,samples,max_min_turns,bound_value,within_bound"]
    for row in table:
        value = bound(row.n)
        if row.flagged:
            lines.append(f"{row.n},{row.samples},NA,{value:.6f},false")
        else:
            within = row.max_min_turns <= value + TOLERANCE
            lines.append(f"{row.n},{row.samples},{row.max_min_turns},{value:.6f},{str(within).lower()}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------- commands

def cmd_simulate(args: argparse.Namespace) -> int:
    pda = _load_pda(args.automaton)
    result = min_turns(pda, _word(args, pda), _caps(args))
    labels = {Outcome.ACCEPTED: "Accepted", Outcome.REJECTED: "Rejected", Outcome.EXCEEDED: "BoundsExceeded"}
    print(labels[result.outcome])
    return {Outcome.ACCEPTED: EX_OK, Outcome.REJECTED: EX_FAIL, Outcome.EXCEEDED: EX_CAP}[result.outcome]


def cmd_minturns(args: argparse.Namespace) -> int:
    pda = _load_pda(args.automaton)
    result = min_turns(pda, _word(args, pda), _caps(args))
    print(result)
    if result.accepted:
        sys.stdout.write(format_trace(result.witness))
        return EX_OK
    return EX_CAP if result.outcome is Outcome.EXCEEDED else EX_FAIL


def cmd_normalform(args: argparse.Namespace) -> int:
    _write(serialize_automaton(normalize(_load_pda(args.automaton))), args.output)
    return EX_OK


def cmd_decide0(args: argparse.Namespace) -> int:
    pda = _load_pda(args.automaton)
    try:
        verdict = decide_zero_turn(pda, args.max_states)
    except StateBudgetExceeded as exc:
        print(f"undetermined: {exc}")
        return EX_CAP
    print("accepts in 0 turns" if verdict else "does not accept in 0 turns")
    return EX_OK if verdict else EX_FAIL


def cmd_build_lang(args: argparse.Namespace) -> int:
    try:
        entry = lookup(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    _write(serialize_automaton(entry.build()), args.output)
    return EX_OK


def cmd_witness(args: argparse.Namespace) -> int:
    fam = args.family
    need = {"eqk": ("k",), "lsq": ("m",), "wtk": ("t", "k"), "lbk": ("t", "k"), "uk": ("k",), "listbin": ("m",)}
    if fam not in need:
        raise UsageError(f"unknown family {fam!r}")
    missing = [p for p in need[fam] if getattr(args, p) is None]
    if missing:
        raise UsageError(f"family {fam} needs --{' --'.join(missing)}")
    try:
        if fam == "eqk":
            w = ("a" * args.n + "b" * args.n) * args.k
        elif fam == "lsq":
            w = "".join("0" * i + "a" * args.N + "b" * args.N for i in range(1, args.m + 1))
        elif fam == "wtk":
            w = lang.gen_wtk(args.t, args.k)
        elif fam == "lbk":
            w = lang.gen_lb_witness_Lk(args.t, args.k, args.N)
        elif fam == "uk":
            w = lang.gen_uk(args.k, args.N, args.z)
        else:
            w = lang.gen_listbin(args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EX_CAP
    _write(w.encode("utf-8"), None)
    return EX_OK


def cmd_curve(args: argparse.Namespace) -> int:
    try:
        entry = lookup(args.lang)
        bound = BoundFn.parse(args.bound, floor=1.0)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from exc
    if args.nmax < 1 or args.samples < 1:
        raise UsageError("--nmax and --samples must be positive")
    rng = random.Random(args.seed)
    stream = list(sample_stream(entry, args.nmax, args.samples, rng, args.step))
    table = turn_curve(entry.build(), stream, args.nmax, _caps(args))
    _write(emit_curve_csv(table, bound), args.output)
    if any(row.flagged for row in table):
        return EX_CAP
    if any(row.max_min_turns > bound(row.n) + TOLERANCE for row in table):
        return EX_FAIL
    return EX_OK


def cmd_tm_compile(args: argparse.Namespace) -> int:
    tm = parse_tm(_read(args.tm))
    if args.kind == "invalid":
        w = tuple(args.input.split()) if args.tokens else tuple(args.input)
        unknown = sorted(set(w) - set(tm.tape_alphabet))
        if unknown:
            raise DataError(f"input symbols not on the tape alphabet: {', '.join(unknown)}")
        pda = build_invalid_oca(tm, w)
    elif args.kind == "halting":
        pda = build_halting_reduction_oca(tm)
    else:
        pda = build_pnotvalid_oca(tm)
    _write(serialize_automaton(pda), args.output)
    return EX_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="turnpda", description="Turn complexity toolkit for pushdown automata.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def with_input(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--automaton", required=True, help="automaton JSON file, or - for stdin")
        sp.add_argument("--input", required=True, help="input word")
        sp.add_argument("--tokens", action="store_true", help="input is whitespace-separated symbols")
        sp.add_argument("--max-stack", type=int)
        sp.add_argument("--max-steps", type=int)

    sp = sub.add_parser("simulate", help="bounded acceptance test")
    with_input(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("minturns", help="minimal number of turns with a witness trace")
    with_input(sp)
    sp.set_defaults(func=cmd_minturns)

    sp = sub.add_parser("normalform", help="emit the turn-preserving normal form")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_normalform)

    sp = sub.add_parser("decide0", help="does the automaton accept in 0 turns?")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--max-states", type=int, default=2**20)
    sp.set_defaults(func=cmd_decide0)

    sp = sub.add_parser("build-lang", help="emit a language's OCA")
    sp.add_argument("name", help=", ".join(NAMES))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_build_lang)

    sp = sub.add_parser("witness", help="emit a witness string")
    sp.add_argument("family", help="eqk, lsq, wtk, lbk, uk or listbin")
    for name in ("k", "t", "m"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--n", type=int, default=1, help="block size for eqk")
    sp.add_argument("--N", type=int, default=1, help="padding constant")
    sp.add_argument("--z", help="letter block override for uk")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("curve", help="empirical turn curve as CSV")
    sp.add_argument("--lang", required=True)
    sp.add_argument("--bound", required=True, help="logk:K, sqrt[:c], cuberoot, logstar, linear")
    sp.add_argument("--nmax", type=int, default=100)
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--step", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-stack", type=int)
    sp.add_argument("--max-steps", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("tm-compile", help="compile a Turing machine reduction OCA")
    sp.add_argument("--tm", required=True)
    sp.add_argument("--kind", choices=("invalid", "halting", "pnotvalid"), default="invalid")
    sp.add_argument("--input", default="", help="TM input word (invalid only)")
    sp.add_argument("--tokens", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_tm_compile)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except (DataError, TurnPdaError, ValueError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
