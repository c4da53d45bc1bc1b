"""Command-line entry point.

Subcommands::

    verify       run a named verification suite, write a JSON report
    build-lusin  synthesize a refined partition scheme and dump a window
    extract      extract the move/reply schemes of a game strategy
    play         interactive game against the modified strategy
    export       dump a preset scheme (optionally index-relabeled)

Exit codes: 0 all checks passed, 1 hard violations, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, TextIO

from .choquet import copy_strategy, cylinder_strategy, extract_schemes, \
    modify_strategy, transcript_json
from .grammar import ExprSyntaxError, parse_expr
from .lusin import base_from_lines, build_lusin, check_lusin_conditions, \
    standard_base
from .scheme import Window, dump_scheme, relabel, standard_scheme
from .suites import SUITES, ConfigError, RunConfig, run_suite
from .spaces import BAIRE, FiniteSpaceModel, SpaceModel

G_BY_NAME = {
    "identity": lambda n: n,
    "half": lambda n: n // 2,
    "swap": lambda n: n ^ 1,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bairekit",
        description="Symbolic workbench for cylinder algebra, Souslin "
                    "schemes, and Choquet games.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", required=True, choices=SUITES)
    verify.add_argument("--depth", type=int, default=None)
    verify.add_argument("--breadth", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--space", default=None, help="extra space JSON file")
    verify.add_argument("--json", dest="out", default=None,
                        help="report output path")

    lus = sub.add_parser("build-lusin", help="synthesize a refined scheme")
    lus.add_argument("--base", default="std",
                     help="'std' or a file with one expression per line")
    lus.add_argument("--depth", type=int, default=3)
    lus.add_argument("--breadth", type=int, default=4)
    lus.add_argument("--json", dest="out", default=None)

    ext = sub.add_parser("extract", help="extract schemes from a strategy")
    ext.add_argument("--space", default="baire",
                     help="'baire' or a space JSON file")
    ext.add_argument("--strategy", choices=("copy", "cylinder"),
                     default=None)
    ext.add_argument("--depth", type=int, default=2)
    ext.add_argument("--breadth", type=int, default=4)
    ext.add_argument("--json", dest="out", default=None)

    play = sub.add_parser("play", help="play the game against the machine")
    play.add_argument("--space", default="baire")
    play.add_argument("--strategy", choices=("copy", "cylinder"), default=None)

    exp = sub.add_parser("export", help="dump a preset scheme as JSON")
    exp.add_argument("--scheme", choices=("standard", "lusin-std"),
                     default="standard")
    exp.add_argument("--g", choices=tuple(G_BY_NAME), default="identity")
    exp.add_argument("--depth", type=int, default=3)
    exp.add_argument("--breadth", type=int, default=4)
    exp.add_argument("--json", dest="out", default=None)
    return parser


def _write_json(data, path: Optional[str], out: TextIO) -> None:
    text = json.dumps(data, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        out.write(text + "\n")


def _load_space(token: str) -> SpaceModel:
    if token == "baire":
        return BAIRE
    try:
        with open(token, "r", encoding="utf-8") as fh:
            return FiniteSpaceModel.from_json(json.load(fh))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot load space {token!r}: {exc}") from exc


def _window(depth: int, breadth: int) -> Window:
    cfg = RunConfig(suite="cylinders-oracle", depth=depth, breadth=breadth)
    return cfg.window(depth, breadth)


def cmd_verify(args, out: TextIO) -> int:
    cfg = RunConfig(suite=args.suite, depth=args.depth, breadth=args.breadth,
                    seed=args.seed, space_path=args.space)
    result = run_suite(cfg)
    _write_json(result, args.out, out)
    summary = "pass" if result["ok"] else "FAIL"
    out.write(f"suite {args.suite}: {summary} "
              f"({result['violations']} violations, "
              f"{result['breaches']} breaches)\n")
    return 0 if result["ok"] else 1


def cmd_build_lusin(args, out: TextIO) -> int:
    if args.base == "std":
        base = standard_base()
    else:
        try:
            with open(args.base, "r", encoding="utf-8") as fh:
                base = base_from_lines(fh.read())
        except (OSError, ExprSyntaxError) as exc:
            raise ConfigError(f"cannot load base {args.base!r}: {exc}") from exc
    window = _window(args.depth, args.breadth)
    scheme = build_lusin(base)
    report = check_lusin_conditions(scheme, base, window)
    payload = dump_scheme(scheme, window)
    payload["conditions"] = report.to_json()
    _write_json(payload, args.out, out)
    out.write(str(report) + "\n")
    return 0 if report.ok else 1


def cmd_extract(args, out: TextIO) -> int:
    space = _load_space(args.space)
    strategy_name = args.strategy or \
        ("cylinder" if space is BAIRE else "copy")
    if strategy_name == "cylinder" and space is not BAIRE:
        raise ConfigError("the cylinder strategy plays on the Baire model")
    strategy = cylinder_strategy() if strategy_name == "cylinder" \
        else copy_strategy()
    window = _window(args.depth, args.breadth)
    moves, replies = extract_schemes(space, strategy)
    payload = {"moves": dump_scheme(moves, window),
               "replies": dump_scheme(replies, window),
               "strategy": strategy_name}
    _write_json(payload, args.out, out)
    return 0


def cmd_export(args, out: TextIO) -> int:
    scheme = standard_scheme() if args.scheme == "standard" \
        else build_lusin(standard_base())
    if args.g != "identity":
        scheme = relabel(scheme, G_BY_NAME[args.g])
    window = _window(args.depth, args.breadth)
    _write_json(dump_scheme(scheme, window), args.out, out)
    return 0


# -- interactive play ----------------------------------------------------------

def _parse_finite_move(space: FiniteSpaceModel, text: str) -> int:
    cleaned = text.strip().strip("{}")
    if not cleaned:
        return space.mask_of([])
    try:
        pts = [int(tok) for tok in cleaned.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"expected a point list, got {text!r}") from exc
    return space.mask_of(pts)


def play_repl(space: SpaceModel, strategy_name: str,
              stdin: TextIO, stdout: TextIO) -> int:
    base = cylinder_strategy() if strategy_name == "cylinder" \
        else copy_strategy()
    machine = modify_strategy(base)
    finite = isinstance(space, FiniteSpaceModel)
    history = ()
    stdout.write("You are player I against the modified machine strategy.\n")
    stdout.write("Moves: nonempty opens inside the previous reply. "
                 ":quit to stop, :dump FILE to save the transcript.\n")
    while True:
        limit = history[-1][1] if history else space.whole()
        if finite:
            legal = [space.describe(m)
                     for m in space.nonempty_opens_inside(limit)]
            stdout.write(f"legal opens: {' '.join(legal)}\n")
        else:
            stdout.write(f"inside: {space.describe(limit)} "
                         "(expressions like S(0,1)&S(0))\n")
        stdout.write(f"I[{len(history)}]> ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line:
            continue
        if line == ":quit":
            break
        if line.startswith(":dump"):
            parts = line.split(None, 1)
            if len(parts) != 2:
                stdout.write("usage: :dump FILE\n")
                continue
            with open(parts[1], "w", encoding="utf-8") as fh:
                json.dump(transcript_json(space, history), fh, indent=2,
                          sort_keys=True)
            stdout.write(f"transcript written to {parts[1]}\n")
            continue
        try:
            move = _parse_finite_move(space, line) if finite \
                else parse_expr(line)
        except (ValueError, ExprSyntaxError) as exc:
            stdout.write(f"cannot parse move: {exc}\n")
            continue
        if not space.is_open(move):
            stdout.write("that set is not open here; try again\n")
            continue
        if space.is_empty(move):
            stdout.write("moves must be nonempty; try again\n")
            continue
        if not space.subset(move, limit):
            stdout.write("moves must sit inside the previous reply; "
                         "try again\n")
            continue
        reply = machine(space, history, move)
        history += ((move, reply),)
        stdout.write(f"II[{len(history) - 1}]> {space.describe(reply)}\n")
        if finite:
            stdout.write("stabilized intersection so far: "
                         f"{space.describe(reply)} (II wins every legal "
                         "continuation)\n")
    stdout.write(f"game over after {len(history)} rounds\n")
    return 0


def cmd_play(args, stdin: TextIO, stdout: TextIO) -> int:
    space = _load_space(args.space)
    strategy_name = args.strategy or \
        ("cylinder" if space is BAIRE else "copy")
    if strategy_name == "cylinder" and space is not BAIRE:
        raise ConfigError("the cylinder strategy plays on the Baire model")
    return play_repl(space, strategy_name, stdin, stdout)


def main(argv=None, stdin: TextIO = None, stdout: TextIO = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, stdout)
        if args.command == "build-lusin":
            return cmd_build_lusin(args, stdout)
        if args.command == "extract":
            return cmd_extract(args, stdout)
        if args.command == "export":
            return cmd_export(args, stdout)
        if args.command == "play":
            return cmd_play(args, stdin, stdout)
    except ConfigError as exc:
        stdout.write(f"configuration error: {exc}\n")
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
