"""Command-line interface.

Exit status: 0 when the query vertex is won by Player 0 (or the command
succeeded), 1 when it is won by Player 1 or a strategy check fails, 2 on
usage or parse errors, 3 when an instance exceeds a size bound.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import reductions
from .augmented import ALGORITHMS, solve_augmented
from .generate import GEN_KINDS, random_game
from .io import (parse_dimacs, parse_game, parse_strategy, serialize_game, serialize_result,
                 serialize_witness)
from .model import (AugmentedGame, GameError, LabeledGame, LiveCnfGroups, LiveEdges, LiveGroups,
                    Parity, Reach, SizeBoundError)
from .oracle import (DEFAULT_MAX_EDGES, DEFAULT_MAX_STRATEGIES, counter_witnesses,
                     oracle_solve, verify_strategy)
from .ops import as_parity

EXIT_OK, EXIT_P1, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3
REDUCE_TARGETS = ("rabin", "parity", "live-edges", "live-groups", "alternating")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path: str, allow_p0: bool = False) -> AugmentedGame:
    g = parse_game(_read(path), allow_p0_assumption_edges=allow_p0)
    return g.game() if isinstance(g, LabeledGame) else g


def _load_labeled(path: str) -> LabeledGame:
    g = parse_game(_read(path))
    if not isinstance(g, LabeledGame):
        raise GameError(f"{path}: expected a labeled game (no label lines found)")
    return g


def _query(game: AugmentedGame, vertex: Optional[str]) -> Optional[str]:
    v = vertex if vertex is not None else game.init
    if v is not None and v not in game.graph:
        raise GameError(f"unknown vertex {v!r}")
    return v


def _finish(game, res, query) -> int:
    if query is None:
        return EXIT_OK
    return EXIT_OK if res.winner(query) == 0 else EXIT_P1


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    game = _load(args.file, args.allow_p0_assumption_edges)
    query = _query(game, args.vertex)
    res = solve_augmented(game, args.algo, jobs=args.jobs)
    if args.witness:
        if res.witness is None or args.algo != "oracle":
            losing = [query] if query is not None else res.w1
            res.witness = counter_witnesses(game, res.strategy0, res.w1 & set(losing))
    out = serialize_result(res, game.graph, witnesses=args.witness)
    sys.stdout.write(out)
    if args.strategy_out:
        strat = "".join(f"strategy {u} -> {res.strategy0[u]}\n"
                        for u in game.graph.ordered(res.strategy0))
        _write(args.strategy_out, strat)
    return _finish(game, res, query)


def cmd_oracle(args) -> int:
    game = _load(args.file, args.allow_p0_assumption_edges)
    query = _query(game, args.vertex)
    res = oracle_solve(game, max_edges=args.max_edges, max_strategies=args.max_strategies,
                       jobs=args.jobs)
    sys.stdout.write(serialize_result(res, game.graph, witnesses=True))
    return _finish(game, res, query)


def cmd_reduce(args) -> int:
    game = _load(args.file, args.allow_p0_assumption_edges)
    to = args.to
    if to == "rabin":
        out = reductions.to_rabin(game).game
    elif to == "parity":
        out = as_parity(game)
    elif to == "live-edges":
        a = game.assumption
        if isinstance(a, LiveEdges):
            out = game
        elif isinstance(a, LiveCnfGroups):
            out = reductions.cnf_to_live_edges(game)
        elif isinstance(a, LiveGroups):
            out = reductions.singleton_groups_to_live_edges(game)
        else:
            raise GameError(f"cannot reduce {a.kind} assumptions to live edges")
    elif to == "live-groups":
        out = reductions.to_live_groups(game)
    else:
        out, _ = reductions.make_alternating(game)
    _write(args.out, serialize_game(out))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.sat is not None:
        nvars, clauses = parse_dimacs(_read(args.sat))
        game = reductions.sat_to_game(clauses, nvars)
        name = "sat"
    else:
        if args.vertices is None:
            raise GameError("gen --random needs --vertices")
        game = random_game(args.seed, n=args.vertices, m=args.edges, assumption=args.assumption,
                           objective=args.objective, priorities=args.priorities,
                           alternating=args.alternating)
        name = f"random{args.seed}"
    _write(args.out, serialize_game(game, name=name))
    return EXIT_OK


def cmd_product(args) -> int:
    out = reductions.product(_load_labeled(args.spec), _load_labeled(args.plant))
    _write(args.out, serialize_game(out, name="product"))
    return EXIT_OK


def cmd_decompose(args) -> int:
    spec, plant = reductions.decompose(_load(args.file))
    s, p = serialize_game(spec, name="spec"), serialize_game(plant, name="plant")
    if args.spec_out or args.plant_out:
        _write(args.spec_out, s)
        _write(args.plant_out, p)
    else:
        sys.stdout.write(s + "# ----\n" + p)
    return EXIT_OK


def cmd_verify(args) -> int:
    game = _load(args.file, args.allow_p0_assumption_edges)
    strat = parse_strategy(_read(args.strategy))
    claim = args.claim if args.claim else ([game.init] if game.init else [])
    w = verify_strategy(game, strat, claim)
    if w is None:
        print("ok")
        return EXIT_OK
    print("counterexample")
    print(serialize_witness((w.stem or w.cycle)[0], w))
    return EXIT_P1


def cmd_stats(args) -> int:
    game = _load(args.file, args.allow_p0_assumption_edges)
    g = game.graph
    lines = [("vertices", len(g.vertices)), ("edges", len(g.edges)),
             ("assumption", game.assumption.kind)]
    obj = game.objective
    if isinstance(obj, Parity):
        lines.append(("max_priority", obj.max_priority))
    algo = args.algo
    if algo is None:
        tail_ok = isinstance(obj, (Parity, Reach))
        algo = "qsolve-pers" if tail_ok and game.assumption.kind in ("none", "pers") else "auto"
    res = solve_augmented(game, algo)
    lines.append(("pipeline", res.pipeline))
    lines += sorted(res.stats.items())
    if algo == "qsolve-pers":
        z = solve_augmented(game, "zielonka-pers")
        lines += sorted(z.stats.items())
        if "qsolve_calls" in res.stats:
            lines.append(("within_bound", res.stats["qsolve_calls"] <= res.stats["bound"]))
    for k, v in lines:
        print(f"{k} {v}")
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="auggame",
                                description="Solve graph games under progress assumptions.")
    sub = p.add_subparsers(dest="command", required=True)

    def game_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="game file, or - for stdin")
        sp.add_argument("--allow-p0-assumption-edges", action="store_true",
                        help="accept assumption edges leaving Player-0 vertices")
        return sp

    sp = game_cmd("solve", "compute winning regions and a Player-0 strategy")
    sp.add_argument("--algo", choices=ALGORITHMS, default="auto")
    sp.add_argument("--from", dest="vertex", help="query vertex (defaults to the file's init)")
    sp.add_argument("--strategy-out", help="write strategy lines to this file")
    sp.add_argument("--witness", action="store_true",
                    help="add counterexample lassos for Player-1 vertices")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for the oracle")
    sp.set_defaults(func=cmd_solve)

    sp = game_cmd("oracle", "solve by exhaustive strategy enumeration")
    sp.add_argument("--from", dest="vertex")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    sp.add_argument("--max-strategies", type=int, default=DEFAULT_MAX_STRATEGIES)
    sp.set_defaults(func=cmd_oracle)

    sp = game_cmd("reduce", "translate a game into another class")
    sp.add_argument("--to", required=True, choices=REDUCE_TARGETS)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("gen", help="generate a 3-SAT gadget or a random game")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--3sat", dest="sat", metavar="DIMACS", help="DIMACS CNF file, or -")
    src.add_argument("--random", action="store_true")
    sp.add_argument("--vertices", type=int)
    sp.add_argument("--edges", type=int)
    sp.add_argument("--assumption", choices=GEN_KINDS, default="none")
    sp.add_argument("--objective", choices=("parity", "reach"), default="parity")
    sp.add_argument("--priorities", type=int, default=4)
    sp.add_argument("--alternating", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("product", help="product of a labeled spec and a labeled plant")
    sp.add_argument("spec")
    sp.add_argument("plant")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("decompose", help="split a group game into spec and hub plant")
    sp.add_argument("file")
    sp.add_argument("--spec-out")
    sp.add_argument("--plant-out")
    sp.set_defaults(func=cmd_decompose)

    sp = game_cmd("verify", "check a Player-0 strategy from claimed vertices")
    sp.add_argument("--strategy", required=True, help="file with 'strategy u -> v' lines")
    sp.add_argument("--claim", nargs="*", default=None, metavar="V")
    sp.set_defaults(func=cmd_verify)

    sp = game_cmd("stats", "report sizes and recursion counters")
    sp.add_argument("--algo", choices=ALGORITHMS)
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeBoundError as e:
        print(f"auggame: size bound: {e}", file=sys.stderr)
        return EXIT_SIZE
    except (GameError, OSError) as e:
        print(f"auggame: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
