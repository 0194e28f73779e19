"""Brute-force ground truth at desk scale.

Player 0 never needs memory here: each assumption class turns ¬ψ ∨ Φ into
a Rabin condition on the arena where edges become vertices, and Rabin
conditions are half-positional. So v is won by Player 0 iff some positional
σ leaves no Player-1-winning tail reachable from v in the σ-restricted graph.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Mapping, Optional, Sequence

from .model import AugmentedGame, GameError, LassoWitness, Reach, SizeBoundError, SolveResult
from .ops import as_parity, tidy_strategy
from .semantics import (classify_infset, dead_end_witness, lasso_for, losing_region,
                        reachable, strategy_graph)

DEFAULT_MAX_EDGES = 128
DEFAULT_MAX_STRATEGIES = 10 ** 6
MAX_SAT_VARS = 20


def _choices(game: AugmentedGame):
    g = game.graph
    return [v for v in g.vertices if g.owner[v] == 0 and len(g.succ[v]) >= 2]


def _evaluate(game: AugmentedGame, choice_vertices, options_list):
    """Good regions for a batch of strategies (a top-level function so it pickles)."""
    out = []
    for options in options_list:
        sigma = dict(zip(choice_vertices, options))
        bad, _ = losing_region(game, strategy_graph(game.graph, sigma))
        out.append(frozenset(game.graph.vertices) - frozenset(bad))
    return out


def complete_strategy(game: AugmentedGame, sigma: Mapping[str, str]) -> dict:
    g = game.graph
    full = {v: g.succ[v][0] for v in g.vertices if g.owner[v] == 0 and g.succ[v]}
    full.update(sigma)
    return full


def witness_for(game: AugmentedGame, sigma: Mapping[str, str], v: str) -> Optional[LassoWitness]:
    """A Player-1-winning lasso from v against σ, or None if σ wins from v.

    `game` must already have a tail objective (parity or Rabin).
    """
    g = game.graph
    succ = strategy_graph(g, sigma)
    bad, cores = losing_region(game, succ)
    if v not in bad:
        return None
    dead = {u for u in g.vertices if g.owner[u] == 0 and not succ[u]}
    seen = reachable(succ, [v])
    for c in cores:
        if c.I & seen:
            return lasso_for(g, succ, v, c)
    return dead_end_witness(succ, v, dead & seen)


def counter_witnesses(game: AugmentedGame, strat: Mapping[str, str],
                      vertices: Iterable[str]) -> dict:
    """Lassos beating `strat` (completed with first successors) from each vertex.

    Vertices the completed strategy wins from map to None.
    """
    pg = as_parity(game)
    if isinstance(game.objective, Reach):
        # target vertices are sinks in the tail version
        strat = {u: v for u, v in strat.items() if u not in game.objective.target}
    sigma = complete_strategy(pg, strat)
    return {v: witness_for(pg, sigma, v) for v in game.graph.ordered(vertices)}


def oracle_solve(game: AugmentedGame, max_edges: int = DEFAULT_MAX_EDGES,
                 max_strategies: int = DEFAULT_MAX_STRATEGIES, jobs: int = 1,
                 witnesses: bool = True) -> SolveResult:
    """Exhaustive solve over positional Player-0 strategies."""
    pg = as_parity(game)
    g = pg.graph
    if len(g.edges) > max_edges:
        raise SizeBoundError(f"oracle limited to {max_edges} edges, game has {len(g.edges)}")
    cv = _choices(pg)
    count = math.prod(len(g.succ[v]) for v in cv)
    if count > max_strategies:
        raise SizeBoundError(f"oracle limited to {max_strategies} positional strategies, "
                             f"game has {count}")
    options = list(itertools.product(*(g.succ[v] for v in cv)))
    if jobs > 1 and len(options) > 64:
        size = -(-len(options) // jobs)
        chunks = [options[i:i + size] for i in range(0, len(options), size)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            goods = [x for part in ex.map(_evaluate, [pg] * len(chunks),
                                          [cv] * len(chunks), chunks) for x in part]
    else:
        goods = _evaluate(pg, cv, options)
    W0 = frozenset().union(*goods) if goods else frozenset()
    # a uniform σ exists for half-positional conditions; take the first one
    best = next((i for i, good in enumerate(goods) if good == W0), None)
    if best is None:
        raise AssertionError("no uniform positional strategy covers the winning region")
    sigma = complete_strategy(pg, dict(zip(cv, options[best])))
    strat = {u: v for u, v in sigma.items() if u in W0 and u in game.graph.vertices}
    W1 = frozenset(g.vertices) - W0
    wit = None
    if witnesses:
        wit = {v: witness_for(pg, sigma, v) for v in g.ordered(W1)}
    res = SolveResult(W0, W1, strat, witness=wit, pipeline="oracle",
                      stats={"strategies": count})
    return tidy_strategy(game, res)


def verify_strategy(game: AugmentedGame, strat: Mapping[str, str],
                    claim: Iterable[str]) -> Optional[LassoWitness]:
    """None if `strat` wins from every claimed vertex, else a counterexample lasso.

    Player-0 vertices with one successor need no entry; a reachable
    Player-0 vertex with a real choice and no entry is an error.
    """
    pg = as_parity(game)
    g = pg.graph
    claim = g.check_vertices(claim, "claim")
    # reach targets are sinks once converted; moves chosen there do not matter
    sinks = game.objective.target if isinstance(game.objective, Reach) else frozenset()
    sigma = {}
    for u, v in strat.items():
        if u in sinks:
            continue
        if u not in g or g.owner[u] != 0:
            raise GameError(f"strategy entry for non-Player-0 vertex {u!r}")
        if v not in g.succ[u]:
            raise GameError(f"strategy move ({u},{v}) is not an edge")
        sigma[u] = v
    succ = strategy_graph(g, sigma)
    for u in g.ordered(reachable(succ, claim)):
        if g.owner[u] == 0 and len(g.succ[u]) > 1 and u not in sigma:
            raise GameError(f"strategy has no move at reachable Player-0 vertex {u!r}")
    for v in g.ordered(claim):
        w = witness_for(pg, sigma, v)
        if w is not None:
            return w
    return None


def witness_is_p1_win(game: AugmentedGame, w: LassoWitness) -> bool:
    """Does the lasso describe a play Player 1 wins?"""
    pg = as_parity(game)
    if not w.is_play_in(pg.graph):
        return False
    if not w.cycle:
        return pg.graph.owner[w.stem[-1]] == 0
    return classify_infset(w.profile(), pg) == 1


def sat_brute(clauses: Sequence[Sequence[int]], nvars: Optional[int] = None) -> bool:
    """Exhaustive satisfiability check over DIMACS-style clauses."""
    n = nvars if nvars is not None else max((abs(l) for c in clauses for l in c), default=0)
    if n > MAX_SAT_VARS:
        raise SizeBoundError(f"sat_brute limited to {MAX_SAT_VARS} variables, got {n}")
    for bits in range(1 << n):
        if all(any((bits >> (abs(l) - 1) & 1) == (l > 0) for l in c) for c in clauses):
            return True
    return False
