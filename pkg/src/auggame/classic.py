"""Baseline solvers for games without assumptions.

Zielonka and the quasi-polynomial Parys recursion are implemented here with
an optional list of persistent live groups threaded through; with an empty
list they are the textbook algorithms.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from .model import GameError, GameGraph, PersistentLiveGroup, SolveResult
from .ops import attractor, restrict_graph, restrict_pers, restrict_priorities


def solve_reachability(g: GameGraph, T: Iterable[str]) -> SolveResult:
    A, strat = attractor(g, 0, T)
    T = frozenset(T)
    for v in g.ordered(A & T):
        if g.owner[v] == 0 and g.succ[v]:
            strat.setdefault(v, g.succ[v][0])
    return SolveResult(A, frozenset(g.vertices) - A, strat, pipeline="reachability")


def solve_reach_or_safe(g: GameGraph, A: Iterable[str], S: Iterable[str]) -> SolveResult:
    """Solve ◊A ∨ □S for Player 0.

    Collapsing A into one safe sink turns this into the safety game □(S ∪ A);
    its winning region is the complement of Player 1's attractor to the unsafe
    vertices, where the collapsed sink is never attracted.
    """
    A = g.check_vertices(A)
    S = g.check_vertices(S)
    unsafe = frozenset(v for v in g.vertices if v not in S and v not in A)
    lost, _ = attractor(g, 1, unsafe, blocked=A)
    win = frozenset(g.vertices) - lost
    strat = {}
    for v in g.ordered(win - A):
        if g.owner[v] == 0:
            strat[v] = next(w for w in g.succ[v] if w in win)
    return SolveResult(win, lost, strat, pipeline="reach-or-safe")


# ------------------------------------------------------------------ helpers

def _attr0_pers(g, T, groups):
    # late import: attr_pers lives with the other assumption-aware solvers
    from .augmented import attr_pers
    if not groups:
        return attractor(g, 0, T)
    return attr_pers(g, T, groups)


def _attr_for(player, g, T, groups):
    if player == 0:
        return _attr0_pers(g, T, groups)
    return attractor(g, 1, T)


def _subgame(g, prio, groups, U):
    return restrict_graph(g, U), restrict_priorities(prio, U), restrict_pers(groups, g, U)


def split_dead_ends(g: GameGraph):
    """Peel off the vertices decided by dead ends.

    Returns (won0, strat0, won1, rest): won0 is Player 0's attractor to
    Player-1 dead ends, won1 Player 1's attractor to Player-0 dead ends and
    rest the remaining vertices, which form a dead-end-free subgame.
    """
    d1 = [v for v in g.vertices if not g.succ[v] and g.owner[v] == 1]
    d0 = [v for v in g.vertices if not g.succ[v] and g.owner[v] == 0]
    won0, strat0 = attractor(g, 0, d1) if d1 else (frozenset(), {})
    won1, _ = attractor(g, 1, d0) if d0 else (frozenset(), {})
    rest = frozenset(g.vertices) - won0 - won1
    return won0, strat0, won1, rest


# ----------------------------------------------------------------- Zielonka

def zielonka_core(g: GameGraph, prio: Mapping[str, int],
                  groups: Sequence[PersistentLiveGroup] = (), stats=None):
    """Zielonka's recursion; returns (W0, W1, σ0) with σ0 on W0 ∩ V0."""
    if stats is not None:
        stats["zielonka_calls"] = stats.get("zielonka_calls", 0) + 1
    V = frozenset(g.vertices)
    if not V:
        return frozenset(), frozenset(), {}
    if groups:
        # where Player 0 can break the assumption she wins outright
        vac, sv = _attr0_pers(g, (), groups)
        if vac:
            w0b, w1b, sb = zielonka_core(*_subgame(g, prio, groups, V - vac), stats=stats)
            strat = dict(sb)
            strat.update({v: sv[v] if v in sv else g.succ[v][0]
                          for v in g.ordered(vac) if g.owner[v] == 0})
            return vac | w0b, w1b, strat
    h = max(prio[v] for v in V)
    i = h % 2
    N = frozenset(v for v in V if prio[v] == h)
    A, sA = _attr_for(i, g, N, groups)
    sub = _subgame(g, prio, groups, V - A)
    w0, w1, s = zielonka_core(*sub, stats=stats)
    if i == 0:
        if not w1:
            strat = dict(s)
            for v in g.ordered(A):
                if g.owner[v] == 0:
                    strat[v] = sA[v] if v in sA else g.succ[v][0]
            return V, frozenset(), strat
        B, _ = attractor(g, 1, w1)
        w0b, w1b, sb = zielonka_core(*_subgame(g, prio, groups, V - B), stats=stats)
        return w0b, w1b | B, sb
    if not w0:
        return frozenset(), V, {}
    B, sB = _attr0_pers(g, w0, groups)
    w0b, w1b, sb = zielonka_core(*_subgame(g, prio, groups, V - B), stats=stats)
    strat = dict(sb)
    strat.update(s)
    for v in g.ordered(B - w0):
        if g.owner[v] == 0:
            strat[v] = sB[v]
    return B | w0b, w1b, strat


def solve_parity_zielonka(g: GameGraph, priorities: Mapping[str, int]) -> SolveResult:
    stats: dict = {}
    won0, strat0, won1, rest = split_dead_ends(g)
    w0, w1, s = zielonka_core(restrict_graph(g, rest), restrict_priorities(priorities, rest),
                              stats=stats)
    strat = dict(strat0)
    strat.update(s)
    return SolveResult(won0 | w0, won1 | w1, strat, pipeline="zielonka", stats=stats)


# -------------------------------------------------------------------- Parys

def qsolve(i: int, g: GameGraph, prio: Mapping[str, int], groups, h: int,
           p_own: int, p_opp: int, counter: list) -> frozenset:
    """Parys' procedure Solve_i: the set won by player i up to the given precisions.

    `counter[0]` counts the nontrivial executions (those past the first test).
    """
    if not g.vertices or p_own <= 1:
        return frozenset()
    counter[0] += 1
    opp = 1 - i

    def round_(g, prio, groups, precision):
        V = frozenset(g.vertices)
        N = frozenset(v for v in V if prio[v] == h)
        A, _ = _attr_for(i, g, N, groups)
        H = _subgame(g, prio, groups, V - A)
        W = qsolve(opp, *H, h - 1, precision, p_own, counter)
        B, _ = _attr_for(opp, g, W, groups) if W else (frozenset(), {})
        return W, _subgame(g, prio, groups, V - B)

    state = (g, prio, groups)
    while True:
        W, state = round_(*state, p_opp // 2)
        if not W:
            break
    W, state = round_(*state, p_opp)
    while W:
        W, state = round_(*state, p_opp // 2)
    return frozenset(state[0].vertices)


def top_even(prio: Mapping[str, int]) -> int:
    d = max(prio.values(), default=0)
    return d + (d % 2)


def recursion_bound(n: int, h: int) -> int:
    """The bound n^l·(h+l)^l on nontrivial QSolve executions, l = 2⌊log n⌋."""
    if n <= 1:
        return 1
    l = 2 * int(math.floor(math.log2(n)))
    return n ** l * (h + l) ** l


def solve_parity_parys(g: GameGraph, priorities: Mapping[str, int]) -> SolveResult:
    if g.self_loops():
        raise GameError("Parys' solver needs a graph without self-loops; "
                        "apply split_self_loops first")
    won0, strat0, won1, rest = split_dead_ends(g)
    sub = restrict_graph(g, rest)
    prio = restrict_priorities(priorities, rest)
    counter = [0]
    n = len(sub.vertices)
    w0 = qsolve(0, sub, prio, (), top_even(prio), n, n, counter)
    # the recursion yields a region only; a Zielonka pass inside it gives σ0
    zw0, _, s = zielonka_core(restrict_graph(sub, w0), restrict_priorities(prio, w0))
    if zw0 != w0:
        raise AssertionError("Zielonka does not confirm the QSolve region")
    strat = dict(strat0)
    strat.update(s)
    w0 = won0 | w0
    return SolveResult(w0, frozenset(g.vertices) - w0, strat, pipeline="parys",
                       stats={"qsolve_calls": counter[0], "n": n, "h": top_even(prio),
                              "bound": recursion_bound(n, top_even(prio))})
