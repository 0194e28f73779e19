"""Solvers for games under progress assumptions, plus the dispatcher."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .classic import (qsolve, recursion_bound, solve_parity_parys, solve_parity_zielonka,
                      solve_reach_or_safe, solve_reachability, split_dead_ends, top_even,
                      zielonka_core)
from .model import (AugmentedGame, CoLiveEdges, GameError, GameGraph, NoAssumption, Parity,
                    PersistentLiveGroup, PersistentLiveGroups, Rabin, Reach, SolveResult)
from .ops import (as_parity, tidy_strategy, attractor, reach_to_parity, restrict_control, restrict_graph,
                  restrict_pers, restrict_priorities, split_self_loops)

ALGORITHMS = ("auto", "zielonka", "parys", "colive", "attr-pers", "zielonka-pers",
              "qsolve-pers", "oracle", "rabin-oracle")


# ------------------------------------------------------------------ co-live

def solve_colive(game: AugmentedGame) -> SolveResult:
    """Co-live edges: solve without them, give Player 1 its attractor, repeat on the rest."""
    if not isinstance(game.assumption, (NoAssumption, CoLiveEdges)):
        raise GameError(f"solve_colive cannot handle {game.assumption.kind} assumptions")
    game = as_parity(game)
    if not isinstance(game.objective, Parity):
        raise GameError("solve_colive needs a parity or reachability objective")
    ec = game.assumption.edges if isinstance(game.assumption, CoLiveEdges) else frozenset()
    g = game.graph
    prio = game.objective.priority
    U = frozenset(g.vertices)
    rounds = 0
    strat: dict = {}
    while U:
        rounds += 1
        gU = restrict_graph(g, U)
        cut = GameGraph(gU.vertices, gU.owner, tuple(e for e in gU.edges if e not in ec),
                        allow_dead_ends=True)
        res = solve_parity_zielonka(cut, restrict_priorities(prio, U))
        A, _ = attractor(gU, 1, res.w1)
        B = U - A
        if B == U:
            strat = res.strategy0
            break
        U = B
    W0 = U
    strat = {u: v for u, v in strat.items() if u in W0}
    return SolveResult(W0, frozenset(g.vertices) - W0, strat, pipeline="colive",
                       stats={"rounds": rounds})


# --------------------------------------------------------------- AttrPers

def attr_pers(g: GameGraph, T: Iterable[str], groups: Sequence[PersistentLiveGroup]
              ) -> tuple[frozenset, dict]:
    """Player 0's attractor to T when Player 1 must respect persistent live groups.

    Alternates a plain attractor with one ◊A ∨ □(S∖T) safety solve per group
    on the control-restricted graph; stops once no group enlarges the region.
    With T empty the result is the region where Player 0 can falsify the
    assumption.
    """
    target = g.check_vertices(T)
    controlled = [restrict_control(g, grp.C) for grp in groups]
    strat: dict = {}
    while True:
        A, sA = attractor(g, 0, target)
        for v in g.ordered(A - target):
            if g.owner[v] == 0:
                strat.setdefault(v, sA[v])
        # every group is tried, even with no edge from S∖A into A: staying in
        # S∖T on C-edges forever breaks the assumption, which also wins
        for grp, gc in zip(groups, controlled):
            res = solve_reach_or_safe(gc, A, grp.S - grp.T)
            B = res.w0
            if not B <= A:
                for v in g.ordered(B - A):
                    if g.owner[v] == 0:
                        strat.setdefault(v, res.strategy0[v])
                target = A | B
                break
        else:
            return A, strat


def solve_attr_pers(game: AugmentedGame) -> SolveResult:
    if not isinstance(game.objective, Reach):
        raise GameError("attr-pers solves reachability objectives")
    groups = _pers_groups(game)
    g = game.graph
    W, strat = attr_pers(g, game.objective.target, groups)
    return SolveResult(W, frozenset(g.vertices) - W, strat, pipeline="attr-pers")


def _pers_groups(game: AugmentedGame) -> tuple:
    a = game.assumption
    if isinstance(a, NoAssumption):
        return ()
    if isinstance(a, PersistentLiveGroups):
        return a.groups
    raise GameError(f"this solver handles persistent live groups, not {a.kind} assumptions")


# --------------------------------------------------------- Zielonka / QSolve

def _split_pers(g, prio, groups):
    """Dead-end preprocessing shared by the persistent-group parity solvers."""
    won0, strat0, won1, rest = split_dead_ends(g)
    return won0, strat0, rest, restrict_graph(g, rest), restrict_priorities(prio, rest), \
        restrict_pers(groups, g, rest)


def zielonka_pers(g: GameGraph, priorities: Mapping[str, int],
                  groups: Sequence[PersistentLiveGroup] = ()) -> SolveResult:
    stats: dict = {}
    won0, strat0, _, sub, prio, sgroups = _split_pers(g, priorities, groups)
    w0, _, s = zielonka_core(sub, prio, sgroups, stats=stats)
    strat = dict(strat0)
    strat.update(s)
    W0 = won0 | w0
    return SolveResult(W0, frozenset(g.vertices) - W0, strat, pipeline="zielonka-pers",
                       stats=stats)


def qsolve_region(g: GameGraph, priorities: Mapping[str, int],
                  groups: Sequence[PersistentLiveGroup], p0: int | None = None
                  ) -> tuple[frozenset, int]:
    """QSolve_0(G, 2d, p0, |V|) on a self-loop-free graph; returns (region, call count)."""
    if g.self_loops():
        raise GameError("QSolve needs a graph without self-loops; apply split_self_loops first")
    n = len(g.vertices)
    counter = [0]
    W = qsolve(0, g, priorities, tuple(groups), top_even(priorities),
               n if p0 is None else p0, n, counter)
    return W, counter[0]


def qsolve_pers(g: GameGraph, priorities: Mapping[str, int],
                groups: Sequence[PersistentLiveGroup] = (), split: bool = True) -> SolveResult:
    """Quasi-polynomial solver; self-loops are split first unless `split` is False."""
    if not split and g.self_loops():
        raise GameError("QSolve needs a graph without self-loops; apply split_self_loops first")
    g2, prio2, groups2, back = split_self_loops(g, priorities, groups)
    won0, strat0, _, sub, prio, sgroups = _split_pers(g2, prio2, groups2)
    W, calls = qsolve_region(sub, prio, sgroups)
    # the recursion yields a region; the strategy comes from zielonka_pers inside it
    inner = restrict_graph(sub, W)
    zw0, _, s = zielonka_core(inner, restrict_priorities(prio, W), restrict_pers(sgroups, sub, W))
    if zw0 != W:
        raise AssertionError("zielonka_pers does not confirm the QSolve region")
    strat = dict(strat0)
    strat.update(s)
    W0 = frozenset(v for v in won0 | W if back[v] == v)
    proj = {}
    for u, v in strat.items():
        if back[u] == u and u in W0:
            proj[u] = back[v]
    n, h = len(sub.vertices), top_even(prio)
    return SolveResult(W0, frozenset(g.vertices) - W0, proj, pipeline="qsolve-pers",
                       stats={"qsolve_calls": calls, "n": n, "h": h,
                              "bound": recursion_bound(n, h)})


# --------------------------------------------------------------- dispatcher

def _parity_parts(game: AugmentedGame):
    pg = as_parity(game)
    if not isinstance(pg.objective, Parity):
        raise GameError("this solver needs a parity or reachability objective")
    return pg, pg.graph, pg.objective.priority


def _plain_only(game: AugmentedGame, algo: str):
    if not isinstance(game.assumption, NoAssumption):
        raise GameError(f"--algo {algo} does not support {game.assumption.kind} assumptions")


def solve_augmented(game: AugmentedGame, algo: str = "auto", **oracle_kw) -> SolveResult:
    """Run `algo` on `game`; `auto` picks a pipeline from the assumption class."""
    return tidy_strategy(game, _dispatch(game, algo, **oracle_kw))


def _dispatch(game: AugmentedGame, algo: str, **oracle_kw) -> SolveResult:
    from . import oracle, reductions  # these depend on this module's solvers
    if algo not in ALGORITHMS:
        raise GameError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    a = game.assumption
    obj = game.objective
    if algo == "auto":
        if isinstance(obj, Rabin):
            algo = "oracle"
        elif isinstance(a, NoAssumption):
            if isinstance(obj, Reach):
                res = solve_reachability(game.graph, obj.target)
                res.pipeline = "auto:reachability"
                return res
            algo = "zielonka"
        elif isinstance(a, CoLiveEdges):
            algo = "colive"
        elif isinstance(a, PersistentLiveGroups):
            algo = "attr-pers" if isinstance(obj, Reach) else "qsolve-pers"
        else:
            algo = "rabin-oracle"
        res = _dispatch(game, algo, **oracle_kw)
        res.pipeline = f"auto:{res.pipeline}"
        return res
    if algo == "zielonka":
        _plain_only(game, algo)
        _, g, prio = _parity_parts(game)
        return solve_parity_zielonka(g, prio)
    if algo == "parys":
        _plain_only(game, algo)
        _, g, prio = _parity_parts(game)
        g2, prio2, _, back = split_self_loops(g, prio)
        res = solve_parity_parys(g2, prio2)
        W0 = frozenset(v for v in res.w0 if back[v] == v)
        strat = {u: back[v] for u, v in res.strategy0.items() if back[u] == u and u in W0}
        return SolveResult(W0, frozenset(g.vertices) - W0, strat, pipeline="parys",
                           stats=res.stats)
    if algo == "colive":
        return solve_colive(game)
    if algo == "attr-pers":
        return solve_attr_pers(game)
    if algo in ("zielonka-pers", "qsolve-pers"):
        groups = _pers_groups(game)
        if isinstance(obj, Reach):
            pg = reach_to_parity(game)
            groups = _pers_groups(pg)
        else:
            pg = game
        _, g, prio = _parity_parts(pg)
        if algo == "zielonka-pers":
            return zielonka_pers(g, prio, groups)
        return qsolve_pers(g, prio, groups)
    if algo == "oracle":
        return oracle.oracle_solve(game, **oracle_kw)
    if algo == "rabin-oracle":
        return reductions.solve_via_rabin(game, **oracle_kw)
    raise AssertionError(algo)
