"""Graph operations: predecessors, attractors, restrictions and the two
normalising transformations (reachability to parity, self-loop splitting)."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .model import (AugmentedGame, CoLiveEdges, Edge, GameError, GameGraph, LiveCnfGroups,
                    LiveEdges, LiveGroups, NoAssumption, Parity, PersistentLiveGroup,
                    PersistentLiveGroups, Reach, SolveResult, fresh_name, src)


def pre(g: GameGraph, T: Iterable[str]) -> frozenset:
    T = g.check_vertices(T)
    return frozenset(u for v in T for u in g.pred[v])


def attractor(g: GameGraph, player: int, T: Iterable[str],
              blocked: Iterable[str] = ()) -> tuple[frozenset, dict]:
    """Least set from which `player` forces a visit to T.

    Vertices in `blocked` are never added (they behave as sinks outside the
    target). The strategy maps each player vertex of A∖T to the first
    successor, in declaration order, that is strictly closer to T.
    Opponent dead ends count as attracted.
    """
    T = g.check_vertices(T)
    blocked = frozenset(blocked) - T
    rank = {v: 0 for v in T}
    remaining = {v: len(g.succ[v]) for v in g.vertices if g.owner[v] != player}
    # an opponent dead end loses for the opponent, so it is attracted vacuously
    for v in g.vertices:
        if remaining.get(v) == 0 and v not in blocked:
            rank.setdefault(v, 0)
    frontier = g.ordered(rank)
    level = 0
    while frontier:
        level += 1
        nxt = []
        for v in frontier:
            for u in g.pred[v]:
                if u in rank or u in blocked:
                    continue
                if g.owner[u] == player:
                    rank[u] = level
                    nxt.append(u)
                else:
                    remaining[u] -= 1
                    if remaining[u] == 0:
                        rank[u] = level
                        nxt.append(u)
        frontier = nxt
    strat = {}
    for u, r in rank.items():
        if r > 0 and g.owner[u] == player:
            strat[u] = next(v for v in g.succ[u] if rank.get(v, r) < r)
    return frozenset(rank), strat


def restrict_graph(g: GameGraph, U: Iterable[str]) -> GameGraph:
    U = g.check_vertices(U)
    vs = tuple(v for v in g.vertices if v in U)
    return GameGraph(vs, {v: g.owner[v] for v in vs},
                     tuple(e for e in g.edges if e[0] in U and e[1] in U),
                     allow_dead_ends=True)


def restrict_control(g: GameGraph, C: Iterable[Edge]) -> GameGraph:
    C = g.check_edges(C, "control set")
    sources = src(C)
    return GameGraph(g.vertices, g.owner,
                     tuple(e for e in g.edges if e in C or e[0] not in sources),
                     allow_dead_ends=g.allow_dead_ends)


def restrict_pers(groups: Sequence[PersistentLiveGroup], g: GameGraph,
                  U: Iterable[str]) -> tuple[PersistentLiveGroup, ...]:
    U = g.check_vertices(U)
    out = []
    for grp in groups:
        C_U = frozenset((u, v) for u, v in grp.C if u in U and v in U)
        severed = src(grp.C) - src(C_U)
        S_U = (grp.S & U) - severed
        # T outside S never matters (violation needs Inf ⊆ S); clipping keeps T ⊆ S
        out.append(PersistentLiveGroup(S_U, C_U, grp.T & S_U))
    return tuple(out)


def restrict_priorities(prio: Mapping[str, int], U: Iterable[str]) -> dict:
    return {v: prio[v] for v in U}


def reach_to_parity(game: AugmentedGame) -> AugmentedGame:
    """Make every target a priority-2 sink; every other vertex gets priority 1.

    Assumption edges leaving a target disappear with the graph edges; plays
    that reach the target win regardless of the assumption.
    """
    if not isinstance(game.objective, Reach):
        raise GameError("reach_to_parity needs a reachability objective")
    g = game.graph
    T = game.objective.target
    edges = [e for e in g.edges if e[0] not in T]
    edges += [(t, t) for t in g.ordered(T)]
    edges = sorted(set(edges), key=lambda e: (g.index[e[0]], g.index[e[1]]))
    g2 = GameGraph(g.vertices, g.owner, tuple(edges), allow_dead_ends=g.allow_dead_ends)
    prio = {v: 2 if v in T else 1 for v in g.vertices}

    def keep(es):
        return frozenset(e for e in es if e[0] not in T)

    a = game.assumption
    if isinstance(a, LiveEdges):
        a = LiveEdges(keep(a.edges))
    elif isinstance(a, CoLiveEdges):
        a = CoLiveEdges(keep(a.edges))
    elif isinstance(a, LiveGroups):
        a = LiveGroups(tuple(h for h in (keep(h) for h in a.groups) if h))
    elif isinstance(a, PersistentLiveGroups):
        a = PersistentLiveGroups(tuple(PersistentLiveGroup(p.S, keep(p.C), p.T) for p in a.groups))
    elif isinstance(a, LiveCnfGroups):
        a = LiveCnfGroups({v: cl for v, cl in a.cnf.items() if v not in T})
    return game.replace(graph=g2, objective=Parity(prio), assumption=a)


def split_self_loops(g: GameGraph, priorities: Mapping[str, int],
                     groups: Sequence[PersistentLiveGroup] = ()):
    """Replace each self-loop (u,u) by a 2-cycle through a fresh vertex.

    Returns (graph, priorities, groups, back) where `back` maps every vertex
    of the new graph to the original vertex it stands for.
    """
    loops = g.self_loops()
    back = {v: v for v in g.vertices}
    if not loops:
        return g, dict(priorities), tuple(groups), back
    taken = set(g.vertices)
    fresh = {}
    for u, _ in loops:
        name = fresh_name(f"{u}~loop", taken)
        taken.add(name)
        fresh[u] = name
        back[name] = u
    vertices = list(g.vertices) + [fresh[u] for u, _ in loops]
    owner = dict(g.owner)
    prio = dict(priorities)
    for u, _ in loops:
        owner[fresh[u]] = 1 - g.owner[u]
        prio[fresh[u]] = 0
    edges = []
    for u, v in g.edges:
        if u == v:
            edges += [(u, fresh[u]), (fresh[u], u)]
        else:
            edges.append((u, v))
    g2 = GameGraph(tuple(vertices), owner, tuple(edges), allow_dead_ends=g.allow_dead_ends)
    new_groups = []
    for grp in groups:
        C = frozenset((u, fresh[u]) if u == v else (u, v) for u, v in grp.C)
        S = grp.S | {fresh[u] for u in fresh if u in grp.S}
        T = grp.T | {fresh[u] for u in fresh if u in grp.T}
        new_groups.append(PersistentLiveGroup(S, C, T))
    return g2, prio, tuple(new_groups), back


def as_parity(game: AugmentedGame) -> AugmentedGame:
    """Parity games pass through; reachability games are converted."""
    if isinstance(game.objective, Reach):
        return reach_to_parity(game)
    return game


def no_assumption(game: AugmentedGame) -> AugmentedGame:
    return game.replace(assumption=NoAssumption())


def tidy_strategy(game: AugmentedGame, res: SolveResult) -> SolveResult:
    """Keep σ on W0 ∩ V0 and on edges of the original graph.

    Reach targets turn into sinks on the way to parity, so a move chosen
    there may not exist in the input; any real successor does as well.
    """
    g = game.graph
    targets = game.objective.target if isinstance(game.objective, Reach) else frozenset()
    strat = {}
    for u in g.ordered(res.w0):
        if g.owner[u] != 0 or not g.succ[u]:
            continue
        v = res.strategy0.get(u)
        if u in targets or len(g.succ[u]) == 1:
            strat[u] = v if g.has_edge(u, v) else g.succ[u][0]
        elif v is not None:
            strat[u] = v
    res.strategy0 = strat
    return res
