"""Seeded random instances. The same seed always yields the same game."""
from __future__ import annotations

import random
from typing import Optional

from .model import (ASSUMPTION_KINDS, AugmentedGame, CoLiveEdges, GameError, GameGraph,
                    LiveCnfGroups, LiveEdges, LiveGroups, NoAssumption, Parity,
                    PersistentLiveGroup, PersistentLiveGroups, Reach)

GEN_KINDS = ASSUMPTION_KINDS + ("singleton",)


def random_graph(rng: random.Random, n: int, m: Optional[int] = None,
                 alternating: bool = False, loops: bool = True) -> GameGraph:
    """Dead-end-free graph on v0..v{n-1} with about `m` edges (at least n)."""
    if n < 1:
        raise GameError("need at least one vertex")
    if n < 2 and (alternating or not loops):
        raise GameError("this graph shape needs at least two vertices")
    vs = [f"v{i}" for i in range(n)]
    if alternating:
        owner = {v: i % 2 for i, v in enumerate(vs)}
    else:
        owner = {v: rng.randrange(2) for v in vs}

    def allowed(u, v):
        if u == v and not loops:
            return False
        return not alternating or owner[u] != owner[v]

    targets = {u: [v for v in vs if allowed(u, v)] for u in vs}
    total = sum(len(t) for t in targets.values())
    if m is None:
        m = rng.randint(n, min(total, 2 * n + 2))
    m = max(n, min(m, total))
    edges = {(u, rng.choice(targets[u])) for u in vs}
    if total <= 4 * m:
        rest = [(u, v) for u in vs for v in targets[u] if (u, v) not in edges]
        rng.shuffle(rest)
        edges.update(rest[:m - len(edges)])
    else:
        # few edges on a big vertex set: rejection sampling is cheaper
        while len(edges) < m:
            u = rng.choice(vs)
            edges.add((u, rng.choice(targets[u])))
    order = {v: i for i, v in enumerate(vs)}
    return GameGraph(tuple(vs), owner, tuple(sorted(edges, key=lambda e: (order[e[0]], order[e[1]]))))


def _subset(rng, items, p=0.4, nonempty=False):
    out = [x for x in items if rng.random() < p]
    if nonempty and not out and items:
        out = [rng.choice(items)]
    return out


def random_assumption(rng: random.Random, g: GameGraph, kind: str):
    e1 = list(g.player_edges(1))
    e0 = list(g.player_edges(0))
    if kind == "none":
        return NoAssumption()
    if kind == "live":
        return LiveEdges(frozenset(_subset(rng, e1)))
    if kind == "colive":
        return CoLiveEdges(frozenset(_subset(rng, e1)))
    if kind == "group":
        if not e1:
            return LiveGroups(())
        return LiveGroups(tuple(frozenset(_subset(rng, e1, 0.3, True))
                                for _ in range(rng.randint(1, 3))))
    if kind == "singleton":
        groups = []
        for u in g.player_vertices(1):
            out = [(u, v) for v in g.succ[u]]
            if out and rng.random() < 0.6:
                groups.append(frozenset(_subset(rng, out, 0.5, True)))
        return LiveGroups(tuple(groups))
    if kind == "pers":
        groups = []
        for _ in range(rng.randint(1, 2)):
            S = frozenset(_subset(rng, list(g.vertices), 0.7))
            T = frozenset(_subset(rng, sorted(S, key=g.index.get), 0.25))
            C = frozenset(_subset(rng, e0, 0.4))
            groups.append(PersistentLiveGroup(S, C, T))
        return PersistentLiveGroups(tuple(groups))
    if kind == "cnf":
        cnf = {}
        for u in g.player_vertices(1):
            out = [(u, v) for v in g.succ[u]]
            if rng.random() < 0.6:
                cnf[u] = tuple(frozenset(_subset(rng, out, 0.5, True))
                               for _ in range(rng.randint(1, 2)))
        return LiveCnfGroups(cnf)
    raise GameError(f"unknown assumption class {kind!r}")


def random_game(seed: int, n: int = 6, m: Optional[int] = None, assumption: str = "none",
                objective: str = "parity", priorities: int = 4,
                alternating: bool = False, loops: bool = True) -> AugmentedGame:
    """Random game; `priorities` is the number of distinct priority values 0..K-1."""
    rng = random.Random(seed)
    g = random_graph(rng, n, m, alternating, loops)
    a = random_assumption(rng, g, assumption)
    if objective == "parity":
        obj = Parity({v: rng.randrange(priorities) for v in g.vertices})
    elif objective == "reach":
        obj = Reach(frozenset(_subset(rng, list(g.vertices), 0.2, True)))
    else:
        raise GameError(f"unknown objective kind {objective!r}")
    init = g.vertices[0]
    if alternating and g.owner[init] != 1:
        init = g.vertices[1]
    return AugmentedGame(g, obj, a, init)


def random_cnf(seed: int, nvars: int, nclauses: int, k: int = 3) -> list[list[int]]:
    rng = random.Random(seed)
    out = []
    for _ in range(nclauses):
        width = rng.randint(1, k)
        out.append([rng.choice((1, -1)) * rng.randint(1, nvars) for _ in range(width)])
    return out
