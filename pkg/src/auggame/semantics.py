"""Tail semantics of plays.

Every objective and assumption handled here depends only on the tail
signature (I, F) of a play: the vertices visited and the edges taken
infinitely often. `classify_infset` gives the winner of such a signature;
the search helpers find Player-1-winning signatures in a one-player graph.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Mapping

from .model import (AugmentedGame, CoLiveEdges, GameError, GameGraph, InfSetProfile,
                    LassoWitness, LiveCnfGroups, LiveEdges, LiveGroups, NoAssumption, Parity,
                    PersistentLiveGroups, Rabin, Reach, SizeBoundError, src)

DEFAULT_MAX_PROFILE_EDGES = 18


def assumption_holds(game: AugmentedGame, p: InfSetProfile) -> bool:
    a = game.assumption
    I, F = p.I, p.F
    if isinstance(a, NoAssumption):
        return True
    if isinstance(a, LiveEdges):
        return all(e in F for e in a.edges if e[0] in I)
    if isinstance(a, CoLiveEdges):
        return not (F & a.edges)
    if isinstance(a, LiveGroups):
        return all(not (src(h) & I) or (h & F) for h in a.groups)
    if isinstance(a, PersistentLiveGroups):
        return not any(_pers_violated(grp, p) for grp in a.groups)
    if isinstance(a, LiveCnfGroups):
        return all(all(clause & F for clause in a.cnf.get(v, ())) for v in I)
    raise GameError(f"unknown assumption {a!r}")


def _pers_violated(grp, p: InfSetProfile) -> bool:
    if not p.I <= grp.S or p.I & grp.T:
        return False
    sources = src(grp.C)
    return all(e in grp.C for e in p.F if e[0] in sources)


def objective_holds(game: AugmentedGame, p: InfSetProfile) -> bool:
    obj = game.objective
    if isinstance(obj, Parity):
        return max(obj.priority[v] for v in p.I) % 2 == 0
    if isinstance(obj, Rabin):
        return any(f & p.I and not (r & p.I) for f, r in obj.pairs)
    if isinstance(obj, Reach):
        raise GameError("reachability is not a tail objective; call reach_to_parity first")
    raise GameError(f"unknown objective {obj!r}")


def classify_infset(p: InfSetProfile, game: AugmentedGame) -> int:
    """Winner (0 or 1) of every play whose tail signature is `p`."""
    return 0 if objective_holds(game, p) or not assumption_holds(game, p) else 1


def _blame(game: AugmentedGame, p: InfSetProfile) -> frozenset:
    """Vertices of p.I that no Player-1-winning signature inside p.I can contain.

    Only called when p itself is not Player-1-winning; every sub-signature
    uses a subset of p.I and of p.F, which is what makes each rule sound.
    """
    I, F = p.I, p.F
    out = set()
    obj = game.objective
    if objective_holds(game, p):
        if isinstance(obj, Parity):
            top = max(obj.priority[v] for v in I)
            out |= {v for v in I if obj.priority[v] == top}
        else:
            for f, r in obj.pairs:
                if f & I and not (r & I):
                    out |= f & I
    a = game.assumption
    if not assumption_holds(game, p):
        if isinstance(a, LiveEdges):
            out |= {u for u, v in a.edges if u in I and (u, v) not in F}
        elif isinstance(a, LiveGroups):
            for h in a.groups:
                if src(h) & I and not (h & F):
                    out |= src(h) & I
        elif isinstance(a, LiveCnfGroups):
            out |= {v for v in I if any(not (c & F) for c in a.cnf.get(v, ()))}
        elif isinstance(a, PersistentLiveGroups):
            out |= I
        elif isinstance(a, CoLiveEdges):
            # callers drop co-live edges before searching; be safe anyway
            out |= {u for u, _ in F & a.edges}
    return frozenset(out)


def sccs(vertices: Iterable[str], succ: Mapping[str, Iterable[str]]) -> list[frozenset]:
    """Strongly connected components of the subgraph induced by `vertices`."""
    order = list(vertices)
    inside = set(order)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack = set()
    stack: list[str] = []
    result = []
    counter = 0
    for root in order:
        if root in index:
            continue
        work = [(root, iter([w for w in succ.get(root, ()) if w in inside]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([x for x in succ.get(w, ()) if x in inside])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                result.append(frozenset(comp))
    return result


def reachable(succ: Mapping[str, Iterable[str]], starts: Iterable[str]) -> set:
    seen = set(starts)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def p1_cores(game: AugmentedGame, succ: Mapping[str, tuple], within: Iterable[str]
             ) -> list[InfSetProfile]:
    """Player-1-winning signatures realizable in the one-player graph `succ`.

    Every Player-1-winning signature (I, F) with I ⊆ `within` has I contained
    in one of the returned signatures' vertex sets, and each returned
    signature is itself Player-1-winning.
    """
    g = game.graph
    banned = game.assumption.edges if isinstance(game.assumption, CoLiveEdges) else frozenset()
    adj = {u: tuple(v for v in succ.get(u, ()) if (u, v) not in banned) for u in succ}
    found = []
    stack = [g.ordered(within)]
    while stack:
        X = stack.pop()
        for K in sccs(X, adj):
            F = frozenset((u, v) for u in K for v in adj.get(u, ()) if v in K)
            if not F:
                continue
            prof = InfSetProfile(K, F)
            if classify_infset(prof, game) == 1:
                found.append(prof)
                continue
            blamed = _blame(game, prof)
            assert blamed, "non-winning signature with nothing to blame"
            rest = K - blamed
            if rest:
                stack.append(g.ordered(rest))
    return found


def losing_region(game: AugmentedGame, succ: Mapping[str, tuple]) -> tuple[set, list]:
    """Vertices from which Player 1 wins the one-player graph `succ`.

    Player 1 wins from v if v reaches a Player-1-winning signature or a
    Player-0 dead end. Returns that region and the cores found.
    """
    g = game.graph
    cores = p1_cores(game, succ, g.vertices)
    bad = set()
    for c in cores:
        bad |= c.I
    bad |= {v for v in g.vertices if not succ.get(v) and g.owner[v] == 0}
    pred: dict[str, list] = {}
    for u, vs in succ.items():
        for v in vs:
            pred.setdefault(v, []).append(u)
    return reachable(pred, bad), cores


def strategy_graph(g: GameGraph, sigma: Mapping[str, str]) -> dict:
    """Successor map of g with Player-0 vertices restricted to their σ-move."""
    out = {}
    for v in g.vertices:
        if g.owner[v] == 0 and v in sigma:
            out[v] = (sigma[v],)
        else:
            out[v] = g.succ[v]
    return out


def _bfs_path(adj, start, goal_set):
    """Shortest vertex path from start to a member of goal_set (inclusive)."""
    parent = {start: None}
    q = deque([start])
    while q:
        u = q.popleft()
        if u in goal_set:
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return path[::-1]
        for v in adj.get(u, ()):
            if v not in parent:
                parent[v] = u
                q.append(v)
    return None


def lasso_for(g: GameGraph, succ: Mapping[str, tuple], start: str,
              target: InfSetProfile) -> LassoWitness:
    """A lasso from `start` in `succ` whose cycle realizes `target` exactly."""
    path = _bfs_path(succ, start, target.I)
    if path is None:
        raise GameError(f"signature not reachable from {start!r}")
    entry = path[-1]
    fadj: dict[str, list] = {}
    for u, v in g.ordered_edges(target.F):
        fadj.setdefault(u, []).append(v)
    walk = [entry]
    covered = set()
    cur = entry
    for a, b in g.ordered_edges(target.F):
        if (a, b) in covered:
            continue
        for x in _bfs_path(fadj, cur, {a})[1:] + [b]:
            covered.add((walk[-1], x))
            walk.append(x)
        cur = b
    walk += _bfs_path(fadj, cur, {entry})[1:]
    if len(walk) == 1:
        walk.append(entry)
    return LassoWitness(tuple(path[:-1]), tuple(walk[:-1]))


def dead_end_witness(succ: Mapping[str, tuple], start: str, dead: set) -> LassoWitness:
    path = _bfs_path(succ, start, dead)
    return LassoWitness(tuple(path), ())


def enumerate_infsets(g: GameGraph, start: str, max_edges: int = DEFAULT_MAX_PROFILE_EDGES,
                      succ: Mapping[str, tuple] | None = None) -> Iterator[InfSetProfile]:
    """Every realizable signature reachable from `start`, by exhaustive subset search."""
    if start not in g:
        raise GameError(f"unknown vertex {start!r}")
    succ = succ if succ is not None else g.succ
    reach = reachable(succ, [start])
    edges = [(u, v) for u in g.ordered(reach) for v in succ.get(u, ())]
    edges = g.ordered_edges(edges)
    if len(edges) > max_edges:
        raise SizeBoundError(f"profile enumeration limited to {max_edges} edges, "
                             f"reachable part has {len(edges)}")
    for mask in range(1, 1 << len(edges)):
        F = frozenset(e for i, e in enumerate(edges) if mask >> i & 1)
        I = frozenset(x for e in F for x in e)
        p = InfSetProfile(I, F)
        if p.is_realizable():
            yield p
