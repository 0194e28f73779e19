"""Constructive translations between game classes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .model import (AugmentedGame, CoLiveEdges, Edge, GameError, GameGraph, LabeledGame,
                    LabeledGameGraph, LiveCnfGroups, LiveEdges, LiveGroups, NoAssumption,
                    Parity, PersistentLiveGroup, PersistentLiveGroups, Rabin, Reach,
                    SolveResult, fresh_name, src)
from .ops import as_parity


def _lift_objective(obj, fresh: Sequence[str]):
    """Extend an objective to fresh vertices that must stay neutral."""
    if isinstance(obj, Parity):
        prio = dict(obj.priority)
        prio.update({v: 0 for v in fresh})
        return Parity(prio)
    return obj  # Reach targets and Rabin sets simply do not mention them


# ---------------------------------------------------------------- Rabin

@dataclass(frozen=True)
class RabinEncoding:
    game: AugmentedGame
    edge_vertex: Mapping[Edge, str]
    edge_of: Mapping[str, Edge]

    def project_strategy(self, strat: Mapping[str, str]) -> dict:
        return {u: self.edge_of[e][1] for u, e in strat.items() if u not in self.edge_of}


def to_rabin(game: AugmentedGame) -> RabinEncoding:
    """Put a vertex on every edge and express ¬ψ ∨ Φ as Rabin pairs.

    Live edges become singleton groups; a group H gives the pair
    (src(H), H-vertices); a co-live edge e gives ({e}, ∅); priorities give
    one pair per even priority 2i: (P_2i, P_j for j > 2i).
    """
    a = game.assumption
    if isinstance(a, (PersistentLiveGroups, LiveCnfGroups)):
        raise GameError(f"no Rabin encoding for {a.kind} assumptions; "
                        "convert CNF groups with cnf_to_live_edges first")
    game = as_parity(game)
    a = game.assumption
    g = game.graph
    taken = set(g.vertices)
    ev: dict = {}
    for u, v in g.edges:
        name = fresh_name(f"{u}->{v}", taken)
        taken.add(name)
        ev[(u, v)] = name
    vertices = tuple(g.vertices) + tuple(ev[e] for e in g.edges)
    owner = dict(g.owner)
    owner.update({ev[e]: g.owner[e[0]] for e in g.edges})
    edges = []
    for e in g.edges:
        edges += [(e[0], ev[e]), (ev[e], e[1])]
    g2 = GameGraph(vertices, owner, tuple(edges), allow_dead_ends=g.allow_dead_ends)
    pairs = []
    if isinstance(a, LiveEdges):
        groups = [frozenset([e]) for e in g.ordered_edges(a.edges)]
    elif isinstance(a, LiveGroups):
        groups = list(a.groups)
    else:
        groups = []
    for h in groups:
        pairs.append((src(h), frozenset(ev[e] for e in h)))
    if isinstance(a, CoLiveEdges):
        for e in g.ordered_edges(a.edges):
            pairs.append((frozenset([ev[e]]), frozenset()))
    obj = game.objective
    if isinstance(obj, Parity):
        prio = obj.priority
        d = obj.max_priority
        for i in range(d // 2 + 1):
            p = 2 * i
            pairs.append((frozenset(v for v in g.vertices if prio[v] == p),
                          frozenset(v for v in g.vertices if prio[v] > p)))
    else:
        pairs += list(obj.pairs)
    out = AugmentedGame(g2, Rabin(tuple(pairs)), NoAssumption(), game.init)
    return RabinEncoding(out, ev, {n: e for e, n in ev.items()})


def solve_via_rabin(game: AugmentedGame, **oracle_kw) -> SolveResult:
    """CNF groups to live edges, then the Rabin encoding, then the oracle."""
    from .oracle import oracle_solve
    steps = []
    work = game
    if isinstance(work.assumption, LiveCnfGroups):
        work = cnf_to_live_edges(work)
        steps.append("cnf-to-live")
    if isinstance(work.assumption, PersistentLiveGroups):
        raise GameError("rabin-oracle does not handle persistent live groups")
    enc = to_rabin(work)
    steps.append("rabin")
    oracle_kw.setdefault("witnesses", False)
    res = oracle_solve(enc.game, **oracle_kw)
    V = frozenset(game.graph.vertices)
    W0 = res.w0 & V
    strat = {u: v for u, v in enc.project_strategy(res.strategy0).items() if u in W0}
    return SolveResult(W0, V - W0, strat, pipeline="rabin-oracle(" + ">".join(steps) + ")",
                       stats=res.stats)


# ------------------------------------------------------ group eliminations

def singleton_groups_to_live_edges(game: AugmentedGame) -> AugmentedGame:
    """Route each single-source group through a fresh Player-1 vertex behind a live edge."""
    a = game.assumption
    if not isinstance(a, LiveGroups):
        raise GameError("singleton reduction needs live groups")
    if not a.singleton_source():
        raise GameError("every live group must have exactly one source vertex")
    g = game.graph
    taken = set(g.vertices)
    fresh = []
    removed = set()
    added = []
    live = []
    for h in a.groups:
        (u,) = src(h)
        if g.owner[u] != 1:
            raise GameError(f"group source {u!r} is a Player-0 vertex")
        name = fresh_name(f"{u}~H", taken)
        taken.add(name)
        fresh.append(name)
        removed |= h
        added.append((u, name))
        added += [(name, v) for _, v in g.ordered_edges(h)]
        live.append((u, name))
    owner = dict(g.owner)
    owner.update({v: 1 for v in fresh})
    edges = [e for e in g.edges if e not in removed] + added
    g2 = GameGraph(tuple(g.vertices) + tuple(fresh), owner, tuple(edges),
                   allow_dead_ends=g.allow_dead_ends)
    return AugmentedGame(g2, _lift_objective(game.objective, fresh), LiveEdges(frozenset(live)),
                         game.init, game.allow_p0_assumption_edges)


def cnf_to_live_edges(game: AugmentedGame) -> AugmentedGame:
    """One fresh Player-1 vertex per clause, entered through a live edge.

    The original edges stay; the clause vertex leads to the clause's targets.
    """
    a = game.assumption
    if not isinstance(a, LiveCnfGroups):
        raise GameError("cnf_to_live_edges needs live CNF groups")
    g = game.graph
    taken = set(g.vertices)
    fresh = []
    added = []
    live = []
    for u in g.ordered(a.cnf):
        for clause in a.cnf[u]:
            if not clause or any(e[0] != u for e in clause):
                raise GameError(f"malformed clause at {u!r}")
            name = fresh_name(f"{u}~C", taken)
            taken.add(name)
            fresh.append(name)
            added.append((u, name))
            added += [(name, v) for _, v in g.ordered_edges(clause)]
            live.append((u, name))
    owner = dict(g.owner)
    owner.update({v: 1 for v in fresh})
    g2 = GameGraph(tuple(g.vertices) + tuple(fresh), owner, tuple(g.edges) + tuple(added),
                   allow_dead_ends=g.allow_dead_ends)
    return AugmentedGame(g2, _lift_objective(game.objective, fresh), LiveEdges(frozenset(live)),
                         game.init, game.allow_p0_assumption_edges)


def to_live_groups(game: AugmentedGame) -> AugmentedGame:
    """Restate live edges or live CNF groups as live groups on the same graph.

    A live edge is the group {e}; a clause at v is a group with source v.
    """
    a = game.assumption
    g = game.graph
    if isinstance(a, LiveGroups):
        return game
    if isinstance(a, LiveEdges):
        groups = tuple(frozenset([e]) for e in g.ordered_edges(a.edges))
    elif isinstance(a, LiveCnfGroups):
        groups = tuple(c for u in g.ordered(a.cnf) for c in a.cnf[u])
    else:
        raise GameError(f"cannot restate {a.kind} assumptions as live groups")
    return game.replace(assumption=LiveGroups(groups))


# -------------------------------------------------------------- 3-SAT gadget

SMILEY = "smiley"


def _lit(l: int) -> str:
    return f"x{l}" if l > 0 else f"~x{-l}"


def sat_to_game(clauses: Sequence[Sequence[int]], nvars: Optional[int] = None) -> AugmentedGame:
    """The hardness gadget: Player 0 wins from v0 iff the formula is satisfiable.

    Clauses are DIMACS-style integer lists; shorter clauses are padded by
    repeating their last literal.
    """
    if not clauses:
        raise GameError("formula has no clauses")
    if any(not c for c in clauses):
        raise GameError("formula has an empty clause")
    if any(len(c) > 3 for c in clauses):
        raise GameError("clauses may have at most 3 literals")
    m = max(abs(l) for c in clauses for l in c)
    m = max(m, nvars or 0)
    vertices = ["v0"]
    owner = {"v0": 1}
    edges = []
    for i in range(1, len(clauses) + 1):
        vertices.append(f"C{i}")
        owner[f"C{i}"] = 0
        edges.append(("v0", f"C{i}"))
    for i in range(1, m + 1):
        for y in (f"x{i}", f"~x{i}"):
            vertices.append(y)
            owner[y] = 1
    for i in range(1, m + 1):
        for y in (f"x{i}'", f"~x{i}'"):
            vertices.append(y)
            owner[y] = 1
    vertices.append(SMILEY)
    owner[SMILEY] = 0
    for i, c in enumerate(clauses, 1):
        padded = list(c) + [c[-1]] * (3 - len(c))
        for l in padded:
            edges.append((f"C{i}", _lit(l)))
    for i in range(1, m + 1):
        for y in (f"x{i}", f"~x{i}"):
            edges += [(y, SMILEY), (y, y + "'"), (y + "'", "v0")]
    edges.append((SMILEY, SMILEY))
    groups = []
    for i in range(1, m + 1):
        groups.append(frozenset({(f"x{i}", SMILEY), (f"~x{i}'", "v0")}))
        groups.append(frozenset({(f"~x{i}", SMILEY), (f"x{i}'", "v0")}))
    g = GameGraph(tuple(vertices), owner, tuple(edges))
    return AugmentedGame(g, Reach(frozenset([SMILEY])), LiveGroups(tuple(groups)), "v0")


# -------------------------------------------------------------- alternation

def make_alternating(game: AugmentedGame) -> tuple[AugmentedGame, dict]:
    """Insert an opponent relay on every edge that keeps the owner.

    Returns the new game and a map from each new vertex to the original
    vertex it stands for (relays map to their edge's source).
    """
    g = game.graph
    taken = set(g.vertices)
    relay: dict = {}
    for u, v in g.edges:
        if g.owner[u] == g.owner[v]:
            name = fresh_name(f"{u}>{v}", taken)
            taken.add(name)
            relay[(u, v)] = name
    back = {v: v for v in g.vertices}
    if not relay:
        return game, back
    owner = dict(g.owner)
    edges = []
    for e in g.edges:
        if e in relay:
            r = relay[e]
            owner[r] = 1 - g.owner[e[0]]
            back[r] = e[0]
            edges += [(e[0], r), (r, e[1])]
        else:
            edges.append(e)
    fresh = [relay[e] for e in g.edges if e in relay]
    g2 = GameGraph(tuple(g.vertices) + tuple(fresh), owner, tuple(edges),
                   allow_dead_ends=g.allow_dead_ends)

    def m(e):
        return (e[0], relay[e]) if e in relay else e

    def ms(es):
        return frozenset(m(e) for e in es)

    a = game.assumption
    if isinstance(a, LiveEdges):
        a = LiveEdges(ms(a.edges))
    elif isinstance(a, CoLiveEdges):
        a = CoLiveEdges(ms(a.edges))
    elif isinstance(a, LiveGroups):
        a = LiveGroups(tuple(ms(h) for h in a.groups))
    elif isinstance(a, LiveCnfGroups):
        a = LiveCnfGroups({u: tuple(ms(c) for c in cl) for u, cl in a.cnf.items()})
    elif isinstance(a, PersistentLiveGroups):
        new = []
        for grp in a.groups:
            S = grp.S | {relay[e] for e in relay if e[0] in grp.S}
            new.append(PersistentLiveGroup(S, ms(grp.C), grp.T))
        a = PersistentLiveGroups(tuple(new))
    return AugmentedGame(g2, _lift_objective(game.objective, fresh), a, game.init,
                         game.allow_p0_assumption_edges), back


# ---------------------------------------------------- product / decompose

def _pair(v: str, w: str) -> str:
    return f"{v}/{w}"


def product(spec: LabeledGame, plant: LabeledGame) -> AugmentedGame:
    """Synchronise spec and plant on equal labels, from the pair of initial vertices.

    Each live edge of the plant yields one live group made of all its
    product copies; the objective is read through the spec component.
    """
    sg, pg = spec.lgraph, plant.lgraph
    for name, lg in (("spec", sg), ("plant", pg)):
        if not lg.is_alternating():
            raise GameError(f"{name} graph is not alternating")
        if lg.graph.owner[lg.init] != 1:
            raise GameError(f"{name} initial vertex must belong to Player 1")
    if spec.objective is None:
        raise GameError("spec has no objective")
    pa = plant.assumption
    if isinstance(pa, NoAssumption):
        live = frozenset()
    elif isinstance(pa, LiveEdges):
        live = pg.graph.check_edges(pa.edges, "plant live edges")
    else:
        raise GameError("plant assumptions must be live edges")
    G1, G2 = sg.graph, pg.graph
    start = (sg.init, pg.init)
    seen = {start}
    order = [start]
    edges = []
    q = deque([start])
    while q:
        v, w = q.popleft()
        for v2 in G1.succ[v]:
            a = sg.label[(v, v2)]
            for w2 in G2.succ[w]:
                if pg.label[(w, w2)] != a:
                    continue
                nxt = (v2, w2)
                edges.append(((v, w), nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    q.append(nxt)
    if not edges:
        raise GameError("no label is shared by the moves leaving the initial pair")
    names = {p: _pair(*p) for p in order}
    if len(set(names.values())) != len(names):
        raise GameError("product vertex names collide; avoid '/' in vertex ids")
    owner = {names[p]: G1.owner[p[0]] for p in order}
    g = GameGraph(tuple(names[p] for p in order), owner,
                  tuple((names[a], names[b]) for a, b in edges), allow_dead_ends=True)
    groups = []
    for le in G2.ordered_edges(live):
        h = frozenset((names[a], names[b]) for a, b in edges if (a[1], b[1]) == le)
        if h:
            groups.append(h)
    obj = spec.objective
    if isinstance(obj, Reach):
        obj = Reach(frozenset(names[p] for p in order if p[0] in obj.target))
    elif isinstance(obj, Parity):
        obj = Parity({names[p]: obj.priority[p[0]] for p in order})
    else:
        obj = Rabin(tuple((frozenset(names[p] for p in order if p[0] in f),
                           frozenset(names[p] for p in order if p[0] in r)) for f, r in obj.pairs))
    return AugmentedGame(g, obj, LiveGroups(tuple(groups)), names[start])


HUB = "u0"
HUB_STAR = "u*"


def decompose(game: AugmentedGame) -> tuple[LabeledGame, LabeledGame]:
    """Split an alternating group game into a labeled spec and a live-edge hub."""
    g = game.graph
    a = game.assumption
    if isinstance(a, NoAssumption):
        groups: tuple = ()
    elif isinstance(a, LiveGroups):
        groups = a.groups
    else:
        raise GameError("decompose needs live groups")
    if not all(g.owner[u] != g.owner[v] for u, v in g.edges):
        raise GameError("decompose needs an alternating game")
    if game.init is None or g.owner[game.init] != 1:
        raise GameError("decompose needs an initial vertex owned by Player 1")
    for i, h in enumerate(groups):
        for j in range(i):
            if h & groups[j]:
                raise GameError("live groups must be pairwise disjoint")
        for u, v in h:
            if g.owner[u] != 1:
                raise GameError(f"group edge ({u},{v}) does not leave a Player-1 vertex")
    label = {e: "a" for e in g.edges}
    for i, h in enumerate(groups, 1):
        for e in h:
            label[e] = f"h{i}"
    spec = LabeledGame(LabeledGameGraph(g, label, game.init), game.objective)
    m = len(groups)
    xs = [f"x{i}" for i in range(1, m + 1)]
    vertices = (HUB, HUB_STAR, *xs)
    owner = {HUB: 1, HUB_STAR: 0, **{x: 0 for x in xs}}
    edges = []
    hub_label = {}
    for i, x in enumerate(xs, 1):
        edges += [(HUB, x), (x, HUB)]
        hub_label[(HUB, x)] = f"h{i}"
        hub_label[(x, HUB)] = "a"
    edges += [(HUB, HUB_STAR), (HUB_STAR, HUB)]
    hub_label[(HUB, HUB_STAR)] = "a"
    hub_label[(HUB_STAR, HUB)] = "a"
    hg = GameGraph(vertices, owner, tuple(edges))
    plant = LabeledGame(LabeledGameGraph(hg, hub_label, HUB), None,
                        LiveEdges(frozenset((HUB, x) for x in xs)))
    return spec, plant
