"""Core value types: game graphs, objectives, assumptions and results.

All values are immutable after construction. Vertex ids are strings and
every iteration order exposed here follows declaration order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

Edge = tuple[str, str]


class GameError(ValueError):
    """Raised when a value violates a model invariant."""


class SizeBoundError(GameError):
    """Raised when an instance exceeds a configured exhaustive-search bound."""


def fresh_name(base: str, taken) -> str:
    """Return `base`, or `base` with a numeric suffix, not present in `taken`."""
    if base not in taken:
        return base
    k = 1
    while f"{base}.{k}" in taken:
        k += 1
    return f"{base}.{k}"


@dataclass(frozen=True, eq=False)
class GameGraph:
    vertices: tuple[str, ...]
    owner: Mapping[str, int]
    edges: tuple[Edge, ...]
    allow_dead_ends: bool = False
    succ: Mapping[str, tuple[str, ...]] = field(init=False, repr=False)
    pred: Mapping[str, tuple[str, ...]] = field(init=False, repr=False)
    index: Mapping[str, int] = field(init=False, repr=False)
    edge_set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        index = {}
        for v in vertices:
            if v in index:
                raise GameError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        owner = {}
        for v in vertices:
            o = self.owner.get(v)
            if o not in (0, 1):
                raise GameError(f"vertex {v!r} has no owner in {{0,1}}")
            owner[v] = o
        extra = set(self.owner) - set(index)
        if extra:
            raise GameError(f"owner given for unknown vertices {sorted(extra)}")

        seen = set()
        edges = []
        for u, v in self.edges:
            if u not in index or v not in index:
                raise GameError(f"edge ({u},{v}) has an undeclared endpoint")
            if (u, v) not in seen:
                seen.add((u, v))
                edges.append((u, v))
        succ: dict[str, list[str]] = {v: [] for v in vertices}
        pred: dict[str, list[str]] = {v: [] for v in vertices}
        for u, v in edges:
            succ[u].append(v)
            pred[v].append(u)
        if not self.allow_dead_ends:
            dead = [v for v in vertices if not succ[v]]
            if dead:
                raise GameError(f"vertex {dead[0]!r} has no outgoing edge")
        set_ = object.__setattr__
        set_(self, "vertices", vertices)
        set_(self, "owner", owner)
        set_(self, "edges", tuple(edges))
        set_(self, "index", index)
        set_(self, "succ", {v: tuple(s) for v, s in succ.items()})
        set_(self, "pred", {v: tuple(p) for v, p in pred.items()})
        set_(self, "edge_set", frozenset(seen))

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return (self.vertices == other.vertices and self.owner == other.owner
                and self.edge_set == other.edge_set)

    def __hash__(self):
        return hash((self.vertices, self.edge_set))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    def player_vertices(self, player: int) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self.owner[v] == player)

    def player_edges(self, player: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if self.owner[e[0]] == player)

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edge_set

    def dead_ends(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self.succ[v])

    def self_loops(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e[0] == e[1])

    def ordered(self, vs: Iterable[str]) -> list[str]:
        """Sort a vertex collection into declaration order."""
        return sorted(vs, key=self.index.__getitem__)

    def ordered_edges(self, es: Iterable[Edge]) -> list[Edge]:
        idx = self.index
        return sorted(es, key=lambda e: (idx[e[0]], idx[e[1]]))

    def check_vertices(self, vs: Iterable[str], what: str = "vertex set") -> frozenset:
        vs = frozenset(vs)
        bad = [v for v in vs if v not in self.index]
        if bad:
            raise GameError(f"unknown vertex {sorted(bad)[0]!r} in {what}")
        return vs

    def check_edges(self, es: Iterable[Edge], what: str = "edge set") -> frozenset:
        es = frozenset(tuple(e) for e in es)
        for e in sorted(es):
            if e not in self.edge_set:
                raise GameError(f"({e[0]},{e[1]}) in {what} is not an edge of the graph")
        return es


def src(edges: Iterable[Edge]) -> frozenset:
    return frozenset(u for u, _ in edges)


# ---------------------------------------------------------------- objectives

@dataclass(frozen=True)
class Reach:
    target: frozenset


@dataclass(frozen=True, eq=False)
class Parity:
    priority: Mapping[str, int]

    def __eq__(self, other):
        return isinstance(other, Parity) and dict(self.priority) == dict(other.priority)

    def __hash__(self):
        return hash(frozenset(self.priority.items()))

    @property
    def max_priority(self) -> int:
        return max(self.priority.values(), default=0)


@dataclass(frozen=True)
class Rabin:
    pairs: tuple[tuple[frozenset, frozenset], ...]


Objective = Union[Reach, Parity, Rabin]


# --------------------------------------------------------------- assumptions

@dataclass(frozen=True)
class NoAssumption:
    kind = "none"


@dataclass(frozen=True)
class LiveEdges:
    edges: frozenset
    kind = "live"


@dataclass(frozen=True)
class CoLiveEdges:
    edges: frozenset
    kind = "colive"


@dataclass(frozen=True)
class LiveGroups:
    groups: tuple[frozenset, ...]
    kind = "group"

    def singleton_source(self) -> bool:
        return all(len(src(h)) == 1 for h in self.groups)


@dataclass(frozen=True)
class PersistentLiveGroup:
    S: frozenset
    C: frozenset
    T: frozenset


@dataclass(frozen=True)
class PersistentLiveGroups:
    groups: tuple[PersistentLiveGroup, ...]
    kind = "pers"


@dataclass(frozen=True, eq=False)
class LiveCnfGroups:
    """Per-vertex CNF over outgoing edges; each clause is a frozenset of edges."""
    cnf: Mapping[str, tuple[frozenset, ...]]
    kind = "cnf"

    def __eq__(self, other):
        return isinstance(other, LiveCnfGroups) and dict(self.cnf) == dict(other.cnf)

    def __hash__(self):
        return hash(frozenset(self.cnf.items()))


Assumption = Union[NoAssumption, LiveEdges, CoLiveEdges, LiveGroups,
                   PersistentLiveGroups, LiveCnfGroups]

ASSUMPTION_KINDS = ("none", "live", "colive", "group", "pers", "cnf")


def assumption_edges(a: Assumption) -> frozenset:
    """Every edge referenced by an edge-based assumption."""
    if isinstance(a, (LiveEdges, CoLiveEdges)):
        return a.edges
    if isinstance(a, LiveGroups):
        return frozenset().union(*a.groups)
    if isinstance(a, LiveCnfGroups):
        return frozenset(e for cl in a.cnf.values() for c in cl for e in c)
    return frozenset()


# ---------------------------------------------------------------- the game

@dataclass(frozen=True)
class AugmentedGame:
    graph: GameGraph
    objective: Objective
    assumption: Assumption = NoAssumption()
    init: Optional[str] = None
    allow_p0_assumption_edges: bool = False

    def __post_init__(self):
        g = self.graph
        obj = self.objective
        if isinstance(obj, Reach):
            object.__setattr__(self, "objective", Reach(g.check_vertices(obj.target, "reach target")))
        elif isinstance(obj, Parity):
            missing = [v for v in g.vertices if v not in obj.priority]
            if missing:
                raise GameError(f"vertex {missing[0]!r} has no priority")
            if any(p < 0 for p in obj.priority.values()):
                raise GameError("priorities must be non-negative")
            object.__setattr__(self, "objective",
                               Parity({v: int(obj.priority[v]) for v in g.vertices}))
        elif isinstance(obj, Rabin):
            pairs = tuple((g.check_vertices(f, "Rabin pair"), g.check_vertices(r, "Rabin pair"))
                          for f, r in obj.pairs)
            object.__setattr__(self, "objective", Rabin(pairs))
        else:
            raise GameError(f"unknown objective {obj!r}")
        object.__setattr__(self, "assumption", _validate_assumption(self))
        if self.init is not None and self.init not in g:
            raise GameError(f"init vertex {self.init!r} is not declared")

    @property
    def vertices(self):
        return self.graph.vertices

    def replace(self, **kw) -> "AugmentedGame":
        d = dict(graph=self.graph, objective=self.objective, assumption=self.assumption,
                 init=self.init, allow_p0_assumption_edges=self.allow_p0_assumption_edges)
        d.update(kw)
        return AugmentedGame(**d)


def _validate_assumption(game: AugmentedGame) -> Assumption:
    g = game.graph
    a = game.assumption
    lax = game.allow_p0_assumption_edges

    def env_edges(es, what):
        es = g.check_edges(es, what)
        if not lax:
            for u, v in g.ordered_edges(es):
                if g.owner[u] != 1:
                    raise GameError(f"{what} edge ({u},{v}) leaves a Player-0 vertex; "
                                    "assumption edges must belong to the environment")
        return es

    if isinstance(a, NoAssumption):
        return a
    if isinstance(a, LiveEdges):
        return LiveEdges(env_edges(a.edges, "live"))
    if isinstance(a, CoLiveEdges):
        return CoLiveEdges(env_edges(a.edges, "colive"))
    if isinstance(a, LiveGroups):
        return LiveGroups(tuple(env_edges(h, "live group") for h in a.groups))
    if isinstance(a, PersistentLiveGroups):
        out = []
        for grp in a.groups:
            S = g.check_vertices(grp.S, "persistent group S")
            T = g.check_vertices(grp.T, "persistent group T")
            C = g.check_edges(grp.C, "persistent group C")
            if not T <= S:
                raise GameError("persistent group violates T ⊆ S")
            for u, v in g.ordered_edges(C):
                if g.owner[u] != 0:
                    raise GameError(f"persistent group C edge ({u},{v}) is not a Player-0 edge")
            out.append(PersistentLiveGroup(S, C, T))
        return PersistentLiveGroups(tuple(out))
    if isinstance(a, LiveCnfGroups):
        cnf = {}
        for v in g.ordered(a.cnf):
            clauses = []
            for clause in a.cnf[v]:
                clause = frozenset(tuple(e) for e in clause)
                if not clause:
                    raise GameError(f"empty clause in CNF of {v!r}")
                for e in clause:
                    if e[0] != v:
                        raise GameError(f"CNF literal ({e[0]},{e[1]}) is not an outgoing edge of {v!r}")
                env_edges(clause, "cnf")
                clauses.append(clause)
            cnf[v] = tuple(clauses)
        unknown = [v for v in a.cnf if v not in g]
        if unknown:
            raise GameError(f"CNF given for unknown vertex {unknown[0]!r}")
        return LiveCnfGroups(cnf)
    raise GameError(f"unknown assumption {a!r}")


@dataclass(frozen=True, eq=False)
class LabeledGameGraph:
    graph: GameGraph
    label: Mapping[Edge, str]
    init: str

    def __post_init__(self):
        g = self.graph
        for e in g.edges:
            if e not in self.label:
                raise GameError(f"edge ({e[0]},{e[1]}) has no label")
        for e in self.label:
            if e not in g.edge_set:
                raise GameError(f"label given for non-edge ({e[0]},{e[1]})")
        if self.init not in g:
            raise GameError(f"init vertex {self.init!r} is not declared")

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.label.values())

    def is_alternating(self) -> bool:
        return is_alternating(self.graph)


def is_alternating(g: GameGraph) -> bool:
    return all(g.owner[u] != g.owner[v] for u, v in g.edges)


@dataclass(frozen=True)
class LabeledGame:
    """A labeled graph with an objective and an assumption, as read from a file."""
    lgraph: LabeledGameGraph
    objective: Optional[Objective] = None
    assumption: Assumption = NoAssumption()

    def game(self) -> AugmentedGame:
        if self.objective is None:
            raise GameError("labeled graph has no objective")
        return AugmentedGame(self.lgraph.graph, self.objective, self.assumption, self.lgraph.init)


# ------------------------------------------------------------ tails & results

@dataclass(frozen=True)
class InfSetProfile:
    I: frozenset
    F: frozenset

    def is_realizable(self) -> bool:
        if not self.F:
            return False
        ends = frozenset(x for e in self.F for x in e)
        if ends != self.I:
            return False
        out = {}
        for u, v in self.F:
            out.setdefault(u, []).append(v)
        if set(out) != set(self.I):
            return False
        start = next(iter(self.I))
        return _reach(out, start) == self.I and _reach(_reverse(out), start) == self.I


def _reverse(adj):
    r = {}
    for u, vs in adj.items():
        for v in vs:
            r.setdefault(v, []).append(u)
    return r


def _reach(adj, start):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


@dataclass(frozen=True)
class LassoWitness:
    """The play stem·cycle^ω; an empty cycle marks a play stuck at a Player-0 dead end."""
    stem: tuple[str, ...]
    cycle: tuple[str, ...]

    def profile(self) -> InfSetProfile:
        c = self.cycle
        F = frozenset((c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
        return InfSetProfile(frozenset(c), F)

    def is_play_in(self, g: GameGraph) -> bool:
        seq = list(self.stem) + list(self.cycle)
        if not seq:
            return False
        if any(not g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            return False
        if self.cycle:
            return g.has_edge(self.cycle[-1], self.cycle[0])
        return not g.succ[seq[-1]]


@dataclass
class SolveResult:
    w0: frozenset
    w1: frozenset
    strategy0: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    pipeline: str = ""
    stats: dict = field(default_factory=dict)

    def winner(self, v: str) -> int:
        if v in self.w0:
            return 0
        if v in self.w1:
            return 1
        raise GameError(f"unknown vertex {v!r}")
