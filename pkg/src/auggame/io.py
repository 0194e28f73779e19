"""Text formats: game files, DIMACS CNF, results and strategy files.

Game file grammar, one directive per line, `#` starts a comment::

    game NAME
    option dead-ends | option p0-assumption-edges
    init V
    vertex ID owner=0|1 [priority=K]
    edge U V
    objective reach V... | objective parity | objective rabin
    rabin-pair PID F={V,...} R={V,...}
    assume live (U,V)
    assume colive (U,V)
    assume group GID (U,V) (U,V)...
    assume pers GID S={...} C={(U,V),...} T={...}
    assume cnf V ((U,V)|(U,V))&((U,V))
    label (U,V) SYM
"""
from __future__ import annotations

import re
from typing import Optional, Union

from .model import (AugmentedGame, CoLiveEdges, GameError, GameGraph, LabeledGame,
                    LabeledGameGraph, LassoWitness, LiveCnfGroups, LiveEdges, LiveGroups,
                    NoAssumption, Parity, PersistentLiveGroup, PersistentLiveGroups, Rabin,
                    Reach, SolveResult)


class ParseError(GameError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}" + (f", col {col}" if col else "") + ": " if line else ""
        super().__init__(where + msg)


_TOKEN = re.compile(r"\s*(?:([(),={}|&])|([^\s(),={}|&#]+))")


class _Line:
    """Token cursor over one directive."""

    def __init__(self, text: str, lineno: int):
        self.lineno = lineno
        self.toks: list[tuple[str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
            tok = m.group(1) or m.group(2)
            if tok is None:
                break
            self.toks.append((tok, m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0

    def error(self, msg):
        col = self.toks[self.i][1] if self.i < len(self.toks) else 0
        return ParseError(msg, self.lineno, col)

    def peek(self) -> Optional[str]:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self, what="token") -> str:
        if self.i >= len(self.toks):
            raise self.error(f"expected {what}, found end of line")
        tok = self.toks[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.next(repr(tok))
        if got != tok:
            self.i -= 1
            raise self.error(f"expected {tok!r}, found {got!r}")

    def ident(self, what="identifier") -> str:
        tok = self.next(what)
        if tok in "(),={}|&":
            self.i -= 1
            raise self.error(f"expected {what}, found {tok!r}")
        return tok

    def edge(self):
        self.expect("(")
        u = self.ident("vertex")
        self.expect(",")
        v = self.ident("vertex")
        self.expect(")")
        return (u, v)

    def keyval(self, key):
        k = self.ident(f"{key}=")
        if k != key:
            self.i -= 1
            raise self.error(f"expected {key}=..., found {k!r}")
        self.expect("=")

    def vset(self, key):
        self.keyval(key)
        self.expect("{")
        out = []
        while self.peek() != "}":
            out.append(self.ident("vertex"))
            if self.peek() == ",":
                self.next()
        self.expect("}")
        return out

    def eset(self, key):
        self.keyval(key)
        self.expect("{")
        out = []
        while self.peek() != "}":
            out.append(self.edge())
            if self.peek() == ",":
                self.next()
        self.expect("}")
        return out

    def done(self):
        if self.i < len(self.toks):
            raise self.error(f"unexpected {self.toks[self.i][0]!r}")


def parse_game(text: str, allow_p0_assumption_edges: bool = False
               ) -> Union[AugmentedGame, LabeledGame]:
    """Parse a game file; files with `label` lines give a LabeledGame."""
    vertices: list[str] = []
    owner: dict = {}
    prio: dict = {}
    edges: list = []
    objective = None
    rabin_pairs: list = []
    kind = None
    live: list = []
    groups: list = []
    pers: list = []
    cnf: dict = {}
    labels: dict = {}
    init = None
    dead_ends = False
    lax = allow_p0_assumption_edges
    kind_line = 0
    where: dict = {}

    def vertex_ref(ln: _Line, v: str):
        if v not in owner:
            ln.i -= 1
            raise ln.error(f"undeclared vertex {v!r}")

    def edge_ref(ln, e):
        for x in e:
            if x not in owner:
                raise ParseError(f"undeclared vertex {x!r} in edge ({e[0]},{e[1]})", ln.lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        ln = _Line(body, lineno)
        kw = ln.ident("directive")
        if kw == "game":
            ln.ident("game name")
        elif kw == "option":
            opt = ln.ident("option")
            if opt == "dead-ends":
                dead_ends = True
            elif opt == "p0-assumption-edges":
                lax = True
            else:
                ln.i -= 1
                raise ln.error(f"unknown option {opt!r}")
        elif kw == "init":
            init = ln.ident("vertex")
            where["init"] = lineno
        elif kw == "vertex":
            v = ln.ident("vertex id")
            if v in owner:
                ln.i -= 1
                raise ln.error(f"vertex {v!r} declared twice")
            ln.keyval("owner")
            o = ln.ident("0 or 1")
            if o not in ("0", "1"):
                ln.i -= 1
                raise ln.error(f"owner must be 0 or 1, got {o!r}")
            owner[v] = int(o)
            vertices.append(v)
            if ln.peek() is not None:
                ln.keyval("priority")
                k = ln.ident("priority")
                if not k.isdigit():
                    ln.i -= 1
                    raise ln.error(f"priority must be a natural number, got {k!r}")
                prio[v] = int(k)
        elif kw == "edge":
            u = ln.ident("vertex")
            vertex_ref(ln, u)
            v = ln.ident("vertex")
            vertex_ref(ln, v)
            edges.append((u, v))
        elif kw == "objective":
            if objective is not None:
                ln.i -= 1
                raise ln.error("objective declared twice")
            which = ln.ident("reach, parity or rabin")
            if which == "reach":
                targets = []
                while ln.peek() is not None:
                    t = ln.ident("vertex")
                    vertex_ref(ln, t)
                    targets.append(t)
                objective = ("reach", targets)
            elif which in ("parity", "rabin"):
                objective = (which, None)
            else:
                ln.i -= 1
                raise ln.error(f"unknown objective {which!r}")
            where["objective"] = lineno
        elif kw == "rabin-pair":
            ln.ident("pair id")
            F = ln.vset("F")
            R = ln.vset("R")
            for v in F + R:
                if v not in owner:
                    raise ParseError(f"undeclared vertex {v!r}", lineno)
            rabin_pairs.append((frozenset(F), frozenset(R)))
        elif kw == "assume":
            cls = ln.ident("assumption class")
            if cls not in ("live", "colive", "group", "pers", "cnf"):
                ln.i -= 1
                raise ln.error(f"unknown assumption class {cls!r}")
            if kind is not None and kind != cls:
                raise ParseError(f"assumption class {cls!r} conflicts with {kind!r} "
                                 f"declared on line {kind_line}; one class per game", lineno)
            if kind is None:
                kind, kind_line = cls, lineno
            if cls in ("live", "colive"):
                e = ln.edge()
                edge_ref(ln, e)
                live.append(e)
            elif cls == "group":
                ln.ident("group id")
                h = []
                while ln.peek() is not None:
                    e = ln.edge()
                    edge_ref(ln, e)
                    h.append(e)
                if not h:
                    raise ln.error("live group has no edges")
                groups.append(frozenset(h))
            elif cls == "pers":
                ln.ident("group id")
                S = ln.vset("S")
                C = ln.eset("C")
                T = ln.vset("T")
                for v in S + T:
                    if v not in owner:
                        raise ParseError(f"undeclared vertex {v!r}", lineno)
                for e in C:
                    edge_ref(ln, e)
                pers.append((PersistentLiveGroup(frozenset(S), frozenset(C), frozenset(T)), lineno))
            else:
                v = ln.ident("vertex")
                vertex_ref(ln, v)
                clauses = []
                while True:
                    ln.expect("(")
                    clause = [ln.edge()]
                    while ln.peek() == "|":
                        ln.next()
                        clause.append(ln.edge())
                    ln.expect(")")
                    for e in clause:
                        edge_ref(ln, e)
                    clauses.append(frozenset(clause))
                    if ln.peek() != "&":
                        break
                    ln.next()
                if v in cnf:
                    raise ParseError(f"CNF for {v!r} given twice", lineno)
                cnf[v] = tuple(clauses)
        elif kw == "label":
            e = ln.edge()
            edge_ref(ln, e)
            labels[e] = ln.ident("label symbol")
        else:
            ln.i -= 1
            raise ln.error(f"unknown directive {kw!r}")
        ln.done()

    if not vertices:
        raise ParseError("no vertices")
    if prio and (objective is None or objective[0] != "parity"):
        raise ParseError("priorities given but the objective is not parity")
    if init is not None and init not in owner:
        raise ParseError(f"init vertex {init!r} is not declared", where["init"])
    if rabin_pairs and (objective is None or objective[0] != "rabin"):
        raise ParseError("rabin-pair given but the objective is not rabin")
    try:
        g = GameGraph(tuple(vertices), owner, tuple(edges), allow_dead_ends=dead_ends)
        obj = None
        if objective is not None:
            if objective[0] == "reach":
                obj = Reach(frozenset(objective[1]))
            elif objective[0] == "parity":
                missing = [v for v in vertices if v not in prio]
                if missing:
                    raise ParseError(f"vertex {missing[0]!r} has no priority",
                                     where["objective"])
                obj = Parity(prio)
            else:
                obj = Rabin(tuple(rabin_pairs))
        a = {
            None: lambda: NoAssumption(),
            "live": lambda: LiveEdges(frozenset(live)),
            "colive": lambda: CoLiveEdges(frozenset(live)),
            "group": lambda: LiveGroups(tuple(groups)),
            "pers": lambda: PersistentLiveGroups(tuple(p for p, _ in pers)),
            "cnf": lambda: LiveCnfGroups(cnf),
        }[kind]()
        for p, lineno in pers:
            if not p.T <= p.S:
                raise ParseError("persistent group violates T ⊆ S", lineno)
        if labels:
            if init is None:
                raise ParseError("labeled game needs an init vertex")
            lg = LabeledGameGraph(g, labels, init)
            if obj is not None:
                AugmentedGame(g, obj, a, init, lax)  # validate
            return LabeledGame(lg, obj, a)
        if obj is None:
            raise ParseError("missing objective")
        return AugmentedGame(g, obj, a, init, lax)
    except ParseError:
        raise
    except GameError as exc:
        raise ParseError(f"semantic error: {exc}") from exc


def _set(g: GameGraph, vs) -> str:
    return "{" + ",".join(g.ordered(vs)) + "}"


def _edge(e) -> str:
    return f"({e[0]},{e[1]})"


def serialize_game(game: Union[AugmentedGame, LabeledGame], name: str = "game") -> str:
    if isinstance(game, LabeledGame):
        g, obj, a = game.lgraph.graph, game.objective, game.assumption
        init, labels, lax = game.lgraph.init, game.lgraph.label, False
    else:
        g, obj, a = game.graph, game.objective, game.assumption
        init, labels, lax = game.init, None, game.allow_p0_assumption_edges
    out = [f"game {name}"]
    if g.allow_dead_ends:
        out.append("option dead-ends")
    if lax:
        out.append("option p0-assumption-edges")
    if init is not None:
        out.append(f"init {init}")
    for v in g.vertices:
        line = f"vertex {v} owner={g.owner[v]}"
        if isinstance(obj, Parity):
            line += f" priority={obj.priority[v]}"
        out.append(line)
    for u, v in g.edges:
        out.append(f"edge {u} {v}")
    if isinstance(obj, Reach):
        out.append(" ".join(["objective reach"] + g.ordered(obj.target)))
    elif isinstance(obj, Parity):
        out.append("objective parity")
    elif isinstance(obj, Rabin):
        out.append("objective rabin")
        for i, (f, r) in enumerate(obj.pairs, 1):
            out.append(f"rabin-pair P{i} F={_set(g, f)} R={_set(g, r)}")
    if isinstance(a, (LiveEdges, CoLiveEdges)):
        for e in g.ordered_edges(a.edges):
            out.append(f"assume {a.kind} {_edge(e)}")
    elif isinstance(a, LiveGroups):
        for i, h in enumerate(a.groups, 1):
            out.append(f"assume group H{i} " + " ".join(_edge(e) for e in g.ordered_edges(h)))
    elif isinstance(a, PersistentLiveGroups):
        for i, p in enumerate(a.groups, 1):
            C = "{" + ",".join(_edge(e) for e in g.ordered_edges(p.C)) + "}"
            out.append(f"assume pers L{i} S={_set(g, p.S)} C={C} T={_set(g, p.T)}")
    elif isinstance(a, LiveCnfGroups):
        for v in g.ordered(a.cnf):
            clauses = ["(" + "|".join(_edge(e) for e in g.ordered_edges(c)) + ")"
                       for c in a.cnf[v]]
            out.append(f"assume cnf {v} " + "&".join(clauses))
    if labels:
        for e in g.edges:
            out.append(f"label {_edge(e)} {labels[e]}")
    return "\n".join(out) + "\n"


def serialize_witness(v: str, w: LassoWitness) -> str:
    return " ".join(["witness", v, "stem", *w.stem, "cycle", *w.cycle])


def serialize_result(res: SolveResult, g: GameGraph, witnesses: bool = False) -> str:
    out = [f"winner {v} {res.winner(v)}" for v in g.vertices]
    for u in g.ordered(res.strategy0):
        out.append(f"strategy {u} -> {res.strategy0[u]}")
    if witnesses and res.witness:
        for v in g.ordered(res.witness):
            w = res.witness[v]
            if w is not None:
                out.append(serialize_witness(v, w))
    return "\n".join(out) + "\n"


def parse_strategy(text: str) -> dict:
    """Read `strategy u -> v` lines; other result lines are skipped."""
    strat = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if not body or body[0] in ("winner", "witness"):
            continue
        if body[0] != "strategy" or len(body) != 4 or body[2] != "->":
            raise ParseError("expected 'strategy U -> V'", lineno)
        if body[1] in strat:
            raise ParseError(f"two moves for {body[1]!r}", lineno)
        strat[body[1]] = body[3]
    return strat


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """DIMACS CNF: returns (number of variables, clauses)."""
    nvars = None
    nclauses = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf VARS CLAUSES'", lineno)
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("expected 'p cnf VARS CLAUSES'", lineno) from None
            continue
        if nvars is None:
            raise ParseError("clause before the 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if abs(lit) > nvars:
                raise ParseError(f"literal {lit} exceeds declared {nvars} variables", lineno)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if nvars is None:
        raise ParseError("missing 'p cnf' header")
    if nclauses is not None and nclauses != len(clauses):
        raise ParseError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def serialize_dimacs(nvars: int, clauses) -> str:
    out = [f"p cnf {nvars} {len(clauses)}"]
    out += [" ".join(str(l) for l in c) + " 0" for c in clauses]
    return "\n".join(out) + "\n"
