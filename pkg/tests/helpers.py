"""Independent reference implementations used only by the tests.

Nothing here imports the solver code paths being checked: the attractor is
a naive fixpoint iteration and the lasso checker evaluates the temporal
formulas position by position on the ultimately periodic word.
"""
from __future__ import annotations

import random
from pathlib import Path

import auggame
from auggame.model import (CoLiveEdges, LassoWitness, LiveCnfGroups, LiveEdges, LiveGroups,
                           NoAssumption, Parity, PersistentLiveGroups, Rabin)

FIXTURES = Path(auggame.__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def load_fixture(name: str):
    return auggame.parse_game(fixture_text(name))


# ------------------------------------------------------------- attractor

def naive_attractor(g, player, T):
    A = set(T)
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in A:
                continue
            succ = g.succ[v]
            if g.owner[v] == player:
                ok = any(w in A for w in succ)
            else:
                ok = all(w in A for w in succ)
            if ok:
                A.add(v)
                changed = True
    return A


# ----------------------------------------------------- LTL on lasso words
#
# Formulas are tuples. Atoms look at the current vertex and the next one:
#   ("at", set)       current vertex in set
#   ("step", edges)   (current, next) in edges
#   ("not", f) ("and", f, ...) ("or", f, ...) ("G", f) ("F", f)

def _positions(w: LassoWitness):
    word = list(w.stem) + list(w.cycle)
    n = len(word)
    loop = len(w.stem)
    nxt = [i + 1 for i in range(n - 1)] + [loop]
    return word, nxt, loop


def evaluate(f, w: LassoWitness) -> bool:
    word, nxt, loop = _positions(w)
    return _eval(f, word, nxt, loop)[0]


def _eval(f, word, nxt, loop):
    n = len(word)
    op = f[0]
    if op == "at":
        return [word[i] in f[1] for i in range(n)]
    if op == "step":
        return [(word[i], word[nxt[i]]) in f[1] for i in range(n)]
    if op == "not":
        return [not x for x in _eval(f[1], word, nxt, loop)]
    if op in ("and", "or"):
        vals = [_eval(g, word, nxt, loop) for g in f[1:]]
        comb = all if op == "and" else any
        return [comb(v[i] for v in vals) for i in range(n)]
    if op in ("G", "F"):
        sub = _eval(f[1], word, nxt, loop)
        # on the loop every position sees the whole cycle
        cyc = sub[loop:]
        inf = all(cyc) if op == "G" else any(cyc)
        out = [inf] * n
        for i in range(loop - 1, -1, -1):
            out[i] = (sub[i] and out[i + 1]) if op == "G" else (sub[i] or out[i + 1])
        return out
    raise ValueError(op)


def _implies(a, b):
    return ("or", ("not", a), b)


def _gf(f):
    return ("G", ("F", f))


def assumption_formula(game):
    a = game.assumption
    if isinstance(a, NoAssumption):
        return ("and",)
    if isinstance(a, LiveEdges):
        return ("and", *(_implies(_gf(("at", {u})), _gf(("step", {(u, v)}))) for u, v in a.edges))
    if isinstance(a, CoLiveEdges):
        return ("and", *(("not", _gf(("step", {e}))) for e in a.edges))
    if isinstance(a, LiveGroups):
        return ("and", *(_implies(_gf(("at", {u for u, _ in h})), _gf(("step", set(h))))
                         for h in a.groups))
    if isinstance(a, PersistentLiveGroups):
        parts = []
        for grp in a.groups:
            cont = ("and", *(_implies(("at", {u}), ("step", {e for e in grp.C if e[0] == u}))
                             for u in {e[0] for e in grp.C}))
            parts.append(("G", _implies(("G", ("and", ("at", set(grp.S)), cont)),
                                        ("F", ("at", set(grp.T))))))
        return ("and", *parts)
    if isinstance(a, LiveCnfGroups):
        parts = []
        for v, clauses in a.cnf.items():
            # recurring φ_v means each clause recurs, not all of them at one step
            phi = ("and", *(_gf(("step", set(c))) for c in clauses))
            parts.append(_implies(_gf(("at", {v})), phi))
        return ("and", *parts)
    raise ValueError(a)


def objective_formula(game):
    obj = game.objective
    if isinstance(obj, Parity):
        prio = obj.priority
        d = max(prio.values())
        parts = []
        for p in range(0, d + 1, 2):
            hi = {v for v in prio if prio[v] > p}
            parts.append(("and", _gf(("at", {v for v in prio if prio[v] == p})),
                          ("F", ("G", ("not", ("at", hi))))))
        return ("or", *parts)
    if isinstance(obj, Rabin):
        return ("or", *(("and", _gf(("at", set(f))), ("F", ("G", ("not", ("at", set(r))))))
                        for f, r in obj.pairs))
    raise ValueError(obj)


def ltl_winner(game, w: LassoWitness) -> int:
    """Winner of the play stem·cycle^ω by direct evaluation of ψ ⇒ Φ."""
    ok = evaluate(_implies(assumption_formula(game), objective_formula(game)), w)
    return 0 if ok else 1


# ------------------------------------------------------------------ lassos

def random_lasso(rng: random.Random, succ, start, max_len=12):
    """A random walk from `start` in `succ` closed into a lasso, or None."""
    walk = [start]
    seen = {start: 0}
    for _ in range(max_len):
        nexts = succ[walk[-1]]
        if not nexts:
            return None
        v = rng.choice(list(nexts))
        if v in seen and rng.random() < 0.6:
            i = seen[v]
            return LassoWitness(tuple(walk[:i]), tuple(walk[i:]))
        seen.setdefault(v, len(walk))
        walk.append(v)
    # close at the last repeated vertex if any
    last = walk[-1]
    for v in succ[last]:
        if v in seen:
            i = seen[v]
            return LassoWitness(tuple(walk[:i]), tuple(walk[i:]))
    return None


# ------------------------------------------------------------------ misc

def disjoint_groups(game):
    """Drop repeated edges so live groups become pairwise disjoint."""
    seen = set()
    groups = []
    for h in game.assumption.groups:
        h = frozenset(e for e in h if e not in seen)
        seen |= h
        if h:
            groups.append(h)
    return game.replace(assumption=LiveGroups(tuple(groups)))


# criterion number -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE: dict = {}


def report(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
