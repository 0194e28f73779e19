"""The ten acceptance criteria, one test each.

Every test prints a single PASS/FAIL line; conftest repeats them in the
terminal summary so they show up in a plain `pytest -v` run.
"""
import itertools
import random
import time

from auggame.augmented import attr_pers, qsolve_region, solve_augmented, solve_colive
from auggame.classic import solve_parity_parys
from auggame.generate import random_cnf, random_game
from auggame.model import AugmentedGame, Parity, PersistentLiveGroups, Reach
from auggame.oracle import (counter_witnesses, oracle_solve, sat_brute, verify_strategy,
                            witness_is_p1_win)
from auggame.ops import (as_parity, restrict_graph, restrict_pers, restrict_priorities,
                         split_self_loops)
from auggame.reductions import (cnf_to_live_edges, decompose, product, sat_to_game,
                                singleton_groups_to_live_edges, to_rabin)
from auggame.semantics import classify_infset

from helpers import disjoint_groups, load_fixture, random_lasso, report

FIG4 = [[1, 2, -3], [-1, 2, -3], [-1, -2, 3]]
CLASSES = ("none", "live", "colive", "group", "singleton", "cnf", "pers")
GAMES_PER_CLASS = 200


def _class_games(kind, count=GAMES_PER_CLASS, base=0):
    """Seeded games of one class: 1..8 vertices, 1..4 priorities, both objectives."""
    for i in range(count):
        n = 1 + i % 8
        yield random_game(base + i, n=n, assumption=kind,
                          objective="reach" if i % 3 == 0 else "parity",
                          priorities=1 + i % 4)


def _rabin_w0(game, original=None):
    """Oracle on the Rabin encoding, projected onto the original vertices."""
    keep = set((original or game).graph.vertices)
    return oracle_solve(to_rabin(game).game, witnesses=False).w0 & keep


def _solvers(game, kind):
    """Named winning regions from every solver path that applies to this class."""
    out = {"auto": lambda: solve_augmented(game).w0}
    if kind in ("none", "live", "group", "colive"):
        out["to_rabin"] = lambda: _rabin_w0(game)
    if kind == "singleton":
        out["singleton>rabin"] = lambda: _rabin_w0(singleton_groups_to_live_edges(game), game)
    if kind == "cnf":
        out["cnf>rabin"] = lambda: _rabin_w0(cnf_to_live_edges(game), game)
    if kind == "colive":
        out["solve_colive"] = lambda: solve_colive(game).w0
    if kind in ("none", "pers"):
        out["zielonka_pers"] = lambda: solve_augmented(game, "zielonka-pers").w0
        out["qsolve_pers"] = lambda: solve_augmented(game, "qsolve-pers").w0
        if isinstance(game.objective, Reach):
            groups = game.assumption.groups if kind == "pers" else ()
            out["attr_pers"] = lambda: attr_pers(game.graph, game.objective.target, groups)[0]
    if kind == "none":
        out["zielonka"] = lambda: solve_augmented(game, "zielonka").w0
        out["parys"] = lambda: solve_augmented(game, "parys").w0
    return out


# ----------------------------------------------------------------------- 1

def test_criterion_01_fig2_live_edge():
    start = time.perf_counter()
    plain = oracle_solve(load_fixture("fig2-noassume.game"))
    fig2 = load_fixture("fig2.game")
    live = solve_augmented(fig2)
    checked = oracle_solve(fig2)
    secs = time.perf_counter() - start
    ok = (plain.winner("w") == 1 and solve_augmented(load_fixture("fig2-noassume.game"))
          .winner("w") == 1 and live.winner("w") == 0 and checked.winner("w") == 0
          and secs < 1.0)
    report(1, ok, f"w lost without (r,g) live, won with it; {secs:.3f}s < 1s")
    assert ok


# ----------------------------------------------------------------------- 2

def test_criterion_02_fig3_live_group():
    start = time.perf_counter()
    fig3 = load_fixture("fig3.game")
    via_rabin = oracle_solve(to_rabin(fig3).game).winner("w1")
    via_dispatch = solve_augmented(fig3, "rabin-oracle").winner("w1")
    via_oracle = oracle_solve(fig3).winner("w1")
    secs = time.perf_counter() - start
    ok = via_rabin == via_dispatch == via_oracle == 1 and secs < 1.0
    report(2, ok, f"w1 won by P1 via Rabin encoding and oracle; {secs:.3f}s < 1s")
    assert ok


# ----------------------------------------------------------------------- 3

def test_criterion_03_sat_gadget():
    start = time.perf_counter()
    game = sat_to_game(FIG4)
    ok = oracle_solve(game).winner("v0") == 0 and sat_brute(FIG4)
    ok = ok and verify_strategy(game, {"C1": "x1", "C2": "x2", "C3": "x3"}, {"v0"}) is None
    mismatches = 0
    rng = random.Random(2024)
    for i in range(50):
        nvars, nclauses = rng.randint(1, 4), rng.randint(1, 5)
        clauses = random_cnf(rng.randrange(10 ** 6), nvars, nclauses)
        won = oracle_solve(sat_to_game(clauses, nvars), witnesses=False).winner("v0") == 0
        mismatches += won != sat_brute(clauses, nvars)
    secs = time.perf_counter() - start
    ok = ok and mismatches == 0 and secs < 30.0
    report(3, ok, f"sample formula won and certified; 50 random formulas, "
                  f"{mismatches} mismatches; {secs:.1f}s < 30s")
    assert ok


# ----------------------------------------------------------------------- 4

def test_criterion_04_oracle_equivalence():
    start = time.perf_counter()
    mismatches = []
    checks = 0
    for kind in CLASSES:
        for game in _class_games(kind):
            expect = oracle_solve(game, witnesses=False).w0
            for name, solve in _solvers(game, kind).items():
                checks += 1
                if solve() != expect:
                    mismatches.append((kind, name))
    secs = time.perf_counter() - start
    ok = not mismatches and secs < 300.0
    report(4, ok, f"{GAMES_PER_CLASS} games x {len(CLASSES)} classes, {checks} solver "
                  f"comparisons, {len(mismatches)} mismatches; {secs:.1f}s < 300s")
    assert ok, mismatches[:10]


# ----------------------------------------------------------------------- 5

def test_criterion_05_qsolve_bound():
    runs = violations = 0
    games = [load_fixture("pers1.game")]
    games += list(_class_games("pers", 150, base=5000))
    games += list(_class_games("none", 150, base=6000))
    for game in games:
        for res in (solve_augmented(game, "qsolve-pers"),):
            runs += 1
            violations += not res.stats["qsolve_calls"] <= res.stats["bound"]
        if isinstance(game.objective, Parity):
            g2, prio2, _, _ = split_self_loops(game.graph, game.objective.priority)
            res = solve_parity_parys(g2, prio2)
            runs += 1
            violations += not res.stats["qsolve_calls"] <= res.stats["bound"]
    ok = violations == 0
    report(5, ok, f"R <= n^l (h+l)^l on {runs} QSolve runs, {violations} violations")
    assert ok


# ----------------------------------------------------------------------- 6

def _restricted(game, U):
    g = game.graph
    return AugmentedGame(restrict_graph(g, U),
                         Parity(restrict_priorities(game.objective.priority, U)),
                         PersistentLiveGroups(restrict_pers(game.assumption.groups, g, U)))


def _is_trap_for(g, player, U):
    """Can the opponent of `player` keep every play inside U?"""
    for v in U:
        inside = [w for w in g.succ[v] if w in U]
        if g.owner[v] == player:
            if len(inside) != len(g.succ[v]):
                return False
        elif not inside:
            return False
    return True


def _dominions(game):
    """All Player-0 and Player-1 dominions, by exhaustive subset search."""
    g = game.graph
    d0, d1 = [], []
    for r in range(1, len(g.vertices) + 1):
        for U in map(frozenset, itertools.combinations(g.vertices, r)):
            for player, acc in ((0, d0), (1, d1)):
                if not _is_trap_for(g, 1 - player, U):
                    continue
                w0 = oracle_solve(_restricted(game, U), witnesses=False).w0
                if (w0 == U) if player == 0 else not w0:
                    acc.append(U)
    return d0, d1


def test_criterion_06_dominions():
    games = violations = dominions = 0
    for seed in range(120):
        n = 2 + seed % 5
        game = random_game(7000 + seed, n=n, assumption="pers", priorities=1 + seed % 4,
                           loops=False)
        g, prio, groups = game.graph, game.objective.priority, game.assumption.groups
        d0, d1 = _dominions(game)
        dominions += len(d0) + len(d1)
        games += 1
        for p0 in range(1, n + 1):
            W, _ = qsolve_region(g, prio, groups, p0)
            violations += sum(1 for S in d0 if len(S) <= p0 and not S <= W)
            violations += sum(1 for S in d1 if S & W)
    ok = violations == 0
    report(6, ok, f"{games} loop-free persistent-group games, {dominions} dominions, "
                  f"every precision p0; {violations} violations")
    assert ok


# ----------------------------------------------------------------------- 7

def test_criterion_07_product_round_trip():
    mismatches = hub_errors = 0
    total = 0
    for seed in range(120):
        game = disjoint_groups(random_game(8000 + seed, n=2 + seed % 5, alternating=True,
                                           assumption="group",
                                           objective="reach" if seed % 2 else "parity"))
        spec, plant = decompose(game)
        m = len(game.assumption.groups)
        hub_errors += len(plant.assumption.edges) != m
        prod = product(spec, plant)
        mismatches += (oracle_solve(prod, witnesses=False).winner(prod.init)
                       != oracle_solve(game, witnesses=False).winner(game.init))
        total += 1
    ok = total >= 100 and mismatches == 0 and hub_errors == 0
    report(7, ok, f"{total} alternating group games, {mismatches} winner mismatches, "
                  f"{hub_errors} hubs without exactly m live edges")
    assert ok


# ----------------------------------------------------------------------- 8

def test_criterion_08_restriction_coherence():
    rng = random.Random(99)
    triples = mismatches = 0
    seed = 9000
    while triples < 1000:
        seed += 1
        game = random_game(seed, n=rng.randint(2, 8), assumption="pers")
        g = game.graph
        U = frozenset(v for v in g.vertices if rng.random() < 0.7)
        if not U:
            continue
        sub = _restricted(game, U)
        starts = [v for v in sub.graph.vertices if sub.graph.succ[v]]
        for _ in range(4):
            if not starts:
                break
            w = random_lasso(rng, sub.graph.succ, rng.choice(starts))
            if w is None:
                continue
            triples += 1
            p = w.profile()
            mismatches += classify_infset(p, game) != classify_infset(p, sub)
    ok = mismatches == 0
    report(8, ok, f"{triples} (game, U, lasso) triples, {mismatches} mismatches")
    assert ok


# ----------------------------------------------------------------------- 9

def _follows(game, strat, w):
    """Does the lasso only take σ-moves at Player-0 vertices σ defines?"""
    seq = list(w.stem) + list(w.cycle) + list(w.cycle[:1])
    return all(a not in strat or strat[a] == b for a, b in zip(seq, seq[1:]))


ALGOS = {
    "none": ("auto", "zielonka", "parys", "zielonka-pers", "qsolve-pers", "oracle"),
    "live": ("auto", "rabin-oracle", "oracle"),
    "colive": ("auto", "colive", "oracle"),
    "group": ("auto", "rabin-oracle", "oracle"),
    "singleton": ("auto", "oracle"),
    "cnf": ("auto", "oracle"),
    "pers": ("auto", "zielonka-pers", "qsolve-pers", "oracle"),
}


def test_criterion_09_certificates():
    strategies = witnesses = failures = 0
    for kind, algos in ALGOS.items():
        for game in _class_games(kind, 40, base=10000):
            for algo in algos:
                res = solve_augmented(game, algo)
                strategies += 1
                failures += verify_strategy(game, res.strategy0, res.w0) is not None
                wit = res.witness if algo == "oracle" else counter_witnesses(
                    game, res.strategy0, res.w1)
                pg = as_parity(game)
                sigma = {u: v for u, v in res.strategy0.items() if u in pg.graph.vertices}
                for v in res.w1:
                    w = wit.get(v)
                    witnesses += 1
                    bad = (w is None or not witness_is_p1_win(game, w)
                           or (w.stem or w.cycle)[0] != v)
                    if algo != "oracle":
                        bad = bad or not _follows(pg, sigma, w)
                    failures += bad
    ok = failures == 0
    report(9, ok, f"{strategies} strategies verified, {witnesses} witnesses checked, "
                  f"{failures} failures")
    assert ok


# ---------------------------------------------------------------------- 10

def test_criterion_10_attr_pers_scale():
    worst = 0.0
    for seed in range(3):
        game = random_game(11000 + seed, n=1000, m=4000, assumption="pers", objective="reach")
        start = time.perf_counter()
        attr_pers(game.graph, game.objective.target, game.assumption.groups)
        worst = max(worst, time.perf_counter() - start)
    ok = worst < 2.0
    report(10, ok, f"attr_pers on 1000 vertices / 4000 edges: worst {worst:.2f}s < 2s")
    assert ok
