import io

import pytest

from auggame.cli import main
from auggame.io import parse_game, parse_strategy

from helpers import FIXTURES

FIG2 = str(FIXTURES / "fig2.game")
FIG2_NO = str(FIXTURES / "fig2-noassume.game")
FIG3 = str(FIXTURES / "fig3.game")
FIG4 = str(FIXTURES / "fig4.cnf")
PERS1 = str(FIXTURES / "pers1.game")


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_fig2_with_live_edge(capsys):
    code, out, _ = run(capsys, "solve", FIG2, "--algo", "auto", "--from", "w")
    assert code == 0
    assert "winner w 0" in out.splitlines()


def test_solve_fig2_without_assumption(capsys):
    code, out, _ = run(capsys, "solve", FIG2_NO, "--from", "w", "--witness")
    assert code == 1
    assert "winner w 1" in out.splitlines()
    assert any(line.startswith("witness w ") for line in out.splitlines())


def test_gen_3sat_piped_into_solve(capsys, monkeypatch):
    code, game_text, _ = run(capsys, "gen", "--3sat", FIG4)
    assert code == 0
    code, out, _ = run(capsys, "solve", "-", "--from", "v0", stdin=game_text,
                       monkeypatch=monkeypatch)
    assert code == 0 and "winner v0 0" in out


def test_verify_fig4_strategy(capsys, tmp_path):
    _, game_text, _ = run(capsys, "gen", "--3sat", FIG4)
    gfile = tmp_path / "sat.game"
    gfile.write_text(game_text)
    code, out, _ = run(capsys, "verify", str(gfile), "--strategy",
                       str(FIXTURES / "fig4.strategy"), "--claim", "v0")
    assert (code, out) == (0, "ok\n")


def test_verify_reports_counterexample(capsys, tmp_path):
    sfile = tmp_path / "s.txt"
    sfile.write_text("strategy w -> w\nstrategy g -> r\n")
    code, out, _ = run(capsys, "verify", FIG2_NO, "--strategy", str(sfile), "--claim", "w")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "counterexample" and lines[1].startswith("witness w ")


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("game x\nvertex a owner=0\nfrobnicate\n")
    code, out, err = run(capsys, "solve", str(bad))
    assert code == 2 and "line 3" in err and out == ""


def test_missing_file_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.game"))
    assert code == 2 and "error" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_size_bound_exit_code(capsys):
    code, _, err = run(capsys, "oracle", FIG3, "--max-edges", "2")
    assert code == 3 and "size bound" in err


def test_unknown_query_vertex(capsys):
    code, _, err = run(capsys, "solve", FIG2, "--from", "zz")
    assert code == 2 and "zz" in err


@pytest.mark.parametrize("path", [FIG2, FIG2_NO, FIG3, PERS1])
def test_solve_output_passes_verify(capsys, tmp_path, path):
    sfile = tmp_path / "strategy.txt"
    code, out, _ = run(capsys, "solve", path, "--strategy-out", str(sfile))
    w0 = [ln.split()[1] for ln in out.splitlines() if ln.startswith("winner") and
          ln.endswith(" 0")]
    assert parse_strategy(sfile.read_text()) == parse_strategy(out)
    code, vout, _ = run(capsys, "verify", path, "--strategy", str(sfile), "--claim", *w0)
    assert (code, vout) == (0, "ok\n")


@pytest.mark.parametrize("algo", ["auto", "oracle"])
def test_solve_is_deterministic(capsys, algo):
    outs = {run(capsys, "solve", FIG3, "--algo", algo, "--witness")[1] for _ in range(3)}
    assert len(outs) == 1


def test_gen_random_is_seeded(capsys):
    argv = ["gen", "--random", "--vertices", "7", "--edges", "14", "--assumption", "pers",
            "--seed", "42"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    c = run(capsys, *argv[:-1], "43")[1]
    assert a == b and a != c
    game = parse_game(a)
    assert len(game.graph.vertices) == 7 and len(game.graph.edges) == 14


def test_gen_random_needs_vertices(capsys):
    assert run(capsys, "gen", "--random")[0] == 2


@pytest.mark.parametrize("to, path", [
    ("rabin", FIG2), ("parity", FIG2), ("live-edges", FIG2), ("live-groups", FIG2),
    ("alternating", FIG2), ("rabin", FIG3), ("live-groups", FIG3), ("parity", PERS1),
])
def test_reduce_targets_preserve_winner(capsys, tmp_path, to, path):
    out = tmp_path / "red.game"
    code, _, _ = run(capsys, "reduce", path, "--to", to, "--out", str(out))
    assert code == 0
    init = parse_game(open(path).read()).init
    before = run(capsys, "oracle", path)[1]
    after = run(capsys, "oracle", str(out), "--from", init)[1]
    line = f"winner {init} "
    pick = [ln for ln in before.splitlines() if ln.startswith(line)]
    assert pick and pick[0] in after.splitlines()


def test_reduce_rejects_unsupported(capsys):
    code, _, err = run(capsys, "reduce", PERS1, "--to", "live-edges")
    assert code == 2 and "pers" in err


def test_decompose_then_product(capsys, tmp_path):
    src = tmp_path / "alt.game"
    run(capsys, "reduce", FIG3, "--to", "alternating", "--out", str(src))
    text = src.read_text().replace("init w1", "init r1")
    src.write_text(text)
    spec, plant = tmp_path / "spec.game", tmp_path / "plant.game"
    code, _, _ = run(capsys, "decompose", str(src), "--spec-out", str(spec),
                     "--plant-out", str(plant))
    assert code == 0
    code, combined, _ = run(capsys, "decompose", str(src))
    assert "# ----" in combined
    prod = tmp_path / "prod.game"
    assert run(capsys, "product", str(spec), str(plant), "--out", str(prod))[0] == 0
    assert run(capsys, "solve", str(prod))[0] == run(capsys, "solve", str(src))[0] == 1


def test_product_needs_labels(capsys):
    code, _, err = run(capsys, "product", FIG2, FIG2)
    assert code == 2 and "labeled" in err


def test_stats_pers1(capsys):
    code, out, _ = run(capsys, "stats", PERS1)
    fields = dict(ln.split(" ", 1) for ln in out.splitlines())
    assert code == 0
    assert fields["assumption"] == "pers" and fields["within_bound"] == "True"
    assert int(fields["qsolve_calls"]) <= int(fields["bound"])


def test_oracle_command_prints_witnesses(capsys):
    code, out, _ = run(capsys, "oracle", FIG2_NO, "--from", "w", "--jobs", "2")
    assert code == 1 and "witness w stem cycle w" in out
