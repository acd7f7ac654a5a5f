import json
import subprocess
import sys

import pytest

from kneser_geodetic import cli, core


def run(capsys, *argv):
    code = cli.main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_info_petersen(capsys):
    code, env = run(capsys, "info", "--n", "2", "--k", "1")
    assert code == 0
    assert env["schema_version"] == "1" and env["command"] == "info"
    assert env["params"] == {"n": 2, "k": 1, "ground": 5}
    r = env["result"]
    assert (r["vertex_count"], r["degree"], r["diameter"], r["gn_diam2"], r["ghn_diam2"]) == (10, 3, 2, 4, 3)


def test_info_k73(capsys):
    _, env = run(capsys, "info", "--n", "3", "--k", "1")
    r = env["result"]
    assert (r["vertex_count"], r["diameter"], r["gn_upper_bound"]) == (35, 3, 19)
    assert "gn_diam2" not in r


def test_info_triangle(capsys):
    _, env = run(capsys, "info", "--n", "1", "--k", "1")
    assert env["result"]["vertex_count"] == 3
    assert env["result"]["diameter"] == 1


def test_dist(capsys):
    _, env = run(capsys, "dist", "--n", "3", "--k", "1", "--u", "1,2,3", "--v", "1,4,5")
    assert env["result"]["distance"] == 3 and env["result"]["diametral"] is True
    _, env = run(capsys, "dist", "--n", "3", "--k", "1", "--u", "1,2,3", "--v", "4,5,6")
    assert env["result"]["distance"] == 1
    _, a = run(capsys, "dist", "--n", "3", "--k", "1", "--u", "1,2,3", "--v", "1,2,4", "--oracle", "bfs")
    _, b = run(capsys, "dist", "--n", "3", "--k", "1", "--u", "1,2,3", "--v", "1,2,4")
    assert a["result"]["distance"] == b["result"]["distance"] == 2
    assert a["result"]["parity_class"] == "ForcedEven"


def test_diametral(capsys):
    _, env = run(capsys, "diametral", "--n", "2", "--k", "2", "--u", "1,2")
    assert env["result"]["count"] == 8
    _, env = run(capsys, "diametral", "--n", "3", "--k", "1", "--u", "1,2,3", "--v", "1,4,5")
    assert env["result"]["diametral"] is True


def test_interval_example7(capsys):
    base = ["interval", "--n", "2", "--k", "2", "--set", "1,2", "--set", "1,3", "--set", "1,4"]
    _, env = run(capsys, *base, "--iterate", "1")
    assert env["result"]["size"] == 10
    _, env = run(capsys, *base, "--iterate", "hull")
    assert env["result"]["size"] == 15 and env["result"]["steps"] == 2
    p = core.GraphParams(2, 2)
    ranks = [core.rank(p, core.parse_vertex(p, t)) for t in env["result"]["vertices"]]
    assert ranks == sorted(ranks)
    _, env = run(capsys, "interval", "--n", "2", "--k", "2", "--set", "3,5", "--iterate", "1")
    assert env["result"]["vertices"] == ["3,5"]


def test_construct(capsys):
    code, env = run(capsys, "construct", "--n", "2", "--k", "2", "--kind", "theorem5", "--pivot", "1")
    assert code == 0 and env["result"]["size"] == 5 and env["result"]["verified"]
    code, env = run(capsys, "construct", "--n", "2", "--k", "3", "--kind", "pair")
    assert code == 0 and env["result"]["size"] == 2 and env["result"]["verified"]
    code, env = run(capsys, "construct", "--n", "3", "--k", "1", "--kind", "theorem3", "--root", "2,4,6")
    assert code == 0 and env["result"]["size"] == 19 and env["result"]["verified"]
    code, env = run(capsys, "construct", "--n", "2", "--k", "2", "--kind", "lemma6")
    assert code == 0 and env["result"]["verified"]


@pytest.mark.parametrize("argv", [
    ["construct", "--n", "2", "--k", "2", "--kind", "pair"],
    ["construct", "--n", "3", "--k", "1", "--kind", "theorem5"],
    ["construct", "--n", "4", "--k", "1", "--kind", "lemma6"],
])
def test_construct_precondition_exit(capsys, argv):
    code = cli.main(argv + ["--json"])
    captured = capsys.readouterr()
    env = captured.out or None
    assert "k >= n-1" in captured.err or "k=2 <= 2" in captured.err
    assert code == 3 and env is None


def test_search(capsys):
    code, env = run(capsys, "search", "--n", "2", "--k", "1", "--quantity", "ghn")
    assert code == 0 and env["result"]["value"] == 3 and len(env["result"]["witness"]) == 3
    _, env = run(capsys, "search", "--n", "2", "--k", "2", "--quantity", "gn")
    assert env["result"]["value"] == 5
    _, env = run(capsys, "search", "--n", "3", "--k", "2", "--quantity", "ghn")
    assert env["result"]["value"] == 3


def test_search_budget_exit(capsys):
    code, env = run(capsys, "search", "--n", "2", "--k", "2", "--quantity", "gn", "--max-subset-size", "3")
    assert code == 4
    assert env["result"]["status"] == "budget_exceeded" and env["result"]["lower_bound"] == 4


@pytest.mark.parametrize("argv", [
    ["info", "--n", "0", "--k", "1"],
    ["info", "--n", "2"],
    ["dist", "--n", "3", "--k", "1", "--u", "1,2", "--v", "1,2,3"],
    ["dist", "--n", "3", "--k", "1", "--u", "1;2;3", "--v", "1,2,3"],
    ["interval", "--n", "2", "--k", "2", "--set", "1,2", "--iterate", "forever"],
    ["interval", "--n", "2", "--k", "2"],
    ["export", "--n", "2", "--k", "1", "--format", "png"],
    ["construct", "--n", "2", "--k", "2", "--kind", "theorem5", "--pivot", "9"],
])
def test_input_errors_exit_2(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2
    assert capsys.readouterr().err


def test_export_counts(capsys):
    assert cli.main(["export", "--n", "3", "--k", "1", "--format", "edgelist"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 70
    u, v = lines[0].split()
    p = core.GraphParams(3, 1)
    assert core.is_adjacent(core.parse_vertex(p, u), core.parse_vertex(p, v))

    assert cli.main(["export", "--n", "2", "--k", "1", "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count(" -- ") == 15 and 'v0 [label="1,2"];' in dot

    assert cli.main(["export", "--n", "2", "--k", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["vertices"]) == 10 and len(data["edges"]) == 15
    assert data["vertices"][0] == "1,2"


def test_verify(capsys):
    code, env = run(capsys, "verify", "--target", "theorem1", "--max-vertices", "60")
    assert code == 0 and env["result"]["all_agree"] is True
    assert env["params"] is None


def test_human_output(capsys):
    assert cli.main(["info", "--n", "2", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "vertex_count: 10" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kneser_geodetic", "info", "--n", "2", "--k", "1", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["vertex_count"] == 10
