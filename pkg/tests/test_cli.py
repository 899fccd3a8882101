import json
import shutil
import subprocess

import pytest

from rdrd.cli import main
from rdrd.graph import parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(out):
    return json.loads(out)


@pytest.fixture
def files(tmp_path):
    (tmp_path / "p2.el").write_text("2 1\n0 1\n")
    (tmp_path / "p4.el").write_text("4 3\n0 1\n1 2\n2 3\n")
    (tmp_path / "one.json").write_text('{"q": 1, "triples": [[0, 1, 2]]}')
    (tmp_path / "no.json").write_text('{"q": 2, "triples": [[0, 1, 2], [0, 1, 3]]}')
    return tmp_path


def test_catalog_value(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "c3xcm", "--m", "5")
    assert code == 0 and payload(out)["value"] == 10
    code, out, _ = run(capsys, "catalog", "--family", "strong_strip", "--params", "n=2,m=5")
    assert payload(out)["value"] == 6


def test_catalog_inapplicable(capsys):
    code, _, err = run(capsys, "catalog", "--family", "corona_general", "--G", "path:2", "--H", "empty:2")
    assert code == 1 and "isolated" in err


def test_catalog_check(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "cycle", "--check")
    rows = payload(out)["rows"]
    assert code == 0 and len(rows) == 8 and all(r["match"] for r in rows)


def test_verify(capsys, files):
    code, out, _ = run(capsys, "verify", "--graph", str(files / "p2.el"), "--labels", "3 0")
    assert code == 1
    assert payload(out)["violations"][0]["rule"] == "ZERO_ISOLATED_IN_V0"
    code, out, _ = run(capsys, "verify", "--graph", str(files / "p4.el"), "--labels", '{"labels":[3,0,0,3]}')
    assert code == 0 and payload(out)["valid"]


def test_solve(capsys, files):
    code, out, _ = run(capsys, "solve", "--problem", "rdrd", "--method", "brute", "--graph", str(files / "p4.el"))
    res = payload(out)
    assert code == 0 and res["value"] == 6 and "ms" in res["timing"]
    code, out, _ = run(capsys, "solve", "--problem", "dom", "--graph", "cycle:6")
    assert payload(out)["value"] == 2


def test_solve_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "solve", "--graph", "cycle:8")
        d = payload(out)
        d.pop("timing")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--graph", "cycle:4", "--bogus"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "solve", "--graph", "no-such-file")
    assert code == 2 and "not a file" in err
    code, _, _ = run(capsys, "catalog")
    assert code == 2


def test_construct_writes_files(capsys, tmp_path):
    g, f = tmp_path / "g.el", tmp_path / "f.json"
    code, out, _ = run(capsys, "construct", "--family", "corona_cn", "--n", "5",
                       "--out-graph", str(g), "--out-labels", str(f))
    res = payload(out)
    assert code == 0 and res["valid"] and res["weight"] == 13
    assert parse_graph(g.read_text()).n == 10
    code, _, _ = run(capsys, "verify", "--graph", str(g), "--labels", str(f))
    assert code == 0


def test_product(capsys, tmp_path):
    out_path = tmp_path / "prod.el"
    code, out, _ = run(capsys, "product", "--kind", "corona", "--G", "cycle:4", "--H", "path:2",
                       "--out", str(out_path))
    assert code == 0 and payload(out)["n"] == 12
    coords = json.loads((tmp_path / "prod.el.json").read_text())["coords"]
    assert coords[4] == ["copy", 0, 0]
    code, out, _ = run(capsys, "product", "--kind", "strong", "--G", "path:2", "--H", "path:2", "--text")
    assert parse_graph(out).m == 6


def test_reduce(capsys, files, tmp_path):
    code, out, _ = run(capsys, "reduce", "--x3c", str(files / "one.json"), "--solve",
                       "--emit-graph", str(tmp_path / "red.el"))
    res = payload(out)
    assert code == 0 and res["k"] == 11 and res["solver"]["value"] == 11
    assert res["recovered_cover"] == [0]
    assert parse_graph((tmp_path / "red.el").read_text()).n == 13
    code, out, _ = run(capsys, "reduce", "--x3c", str(files / "no.json"), "--solve")
    res = payload(out)
    assert code == 0 and res["x3c"] == "UNSOLVABLE" and res["rdrd_at_most_k"] is False
    assert res["solver"]["lower_bound"] >= 20


def test_audit(capsys, tmp_path):
    g, f = tmp_path / "g.el", tmp_path / "f.json"
    run(capsys, "construct", "--family", "c3xcm", "--m", "4", "--out-graph", str(g), "--out-labels", str(f))
    code, out, _ = run(capsys, "audit", "--layout", "c3xcm", "--graph", str(g), "--labels", str(f))
    res = payload(out)
    assert code == 0 and res["bagging"]["certified_bound"] == 8
    code, out, _ = run(capsys, "audit", "--layout", "c3xcm", "--graph", str(g), "--all-optima")
    res = payload(out)
    assert code == 0 and res["optimum_count"] == 3
    code, _, err = run(capsys, "audit", "--layout", "c3xcm", "--graph", str(g), "--labels", "0 " * 12)
    assert code == 1 and "precondition" in err
    code, _, _ = run(capsys, "audit", "--layout", "corona_cycle", "--graph", str(g), "--labels", str(f))
    assert code == 2


def test_bound_modes(capsys):
    code, out, _ = run(capsys, "catalog", "--bound", "strong_str4", "--G", "complete:3",
                       "--H", "complete:3", "--check")
    res = payload(out)
    assert code == 0 and res["upper"] == res["exact"] == 3
    code, out, _ = run(capsys, "catalog", "--random", "4", "--seed", "11")
    assert code == 0 and payload(out)["holds"] and len(payload(out)["graphs"]) == 4


def test_text_mode(capsys):
    code, out, _ = run(capsys, "catalog", "--family", "cycle", "--n", "6", "--text")
    assert code == 0 and out.startswith("6")


@pytest.mark.skipif(shutil.which("rdrd") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["rdrd", "catalog", "--family", "corona_kn", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 9
