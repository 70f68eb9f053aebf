import csv
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from monocomp.cli import CSV_COLUMNS, main
from monocomp.graph_io import read_graph


def run(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


def test_plane(capsys):
    code, out, _ = run(["plane", 3], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 12
    assert {line.split(":")[0] for line in lines} == {f"class {c}" for c in range(4)}


def test_plane_rejects_non_prime_power(capsys):
    code, _, err = run(["plane", 6], capsys)
    assert code == 2 and "prime factors" in err


def test_color_and_analyze(tmp_path, capsys):
    path = tmp_path / "k12.txt"
    assert run(["color", "--n", 12, "--r", 3, "--out", path], capsys)[0] == 0
    G, C = read_graph(path)
    assert G.m == 66 and C.r == 3
    code, out, _ = run(["analyze", "--in", path], capsys)
    report = json.loads(out)
    assert code == 0 and report["schema_version"] == 1 and report["pass"]
    assert report["outcomes"][0]["z"] == "1/6"
    assert report["config"]["input"] == str(path)


def test_analyze_empty_graph(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_text("5 0 2\n")
    code, _, err = run(["analyze", "--in", path], capsys)
    assert code == 2 and "graph has no edges" in err


def test_analyze_bad_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2 2\n0 1 1\n0 1 2\n")
    code, _, err = run(["analyze", "--in", path], capsys)
    assert code == 2 and "line 3" in err
    assert run(["analyze", "--in", tmp_path / "missing.txt"], capsys)[0] == 2


def test_analyze_failing_verdict_exits_one(tmp_path, capsys):
    # a perfect matching has z = 1/m, far below the proven fraction
    path = tmp_path / "matching.txt"
    path.write_text("40 20 3\n" + "".join(f"{2 * i} {2 * i + 1} {i % 3 + 1}\n" for i in range(20)))
    code, out, err = run(["analyze", "--in", path], capsys)
    assert code == 1 and json.loads(out)["pass"] is False
    assert "proven_1_6" in err and "1/20" in err


def test_sample(tmp_path, capsys):
    path = tmp_path / "g.txt"
    assert run(["sample", "--n", 50, "--p", 0.1, "--seed", 2, "--out", path], capsys)[0] == 0
    G, C = read_graph(path)
    assert C is None and G.n == 50
    assert path.read_text().splitlines()[0].endswith(" 0")


def test_search_outputs(tmp_path, capsys):
    out = tmp_path / "s.json"
    code, _, _ = run(["search", "--n", 30, "--p", 0.5, "--r", 2, "--seed", 1, "--iters", 300, "--json", out], capsys)
    rep = json.loads(out.read_text())
    assert code == 0 and rep["pass"]
    assert Fraction(rep["best"]["z"]) == Fraction(rep["best"]["objective"], rep["graph"]["m"])
    assert rep["trace"][0]["iteration"] == 0
    assert rep["outcomes"][0]["thresholds"]["proven_1_6"]["pass"]


def test_search_usage_errors(capsys):
    assert run(["search", "--r", 3], capsys)[0] == 2
    assert run(["search", "--n", 10, "--r", 7, "--init", "gyarfas"], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["search", "--init", "greedy"])
    assert info.value.code == 2


def test_verify_deterministic_small(tmp_path, capsys, monkeypatch):
    import monocomp.cli as cli
    from monocomp import suites

    monkeypatch.setattr(cli, "run_suite", lambda name, seed, save_dir=None: suites.deterministic_suite(seed, 500, 100))
    out = tmp_path / "v.json"
    code, _, _ = run(["verify", "--suite", "deterministic", "--seed", 1, "--json", out], capsys)
    rep = json.loads(out.read_text())
    assert code == 0 and rep["pass"] and rep["suite"] == "deterministic"
    assert [o["failures"] for o in rep["outcomes"]] == [0, 0]


def test_sweep_small_grid(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, err = run(["sweep", "--n", 16, "--p", "0,1", "--r", 3, "--seeds", "1-2", "--iters", 200, "--csv", out], capsys)
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r["source"] for r in rows[:2]] == ["skipped-no-edges"] * 2
    assert "no edges" in err
    keys = [(Fraction(r["p"]), int(r["seed"]), r["source"]) for r in rows]
    assert keys == sorted(keys)
    gy = [r for r in rows if r["source"] == "gyarfas-induced"]
    assert len(gy) == 2
    for r in gy:
        assert Fraction(int(r["z_num"]), int(r["z_den"])) <= Fraction(1, 6) + Fraction(16 * 3, 120)


def test_sweep_rows_and_bound(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--n", 400, "--p", "0.05,0.1,0.2,0.3", "--r", 3, "--seeds", "1-3", "--iters", 1000, "--csv", out], capsys)
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert code == 0 and len(rows) == 36
    for r in rows:
        assert Fraction(int(r["z_num"]), int(r["z_den"])) >= Fraction(4, 29)
        assert r["pass_proven"] == "true"


def test_sweep_help_documents_columns(capsys):
    with pytest.raises(SystemExit):
        main(["sweep", "--help"])
    out = capsys.readouterr().out
    for col in CSV_COLUMNS:
        assert col in out


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\nn = 16\nr = 3\np = 1\nseeds = 1\niters = 100\n")
    out = tmp_path / "a.json"
    code, _, _ = run(["sweep", "--config", cfg, "--seeds", "2", "--csv", tmp_path / "a.csv", "--json", out], capsys)
    rep = json.loads(out.read_text())
    assert code == 0
    assert rep["config"]["seeds"] == [2] and rep["config"]["n"] == 16 and rep["config"]["iters"] == 100
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = 3\n")
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--config", str(bad)])
    assert info.value.code == 2


def test_sweep_empty_grid(capsys):
    assert run(["sweep", "--n", 10, "--p", "", "--r", 3], capsys)[0] == 2


def test_outputs_are_byte_identical(tmp_path, capsys):
    for name in ("a", "b"):
        d = tmp_path / name
        run(["sweep", "--n", 60, "--p", "0.2,0.5", "--r", 3, "--seeds", "1-2", "--iters", 300, "--csv", d / "s.csv", "--json", d / "s.json"], capsys)
        run(["search", "--n", 40, "--p", 0.3, "--r", 3, "--seed", 4, "--iters", 300, "--restarts", 2, "--json", d / "search.json"], capsys)
    for f in ("s.csv", "s.json", "search.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monocomp", "plane", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and len(proc.stdout.splitlines()) == 6
