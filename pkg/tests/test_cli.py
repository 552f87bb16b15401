"""Command-line interface: formats, determinism, exit codes, cache env var."""

import json
import os
import subprocess
import sys

from sgortho import cli
from sgortho.errors import MathematicalAssumptionError
from sgortho.rationals import Rat


def run_cli(args, **kwargs):
    return subprocess.run([sys.executable, "-m", "sgortho.cli", *args],
                          capture_output=True, text=True, **kwargs)


def test_coeffs_csv(capsys):
    assert cli.main(["coeffs", "--max-j", "10"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "j,alpha,beta,gamma,eta"
    assert len(lines) == 12  # header + 11 rows
    assert lines[1] == "0,1,-1/2,1/2,0"
    assert lines[2] == "1,1/6,-2/45,1/60,1/2"


def test_coeffs_json(capsys):
    assert cli.main(["coeffs", "--max-j", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["coefficients"][2]["alpha"] == "1/180"


def test_gram_json(capsys):
    assert cli.main(["gram", "--family", "3", "--maxdeg", "1", "--m", "1",
                     "--chi", "1/2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["params"] == {"m": 1, "chi": ["1", "1/2"]}
    assert payload["basis"] == [[0, 3], [1, 3]]
    entries = [[Rat(x) for x in row] for row in payload["entries"]]
    assert entries[0][1] == entries[1][0]


def test_ops_json_orthogonality(capsys):
    assert cli.main(["ops", "--family", "3", "--chi", "1", "--degree", "6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["family"] == 3
    assert len(payload["polys"]) == 7
    assert len(payload["norms_sq"]) == 7
    # rebuild polynomials and verify pairwise orthogonality from the JSON
    from sgortho.inner import SobolevParams, poly_inner
    from sgortho.poly import Poly

    def parse(d):
        coeffs = {}
        for key, val in d.items():
            j, k = key.strip("()").split(",")
            coeffs[(int(j), int(k))] = Rat(val)
        return Poly(coeffs)

    polys = [parse(d) for d in payload["polys"]]
    params = SobolevParams.order1(Rat(payload["params"]["chi"][1]))
    for i in range(7):
        for j in range(i):
            assert poly_inner(params, polys[i], polys[j]) == 0


def test_ops_gram_schmidt_method_matches_recurrence(capsys):
    assert cli.main(["ops", "--family", "2", "--degree", "4",
                     "--method", "gram-schmidt"]) == 0
    gs = capsys.readouterr().out
    assert cli.main(["ops", "--family", "2", "--degree", "4"]) == 0
    rec = capsys.readouterr().out
    assert json.loads(gs)["polys"] == json.loads(rec)["polys"]


def test_eval_csv_layout(capsys):
    assert cli.main(["eval", "--family", "3", "--degree", "2", "--chi", "1",
                     "--level", "2", "--which", "sobolev"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "address,x,y,value"
    assert len(lines) == 1 + 15  # header + |V_2|
    assert lines[1].startswith("e.0,")


def test_eval_monomial_low_degree_matches_spine(capsys):
    assert cli.main(["eval", "--family", "1", "--degree", "1",
                     "--which", "monomial", "--level", "1",
                     "--digits", "12"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    rows = {line.split(",")[0]: line.split(",")[3] for line in lines[1:]}
    assert rows["0.1"] == "0.033333333333"  # 1/30 at the first spine midpoint


def test_zeros_csv(capsys):
    assert cli.main(["zeros", "--family", "3", "--degree", "2", "--level", "3",
                     "--which", "legendre"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "which,degree,edge,sign_changes,exact_zeros"
    assert len(lines) == 4


def test_interp_report(capsys):
    assert cli.main(["interp", "--nodes", "spine", "--n", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["fully_exact"] is True
    assert Rat(payload["det"]) != 0
    assert cli.main(["interp", "--nodes", "degenerate", "--n", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["det"] == "0"


def test_quad_rule_and_study(capsys, tmp_path):
    assert cli.main(["quad", "--n", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["weights"] == ["0", "5/6", "1/6"]
    out = tmp_path / "study.csv"
    assert cli.main(["quad", "--n", "0", "--study-degree", "1",
                     "--m-max", "2", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "m,estimate,exact,abs_error,ratio"
    assert len(lines) == 4


def test_sweep_chi(capsys):
    assert cli.main(["sweep-chi", "--family", "3", "--n", "3",
                     "--chi-list", "10,1000"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["limit"] == "f_3"
    assert len(payload["rows"]) == 2
    assert "ratio_sq_prev" in payload["rows"][1]


def test_determinism_byte_identical():
    args = ["ops", "--family", "3", "--chi", "2/3", "--degree", "5"]
    first = run_cli(args)
    second = run_cli(args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    args = ["eval", "--family", "2", "--degree", "2", "--chi", "1",
            "--level", "2"]
    assert run_cli(args).stdout == run_cli(args).stdout


def test_usage_error_exit_code_2():
    proc = run_cli(["coeffs"])  # missing --max-j
    assert proc.returncode == 2
    proc = run_cli(["nonsense"])
    assert proc.returncode == 2
    proc = run_cli(["ops", "--family", "5", "--degree", "2"])
    assert proc.returncode == 2
    proc = run_cli(["ops", "--family", "2", "--degree", "2", "--chi", "x"])
    assert proc.returncode == 2


def test_math_assumption_exit_code_3(monkeypatch, capsys):
    def boom(**_kwargs):
        raise MathematicalAssumptionError("synthetic violation")

    monkeypatch.setattr(cli, "run_all", boom)
    assert cli.main(["verify", "--quick"]) == 3
    assert "mathematical assumption" in capsys.readouterr().err


def test_cache_dir_roundtrip(tmp_path):
    env = dict(os.environ, SGOP_CACHE_DIR=str(tmp_path))
    proc = run_cli(["coeffs", "--max-j", "8"], env=env)
    assert proc.returncode == 0
    cache = tmp_path / "sgortho_coeffs.json"
    assert cache.exists()
    payload = json.loads(cache.read_text())
    assert payload["alpha"]["2"] == "1/180"
    # second run loads the cache and produces identical output
    proc2 = run_cli(["coeffs", "--max-j", "8"], env=env)
    assert proc2.stdout == proc.stdout


def test_verify_quick_exit_zero():
    proc = run_cli(["verify", "--quick"])
    assert proc.returncode == 0
    assert "summary: all checks passed" in proc.stdout
    assert "FAIL (documented)" in proc.stdout
