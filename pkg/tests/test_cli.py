from __future__ import annotations

import json
import subprocess
import sys

import pytest

from formrank.cli import main
from formrank.formspace import bil_space, symm_space
from formrank.gf import GF
from formrank.serialize import write_formspace


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_writes_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, _, _ = _run(capsys, "construct", "--family", "cyclic-symmetric", "--q", "2", "--n", "5", "--out", str(path))
    assert code == 0
    assert len(json.loads(path.read_text())["basis"]) == 10


def test_construct_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--family", "nope", "--q", "2"])
    assert exc.value.code == 2
    code, _, err = _run(capsys, "construct", "--family", "trace-hyperplane", "--q", "6", "--n", "4")
    assert code == 2 and "prime power" in err
    code, _, _ = _run(capsys, "construct", "--family", "trace-hyperplane", "--q", "3")
    assert code == 2


def test_profile_bil(tmp_path, capsys):
    path = tmp_path / "bil.json"
    write_formspace(bil_space(GF(2), 2), path)
    code, out, _ = _run(capsys, "profile", str(path))
    assert code == 0
    assert json.loads(out)["profile"]["A"] == [1, 9, 6]


@pytest.mark.parametrize("family,params", [("trace-hyperplane", ["--q", "3", "--n", "4"]),
                                           ("cyclic-alternating", ["--q", "2", "--m", "3"]),
                                           ("linearized-two-rank", ["--q", "3", "--m", "1", "--s", "2"]),
                                           ("symmetric-two-rank", ["--q", "2", "--m", "2", "--s", "2"])])
def test_profile_identities_pass(tmp_path, capsys, family, params):
    path = tmp_path / "m.json"
    assert _run(capsys, "construct", "--family", family, *params, "--out", str(path))[0] == 0
    flags = ["--identities", "--zcount"] + (["--ncount"] if family != "linearized-two-rank" else [])
    code, out, _ = _run(capsys, "profile", str(path), *flags)
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert all(c["passed"] for c in report["identities"])


def test_profile_corrupted_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = _run(capsys, "profile", str(path))
    assert code == 2 and "error" in err


def test_profile_budget_and_sample(tmp_path, capsys):
    path = tmp_path / "m.json"
    _run(capsys, "construct", "--family", "cyclic-symmetric", "--q", "2", "--n", "5", "--out", str(path))
    code, _, _ = _run(capsys, "profile", str(path), "--budget-elems", "100")
    assert code == 3
    code, out, _ = _run(capsys, "profile", str(path), "--budget-elems", "100", "--sample", "64")
    assert code == 0 and json.loads(out)["profile"]["mode"] == "sampled"


def test_analyze_bijection(tmp_path, capsys):
    path = tmp_path / "m.json"
    _run(capsys, "construct", "--family", "cyclic-symmetric", "--q", "2", "--n", "5", "--out", str(path))
    code, out, _ = _run(capsys, "analyze", str(path), "--bijection")
    rep = json.loads(out)["analyses"]["bijection"]
    assert code == 0 and rep["bijective"] and rep["rank_n_minus_2_lines"] == rep["two_dim_subspaces"] == 155


def test_analyze_const_rank(tmp_path, capsys):
    path = tmp_path / "t.json"
    _run(capsys, "construct", "--family", "trace-hyperplane", "--q", "7", "--n", "4", "--out", str(path))
    code, out, _ = _run(capsys, "analyze", str(path), "--const-rank", "3", "--max-dim", "3")
    rep = json.loads(out)["analyses"]["const_rank"]
    assert code == 0 and rep["max_dim"] == 1 and rep["exhaustive"]


def test_analyze_spread_and_isotropic(tmp_path, capsys):
    path = tmp_path / "s.json"
    _run(capsys, "construct", "--family", "symmetric-two-rank", "--q", "3", "--m", "1", "--s", "2", "--out", str(path))
    code, out, _ = _run(capsys, "analyze", str(path), "--spread")
    assert code == 0 and json.loads(out)["analyses"]["spread"]["observed_count"] == 4
    iso = tmp_path / "i.json"
    write_formspace(symm_space(GF(2), 2), iso)
    code, out, _ = _run(capsys, "analyze", str(iso), "--isotropic")
    assert code == 0


def test_analyze_wrong_shape(tmp_path, capsys):
    path = tmp_path / "bil.json"
    write_formspace(bil_space(GF(2), 3), path)
    code, _, err = _run(capsys, "analyze", str(path), "--bijection")
    assert code == 2 and "error" in err
    code, _, _ = _run(capsys, "analyze", str(path))
    assert code == 2


def test_verify_smoke(capsys):
    code, out, _ = _run(capsys, "verify", "--suite", "smoke")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["all_passed"]
    assert all("seconds" not in r for r in doc["results"])
    code, out, _ = _run(capsys, "verify", "--suite", "smoke", "--timings")
    assert all("seconds" in r for r in json.loads(out)["results"])


def test_verify_invalid_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "v.json"
    proc = subprocess.run([sys.executable, "-m", "formrank", "verify", "--suite", "smoke", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["suite"] == "smoke"
