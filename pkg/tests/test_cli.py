import json
import subprocess
import sys
from pathlib import Path

import pytest

from gitplane.cli import AnalysisRequest, canonical, main, replay, run
from gitplane.serialization import InputError

CORPUS = Path(__file__).parent / "corpus"


def cli(*argv, cwd=CORPUS):
    return subprocess.run([sys.executable, "-m", "gitplane.cli", *argv], cwd=cwd,
                          capture_output=True, text=True)


def load(name):
    return json.loads((CORPUS / name).read_text())


def test_cusp_report():
    rep = run(AnalysisRequest("curve", load("cusp.json"), {"point": "0,0,1"}))
    res = rep["results"]
    assert (res["multiplicity"], res["threshold"], res["verdict"]) == (3, "8/3", "unstable")
    assert res["certificate"]["mu"] == -1
    assert replay(rep)


def test_chern_report():
    res = run(AnalysisRequest("chern", {"r": 2, "c1": 0, "c2": 5}))["results"]
    assert res["chi"] == -3
    assert res["hilbert"]["text"] == "1/2 m^2 + 3/2 m - 3/2"
    assert res["h1_table"] == [5, 5, 3]


def test_chern_rejects_table_but_completes():
    res = run(AnalysisRequest("chern", {"r": 3, "c1": 0, "c2": 2}))["results"]
    assert res["h1_table"] is None and "c2" in res["h1_table_error"]


def test_monad_jump_divisor_report():
    res = run(AnalysisRequest("monad", load("conic_pair.json"), {"jump_divisor": True}))["results"]
    assert res["jump_divisor"]["text"] == "l1*l3 - l2^2"
    assert res["jump_divisor"]["degree"] == 2


def test_replay_detects_tampering():
    rep = run(AnalysisRequest("curve", load("cusp.json"), {"point": "0,0,1"}))
    bad = json.loads(json.dumps(rep))
    bad["results"]["certificate"]["mu"] = 1
    assert not replay(bad)
    bad = json.loads(json.dumps(rep))
    bad["results"]["certificate"]["frame"][0][2] = {"num": 1, "den": 1}
    assert not replay(bad)
    bad = json.loads(json.dumps(rep))
    bad["input"]["terms"][0]["num"] = 2
    assert not replay(bad)


def test_replay_detects_monad_tampering():
    rep = run(AnalysisRequest("monad", load("planted3.json"),
                              {"instability": True, "vprime": "0,0,1"}))
    assert rep["results"]["instability"]["verdict"].startswith("unstable")
    bad = json.loads(json.dumps(rep))
    bad["results"]["instability"]["dim_k_prime"] = 1
    assert not replay(bad)


def test_unknown_command():
    with pytest.raises(InputError):
        AnalysisRequest("sing", {})


@pytest.mark.parametrize("argv,code", [
    (["curve", "--in", "missing.json"], 2),
    (["curve", "--in", "cusp.json", "--point", "0,0"], 2),
    (["chern", "--r", "2"], 2),
    (["hulsbergen", "--in", "triangle.json", "--splitting"], 2),
    (["monad", "--in", "conic_pair.json", "--phi"], 2),
    (["curve", "--in", "cusp.json"], 0),
])
def test_exit_codes(argv, code, monkeypatch, capsys):
    monkeypatch.chdir(CORPUS)
    assert main(argv) == code


def test_bad_json_is_input_error(tmp_path, monkeypatch):
    (tmp_path / "x.json").write_text("{not json")
    monkeypatch.chdir(tmp_path)
    assert main(["curve", "--in", "x.json"]) == 2


def test_subprocess_roundtrip(tmp_path):
    out = tmp_path / "r.json"
    p = cli("hulsbergen", "--in", "collinear6.json", "--check-unstable", "--out", str(out))
    assert p.returncode == 0, p.stderr
    rep = json.loads(out.read_text())
    assert rep["results"]["instability"]["verdict"] == "unstable"
    p = cli("replay", str(out))
    assert p.returncode == 0 and json.loads(p.stdout) == {"replay": True}
    rep["results"]["instability"]["certificate"]["mu"] = 3
    out.write_text(json.dumps(rep))
    assert cli("replay", str(out)).returncode == 3


def test_determinism_bytes():
    argv = ["monad", "--in", "planted6.json", "--instability", "--validate-lemmas", "--seed", "4"]
    a, b = cli(*argv), cli(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_timing_is_opt_in():
    rep = run(AnalysisRequest("chern", {"r": 2, "c1": 0, "c2": 5}))
    assert "timing_seconds" not in rep
    assert "timing_seconds" in run(AnalysisRequest("chern", {"r": 2, "c1": 0, "c2": 5}), timing=True)


def test_canonical_is_sorted():
    assert canonical({"b": 1, "a": 2}).index('"a"') < canonical({"b": 1, "a": 2}).index('"b"')


def test_version_flag():
    p = cli("--version")
    assert p.returncode == 0 and "gitplane" in p.stdout
