import json
import subprocess
import sys

import pytest

from sqorbits.cli import main
from sqorbits.dynamics import Orbit
from sqorbits.families import ThreeSquareWitness
from sqorbits.periodic import PoonenCycle, SquareCycleWitness
from sqorbits.runlog import read_results


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_orbit_steps(capsys):
    code, out, _ = run(capsys, "orbit", "--c", "5103/4096", "--x0", "9/64", "--steps", "4")
    assert code == 0
    assert out["iterates"][:4] == ["9/64", "81/64", "729/256", "613089/65536"]
    code, out, _ = run(capsys, "orbit", "--c", "0", "--x0", "1", "--steps", "3")
    assert out["iterates"] == ["1", "1", "1", "1"]


def test_orbit_detect_cycle(capsys):
    code, out, _ = run(capsys, "orbit", "--map", "1,-21/4,21/4", "--x0", "4", "--detect-cycle")
    assert code == 0 and out["period"] == 2
    d = {k: out[k] for k in ("x0", "iterates", "tail", "period", "truncated")}
    assert Orbit.from_dict(d).to_dict() == d


def test_orbit_height_guard_flags(capsys):
    code, out, _ = run(capsys, "orbit", "--c", "1/3", "--x0", "1/7", "--steps", "40")
    assert code == 0 and out["truncated"]


@pytest.mark.parametrize("argv", [["orbit", "--c", "0.5", "--x0", "1"], ["orbit", "--map", "1,2", "--x0", "1"],
                                  ["orbit", "--x0", "1"], ["nonsense"]])
def test_parse_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0


def test_family(capsys):
    code, out, _ = run(capsys, "family", "xc", "--beta", "2")
    assert code == 0 and out["map"]["C"] == "132583668/88529281" and out["verified"]
    w = {k: v for k, v in out.items() if k not in ("verified", "periodic")}
    assert ThreeSquareWitness.from_dict(w).to_dict() == w
    code, out, _ = run(capsys, "family", "xaxma", "--alpha", "4")
    assert out["periodic"]["period"] == 2 and out["map"]["B"] == "-21/4"
    code, out, _ = run(capsys, "family", "xc", "--beta", "2", "--extend", "3")
    assert code == 0 and out["n"] == 3 and out["map"]["C"] != "132583668/88529281"


def test_family_excluded(capsys):
    code, out, err = run(capsys, "family", "xaxma", "--alpha", "1")
    assert code == 2 and "alpha = 1" in err
    code, _, _ = run(capsys, "family", "xc", "--beta", "1", "--a", "2")
    assert code == 2


def test_periodic_commands(capsys):
    code, out, _ = run(capsys, "periodic", "catalog-check")
    assert code == 0 and out["summary"] == [f"f{i} PASS" for i in range(1, 6)]
    code, out, _ = run(capsys, "periodic", "three-cycle", "--m", "7/4", "--n", "5/4", "--r", "1/4")
    assert out["map"]["B"] == "-29/8" and out["map"]["C"] == "841/256"
    assert SquareCycleWitness.from_dict(out).to_dict() == out
    code, _, err = run(capsys, "periodic", "poonen", "--tau", "0")
    assert code == 2
    code, out, _ = run(capsys, "periodic", "poonen", "--sigma", "15/8")
    assert out["c"] == "-273/64" and PoonenCycle.from_dict(out).to_dict() == out
    code, out, _ = run(capsys, "periodic", "two-cycle", "--m", "2", "--k", "1/2")
    assert out["squares"] == ["4", "1/4"]
    code, out, _ = run(capsys, "periodic", "recover-tau", "--map", "1,-29/8,841/256")
    assert code == 0 and "-1/2" in out["taus"]
    code, out, _ = run(capsys, "periodic", "recover-tau", "--map", "c=1")
    assert code == 1 and out["taus"] == []
    code, out, _ = run(capsys, "periodic", "search", "--height", "4")
    assert code == 0 and len(out["witnesses"]) >= 1
    code, _, _ = run(capsys, "periodic", "three-cycle", "--m", "1", "--n", "2", "--r", "3")
    assert code == 2


def test_search4_trivial_box(capsys, tmp_path):
    res = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "search4", "--y", "1", "--box", "1", "--results", str(res))
    assert code == 0 and out["hits_total"] == 0
    manifest = json.loads((tmp_path / "r.jsonl.manifest.json").read_text())
    assert manifest["shards_done"] == [0] and manifest["finished"] and manifest["version"]


def test_search4_regression_and_determinism(capsys, tmp_path):
    outs = []
    for name in ("a", "b"):
        res = tmp_path / f"{name}.jsonl"
        code, out, _ = run(capsys, "search4", "--y", "9/8", "--box", "8", "--shards", "4", "--results", str(res))
        assert code == 0
        outs.append(res.read_bytes())
    assert outs[0] == outs[1]
    hits = read_results(tmp_path / "a.jsonl")
    assert [h["c"] for h in hits] == ["5103/4096"]


def test_search4_resume_and_mismatch(capsys, tmp_path):
    res = tmp_path / "r.jsonl"
    argv = ["search4", "--y", "9/8", "--box", "8", "--shards", "3", "--results", str(res)]
    run(capsys, *argv)
    code, out, _ = run(capsys, *argv)
    assert out["shards_run"] == [] and out["new_hits"] == 0
    code, _, err = run(capsys, "search4", "--y", "9/8", "--box", "7", "--shards", "3", "--results", str(res))
    assert code == 2 and "different config" in err


def test_search4_partial_manifest_resumes(capsys, tmp_path):
    res = tmp_path / "r.jsonl"
    argv = ["search4", "--y", "9/8", "--box", "8", "--shards", "3", "--results", str(res)]
    run(capsys, *argv)
    full = res.read_bytes()
    man_path = tmp_path / "r.jsonl.manifest.json"
    man = json.loads(man_path.read_text())
    # a crash after appending shards 1-2 but before recording them
    man["shards_done"], man["finished"] = [0], None
    man_path.write_text(json.dumps(man))
    code, out, _ = run(capsys, *argv)
    assert out["shards_run"] == [1, 2] and out["new_hits"] == 0
    assert res.read_bytes() == full
    assert json.loads(man_path.read_text())["shards_done"] == [0, 1, 2]


def test_search4_config_file_and_m_mode(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "M", "box": 2, "shards": 2}))
    res = tmp_path / "m.jsonl"
    code, out, _ = run(capsys, "search4", "--config", str(cfg), "--results", str(res))
    assert code == 0 and out["mode"] == "M"


def test_search4_env_results_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SQORBITS_RESULTS_DIR", str(tmp_path / "envdir"))
    code, out, _ = run(capsys, "search4", "--y", "1", "--box", "1")
    assert code == 0 and out["results"].startswith(str(tmp_path / "envdir"))


def test_search4_needs_y(capsys, tmp_path):
    code, _, _ = run(capsys, "search4", "--box", "2", "--results", str(tmp_path / "x.jsonl"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sqorbits", "orbit", "--c", "0", "--x0", "2", "--steps", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["iterates"] == ["2", "4"]


def test_search4_single_shard_dedupes_slopes(capsys, tmp_path):
    # both slopes reaching 5103/4096 fall in the one shard
    res = tmp_path / "one.jsonl"
    code, out, _ = run(capsys, "search4", "--y", "9/8", "--box", "8", "--shards", "1", "--results", str(res))
    assert code == 0 and out["new_hits"] == 1
    hits = read_results(res)
    assert [h["c"] for h in hits] == ["5103/4096"]
    assert hits[0]["source"]["p"] == -7


@pytest.mark.parametrize("argv", [
    ["periodic", "poonen", "--tau", "-1/2"],
    ["periodic", "poonen", "--tau=-1/2"],
])
def test_negative_rational_arguments(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out["c"] == "-29/16"
