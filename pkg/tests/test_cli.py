import json
import subprocess
import sys
import time

import pytest

from superbethe.cli import main, manifest_path, reserialize

MODEL = {"m": 2, "n": 1, "inhomogeneities": ["1/3", "2", "-5/7"], "twist": ["2", "-3", "5/2"]}
TWO_SITE = {"m": 2, "n": 1, "inhomogeneities": ["1/3", "1/2"], "twist": ["2", "-3", "5/2"]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(cmd, cfg, out=None, workers=1):
    argv = [cmd, "--config", cfg, "--workers", str(workers)]
    if out:
        argv += ["--out", str(out)]
    return main(argv)


def test_build_empty_is_vacuum(tmp_path):
    cfg = write(tmp_path, "b.json", {"model": MODEL})
    assert run("build", cfg, tmp_path / "s.json") == 0
    doc = json.loads((tmp_path / "s.json").read_text())
    assert doc["terms"] == [{"sites": [1, 1, 1], "coefficient": "1"}]
    man = json.loads(manifest_path(tmp_path / "s.json").read_text())
    assert man["tables"] == 1 and man["r"] == [0, 0]


def test_build_one_root_per_level(tmp_path):
    cfg = write(tmp_path, "b.json", {"model": MODEL, "bethe": {"levels": [["1/2"], ["9/4"]]}})
    assert run("build", cfg, tmp_path / "s.json") == 0
    assert len(json.loads((tmp_path / "s.json").read_text())["terms"]) == 3
    man = json.loads(manifest_path(tmp_path / "s.json").read_text())
    assert (man["tables"], man["terms"]) == (2, 2)
    assert set(man) >= {"profile", "r", "tables", "terms", "wall_time"}


def test_flavors_byte_identical_and_round_trip(tmp_path):
    bethe = {"levels": [["1/2", "9/4"], ["7"]]}
    a = write(tmp_path, "a.json", {"model": MODEL, "bethe": bethe,
                                   "options": {"flavor": "forward"}})
    b = write(tmp_path, "b.json", {"model": MODEL, "bethe": bethe,
                                   "options": {"flavor": "mirror"}})
    assert run("build", a, tmp_path / "sa.json") == 0
    assert run("build", b, tmp_path / "sb.json", workers=2) == 0
    text = (tmp_path / "sa.json").read_text()
    assert text == (tmp_path / "sb.json").read_text()
    assert reserialize(text) == text


def test_solve_zero_magnons(tmp_path):
    cfg = write(tmp_path, "s.json", {"model": TWO_SITE,
                                     "bethe": {"cardinalities": [0, 0], "solve": {}}})
    assert run("solve", cfg, tmp_path / "roots.json") == 0
    doc = json.loads((tmp_path / "roots.json").read_text())
    assert doc["levels"] == [[], []] and doc["converged"]


def test_solve_closed_form_instance(tmp_path):
    model = {"m": 2, "n": 1, "inhomogeneities": ["1/3"], "twist": ["1", "2", "1"]}
    cfg = write(tmp_path, "s.json", {"model": model, "bethe": {
        "cardinalities": [1, 0], "solve": {"dps": 60, "tol": "1e-30"}}})
    assert run("solve", cfg, tmp_path / "roots.json") == 0
    doc = json.loads((tmp_path / "roots.json").read_text())
    root = doc["levels"][0][0]
    assert root.startswith("1.3333333333333333333333333333333333333333333333")
    assert root.endswith("@60") and doc["precision"] == 60


def test_solve_then_check(tmp_path):
    cfg = write(tmp_path, "s.json", {"model": TWO_SITE, "bethe": {
        "cardinalities": [1, 1], "solve": {"dps": 90, "tol": "1e-42"}}})
    assert run("solve", cfg, tmp_path / "roots.json") == 0
    chk = write(tmp_path, "c.json", {"model": TWO_SITE, "bethe": {"roots_file": "roots.json"},
                                     "options": {"which": "onshell"}})
    assert run("check", chk, tmp_path / "report.jsonl") == 0
    rec = json.loads((tmp_path / "report.jsonl").read_text().splitlines()[0])
    assert rec["passed"] and rec["check"] == "onshell" and rec["seed"] == 0


def test_off_shell_roots_fail(tmp_path):
    chk = write(tmp_path, "c.json", {"model": TWO_SITE, "bethe": {"levels": [["3/7"], ["11/5"]]},
                                     "options": {"which": "onshell"}})
    assert run("check", chk, tmp_path / "report.jsonl") == 1


def test_rtt_check_fast(tmp_path):
    cfg = write(tmp_path, "c.json", {"model": {"m": 1, "n": 1, "inhomogeneities": ["1/2"]},
                                     "options": {"which": "rtt", "seed": 5}})
    t0 = time.time()
    assert run("check", cfg, tmp_path / "r.jsonl") == 0
    assert time.time() - t0 < 1
    assert json.loads((tmp_path / "r.jsonl").read_text())["seed"] == 5


def test_equivalence_check_gl22(tmp_path):
    cfg = write(tmp_path, "c.json", {
        "model": {"m": 2, "n": 2, "inhomogeneities": ["1/2", "3", "-4"]},
        "bethe": {"cardinalities": [1, 1, 1]},
        "options": {"which": ["equivalence"], "equivalence": {"draws": 3}}})
    assert run("check", cfg, tmp_path / "r.jsonl", workers=2) == 0
    lines = (tmp_path / "r.jsonl").read_text().splitlines()
    assert len(lines) == 3
    assert all(json.loads(x)["config"]["r"] == [1, 1, 1] for x in lines)


def test_config_errors_name_the_field(tmp_path, capsys):
    cfg = write(tmp_path, "x.json", {"model": {"m": 2, "n": "x"}})
    assert run("build", cfg) == 2
    assert "model.n" in capsys.readouterr().err
    cfg = write(tmp_path, "y.json", {"model": MODEL, "bethe": {
        "levels": [["1/2"], ["3"]], "cardinalities": [2, 1]}})
    assert run("build", cfg) == 2
    assert "bethe.cardinalities" in capsys.readouterr().err
    cfg = write(tmp_path, "z.json", {"model": MODEL, "options": {"which": "nope"}})
    assert run("check", cfg) == 2
    assert "options.which" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, "b.json", {"model": MODEL})
    out = subprocess.run([sys.executable, "-m", "superbethe", "build", "--config", cfg],
                         capture_output=True, text=True)
    assert out.returncode == 0 and '"terms"' in out.stdout


def test_missing_config_flag():
    with pytest.raises(SystemExit):
        main(["build"])
