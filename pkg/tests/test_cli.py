"""Command-line behaviour: exit codes, determinism, compute and export."""
import json
import subprocess
import sys

import pytest

from eqcharclass.cartan import EquivariantForm
from eqcharclass.chern_weil import get_connection
from eqcharclass.cli import compute, export, main, read_config_file
from eqcharclass.core import form_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cartan", "--suite", "moment-map", "--samples", "5")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 failed")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_is_deterministic(capsys):
    args = ("verify", "--suite", "exterior,getzler", "--samples", "4", "--seed", "11", "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    data = json.loads(a)
    assert data["failed"] == 0
    names = [(r["suite"], r["identity"]) for r in data["results"]]
    assert names == sorted(names)


def test_unknown_suite_is_a_config_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nonsense")
    assert code == 2
    assert "unknown suite" in err


def test_bad_flag_is_a_config_error(capsys):
    code, _, _ = run(capsys, "verify", "--seed", "abc")
    assert code == 2


def test_corrupted_sign_fails(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "simplex", "--samples", "1", "--corrupt-sign")
    assert code == 1
    assert "FAIL" in out
    # the hook is undone afterwards
    code, _, _ = run(capsys, "verify", "--suite", "simplex", "--samples", "1")
    assert code == 0


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nsuite = cartan\nseed = 3\nsamples = 2\nformat = json\n")
    assert read_config_file(str(cfg))["suite"] == "cartan"
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert code == 0 and json.loads(out)["results"][0]["suite"] == "cartan"
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--format", "plain", "--suite", "moment-map")
    assert code == 0 and out.startswith("PASS  moment-map")


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.cfg"))[0] == 2
    cfg.write_text("p_max = seven\n")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_compute_examples(capsys):
    assert run(capsys, "compute", "--example", "trivial-r2", "--what", "curvature")[1] == "dx∧dy\n"
    out = run(capsys, "compute", "--example", "trivial-r2", "--action", "trivial", "--what", "char-form")[1]
    assert out == "dx∧dy\n"
    out = run(capsys, "compute", "--example", "hopf", "--what", "moment-map")[1]
    assert out == "(i*z1*z1b)*xi\n"


def test_compute_unknown_names(capsys):
    assert run(capsys, "compute", "--example", "klein-bottle")[0] == 2
    assert run(capsys, "compute", "--example", "hopf", "--action", "rotation-plane")[0] == 2
    assert run(capsys, "compute", "--example", "hopf", "--connection", "9")[0] == 2
    assert run(capsys, "compute", "--example", "hopf", "--polynomial", "Y")[0] == 2


def test_export_json_round_trip(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, _, _ = run(capsys, "export", "--example", "hopf", "--what", "char-form", "--polynomial", "X^2", "-o", str(target))
    assert code == 0
    w = compute("hopf", "char-form", "X^2")
    assert EquivariantForm.from_json(w.action, json.loads(target.read_bytes())) == w
    again = export(w, "json")
    assert again == target.read_bytes()


def test_export_formats():
    zero = compute("trivial-r2", "curvature", action="trivial", connection=1)
    assert export(zero, "json") == b"[]\n"
    curv = compute("trivial-r2", "curvature")
    assert b"\\wedge" in export(curv, "latex")
    assert form_from_json(json.loads(export(curv, "json")), curv.chart) == curv


def test_transgression_compute():
    t = compute("trivial-r2", "transgression", action="trivial", connection=1, to=0)
    assert str(t) == "x dy"


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "hopf" in out and "main-theorem" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eqcharclass.cli", "compute", "--example", "trivial-r2", "--what", "curvature"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "dx∧dy\n"
