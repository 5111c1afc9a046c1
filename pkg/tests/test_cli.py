from __future__ import annotations

import hashlib
import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

from conftest import context, fixture_text
from knotlattice.cli import bundled_fixtures, main
from knotlattice.lattice import check_order_iso, poset_from_covers

STAGE_COMMANDS = ["states", "lattice", "rep", "submodules", "irr", "coeff"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bundled_fixtures_listed(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    assert "paperlink7.json" in out.split()
    assert set(bundled_fixtures()) >= {
        "hopf.json", "trefoil.json", "figure8.json", "paperlink7.json",
        "paperlink5.json", "connected_sum.json", "corrupted.json",
    }


def test_states_count(capsys):
    code, out, _ = run(capsys, "states", "paperlink7", "--segment", "6")
    assert code == 0
    assert out.splitlines()[0] == "24 states"


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "trefoil", "--segment", "all")[0] == 0
    code, out, _ = run(capsys, "check", "corrupted", "--segment", "1")
    assert code == 2 and "FAIL" in out


def test_validation_errors_exit_1(capsys, tmp_path):
    assert run(capsys, "validate", "connected_sum")[0] == 1
    assert run(capsys, "check", "connected_sum")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    code, _, err = run(capsys, "states", str(bad), "-s", "1")
    assert code == 1 and "syntax" in err
    assert run(capsys, "states", "no_such_thing", "-s", "1")[0] == 1
    assert run(capsys, "states", "trefoil", "-s", "99")[0] == 1
    assert run(capsys, "states", "trefoil", "-s", "x")[0] == 1
    assert run(capsys, "states", "trefoil", "-s", "1", "--format", "dot")[0] == 1


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["states", "trefoil"])  # --segment is required
    assert err.value.code == 1


def test_limit_exit_3(capsys):
    code, _, err = run(capsys, "states", "paperlink7", "-s", "6", "--limit", "5")
    assert code == 3 and "more than 5 states" in err
    assert run(capsys, "submodules", "paperlink7", "-s", "6", "--limit", "5")[0] == 3


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "paperlink5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1 and doc["ok"] and doc["prime"]


@pytest.mark.parametrize("cmd", STAGE_COMMANDS + ["check"])
def test_json_has_schema_version(capsys, cmd):
    code, out, _ = run(capsys, cmd, "trefoil", "-s", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["schema_version"] == 1


def test_lattice_json_round_trip(capsys):
    code, out, _ = run(capsys, "lattice", "paperlink7", "-s", "6", "--format", "json")
    doc = json.loads(out)
    n = len(doc["elements"])
    p = poset_from_covers(n, [(a, b) for a, b, _ in doc["covers"]])
    L = context("paperlink7", 6).state_lattice
    assert check_order_iso(L.poset, p, list(range(n))) == (True, None)
    assert doc["bottom"] == L.min_index and doc["top"] == L.max_index


def test_dot_outputs(capsys):
    _, out, _ = run(capsys, "lattice", "trefoil", "-s", "1")
    assert out.startswith("digraph states_1 {") and out.rstrip().endswith("}")
    _, out, _ = run(capsys, "coeff", "paperlink5", "-s", "9")
    assert out.count("->") == 7


def test_irr_methods(capsys):
    _, out, _ = run(capsys, "irr", "paperlink7", "-s", "6", "--method", "module",
                    "--format", "json")
    doc = json.loads(out)
    assert "state" not in doc and len(doc["module"]) == 9
    _, out, _ = run(capsys, "irr", "paperlink7", "-s", "6", "--method", "state",
                    "--format", "json")
    doc = json.loads(out)
    assert "module" not in doc and len(doc["state"]) == 9


def test_submodules_text(capsys):
    _, out, _ = run(capsys, "submodules", "paperlink7", "-s", "6")
    assert out.splitlines()[0] == "24 submodules"


def test_segment_all_fans_out(capsys):
    _, out, _ = run(capsys, "states", "trefoil", "-s", "all", "--format", "json")
    doc = json.loads(out)
    assert [s["segment"] for s in doc["segments"]] == [1, 2, 3, 4, 5, 6]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.dot"
    code, out, _ = run(capsys, "coeff", "paperlink7", "-s", "6", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text().count("->") == 11


def test_input_is_not_mutated(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(fixture_text("paperlink7"))
    before = hashlib.sha256(path.read_bytes()).hexdigest()
    for cmd in STAGE_COMMANDS + ["check"]:
        run(capsys, cmd, str(path), "-s", "6")
    run(capsys, "validate", str(path))
    assert hashlib.sha256(path.read_bytes()).hexdigest() == before


def test_rep_matrices(capsys):
    _, out, _ = run(capsys, "rep", "paperlink7", "-s", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["dims"]["8"] == 2
    for a in doc["arrows"]:
        m = np.array(a["matrix"])
        assert m.size == 0 or m.shape == (doc["dims"][str(a["target"])],
                                          doc["dims"][str(a["source"])])


@pytest.mark.skipif(shutil.which("knotlattice") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["knotlattice", "check", "corrupted", "--segment", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotlattice.cli", "states", "hopf", "-s", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("2 states")
