from __future__ import annotations

import json
import subprocess
import sys

import pytest

from epg_rainbow.cli import main
from epg_rainbow.groups import read_cayley_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_writes_table(capsys, tmp_path):
    path = tmp_path / "z6.cayley"
    code, out, _ = run(capsys, "group", "--spec", "CYCLIC 6", "--out", str(path))
    assert code == 0
    assert read_cayley_file(path).order == 6
    assert "order 6" in out and "6:2" in out


def test_group_to_stdout(capsys):
    code, out, err = run(capsys, "group", "--spec", "DIHEDRAL 4", "--format", "json")
    assert code == 0
    assert out.splitlines()[0] == "8"
    assert json.loads(err)["element_orders"] == {"1": 1, "2": 5, "4": 2}


@pytest.mark.parametrize("argv", [
    ("group", "--spec", "CYCLIC zero"),
    ("group", "--spec", "SYMMETRIC 7"),
    ("group",),
    ("invariants", "--input", "/nonexistent/file.cayley"),
    ("rc", "--spec", "FOO 2"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rc", "--spec", "CYCLIC 3", "--rc-budget", "-1"])
    assert exc.value.code == 2


def test_bad_table_file(capsys, tmp_path):
    p = tmp_path / "bad.cayley"
    p.write_text("2\n0 1\n1 1\n")
    code, _, err = run(capsys, "invariants", "--input", str(p))
    assert code == 2 and "error" in err


def test_size_cap_override(capsys):
    code, _, _ = run(capsys, "group", "--spec", "CYCLIC 800")
    assert code == 2
    code, out, _ = run(capsys, "group", "--spec", "CYCLIC 800", "--override-size-cap")
    assert code == 0 and out.startswith("800\n")


@pytest.mark.parametrize("spec, m, icn, invmax, awning", [
    ("DICYCLIC 2", 3, 0, 0, "FOUND"),
    ("ELEMENTARY_ABELIAN 2 2", 3, 3, 3, "NONE"),
    ("CYCLIC 7", 1, 1, 0, "NOT_APPLICABLE"),
])
def test_invariants(capsys, spec, m, icn, invmax, awning):
    code, out, _ = run(capsys, "invariants", "--spec", spec)
    rep = json.loads(out)
    assert code == 0
    assert (rep["m"], rep["icn"], rep["invmax"], rep["awning"]["status"]) == (m, icn, invmax, awning)


def test_invariants_text_with_probe(capsys):
    code, out, _ = run(capsys, "invariants", "--spec", "DICYCLIC 2", "--format", "text",
                       "--probe-orders")
    assert code == 0
    assert "m = 3" in out and "certificate:" in out and "order probe" in out


def test_rc_enhanced(capsys):
    code, out, _ = run(capsys, "rc", "--spec", "CYCLIC 6")
    rep = json.loads(out)
    assert code == 0
    assert rep["enhanced"]["oracle"]["value"] == 1
    assert rep["enhanced"]["agreement"] == "MATCH"


def test_rc_both(capsys):
    code, out, _ = run(capsys, "rc", "--spec", "SYMMETRIC 3", "--which", "both")
    rep = json.loads(out)
    assert rep["enhanced"]["oracle"]["value"] == 3
    assert rep["power"]["oracle"]["value"] >= 3
    assert rep["enhanced_le_power"] is True


def test_rc_interval_when_gated(capsys):
    code, out, _ = run(capsys, "rc", "--spec", "DIRECT_PRODUCT(CYCLIC 4, CYCLIC 4)")
    rep = json.loads(out)
    assert code == 0
    assert rep["enhanced"]["oracle"]["kind"] == "INTERVAL"
    assert rep["enhanced"]["agreement"] == "INCONCLUSIVE"


def test_rc_dot_and_text(capsys, tmp_path):
    code, out, _ = run(capsys, "rc", "--spec", "DIHEDRAL 3", "--format", "dot")
    assert code == 0 and out.startswith("graph ") and "color=" in out
    out_path = tmp_path / "rc.txt"
    code, _, _ = run(capsys, "rc", "--spec", "DIHEDRAL 3", "--format", "text", "--out", str(out_path))
    assert "rc 3" in out_path.read_text()


def test_rc_from_file(capsys, tmp_path):
    path = tmp_path / "q8.cayley"
    run(capsys, "group", "--spec", "DICYCLIC 2", "--out", str(path))
    code, out, _ = run(capsys, "rc", "--input", str(path))
    assert json.loads(out)["enhanced"]["oracle"]["value"] == 2


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("EPG_RAINBOW_BUDGET", "5")
    code, out, _ = run(capsys, "rc", "--spec", "DICYCLIC 4")
    oracle = json.loads(out)["enhanced"]["oracle"]
    assert oracle["kind"] == "INTERVAL" and "budget" in oracle["note"]


def test_sweep(capsys, tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("# comment\nCYCLIC 3\nCYCLIC 4  # trailing\nNONSENSE 1\nDIHEDRAL 3\n")
    code, out, _ = run(capsys, "sweep", str(cat))
    rep = json.loads(out)
    assert code == 0
    assert rep["counts"] == {"MATCH": 3, "MISMATCH": 0, "INCONCLUSIVE": 0}
    assert len(rep["warnings"]) == 1
    code, _, err = run(capsys, "sweep", str(cat), "--strict")
    assert code == 2 and "line 4" in err


def test_sweep_empty(capsys, tmp_path):
    cat = tmp_path / "empty.txt"
    cat.write_text("")
    code, out, _ = run(capsys, "sweep", str(cat), "--format", "text")
    assert code == 0 and "MATCH 0" in out


def test_sweep_json_is_byte_identical(tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("DICYCLIC 2\nELEMENTARY_ABELIAN 2 2\nDIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)\n")
    outs = []
    for i, jobs in enumerate(("1", "2")):
        path = tmp_path / f"out{i}.json"
        subprocess.run([sys.executable, "-m", "epg_rainbow.cli", "sweep", str(cat), "--jobs", jobs,
                        "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_mismatch_exit_code(capsys, monkeypatch):
    import epg_rainbow.cli as cli
    from epg_rainbow.classifier import MISMATCH, cross_validate

    def fake(*args, **kwargs):
        rec = cross_validate(*args, **kwargs)
        rec.agreement = MISMATCH
        return rec

    monkeypatch.setattr(cli, "cross_validate", fake)
    code, _, _ = run(capsys, "rc", "--spec", "CYCLIC 5")
    assert code == 3


def test_sweep_mismatch_exit_code(capsys, monkeypatch, tmp_path):
    import epg_rainbow.cli as cli
    from epg_rainbow.classifier import MISMATCH, sweep

    def fake(*args, **kwargs):
        rep = sweep(*args, **kwargs)
        rep.records[0].agreement = MISMATCH
        return rep

    cat = tmp_path / "cat.txt"
    cat.write_text("CYCLIC 3\n")
    monkeypatch.setattr(cli, "sweep", fake)
    code, out, _ = run(capsys, "sweep", str(cat))
    assert code == 3
    assert json.loads(out)["mismatches"] == ["CYCLIC 3"]
