from __future__ import annotations

import json
import subprocess
import sys

import pytest

from sts_einstein import catalog, sts
from sts_einstein.cli import main
from sts_einstein.exactnum import zeros
from sts_einstein.pipeline import CHECKS, close_selection, verify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def bad_json(tmp_path):
    ts = catalog.make_symplectic_type(1).perturbed((0, 1, 0, 0))
    path = tmp_path / "bad.json"
    path.write_text(sts.dumps(ts))
    return path


# -- pipeline --------------------------------------------------------------------


def test_close_selection():
    assert close_selection(["axioms"]) == ["axioms"]
    assert close_selection(["alpha"]) == ["axioms", "simple", "jacobi", "grading", "killing-consistency",
                                          "metric", "alpha"]
    assert close_selection(CHECKS) == list(CHECKS)
    with pytest.raises(ValueError):
        close_selection(["bogus"])


def test_failed_upstream_skips_downstream():
    ts = catalog.make_symplectic_type(1).perturbed((0, 1, 0, 0))
    report = verify(ts)
    statuses = {g.group: g.status for g in report.groups}
    assert statuses["axioms"] == "fail"
    assert all(statuses[c] == "skipped" for c in CHECKS[1:])
    assert not report.ok


def test_non_simple_input_skips_geometry():
    # zero form and zero product satisfy every axiom but are not simple
    ts = sts.TripleSystem(2, zeros(2, 2), zeros(2, 2, 2, 2), "trivial")
    report = verify(ts)
    statuses = {g.group: g.status for g in report.groups}
    assert statuses["axioms"] == "pass"
    assert statuses["simple"] == "fail"
    assert statuses["einstein"] == "skipped"


def test_dim2_flag():
    assert verify(catalog.make_symplectic_type(1), ["axioms"]).flags
    assert not verify(catalog.make_g2_type(), ["axioms"]).flags


# -- list ----------------------------------------------------------------------------


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    sym = next(line for line in out.splitlines() if line.startswith("symplectic:n"))
    assert "sp_{2n+2}" in sym and "sp_{2n}" in sym
    g2 = next(line for line in out.splitlines() if line.startswith("g2"))
    assert "g_{2,2}" in g2 and "sl_2" in g2
    exceptional = [line for line in out.splitlines() if line.startswith("exceptional")]
    assert len(exceptional) == 4
    assert all(catalog.METADATA_ONLY in line for line in exceptional)


# -- verify ----------------------------------------------------------------------------


def test_verify_symplectic1(capsys):
    code, out, _ = run(capsys, "verify", "symplectic:1", "--all")
    assert code == 0
    report = json.loads(out)
    assert report["einstein_constant"] == 6
    assert report["scalar_curvature"] == 42
    assert report["signature"] == [3, 4, 0]
    assert report["dim_m"] == 7
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_perturbed_axioms(capsys, bad_json):
    code, out, _ = run(capsys, "verify", str(bad_json), "--axioms")
    assert code == 1
    report = json.loads(out)
    first = report["checks"][0]
    assert first["name"] == "axiom_1" and first["status"] == "fail"
    assert first["witness"]["indices"] == [0, 1, 0]
    assert {c["name"] for c in report["checks"]} == {"axiom_1", "axiom_2", "axiom_3", "axiom_4"}


def test_verify_g2_deterministic(capsys):
    args = ("verify", "g2", "--all", "--seed", "7", "--samples", "100")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["seed"] == 7 and report["samples"] == 100
    assert report["einstein_constant"] == 10
    assert report["q_nonzero_witness"] is not None


def test_verify_checks_option(capsys):
    code, out, _ = run(capsys, "verify", "special:1", "--checks", "metric", "--format", "json")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert "metric_two_routes" in names and "einstein" not in names


def test_verify_table(capsys, bad_json):
    code, out, _ = run(capsys, "verify", "g2", "--einstein", "--samples", "2", "--format", "table")
    assert code == 0
    assert "Ric = 10 g" in out and out.rstrip().endswith("ALL PASS")
    code, out, _ = run(capsys, "verify", str(bad_json), "--format", "table")
    assert code == 1
    assert "skipped" in out and out.rstrip().endswith("FAILED")


@pytest.mark.parametrize("argv", [
    ("verify", "nope:1"),
    ("verify", "symplectic:9"),
    ("verify", "g2", "--checks", "bogus"),
    ("verify", "g2", "--samples", "-1"),
    ("verify", "/definitely/missing.json"),
    ("verify",),
    ("frobnicate",),
    ("dump", "foo"),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


@pytest.mark.parametrize("text", [
    "{not json",
    "[]",
    '{"dim": 2}',
    '{"dim": 2, "form": [["0", "1"], ["1", "0"]], "product": []}',
    '{"dim": 2, "form": [["0", "1"], ["-1", "0"]], "product": "abc"}',
    '{"dim": 2, "form": [["0", "1"], ["-1", "0"]], "product": [{"i": 0}]}',
    "\udcff",
])
def test_malformed_json_exit_2(capsys, tmp_path, text):
    path = tmp_path / "in.json"
    path.write_bytes(text.encode("utf-8", "surrogateescape"))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "Traceback" not in err


# -- dump ------------------------------------------------------------------------


def test_dump_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "dump", "symplectic:1")
    assert code == 0
    path = tmp_path / "s1.json"
    path.write_text(out)
    _, from_file, _ = run(capsys, "verify", str(path))
    _, from_key, _ = run(capsys, "verify", "symplectic:1")
    assert from_file == from_key


def test_dump_g2_tensor(capsys):
    code, out, _ = run(capsys, "dump", "g2")
    data = json.loads(out)
    flat = [v for a in data["product"] for b in a for c in b for v in c]
    assert len(flat) == 4 ** 4
    assert all(isinstance(v, str) for v in flat)
    assert "-1/3" in data["form"][1]


def test_dump_sparse_round_trip(capsys):
    _, out, _ = run(capsys, "dump", "orthogonal:1", "--sparse")
    ts = sts.from_json(json.loads(out))
    assert (ts.product == catalog.make_orthogonal_type(1).product).all()


def test_dump_lie_metric_report(capsys):
    code, out, _ = run(capsys, "dump", "g2", "--what", "lie")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 14 and len(data["killing"]) == 14
    code, out, _ = run(capsys, "dump", "g2", "--what", "metric")
    data = json.loads(out)
    assert data["signature"] == [5, 6, 0] and data["G"][0][0] == "-1"
    code, out, _ = run(capsys, "dump", "special:1", "--what", "report", "--samples", "3")
    assert code == 0 and json.loads(out)["einstein_constant"] == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sts_einstein", "verify", "symplectic:1", "--axioms"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["instance"] == "symplectic:1"
