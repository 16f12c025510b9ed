import json
import subprocess
import sys

import jsonschema
import pytest

from cplab import schemas
from cplab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.BY_ID[doc["schema"]])
    return code, doc


def test_params(capsys):
    code, d = run_json(capsys, "params", "7", "2")
    assert code == 0
    assert {k: d[k] for k in ("s", "r", "m", "t", "pPrime", "chi")} == \
        {"s": 2, "r": 1, "m": 0, "t": 1, "pPrime": 3, "chi": 4}
    code, d = run_json(capsys, "params", "9", "2")
    assert d["turanApplicable"] is False
    code, _, err = run(capsys, "params", "4", "2")
    assert code == 2 and "complete-graph regime" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["params", "seven", "2"])
    assert info.value.code == 2


def test_verify_coloring(capsys):
    code, d = run_json(capsys, "verify-lemma2", "--kmax", "14", "--pmax", "3")
    assert code == 0 and d["pass"]
    assert d["config"]["tolSource"] in ("default", "env")
    code, out, _ = run(capsys, "verify-coloring", "--kmax", "9", "--pmax", "2")
    assert code == 0 and "overall: PASS" in out


def test_verify_coloring_only_r0(capsys):
    code, d = run_json(capsys, "verify-coloring", "--kmin", "6", "--kmax", "6", "--pmax", "2")
    assert code == 0 and len(d["rows"]) == 2
    assert all(r["r"] == 0 and r["criticality"].startswith("skipped") for r in d["rows"])


def test_verify_coloring_corrupted(capsys):
    code, d = run_json(capsys, "verify-coloring", "--kmax", "9", "--pmax", "2", "--corrupt-b")
    assert code == 1 and not d["pass"]
    bad = [r for r in d["rows"] if not r["pass"]]
    assert bad and all(r.get("gWitness") for r in bad)


def test_verify_spectral(capsys):
    code, d = run_json(capsys, "verify-spectral", "30", "11", "2")
    assert code == 0 and d["pass"]
    assert d["checks"]["rayleighBound"]["lambda"] > 20
    code, d = run_json(capsys, "verify-spectral", "10", "11", "2")
    lam = 3 + 3 * 2 ** 0.5
    assert d["checks"]["closedForm"]["lambda"] == pytest.approx(lam, abs=1e-9)
    for x in d["checks"]["closedForm"]["closedFormEntries"]:
        assert x == pytest.approx((lam + 1) / (lam + 3), abs=1e-9)
    code, d = run_json(capsys, "verify-spectral", "30", "8", "2")
    assert code == 0 and any("not applicable" in n for n in d["notes"])


def test_tol_precedence(capsys, monkeypatch):
    monkeypatch.setenv("CPL_TOL", "1e-10")
    _, d = run_json(capsys, "verify-spectral", "12", "7", "2")
    assert d["config"]["tol"] == 1e-10 and d["config"]["tolSource"] == "env"
    _, d = run_json(capsys, "verify-spectral", "12", "7", "2", "--tol", "1e-11")
    assert d["config"]["tol"] == 1e-11 and d["config"]["tolSource"] == "flag"


def test_search(capsys, cache_dir):
    code, d = run_json(capsys, "search", "ex", "7", "5", "2")
    assert code == 0 and d["value"] == 18 and not d["fromCache"]
    code, d = run_json(capsys, "search", "ex", "7", "5", "2")
    assert d["fromCache"] and d["config"]["cacheDirSource"] == "env"
    code, d = run_json(capsys, "search", "spex", "7", "5", "2", "--no-cache")
    assert d["value"] == pytest.approx(2 + 10 ** 0.5, abs=1e-9)
    code, d = run_json(capsys, "search", "spex", "30", "7", "2", "--heuristic", "--seed", "1", "--steps", "20")
    assert code == 0 and d["exhaustive"] is False


def test_search_cap(capsys, cache_dir):
    code, _, err = run(capsys, "search", "spex", "9", "7", "2")
    assert code == 3 and "--heuristic" in err
    code, _, _ = run(capsys, "search", "ex", "7", "7", "2", "--heuristic")
    assert code == 2


def test_search_finding(capsys, cache_dir):
    code, d = run_json(capsys, "search", "ex", "8", "7", "2")
    assert code == 0
    assert d["sandwich"]["holds"] and d["sandwich"]["finding"]


def test_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "complete:3")
    assert out.strip() == "Bw"
    target = tmp_path / "c72.dot"
    code, _, _ = run(capsys, "export", "cycle-power:7:2", "--format", "dot", "-o", str(target))
    text = target.read_text()
    assert code == 0 and text.count("--") == 14 and text.count(";") == 21
    code, out, _ = run(capsys, "export", "report:coloring:8:2", "--format", "json")
    jsonschema.validate(json.loads(out), schemas.VERIFY_COLORING)
    code, out, _ = run(capsys, "export", "report:spectral:12:7:2", "--format", "json")
    jsonschema.validate(json.loads(out), schemas.VERIFY_SPECTRAL)
    code, out, _ = run(capsys, "export", "extremal:10:11:2", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schemas.GRAPH)
    assert len(doc["edges"]) == 36


@pytest.mark.parametrize("what", ["bogus:1", "cycle:2", "turan:5", "graph6:B x", "report:nope:1"])
def test_export_errors(capsys, what):
    code, _, err = run(capsys, "export", what)
    assert code == 2 and err.startswith("error:")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cplab", "params", "11", "2", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["t"] == 2
