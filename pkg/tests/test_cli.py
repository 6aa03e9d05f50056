import json

import numpy as np
import pytest

import relkummer.cli as cli
from relkummer import fpgmod
from relkummer.errors import InvariantViolation
from relkummer.selftest import run_selftest


def write(tmp_path, name, body):
    path = tmp_path / name
    path.write_text(body)
    return str(path)


def instance(gens, p=2, l=2, field="GF(5)"):
    return f"p = {p}\nl = {l}\nfield = {field}\ngenerators = {json.dumps(gens)}\n"


def test_analyze_text(tmp_path, capsys):
    path = write(tmp_path, "a.txt", instance(["t"]))
    assert cli.main(["analyze", path]) == cli.EXIT_PASS
    out = capsys.readouterr().out
    assert "basis of B/E^xp (2): t, 2" in out
    assert "s = 2" in out
    assert "Jordan type: (2,)" in out


def test_analyze_json_and_pth_power_note(tmp_path, capsys):
    path = write(tmp_path, "a.txt", instance(["4"]))
    assert cli.main(["analyze", path, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["jordan_type"] == [] and data["basis"] == []
    assert any("p-th power" in n for n in data["notes"])


def test_verify_writes_report(tmp_path, capsys):
    path = write(tmp_path, "v.txt", instance(["t", "t+1"], p=3, l=1, field="GF(7)"))
    out = tmp_path / "r.json"
    assert cli.main(["verify", path, "--out", str(out)]) == cli.EXIT_PASS
    report = json.loads(out.read_text())
    assert list(report)[:8] == ["schema_version", "instance", "basis", "jordan_type_module",
                                "jordan_type_galois", "checks", "verdict", "seed"]
    assert report["verdict"] == "pass"
    assert report["jordan_type_module"] == report["jordan_type_galois"] == [3, 2]
    assert "pass" in capsys.readouterr().out


@pytest.mark.parametrize("body", [
    instance(["t"], p=3, l=1, field="GF(5)"),       # 3 does not divide 4
    instance(["t**2"]),                              # syntax error
    instance(["t-t"]),                               # zero generator
    "p = 2\nl = 2\n",                                # missing field
    instance(["t"], field="GF(12)"),
])
def test_invalid_instances_exit_2(tmp_path, capsys, body):
    path = write(tmp_path, "bad.txt", body)
    assert cli.main(["verify", path]) == cli.EXIT_INVALID
    assert "invalid instance" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path):
    assert cli.main(["analyze", str(tmp_path / "nope.txt")]) == cli.EXIT_INVALID


def test_parse_error_mentions_line_and_column(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", 'p = 2\nl = 2\nfield = GF(5)\ngenerators = ["t", "t**2"]\n')
    cli.main(["verify", path])
    assert "line 4, column 23" in capsys.readouterr().err


def test_invariant_violation_exits_3(tmp_path, monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise InvariantViolation("injected")

    monkeypatch.setattr(cli, "build_extension", broken)
    path = write(tmp_path, "a.txt", instance(["t"]))
    assert cli.main(["analyze", path]) == cli.EXIT_INTERNAL
    assert "injected" in capsys.readouterr().err


def test_random_is_deterministic(tmp_path, capsys):
    args = ["random", "--count", "6", "--p", "2", "--l", "2", "--field", "GF(5)", "--seed", "7"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["passed"] == 6 and len(data["reports"]) == 6
    capsys.readouterr()


def test_random_edge_cases(capsys):
    assert cli.main(["random", "--count", "0", "--p", "3", "--l", "1", "--field", "GF(7)"]) == 0
    capsys.readouterr()
    assert cli.main(["random", "--count", "2", "--p", "3", "--l", "1", "--field", "GF(7)",
                     "--max-gens", "0"]) == cli.EXIT_INVALID
    assert cli.main(["random", "--count", "2", "--p", "3", "--l", "1", "--field", "GF(5)"]) == cli.EXIT_INVALID


def test_selftest_passes(capsys):
    assert cli.main(["selftest"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "7 suites; all pass"
    assert len(out) >= 7


def test_selftest_detects_broken_dual(monkeypatch):
    def wrong_dual(M):
        return fpgmod.ModulePresentation(np.zeros_like(M.X), M.p, M.q)

    monkeypatch.setattr(fpgmod, "dual_module", wrong_dual)
    failed = [r.name for r in run_selftest() if not r.passed]
    assert failed == ["dual_enumeration"]


def test_selftest_reports_crashing_suite(monkeypatch, capsys):
    def boom(u):
        raise RuntimeError("no logs today")

    monkeypatch.setattr("relkummer.ffield.dlog", boom)
    assert cli.main(["selftest"]) == cli.EXIT_FAIL
    out = capsys.readouterr().out
    assert "FAILED: dlog_roundtrip" in out
    assert "RuntimeError: no logs today" in out
