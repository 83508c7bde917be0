import csv
import io
import json

import pytest

from volterra_spectra import cli, verify
from volterra_spectra.report import Check, ReportDoc, emit_csv, emit_json, emit_table, parse_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eigs_table(capsys):
    code, out, _ = run(capsys, "eigs", "--part", "im", "--n", "2")
    assert code == 0
    assert "0.144337567297" in out and "-0.144337567297" in out
    assert all(line == line.rstrip() for line in out.splitlines())


def test_eigs_json_round_trip(capsys):
    code, out, _ = run(capsys, "--json", "eigs", "--part", "re", "--n", "2", "--count", "3")
    assert code == 0
    doc = parse_json(out)
    assert doc.command == "eigs" and len(doc.results) == 3
    assert doc.results[0]["value"] == pytest.approx(0.1737041345, abs=1e-9)
    assert emit_json(doc) == out


def test_format_flag_after_subcommand(capsys):
    code, out, _ = run(capsys, "eigs", "--part", "re", "--n", "3", "--json")
    assert code == 0
    assert json.loads(out)["results"][0]["value"] == pytest.approx(1 / 48 + 5 ** 0.5 / 80)


def test_eigs_csv(capsys):
    code, out, _ = run(capsys, "--csv", "eigs", "--part", "re", "--n", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:2] == ["index", "value"]
    assert float(rows[1][1]) == 0.5
    assert "\r" not in out


def test_eigs_discretize_and_quasinilpotent(capsys):
    code, out, _ = run(capsys, "--json", "eigs", "--part", "re", "--n", "4", "--m", "200", "--count", "2")
    assert code == 0 and json.loads(out)["results"][0]["source"] == "discretized"
    code, out, _ = run(capsys, "--json", "eigs", "--part", "v", "--n", "1", "--m", "200")
    assert code == 0 and json.loads(out)["results"][0]["value"] == 0.0


@pytest.mark.parametrize("argv", [
    ["eigs", "--part", "re", "--n", "2", "--method", "pencil"],
    ["eigs", "--part", "re", "--n", "5", "--method", "analytic"],
    ["eigs", "--part", "im", "--n", "14", "--method", "pencil"],
    ["eigs", "--part", "v", "--n", "2", "--method", "pencil"],
    ["nrange", "--n", "2", "--out", "unused.csv"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eigs", "--part", "re", "--n", "0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_norms_exit_0_even_with_failing_bound(capsys):
    code, out, _ = run(capsys, "--json", "norms", "--n", "3", "--m", "300")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "fail"
    names = [c["name"] for c in doc["checks"] if not c["passed"]]
    assert any("Re V^3" in n for n in names)


def test_nrange_csv(tmp_path, capsys):
    out_file = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "nrange", "--n", "1", "--points", "16", "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["t", "x", "y_upper", "y_lower"]
    assert len(rows) == 18
    assert float(rows[1][1]) == 0.5


def test_accretive(capsys):
    code, out, _ = run(capsys, "--json", "accretive", "--a", "0", "--b", "-1")
    row = json.loads(out)["results"][0]
    assert code == 0 and row["accretive"] is False and row["witness"].startswith("Spike")
    code, out, _ = run(capsys, "--json", "accretive", "--a", "1", "--b", "-1")
    row = json.loads(out)["results"][0]
    assert row["accretive"] is True and row["resolvent_norm"] <= 1.0 + 1e-6


def test_deterministic_output(capsys):
    argv = ["--json", "nrange", "--n", "3", "--m", "200"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_report_round_trip():
    doc = ReportDoc("x", {"n": 2}, [{"v": 0.1}], [Check("c", 1.0, 1.0, 0.0, True)])
    assert parse_json(emit_json(doc)) == doc
    assert "status: pass" in emit_table(doc)
    assert emit_csv(doc).splitlines()[0] == "v,check,expected,actual,tol,relation,pass"


def test_check_requires_finite_tol():
    with pytest.raises(ValueError):
        Check("c", 1.0, 1.0, float("inf"), True)


def _only(monkeypatch, nums):
    monkeypatch.setattr(verify, "CRITERIA", [c for c in verify.CRITERIA if c[0] in nums])


def test_verify_subset_passes(monkeypatch, capsys):
    _only(monkeypatch, {1, 3, 11})
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "status: pass" in out


def test_verify_negative_control(monkeypatch, capsys):
    _only(monkeypatch, {1})
    original = verify.closed_form_spectra

    def tampered():
        spectra = original()
        spectra[2] = [0.15, -0.15]
        return spectra

    monkeypatch.setattr(verify, "closed_form_spectra", tampered)
    code, _, err = run(capsys, "verify")
    assert code == 1
    assert "pencil closed form n=2" in err
    assert "n=1" not in err
