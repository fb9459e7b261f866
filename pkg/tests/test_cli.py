import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qstarlike.cli import EXIT_ERROR, EXIT_FINDINGS, EXIT_OK, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_function(path, taylor, order=None):
    order = order or len(taylor)
    coeffs = list(taylor) + [0.0] * (order - len(taylor))
    path.write_text(json.dumps({
        "order": order,
        "coeffs": [[float(c), 0.0] for c in coeffs],
    }))
    return str(path)


class TestQnum:
    def test_symmetric_hand_value(self, capsys):
        code, out, _ = run_cli(capsys, "qnum", "--n", "3", "--q", "0.5", "--symmetric")
        assert code == EXIT_OK
        assert out.strip() == "5.25"

    def test_plain_q_number(self, capsys):
        code, out, _ = run_cli(capsys, "qnum", "--n", "3", "--q", "0.5")
        assert code == EXIT_OK
        assert out.strip() == "1.75"

    def test_json_format(self, capsys):
        code, out, _ = run_cli(capsys, "qnum", "--n", "2", "--q", "0.5",
                               "--symmetric", "--format", "json")
        doc = json.loads(out)
        assert doc["value"] == 2.5
        assert doc["params"]["symmetric"] is True
        assert doc["version"]

    def test_csv_matches_json(self, capsys):
        _, json_out, _ = run_cli(capsys, "qnum", "--n", "2", "--q", "0.5",
                                 "--symmetric", "--format", "json")
        _, csv_out, _ = run_cli(capsys, "qnum", "--n", "2", "--q", "0.5",
                                "--symmetric", "--format", "csv")
        doc = json.loads(json_out)
        row = next(csv.DictReader(io.StringIO(csv_out)))
        assert float(row["value"]) == doc["value"]
        assert float(row["params.q"]) == doc["params"]["q"]

    def test_missing_flag_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "qnum", "--n", "3")
        assert code == EXIT_ERROR
        assert "--q" in err

    def test_out_of_range_q(self, capsys):
        code, _, err = run_cli(capsys, "qnum", "--n", "3", "--q", "1.5")
        assert code == EXIT_ERROR
        assert "--q" in err

    def test_conditioning_warning(self, capsys):
        code, _, err = run_cli(capsys, "qnum", "--n", "2", "--q", "1e-4", "--symmetric")
        assert code == EXIT_OK
        assert "warning" in err


class TestDeriv:
    def test_symmetric_derivative_file(self, capsys, tmp_path):
        fpath = write_function(tmp_path / "f.json", [1.0, 1.0])
        code, out, _ = run_cli(capsys, "deriv", "--in", fpath, "--q", "0.5",
                               "--symmetric", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["kind"] == "derivative"
        assert doc["coeffs"][0] == [1.0, 0.0]
        assert doc["coeffs"][1] == [2.5, 0.0]

    def test_plain_derivative(self, capsys, tmp_path):
        fpath = write_function(tmp_path / "f.json", [1.0, 1.0])
        code, out, _ = run_cli(capsys, "deriv", "--in", fpath, "--q", "0.5",
                               "--format", "json")
        doc = json.loads(out)
        assert doc["coeffs"][1] == [1.5, 0.0]

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "deriv", "--in", str(tmp_path / "nope.json"),
                               "--q", "0.5")
        assert code == EXIT_ERROR


class TestMemberAndExtremal:
    def test_identity_is_inconclusive_exit_zero(self, capsys, tmp_path):
        fpath = write_function(tmp_path / "f.json", [1.0], order=4)
        code, out, _ = run_cli(capsys, "member", "--in", fpath, "--q", "0.5",
                               "--k", "1", "--alpha", "0", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["sampled"]["certified"] == "inconclusive"
        assert doc["sampled"]["margin"] == pytest.approx(1.0, abs=1e-12)
        assert doc["sufficient"]["margin"] == pytest.approx(1.0, abs=1e-15)

    def test_extremal_roundtrip_margin_zero(self, capsys, tmp_path):
        out_path = tmp_path / "f2.json"
        code, out, _ = run_cli(capsys, "extremal", "--n", "2", "--q", "0.5",
                               "--k", "1", "--alpha", "0",
                               "--format", "json", "--out", str(out_path))
        assert code == EXIT_OK
        doc = json.loads(out_path.read_text())
        assert doc["coeffs"][0] == [1.0, 0.0]
        assert doc["coeffs"][1] == [-0.25, 0.0]
        code, out, _ = run_cli(capsys, "member", "--in", str(out_path), "--q", "0.5",
                               "--k", "1", "--alpha", "0", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert abs(doc["sufficient"]["margin"]) < 1e-12
        assert doc["t_form"]["certified"] == "member-iff-negative"

    def test_witness_exit_code(self, capsys, tmp_path):
        fpath = write_function(tmp_path / "fat.json", [1.0, -0.9], order=8)
        # negative-coefficient form that badly violates the budget
        code, out, _ = run_cli(capsys, "member", "--in", fpath, "--q", "0.5",
                               "--k", "1", "--alpha", "0", "--format", "json")
        assert code == EXIT_FINDINGS
        doc = json.loads(out)
        assert doc["t_form"]["certified"] == "not-member-witness"


class TestScalarVerbs:
    def test_distortion(self, capsys):
        code, out, _ = run_cli(capsys, "distortion", "--r", "0.5", "--q", "0.5",
                               "--k", "1", "--alpha", "0", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["upper"] == pytest.approx(0.5 + 0.25 * 0.25)
        assert doc["derivative_upper"] == pytest.approx(1.25)

    def test_decompose(self, capsys, tmp_path):
        out_path = tmp_path / "f2.json"
        run_cli(capsys, "extremal", "--n", "2", "--q", "0.5", "--k", "1",
                "--alpha", "0", "--format", "json", "--out", str(out_path))
        code, out, _ = run_cli(capsys, "decompose", "--in", str(out_path),
                               "--q", "0.5", "--k", "1", "--alpha", "0",
                               "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["lambdas"][1] == pytest.approx(1.0, abs=1e-12)

    def test_hankel_bound(self, capsys):
        code, out, _ = run_cli(capsys, "hankel-bound", "--q", "1", "--k", "0",
                               "--alpha", "0", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["bound"] == pytest.approx(7.0)
        assert doc["quantities"]["V"] == pytest.approx(84.0)

    def test_fs_bound(self, capsys):
        code, out, _ = run_cli(capsys, "fs-bound", "--mu", "0", "--q", "1",
                               "--k", "0", "--alpha", "0", "--format", "json")
        doc = json.loads(out)
        assert doc["bound"] == pytest.approx(3.0)
        assert doc["bound_real_branch"] == pytest.approx(3.0)
        assert doc["breakpoint"] == pytest.approx(0.5)

    def test_user_conic_flags(self, capsys):
        code, out, _ = run_cli(capsys, "fs-bound", "--mu", "0", "--q", "1",
                               "--k", "2", "--alpha", "0",
                               "--P1", "2", "--P2", "2", "--P3", "2",
                               "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["bound"] == pytest.approx(3.0)
        assert doc["params"]["provenance"] == "user"

    def test_unsupported_regime_without_user_conic(self, capsys):
        code, _, err = run_cli(capsys, "fs-bound", "--mu", "0", "--q", "1",
                               "--k", "2", "--alpha", "0")
        assert code == EXIT_ERROR
        assert "k=2" in err

    def test_conic_file(self, capsys, tmp_path):
        conic = tmp_path / "p.json"
        conic.write_text(json.dumps({"P": [2.0, 2.0, 2.0]}))
        code, out, _ = run_cli(capsys, "hankel-bound", "--q", "1", "--k", "3",
                               "--alpha", "0", "--conic", str(conic),
                               "--format", "json")
        assert code == EXIT_OK
        assert json.loads(out)["bound"] == pytest.approx(7.0)


class TestOracleVerb:
    def test_h2_oracle_small_grid(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--which", "h2", "--q", "1", "--k", "0", "--alpha", "0",
            "--nB", "17", "--nRho", "9", "--nPhi", "12", "--nZeta", "8",
            "--refine", "1", "--format", "json",
        )
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["max"] == pytest.approx(1.0, abs=1e-2)
        assert len(doc["levels"]) == 2

    def test_fs_oracle_requires_mu(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--which", "fs", "--q", "1",
                               "--k", "0", "--alpha", "0")
        assert code == EXIT_ERROR
        assert "--mu" in err

    def test_phase_scan(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--which", "h2", "--q", "0.8", "--k", "0", "--alpha", "0",
            "--nB", "9", "--nRho", "8", "--nPhi", "8", "--nZeta", "8",
            "--refine", "0", "--phase-scan", "--format", "json",
        )
        assert code == EXIT_OK
        assert "phase_diagnostic" in json.loads(out)


class TestLedgerVerb:
    def test_single_point_with_reports(self, capsys, tmp_path):
        points = tmp_path / "points.json"
        points.write_text(json.dumps([{"q": 1.0, "k": 0.0, "alpha": 0.0}]))
        json_out = tmp_path / "report.json"
        csv_out = tmp_path / "report.csv"
        code, out, _ = run_cli(
            capsys, "ledger", "--points", str(points),
            "--nB", "17", "--nRho", "9", "--nPhi", "12", "--nZeta", "8", "--refine", "1",
            "--json-out", str(json_out), "--csv-out", str(csv_out),
        )
        assert code == EXIT_FINDINGS  # printed shortcut rows violate by design
        assert "violated" in out
        doc = json.loads(json_out.read_text())
        with open(csv_out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == len(doc["records"])
        by_claim = {r["claim"]: r for r in rows}
        rec = by_claim["second-hankel-bound"]
        json_rec = next(r for r in doc["records"] if r["claim"] == "second-hankel-bound")
        assert float(rec["bound"]) == json_rec["bound"] == pytest.approx(7.0)

    def test_malformed_points_file(self, capsys, tmp_path):
        points = tmp_path / "points.json"
        points.write_text(json.dumps({"q": 1.0}))
        code, _, err = run_cli(capsys, "ledger", "--points", str(points))
        assert code == EXIT_ERROR
        assert "--points" in err


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qstarlike", "qnum", "--n", "3", "--q", "0.5",
             "--symmetric"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "5.25"

    def test_version_flag(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qstarlike", "--version"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("qstarlike ")

    def test_unknown_flag_is_usage_error(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qstarlike", "qnum", "--frobnicate"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 1
