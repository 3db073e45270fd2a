import json
import subprocess
import sys
from pathlib import Path

from skpval.cli import run_command

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = run_command([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestEval:
    def test_golden_value(self, capsys):
        code, report = run(
            capsys, "eval", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X1^2-X0^3",
        )
        assert code == 0
        assert report["status"] == "ok"
        assert report["result"]["value"] == ["9"]
        assert report["result"]["value_str"] == "9"

    def test_alpha_restriction(self, capsys):
        code, report = run(
            capsys, "eval", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X1^2", "--alpha", "1,2",
        )
        assert code == 0
        assert report["result"]["value"] == ["6"]

    def test_bad_poly_is_malformed_input(self, capsys):
        code, report = run(
            capsys, "eval", "--skp", DATA / "remark_diffskp.json", "--poly", "X9+",
        )
        assert code == 2
        assert report["status"] == "error"
        assert report["diagnostics"]


class TestValidate:
    def test_ok_table(self, capsys):
        code, report = run(capsys, "validate", DATA / "remark_diffskp.json")
        assert code == 0
        assert report["result"]["validation"]["sequence_of_values"]

    def test_empty_rows_schema_failure(self, capsys):
        code, report = run(capsys, "validate", DATA / "empty_rows.json")
        assert code == 2
        assert report["status"] == "error"

    def test_domain_failure(self, capsys):
        code, report = run(capsys, "validate", DATA / "bad_increase.json")
        assert code == 1
        assert report["status"] == "invalid"
        checks = report["result"]["validation"]["checks"]
        assert any(c["check"] == "increasing" and not c["ok"] for c in checks)

    def test_missing_file(self, capsys):
        code, report = run(capsys, "validate", DATA / "nope.json")
        assert code == 2


class TestBuild:
    def test_golden_polys(self, capsys):
        code, report = run(capsys, "build", DATA / "remark_diffskp.json")
        entries = report["result"]["skp"]["entries"]
        assert entries["1,2"]["poly"] == "X1^2 - X0^3"
        assert entries["1,3"]["poly"] == "X1^2 - X0^3*X1 - X0^3"
        assert entries["1,3"]["n"] == 1

    def test_limit_tail_unroll(self, capsys):
        code, report = run(capsys, "build", DATA / "example1_tail.json")
        assert code == 0
        entry = report["result"]["skp"]["entries"]["2,2"]
        assert entry["poly"] == "X2 - X0^3*X1^2 - X0^2*X1^2 - X0*X1^2"
        assert entry["unroll"]["stabilized"]

    def test_minimal_flag(self, capsys):
        code, report = run(capsys, "build", DATA / "remark_diffskp.json", "--minimal")
        reduced = report["result"]["minimal_pseudo"]["entries"]
        assert set(reduced) == {"0,1", "1,1", "1,2"}

    def test_theta_from_file(self, capsys):
        code, report = run(capsys, "build", DATA / "swapped_diffskp.json")
        entries = report["result"]["skp"]["entries"]
        assert entries["1,2"]["poly"] == "X1^3 - X0^2"
        assert entries["1,3"]["poly"] == "X1^3 + X0^3 - X0^2"

    def test_rational_values_from_file(self, capsys):
        code, report = run(
            capsys, "eval", "--skp", DATA / "example2.json", "--poly", "X1^2",
        )
        assert report["result"]["value"] == ["1"]


class TestExpandAndForms:
    def test_expand(self, capsys):
        code, report = run(
            capsys, "expand", DATA / "remark_diffskp.json",
            "--poly", "X1^2", "--alpha", "1,3",
        )
        assert code == 0
        # sorted by the per-variable degree vector, lexicographically
        assert report["result"]["expansion"] == [
            {"coeff": "1", "exponents": {"1,3": 1}},
            {"coeff": "1", "exponents": {"0,1": 3}},
            {"coeff": "1", "exponents": {"0,1": 3, "1,1": 1}},
        ]

    def test_initial(self, capsys):
        code, report = run(
            capsys, "initial", "--skp", DATA / "remark_diffskp.json", "--poly", "X1^2",
        )
        assert report["result"]["initial_form"] == [
            {"coeff": "1", "exponents": {"0,1": 3}}
        ]

    def test_delta(self, capsys):
        code, report = run(
            capsys, "delta", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X1^2-X0^3", "--j", "2",
        )
        assert report["result"]["delta"] == 1

    def test_normal_form(self, capsys):
        code, report = run(
            capsys, "normal-form", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X0^2",
        )
        assert code == 0
        assert report["result"]["normal_form"]["J"] == {"0,1": 2}


class TestClassify:
    def test_table_lookup(self, capsys):
        code, report = run(capsys, "classify", DATA / "classify_vii.json")
        got = report["result"]["classification"]
        assert (got["rk"], got["r_rk"], got["tr_deg"]) == (3, 3, 0)
        assert got["table1_row"] == "VII_1"
        assert got["abhyankar"]

    def test_inductive_on_skp(self, capsys):
        code, report = run(capsys, "classify", DATA / "remark_diffskp.json")
        got = report["result"]["invariants"]
        assert (got["rk"], got["r_rk"], got["tr_deg"]) == (1, 1, 1)


class TestRealize:
    def test_corrected_with_verify(self, capsys):
        code, report = run(
            capsys, "realize", "--mode", "corrected", "--verify",
            "--samples", "40", DATA / "gamma_4_6_13.json",
        )
        assert code == 0
        payload = report["result"]["realization"]
        assert payload["verification"]["passed"]
        assert payload["blocks"]["blocks"] == [[1], [2, 3]]

    def test_literal_rejected(self, capsys):
        code, report = run(
            capsys, "realize", "--mode", "literal", DATA / "gamma_4_6_13.json",
        )
        assert code == 1
        assert report["status"] == "invalid"
        validation = report["diagnostics"][0]["validation"]
        bad = [
            c for c in validation["checks"]
            if c["check"] == "interior-finite" and not c["ok"]
        ]
        assert [c["index"] for c in bad] == ["1,1"]

    def test_verify_subcommand(self, capsys):
        code, report = run(
            capsys, "verify", "--samples", "30", DATA / "free_pair.json",
        )
        assert code == 0
        assert report["result"]["realization"]["verification"]["passed"]


class TestReportShape:
    def test_deterministic_bytes(self, capsys):
        argv = ["eval", "--skp", str(DATA / "remark_diffskp.json"), "--poly", "X1^2"]
        run_command(argv)
        first = capsys.readouterr().out
        run_command(argv)
        second = capsys.readouterr().out
        assert first == second

    def test_digest_and_version(self, capsys):
        code, report = run(capsys, "validate", DATA / "remark_diffskp.json")
        assert report["input_digest"].startswith("sha256:")
        assert report["tool"] == "skpval"
        assert "version" in report

    def test_out_flag(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = run_command(
            ["--out", str(out), "validate", str(DATA / "remark_diffskp.json")]
        )
        assert code == 0
        assert json.loads(out.read_text())["status"] == "ok"

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "skpval.cli", "validate",
             str(DATA / "remark_diffskp.json")],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["status"] == "ok"

    def test_bad_alpha_is_malformed_input(self, capsys):
        code, report = run(
            capsys, "eval", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X1", "--alpha", "9,9",
        )
        assert code == 2
        assert report["diagnostics"][0]["kind"] == "value"

    def test_bad_delta_cutoff(self, capsys):
        code, report = run(
            capsys, "delta", "--skp", DATA / "remark_diffskp.json",
            "--poly", "X1", "--j", "7",
        )
        assert code == 2

    def test_seed_recorded(self, capsys):
        code, report = run(
            capsys, "--seed", "7", "verify", "--samples", "10",
            DATA / "free_pair.json",
        )
        assert report["seed"] == 7
        assert report["result"]["realization"]["verification"]["seed"] == 7
