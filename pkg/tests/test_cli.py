import json

import pytest

from hardylab.cli import main

REQUIRED_VERDICT_KEYS = {
    "claim",
    "paper_ref",
    "holds",
    "min_slack",
    "first_failure",
    "exploratory",
}


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestExitCodes:
    def test_holding_check_exits_zero(self, capsys):
        status, out, _ = run_cli(
            capsys, "check-knopp", "--p", "2", "--alpha", "0", "--U", "4",
            "--n-max", "500"
        )
        assert status == 0
        assert "holds" in out

    def test_failing_check_exits_one(self, capsys):
        status, out, _ = run_cli(capsys, "check-2-30", "--p", "1.05", "--n-max", "50")
        assert status == 1
        assert "FAILS" in out

    def test_invalid_exponent_exits_two(self, capsys):
        status, _, err = run_cli(capsys, "check-knopp", "--p", "1")
        assert status == 2
        assert "error" in err

    def test_missing_parameter_exits_two(self, capsys):
        status, _, err = run_cli(capsys, "check-2-20", "--alpha", "0.5")
        assert status == 2

    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_bad_tolerance_exits_two(self, capsys):
        status, _, err = run_cli(
            capsys, "check-knopp", "--p", "2", "--tol-rel", "-1"
        )
        assert status == 2


class TestJsonReports:
    def test_schema_keys(self, capsys):
        status, out, _ = run_cli(
            capsys, "check-2-20", "--p", "2", "--alpha", "0.3",
            "--n-max", "200", "--format", "json"
        )
        assert status == 0
        payload = json.loads(out)
        assert {"command", "params", "n_max", "verdicts", "wall_time"} <= set(payload)
        for verdict in payload["verdicts"]:
            assert REQUIRED_VERDICT_KEYS <= set(verdict)

    def test_nonfinite_slack_serializes_as_null(self, capsys):
        # a constant auxiliary sequence zeroes the bracket, so the slack is
        # -inf, which strict JSON cannot carry
        status, out, _ = run_cli(
            capsys, "check-knopp", "--p", "2", "--alpha", "0.5", "--U", "2.25",
            "--n-max", "20", "--format", "json"
        )
        assert status == 1
        payload = json.loads(out)
        verdict = payload["verdicts"][0]
        assert verdict["min_slack"] is None
        assert verdict["first_failure"] == 1

    def test_determinism_modulo_wall_time(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            status = main(
                ["norm-ratio", "--kind", "copson-tail", "--family", "random",
                 "--p", "0.5", "--n-max", "300", "--seed", "99",
                 "--format", "json", "--out", str(path)]
            )
            assert status == 0
        texts = []
        for path in paths:
            lines = [
                line for line in path.read_text().splitlines()
                if '"wall_time"' not in line
            ]
            texts.append("\n".join(lines))
        assert texts[0] == texts[1]
        capsys.readouterr()

    def test_solver_values_in_report(self, capsys):
        status, out, _ = run_cli(
            capsys, "redheffer-solve", "--c", "2.5", "--n-max", "2000",
            "--format", "json"
        )
        assert status == 0
        payload = json.loads(out)
        values = {v["claim"]: v["value"] for v in payload["verdicts"]}
        assert values["x"] == pytest.approx(0.2435, abs=5e-4)
        assert values["beta"] == pytest.approx(0.3912, abs=5e-4)
        assert values["k"] == pytest.approx(1.1151, abs=1e-3)
        assert values["reciprocal"] > 0.8967


class TestCsvReports:
    def test_verdict_rows(self, capsys):
        status, out, _ = run_cli(
            capsys, "check-2-4", "--p", "3", "--format", "csv"
        )
        assert status == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("claim,paper_ref,holds")
        assert len(lines) == 2

    def test_scan_rows_are_flattened(self, capsys):
        status, out, _ = run_cli(
            capsys, "redheffer-scan", "--p", "0.45", "--n-max", "100",
            "--format", "csv"
        )
        assert status == 0
        lines = out.strip().splitlines()
        # one summary verdict plus one row per grid point (claims containing
        # commas come back quoted)
        assert len(lines) > 1000
        assert any("scan-point[" in line for line in lines[1:5])


class TestSubcommandSurface:
    @pytest.mark.parametrize(
        "argv",
        [
            ["check-reverse", "--p", "0.25", "--n-max", "300"],
            ["check-2-3", "--p", "2", "--alpha", "1.0", "--n-max", "200"],
            ["redheffer-check", "--p", "0.5", "--c", "2.5", "--beta", "0.3912",
             "--n-max", "200"],
            ["redheffer-scan", "--p", "0.34", "--n-max", "200"],
            ["norm-ratio", "--kind", "weighted-mean", "--alpha", "1.0",
             "--family", "delta", "--p", "2", "--n-max", "500"],
            ["extremal-search", "--kind", "copson-tail", "--p", "0.3333333",
             "--n-max", "2000"],
        ],
    )
    def test_commands_run_clean(self, capsys, argv):
        status = main(argv)
        capsys.readouterr()
        assert status == 0

    def test_verify_paper_smoke(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify-paper", "--n-max", "300", "--format", "json"
        )
        payload = json.loads(out)
        failing = [v["claim"] for v in payload["verdicts"] if not v["holds"]]
        # the extremal bracket target is out of reach at its pinned horizon;
        # everything else must hold
        assert failing == ["7.2-cesaro-extremal"]
        assert status == 1
        assert len(payload["verdicts"]) > 40
        assert payload["verdicts"] == sorted(
            payload["verdicts"], key=lambda v: v["claim"]
        )
