import json

import pytest

from shiftwalk import BitVector, DrivingSequence, q2, simulate
from shiftwalk.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_matrix_order_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "matrix-order",
                               "--n-max", "64", "--seed", "1")
        assert code == 0
        assert "[PASS]" in out and "FAIL" not in out

    def test_json_report(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, _, _ = run_cli(capsys, "verify", "q2-exact", "--n-max", "8",
                             "--seed", "2", "--format", "json",
                             "--out", str(out_file))
        assert code == 0
        report = json.loads(out_file.read_text())
        assert report["schema_version"] == 1
        assert report["passed"] is True
        assert report["suite"] == "q2-exact"
        assert all("observed" in c for c in report["checks"])

    def test_unknown_suite_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "everything"])
        assert exc.value.code == 2

    def test_failed_checks_exit_one(self, capsys, monkeypatch):
        from shiftwalk import suites

        def fake(**kwargs):
            return [suites.CheckResult(name="forced failure", passed=False,
                                       observed={"value": 3})]

        monkeypatch.setitem(suites.SUITES, "moments", fake)
        code, out, _ = run_cli(capsys, "verify", "moments", "--seed", "1")
        assert code == 1
        assert "[FAIL] forced failure" in out

    def test_all_suites_serialize(self, capsys, tmp_path):
        out_file = tmp_path / "all.json"
        code, _, _ = run_cli(capsys, "verify", "all", "--n-max", "32",
                             "--trials", "500", "--samples", "500",
                             "--seed", "4", "--format", "json",
                             "--out", str(out_file))
        assert code == 0
        report = json.loads(out_file.read_text())
        names = [c["name"] for c in report["checks"]]
        assert len(names) == len(set(names)) and len(names) >= 15


class TestProfile:
    def test_csv_columns_and_bounds(self, capsys):
        code, out, _ = run_cli(
            capsys, "profile", "--chain", "q1", "--n", "10", "--t", "0..12",
            "--samples", "1000", "--seed", "5",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# shiftwalk profile schema_version=1")
        header = lines[1].split(",")
        assert header == ["t", "tv_exact", "tv_upper", "tv_lower_emp",
                          "tv_lower_emp_se", "chebyshev_lower"]
        rows = {}
        for line in lines[2:]:
            cells = dict(zip(header, line.split(",")))
            rows[int(cells["t"])] = cells
        # the exact column collapses right after t = n, below the bound
        assert float(rows[11]["tv_exact"]) <= 0.2
        assert float(rows[11]["tv_exact"]) <= float(rows[11]["tv_upper"]) + 1e-12
        assert rows[10]["tv_upper"] == ""
        # sandwich: empirical lower bound minus 3 SE stays below exact
        for t, cells in rows.items():
            if cells["tv_lower_emp"] and cells["tv_exact"]:
                low = float(cells["tv_lower_emp"]) - 3 * float(cells["tv_lower_emp_se"])
                assert low <= float(cells["tv_exact"]) + 1e-12

    def test_q2_profile_hits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "profile", "--chain", "q2", "--n", "12",
                               "--t", "12", "--seed", "1")
        assert code == 0
        last = out.strip().splitlines()[-1].split(",")
        assert int(last[0]) == 12
        assert float(last[1]) <= 1e-12

    def test_json_metadata(self, capsys):
        code, out, _ = run_cli(capsys, "profile", "--chain", "q1", "--n", "6",
                               "--t", "7", "--seed", "9", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["schema_version"] == 1
        assert report["versions"]["shiftwalk"]
        assert report["rows"][0]["t"] == 7

    def test_deterministic_output(self, capsys):
        args = ("profile", "--chain", "q1", "--n", "8", "--t", "0..9",
                "--samples", "500", "--seed", "3")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_bad_range_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "profile", "--chain", "q1", "--n", "8",
                               "--t", "9..3", "--seed", "1")
        assert code == 2
        assert "error" in err

    def test_chebyshev_column_appears_when_window_is_positive(self, capsys):
        # n = 10^6, alpha = 0.9, c = 5: window delta ~ 41, t = 748811
        code, out, _ = run_cli(capsys, "profile", "--chain", "q1",
                               "--n", "1000000", "--t", "748811",
                               "--alpha", "0.9", "--c", "5", "--seed", "1",
                               "--format", "json")
        assert code == 0
        row = json.loads(out)["rows"][0]
        assert row["chebyshev_lower"] == pytest.approx(0.987643918422881,
                                                       rel=1e-12)


class TestSample:
    def test_deterministic_lines(self, capsys):
        code, out1, _ = run_cli(capsys, "sample", "--n", "8", "--count", "3",
                                "--seed", "7")
        assert code == 0
        _, out2, _ = run_cli(capsys, "sample", "--n", "8", "--count", "3",
                             "--seed", "7")
        assert out1 == out2
        lines = out1.strip().splitlines()
        assert len(lines) == 3
        assert all(len(line) == 8 and set(line) <= {"0", "1"} for line in lines)

    def test_hex_output(self, capsys):
        code, out, _ = run_cli(capsys, "sample", "--n", "8", "--count", "2",
                               "--seed", "7", "--hex")
        lines = out.strip().splitlines()
        assert all(len(line) == 2 for line in lines)

    def test_odd_length_rejected(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--n", "7", "--seed", "1")
        assert code == 2
        assert "even" in err

    def test_missing_seed_is_drawn_and_printed(self, capsys):
        code, out, err = run_cli(capsys, "sample", "--n", "6")
        assert code == 0
        assert err.startswith("seed: ")


class TestSolveAndSimulate:
    def test_solve_round_trip(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--from", "000000",
                               "--to", "101010")
        assert code == 0
        bits = tuple(int(b) for b in out.strip())
        driving = DrivingSequence((3,) * 6, bits)
        final = simulate(q2(6), BitVector.zeros(6), driving)[-1]
        assert final.to_string() == "101010"

    def test_simulate_row_count(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--chain", "q1", "--n", "6",
                               "--t", "7", "--seed", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1] == "t,state,weight"
        assert len(lines) == 2 + 8  # comment, header, t = 0..7

    def test_simulate_states_have_declared_weight(self, capsys):
        _, out, _ = run_cli(capsys, "simulate", "--chain", "q2", "--n", "8",
                            "--t", "8", "--seed", "2")
        for line in out.strip().splitlines()[2:]:
            _, state, weight = line.split(",")
            assert state.count("1") == int(weight)


class TestVersionFlag:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
