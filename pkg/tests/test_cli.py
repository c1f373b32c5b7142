import csv
import io
import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from casimir_entropy import cli
from casimir_entropy.cli import ConfigError, Grid, ScenarioConfig, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestGrid:
    def test_range_inclusive(self):
        np.testing.assert_allclose(Grid("0:6:600").values(), np.linspace(0, 6, 600))

    def test_list(self):
        np.testing.assert_array_equal(Grid("0.5, 1,2").values(), [0.5, 1, 2])

    @pytest.mark.parametrize("text", ["0:1:1", "1:0:5", "0:1", "a:b:c", "", "1,x"])
    def test_rejects(self, text):
        with pytest.raises(ConfigError):
            Grid(text).values()


class TestConfig:
    def test_round_trip(self):
        cfg = ScenarioConfig("dce-nd", lengths=(1.0, 2.5), epsilon=0.01, time="0:10:5",
                             nmax=(11, 21), seed=7, output="json", beta_sign=-1)
        assert ScenarioConfig.from_text(cfg.to_text()) == cfg

    @given(
        lengths=st.lists(st.floats(1e-3, 1e3, allow_nan=False), min_size=2, max_size=3),
        eps=st.floats(0, 0.5),
        seed=st.integers(0, 2**31),
        trials=st.integers(1, 50),
    )
    def test_round_trip_property(self, lengths, eps, seed, trials):
        cfg = ScenarioConfig("lyapunov", lengths=tuple(lengths), epsilon=eps, seed=seed, trials=trials)
        assert ScenarioConfig.from_text(cfg.to_text()) == cfg

    def test_comments_and_blank_lines(self):
        text = "# header\nscenario = dce1d\n\ntau = 0:1:3   # grid\n"
        assert ScenarioConfig.from_text(text) == ScenarioConfig("dce1d", tau="0:1:3")

    @pytest.mark.parametrize("text", [
        "tau = 1",
        "scenario = nope",
        "scenario = dce1d\ncolour = red",
        "scenario = dce1d\nseed = x",
        "scenario = dce1d\nthis line has no equals",
        "scenario = dce1d\nepsilon = 2",
        "scenario = dce1d\nlengths = 1,-1",
        "scenario = dce1d\noutput = xml",
    ])
    def test_invalid(self, text):
        with pytest.raises(ConfigError):
            ScenarioConfig.from_text(text)

    def test_flags_override_file(self, tmp_path, capsys):
        f = tmp_path / "run.cfg"
        f.write_text("scenario = dce1d\ntau = 0:1:5\noutput = json\n")
        code, out, _ = run_cli(capsys, "dce1d", "--config", str(f), "--tau", "0:1:3")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["rows"]) == 3 and doc["config"]["tau"] == "0:1:3"

    def test_scenario_mismatch(self, tmp_path, capsys):
        f = tmp_path / "run.cfg"
        f.write_text("scenario = sumrules\n")
        code, _, err = run_cli(capsys, "dce1d", "--config", str(f))
        assert code == 2 and "sumrules" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run_cli(capsys, "dce1d", "--config", str(tmp_path / "absent.cfg"))
        assert code == 2


class TestFormats:
    def test_csv_layout(self, capsys):
        code, out, _ = run_cli(capsys, "dce1d", "--tau", "0:6:600")
        assert code == 0
        assert "\r" not in out and out.endswith("\n")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["tau", "renyi_exact", "renyi_asymp1", "renyi_asymp2", "entropy_exact", "entropy_asymp"]
        assert len(rows) == 601
        assert rows[1][1] == "0" and rows[1][2] == "nan"
        # 17 significant digits survive a float round trip exactly
        for cell in rows[300]:
            assert float(format(float(cell), ".17g")) == float(cell)
        assert float(rows[-1][0]) == 6.0

    def test_cell_format(self):
        assert cli._cell(0.1) == "0.10000000000000001"
        assert cli._cell(np.int64(3)) == "3"
        assert cli._cell(True) == "true"

    def test_json_layout(self, capsys):
        code, out, _ = run_cli(capsys, "sumrules", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"config", "columns", "rows"}
        assert doc["config"]["scenario"] == "sumrules"
        assert all(len(r) == len(doc["columns"]) for r in doc["rows"])

    def test_json_nonfinite_as_string(self, capsys):
        _, out, _ = run_cli(capsys, "dce1d", "--tau", "0,1", "--output", "json")
        assert json.loads(out)["rows"][0][2] == "nan"

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "t.csv"
        code, out, _ = run_cli(capsys, "dce1d", "--tau", "0:1:4", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_bytes().count(b"\n") == 5


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["dce1d", "--tau", "0:1:1"],
        ["dce1d", "--tau=-1,1"],
        ["dce-nd", "--L", "1"],
        ["dce-nd", "--epsilon", "1.5"],
        ["compare", "--L", "1,1", "--tau", "0.1", "--time", "0:10:3"],
        ["sumrules", "--nmax", "0"],
    ])
    def test_config_errors(self, capsys, argv):
        code, _, err = run_cli(capsys, *argv)
        assert code == 2 and err

    @pytest.mark.parametrize("argv", [["dce1d", "--bogus"], ["nonsense"], ["dce1d", "--beta-sign", "2"]])
    def test_argparse_errors(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

    def test_precision_loss_is_numeric_failure(self, capsys):
        # x = 33 is past the double-precision limit of the mixed subsystem
        code, _, err = run_cli(capsys, "dce-nd", "--time", "0:3000:3")
        assert code == 3 and "PrecisionLossError" in err

    def test_invariant_violation(self, capsys, monkeypatch):
        monkeypatch.setattr(cli.gaussian, "entropy_from_renyi_single_mode", lambda r: r - 1.0)
        code, _, err = run_cli(capsys, "dce1d", "--tau", "0:1:3")
        assert code == 3 and "S_A < R_A" in err

    def test_bad_thread_env(self, capsys, monkeypatch):
        monkeypatch.setenv("CASIMIR_THREADS", "many")
        code, _, _ = run_cli(capsys, "dce1d", "--tau", "0:1:3")
        assert code == 2


class TestScenarios:
    def test_dce_nd_columns(self, capsys):
        code, out, _ = run_cli(capsys, "dce-nd", "--time", "0:2000:9")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and list(rows[0]) == ["t", "x", "R_A", "S_A", "R_asymptote", "S_asymptote"]
        for r in rows:
            assert float(r["R_A"]) == pytest.approx(math.log(math.cosh(float(r["x"]))), abs=1e-10)

    def test_sumrules_decrease(self, capsys):
        _, out, _ = run_cli(capsys, "sumrules", "--tau", "0.5", "--nmax", "11,21,41", "--output", "json")
        doc = json.loads(out)
        res = [max(abs(v) for v in row[2:]) for row in doc["rows"]]
        assert res[0] > res[1] > res[2] and res[2] < 1e-3

    def test_mathieu(self, capsys):
        code, out, _ = run_cli(capsys, "mathieu", "--time", "0:90:4")
        assert code == 0 and len(out.splitlines()) == 5

    def test_lyapunov(self, capsys):
        code, out, _ = run_cli(capsys, "lyapunov", "--trials", "2", "--output", "json")
        rows = {r[0]: r for r in json.loads(out)["rows"]}
        for name in ("mathieu_mu", "lambda_1", "flow_growth_rate", "Lambda_mixed"):
            assert rows[name][2] == pytest.approx(1.0, abs=0.01)
        assert rows["Lambda_resonant_alone"][1] == pytest.approx(0.0, abs=1e-12)
        assert "Lambda_random_1" in rows

    def test_oracle_and_compare_static(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--epsilon", "0", "--N", "4")
        rows = list(csv.reader(io.StringIO(out)))[1:]
        assert code == 0
        assert all(float(r[1]) < 1e-9 for r in rows)


def _subprocess_run(args, threads):
    env = dict(os.environ, CASIMIR_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "casimir_entropy", *args],
                          capture_output=True, env=env, check=True).stdout


@pytest.mark.parametrize("args", [
    ["dce1d", "--tau", "0:6:60"],
    ["lyapunov", "--trials", "4", "--seed", "11"],
])
def test_byte_identical_across_runs_and_threads(args):
    a = _subprocess_run(args, 1)
    b = _subprocess_run(args, 4)
    c = _subprocess_run(args, 4)
    assert a == b == c


def test_seed_changes_random_trials(capsys):
    _, a, _ = run_cli(capsys, "lyapunov", "--trials", "2", "--seed", "1")
    _, b, _ = run_cli(capsys, "lyapunov", "--trials", "2", "--seed", "2")
    assert a != b
