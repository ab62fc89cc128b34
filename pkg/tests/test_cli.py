import os
import subprocess
import sys

import pytest

from phasenorm.cli import main
from phasenorm.quantifier import classify


def run_cli(*args, **kwargs):
    return subprocess.run([sys.executable, "-m", "phasenorm", *args],
                          capture_output=True, text=True, **kwargs)


class TestBaselineCommand:
    def test_default_line(self):
        proc = run_cli("baseline")
        assert proc.returncode == 0
        fields = proc.stdout.strip().split(",")
        assert fields[0] == "baseline"
        assert fields[1] == "0.7698004"
        assert float(fields[2]) <= 1e-7

    def test_husimi(self):
        proc = run_cli("baseline", "--s", "-1")
        assert proc.returncode == 0
        assert proc.stdout.strip().split(",")[1] == "0.5"

    def test_p2(self):
        proc = run_cli("baseline", "--p", "2", "--tol", "1e-6")
        assert proc.returncode == 0
        assert proc.stdout.strip().split(",")[1] == "0.5773503"

    def test_invalid_s_usage_error(self):
        assert run_cli("baseline", "--s", "0.5").returncode == 2

    def test_invalid_p_usage_error(self):
        assert run_cli("baseline", "--p", "0.5").returncode == 2

    def test_numpy_fallback_backend(self):
        env = dict(os.environ, PHASENORM_KERNELS="python")
        proc = subprocess.run(
            [sys.executable, "-c",
             "import phasenorm; print(phasenorm.KERNEL_BACKEND); "
             "print(phasenorm.wigner_negativity(phasenorm.number_state(1), 1e-7))"],
            capture_output=True, text=True, env=env)
        lines = proc.stdout.split()
        assert lines[0] == "numpy"
        assert abs(float(lines[1]) - 0.4261226388505319) < 1e-6


class TestSweepCommand:
    def test_rows_and_classification_recompute(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--nbar", "1", "--r-min", "0", "--r-max", "1.2",
                     "--steps", "7", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "r,n_value,err,baseline,m_value,quantum_by_variance,classification"
        assert len(lines) == 8
        rs = []
        for line in lines[1:]:
            r, n, err, base, m, flag, cls = line.split(",")
            rs.append(float(r))
            assert classify(float(m), float(err), bool(int(flag))) == cls
            assert abs(float(m) - (float(n) - float(base))) <= 1e-6
        assert rs == sorted(rs)

    def test_unwritable_out(self):
        proc = run_cli("sweep", "--steps", "2", "--r-max", "0.1",
                       "--out", "/nonexistent-dir/x.csv")
        assert proc.returncode == 1
        assert "cannot write" in proc.stderr

    def test_bad_steps_usage_error(self):
        proc = run_cli("sweep", "--steps", "1", "--out", "/tmp/x.csv")
        assert proc.returncode == 2

    def test_bad_range_usage_error(self):
        proc = run_cli("sweep", "--r-min", "1.0", "--r-max", "0.5",
                       "--out", "/tmp/x.csv")
        assert proc.returncode == 2


class TestCrossingCommand:
    def test_nbar1_crossing_in_paper_window(self, capsys):
        assert main(["crossing", "--nbar", "1"]) == 0
        out = capsys.readouterr().out.splitlines()
        onset = float(out[0].split(",")[1])
        assert onset == pytest.approx(0.5493061, abs=1e-6)
        fields = out[1].split(",")
        assert fields[0] == "crossing"
        r_star = float(fields[1])
        assert 0.90 <= r_star <= 1.00
        m_lo, m_hi = float(fields[2]), float(fields[3])
        assert m_lo <= 0.0 <= m_hi

    def test_nbar0_has_no_crossing(self, capsys):
        # the measure of pure squeezed vacuum is positive for every r > 0
        # (verified against brute-force quadrature), so there is no sign
        # change to bisect and the command reports the failure
        assert main(["crossing", "--nbar", "0"]) == 1
        err = capsys.readouterr().err
        assert "no certified sign change" in err


class TestMixturesCommand:
    def test_rows_normalized_and_deterministic(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        args = ["mixtures", "--count", "12", "--seed", "7", "--out"]
        assert main(args + [str(out1)]) == 0
        assert main(args + [str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        lines = out1.read_text().splitlines()
        assert lines[0] == ("p0,p1,p2,n_value,m_value,wigner_negativity,"
                            "classification,seed_index")
        assert len(lines) == 13
        for line in lines[1:]:
            parts = line.split(",")
            assert sum(float(x) for x in parts[:3]) == pytest.approx(1.0, abs=1e-6)

    def test_corners(self, tmp_path):
        out = tmp_path / "c.csv"
        assert main(["mixtures", "--count", "1", "--seed", "3",
                     "--include-corners", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 5
        corners = {line.split(",")[-1]: line.split(",") for line in lines[2:]}
        assert corners["-1"][6] == "classical_consistent"
        assert corners["-2"][6] == "certified_quantum"
        assert corners["-2"][5] == "0.4261226"
        assert corners["-3"][6] == "certified_quantum"

    def test_bad_count_usage_error(self):
        assert run_cli("mixtures", "--count", "0", "--out", "/tmp/x.csv").returncode == 2


class TestVerifyCommand:
    def test_oracle_suite_passes(self, capsys):
        assert main(["verify", "--suite", "oracles"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert all(line.startswith("PASS,") for line in out[:-1])
        assert out[-1].startswith("summary,pass=")
        assert ",fail=0" in out[-1]
