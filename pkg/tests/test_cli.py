"""End-to-end CLI behavior: CSV contracts, exit codes, determinism."""

import csv
import math
import subprocess
import sys
from pathlib import Path

import pytest

FIGURE_HEADER = (
    "kappa,h,lambda0,lambda2,int_psi0,int_psi2,norm_psi0,norm_psi2,unstable"
)
TRANSVERSE_HEADER = "kappa,k0,kernel_dim,sigma,k_of_sigma,residual,K2"


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "ellwaves.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestFigure:
    def test_figure1_sweep(self, tmp_path):
        out = tmp_path / "fig1.csv"
        proc = run_cli(
            "figure", "1", "--kappa-min", "0.05", "--kappa-max", "0.95",
            "--steps", "19", "--out", str(out),
        )
        assert proc.returncode == 0
        rows = read_csv(out)
        assert ",".join(rows[0]) == FIGURE_HEADER
        assert len(rows) == 20  # header + 19 sweep points
        for row in rows[1:]:
            assert float(row[1]) > 0.0  # h > 0 everywhere
            assert row[8] == "true"
        assert (tmp_path / "fig1.png").exists()

    def test_no_plot_flag(self, tmp_path):
        out = tmp_path / "f.csv"
        proc = run_cli("figure", "1", "--steps", "3", "--no-plot", "--out", str(out))
        assert proc.returncode == 0
        assert not (tmp_path / "f.png").exists()

    def test_figure2_degenerate_sweep(self, tmp_path):
        out = tmp_path / "fig2.csv"
        proc = run_cli(
            "figure", "2", "--steps", "1", "--kappa-min", "0.5",
            "--kappa-max", "0.5", "--no-plot", "--out", str(out),
        )
        assert proc.returncode == 0
        rows = read_csv(out)
        assert len(rows) == 2
        assert float(rows[1][0]) == 0.5

    def test_figure3_never_unstable(self, tmp_path):
        out = tmp_path / "fig3.csv"
        proc = run_cli(
            "figure", "3", "--kappa-min", "0.05", "--kappa-max", "0.95",
            "--steps", "19", "--no-plot", "--out", str(out),
        )
        assert proc.returncode == 0
        for row in read_csv(out)[1:]:
            assert row[8] == "false"
            assert float(row[1]) < 0.0

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert run_cli(
                "figure", "1", "--steps", "7", "--no-plot", "--out", str(out)
            ).returncode == 0
        assert a.read_bytes() == b.read_bytes()

    def test_invalid_range_exits_1(self, tmp_path):
        proc = run_cli(
            "figure", "1", "--kappa-min", "0.9", "--kappa-max", "0.1",
            "--out", str(tmp_path / "x.csv"),
        )
        assert proc.returncode == 1

    def test_unwritable_path_exits_2(self):
        proc = run_cli("figure", "1", "--steps", "3", "--no-plot",
                       "--out", "/nonexistent-dir/x.csv")
        assert proc.returncode == 2


class TestSpectrum:
    def test_kdv_table(self, tmp_path):
        out = tmp_path / "s.csv"
        proc = run_cli("spectrum", "--family", "kdv", "--kappa", "0.5",
                       "--out", str(out))
        assert proc.returncode == 0
        rows = read_csv(out)
        assert rows[0] == ["index", "closed_form", "numerical", "abs_error",
                           "multiplicity"]
        assert len(rows) == 1 + 3 + 5  # header, three closed rows, five extra
        row1 = rows[2]
        assert float(row1[1]) == 0.0
        assert float(row1[3]) <= 1e-8

    def test_cubic_nls_lplus_ground_state(self, tmp_path):
        out = tmp_path / "s.csv"
        proc = run_cli("spectrum", "--family", "nls3", "--operator", "L+",
                       "--kappa", "0.5", "--out", str(out))
        assert proc.returncode == 0
        rows = read_csv(out)
        assert float(rows[1][1]) == 0.0
        assert float(rows[1][3]) <= 1e-8

    def test_defocusing_doubles_flagged(self, tmp_path):
        out = tmp_path / "s.csv"
        proc = run_cli("spectrum", "--family", "dmkdv", "--kappa", "0.6",
                       "--out", str(out))
        assert proc.returncode == 0
        rows = read_csv(out)
        assert rows[6][4] == "double"  # index 5
        assert rows[7][4] == "double"  # index 6

    def test_invalid_operator_lists_valid_ones(self, tmp_path):
        proc = run_cli("spectrum", "--family", "nls2",
                       "--out", str(tmp_path / "x.csv"))
        assert proc.returncode == 1
        assert "L-" in proc.stderr and "L+" in proc.stderr


class TestTransverse:
    def test_kdv_full_run(self, tmp_path):
        out = tmp_path / "t.csv"
        proc = run_cli("transverse", "--family", "kdv", "--kappa", "0.5",
                       "--out", str(out))
        assert proc.returncode == 0
        assert "spectrally unstable: yes" in proc.stdout
        rows = read_csv(out)
        assert ",".join(rows[0]) == TRANSVERSE_HEADER
        assert len(rows) >= 6  # header + at least 5 branch points
        k0 = float(rows[1][1])
        assert k0 > 0.0
        for row in rows[1:]:
            assert int(row[2]) == 1
            assert float(row[5]) <= 1e-9
            k_sigma = float(row[4])
            assert 0.0 < k_sigma < k0
            assert float(row[6]) == pytest.approx(2.0 * math.pi / k_sigma, rel=1e-12)

    def test_defocusing_reports_criterion_not_met(self, tmp_path):
        out = tmp_path / "t.csv"
        proc = run_cli("transverse", "--family", "dmkdv", "--kappa", "0.5",
                       "--out", str(out))
        assert proc.returncode == 0
        assert "criterion not met" in proc.stdout
        rows = read_csv(out)
        assert len(rows) == 2
        assert rows[1][1] == "nan"
        assert int(rows[1][2]) == 0

    def test_nls_run(self, tmp_path):
        out = tmp_path / "t.csv"
        proc = run_cli("transverse", "--family", "nls3", "--kappa", "0.5",
                       "--out", str(out))
        assert proc.returncode == 0
        assert "spectrally unstable: yes" in proc.stdout
        rows = read_csv(out)
        # closed-form cross-check: k0 = sqrt(nu_3 - nu_0) at alpha = 1
        r = math.sqrt(1.0 - 0.25 + 0.0625)
        expect = math.sqrt((4.25) - (2.0 + 0.5 - 2.0 * r))
        assert float(rows[1][1]) == pytest.approx(expect, abs=1e-7)

    def test_unknown_family_usage_error(self, tmp_path):
        proc = run_cli("transverse", "--family", "bogus",
                       "--out", str(tmp_path / "x.csv"))
        assert proc.returncode == 1


class TestSelftest:
    def test_default_passes(self):
        proc = run_cli("selftest")
        assert proc.returncode == 0
        assert proc.stdout.count("PASS") == 7
        assert "FAIL" not in proc.stdout

    def test_coarse_grid_fails_with_code_4(self):
        proc = run_cli("selftest", "--grid-n", "16")
        assert proc.returncode == 4
        assert "FAIL" in proc.stdout

    def test_loose_tolerance_rescues_coarse_grid(self):
        proc = run_cli("selftest", "--grid-n", "16", "--tol", "1e-2")
        assert proc.returncode == 0
