import json
import subprocess
import sys

import numpy as np
import pytest

from unigate import gates, linalg
from unigate.cli import main

from conftest import haar_unitary, random_density_matrix


def run_cli(args):
    return subprocess.run(
        [sys.executable, "-m", "unigate.cli", *args], capture_output=True, text=True
    )


class TestAnalyze:
    def test_cnot_report(self, tmp_path):
        gate_file = tmp_path / "cnot.json"
        out_file = tmp_path / "report.json"
        linalg.save_matrix(gate_file, gates.cnot(), dims=(2, 2))
        rc = main(["--deterministic", "analyze", "--input", str(gate_file), "--output", str(out_file)])
        assert rc == 0
        doc = json.loads(out_file.read_text())
        assert doc["pe_class"] == "B"
        assert np.allclose(doc["eta"], [1, 0, 0], atol=1e-9)
        assert doc["schmidt_rank"] == 2
        assert doc["channel"]["unistochastic"] is True
        assert "generated_at" not in doc

    def test_fourier_report(self, tmp_path):
        gate_file = tmp_path / "f4.json"
        out_file = tmp_path / "report.json"
        linalg.save_matrix(gate_file, gates.fourier_gate(2), dims=(2, 2))
        main(["--deterministic", "analyze", "--input", str(gate_file), "--output", str(out_file)])
        doc = json.loads(out_file.read_text())
        assert np.allclose(doc["Lambda"], [1, 1, 1, 1], atol=1e-9)
        assert doc["pe_class"] == "N"

    def test_nine_by_nine_gate(self, tmp_path, rng):
        gate_file = tmp_path / "g9.json"
        out_file = tmp_path / "report.json"
        linalg.save_matrix(gate_file, haar_unitary(9, rng), dims=(3, 3))
        rc = main(["--deterministic", "analyze", "--input", str(gate_file), "--output", str(out_file)])
        assert rc == 0
        doc = json.loads(out_file.read_text())
        assert "alpha" not in doc
        assert "warning" in doc
        assert len(doc["Lambda"]) == 9

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        proc = run_cli(["analyze", "--input", str(bad)])
        assert proc.returncode == 2

    def test_nonunitary_exit_code(self, tmp_path):
        gate_file = tmp_path / "m.json"
        linalg.save_matrix(gate_file, np.ones((4, 4)), dims=(2, 2))
        proc = run_cli(["analyze", "--input", str(gate_file)])
        assert proc.returncode == 3

    def test_timestamp_unless_deterministic(self, tmp_path):
        gate_file = tmp_path / "cnot.json"
        out_file = tmp_path / "r.json"
        linalg.save_matrix(gate_file, gates.cnot(), dims=(2, 2))
        main(["analyze", "--input", str(gate_file), "--output", str(out_file)])
        assert "generated_at" in json.loads(out_file.read_text())


class TestTable1Command:
    def test_output(self, tmp_path, capsys):
        out_file = tmp_path / "table.json"
        main(["--deterministic", "table1", "--output", str(out_file)])
        captured = capsys.readouterr().out
        assert captured.count("\n") == 8
        doc = json.loads(out_file.read_text())
        names = [row["name"] for row in doc["rows"]]
        assert names == list(gates.TABLE1_NAMES)
        bgate = doc["rows"][3]
        assert bgate["notes"]


class TestSample:
    def test_csv_shape_and_summary(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        rc = main(
            ["sample", "--ensemble", "scue", "--dim", "4", "--count", "200", "--seed", "7",
             "--output", str(out)]
        )
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "index,r,S1,S2,alpha1,alpha2,alpha3,eta1,eta2,eta3,pe"
        assert len(lines) == 201
        assert "mean_r=" in capsys.readouterr().out

    def test_reproducible_and_thread_invariant(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        c = tmp_path / "c.csv"
        base = ["sample", "--ensemble", "scue", "--dim", "4", "--count", "300", "--seed", "9"]
        main([*base, "--output", str(a)])
        main([*base, "--output", str(b)])
        main([*base, "--threads", "8", "--output", str(c)])
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()


class TestPEVolume:
    def test_quick_run(self, capsys):
        main(["pe-volume", "--samples", "2000", "--seed", "3", "--skip-quadrature"])
        out = capsys.readouterr().out
        val = float(out.split("mc_fraction=")[1].split()[0])
        assert abs(val - 8 / (3 * np.pi)) < 0.04


class TestMeanEntropy:
    def test_table_csv(self, tmp_path, capsys):
        out = tmp_path / "me.csv"
        main(["mean-entropy", "--n", "2..3", "--q", "1,2", "--samples", "400", "--seed", "5",
              "--output", str(out)])
        lines = out.read_text().splitlines()
        assert lines[0] == "n,q,mean,std_error,samples"
        assert len(lines) == 5


class TestCheckUnistochastic:
    def test_rejected_point(self, capsys):
        main(["check-unistochastic", "--eta", "-0.333333,-0.333333,-0.333333"])
        assert "cp=yes unistochastic=no" in capsys.readouterr().out

    def test_origin_with_witness(self, tmp_path, capsys):
        wfile = tmp_path / "w.json"
        main(["check-unistochastic", "--eta", "0,0,0", "--output", str(wfile)])
        out = capsys.readouterr().out
        assert "unistochastic=yes" in out
        W, dims = linalg.load_matrix(wfile)
        assert dims == (2, 2)
        assert linalg.unitarity_residual(W) < 1e-10

    def test_non_cp(self, capsys):
        main(["check-unistochastic", "--eta", "1,1,-1"])
        assert "cp=no" in capsys.readouterr().out


class TestChannelApply:
    def test_swap_depolarizes(self, tmp_path, rng):
        ufile = tmp_path / "u.json"
        sfile = tmp_path / "rho.json"
        ofile = tmp_path / "out.json"
        linalg.save_matrix(ufile, gates.swap(2), dims=(2, 2))
        linalg.save_matrix(sfile, random_density_matrix(2, rng))
        rc = main(["channel-apply", "--input", str(ufile), "--state", str(sfile),
                   "--output", str(ofile)])
        assert rc == 0
        out, _ = linalg.load_matrix(ofile)
        assert np.allclose(out, np.eye(2) / 2, atol=1e-10)


class TestSvHist:
    def test_histogram_file(self, tmp_path):
        out = tmp_path / "sv.csv"
        main(["sv-hist", "--ensemble", "cue", "--dim", "4", "--count", "50", "--seed", "2",
              "--bins", "10", "--output", str(out)])
        lines = out.read_text().splitlines()
        assert lines[0] == "bin_lo,bin_hi,count,density"
        assert len(lines) == 11
        total = sum(int(line.split(",")[2]) for line in lines[1:])
        assert total == 50 * 4
