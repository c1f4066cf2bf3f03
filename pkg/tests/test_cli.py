import gzip
import json

import pytest

from retvol.cli import main
from retvol.report import read_profile_csv


def test_synth_then_analyze_end_to_end(tmp_path, capsys):
    csv = tmp_path / "ticks.csv"
    rc = main(["synth", "--kind", "garch", "--n", "20000", "--seed", "3",
               "--leverage", "0.10", "--out", str(csv)])
    assert rc == 0
    assert "wrote 20001 ticks" in capsys.readouterr().out
    assert csv.exists()
    first = csv.read_text().splitlines()[0]
    assert len(first.split(",")) == 3

    out = tmp_path / "out"
    rc = main(["analyze", "--input", str(csv), "--delta-t", "120",
               "--d-grid", "0.5:2.0:0.5", "--lags=-15:15",
               "--fit-range", "1:15", "--jk-blocks", "20",
               "--workers", "2", "--out-dir", str(out)])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "body sha256:" in captured
    assert (out / "report.json").exists()
    assert (out / "summary.txt").exists()
    assert (out / "gamma_kappa.csv").exists()
    profs = read_profile_csv(out / "profile_d0.5.csv")
    assert profs[0].d == 0.5
    assert profs[0].sigmas is not None

    doc = json.loads((out / "report.json").read_text())
    assert doc["body"]["metadata"]["delta_t"] == 120
    assert doc["body"]["metadata"]["jackknife_blocks"] == 20


def test_analyze_accepts_gzip(tmp_path):
    csv = tmp_path / "ticks.csv"
    main(["synth", "--kind", "iid", "--n", "5000", "--seed", "1",
          "--out", str(csv)])
    gz = tmp_path / "ticks.csv.gz"
    gz.write_bytes(gzip.compress(csv.read_bytes()))
    out = tmp_path / "gzout"
    rc = main(["analyze", "--input", str(gz), "--delta-t", "120",
               "--d-grid", "1.0:2.0:1.0", "--lags=-10:10",
               "--fit-range", "1:10", "--jk-blocks", "10",
               "--out-dir", str(out)])
    assert rc == 0
    assert (out / "report.json").exists()


def test_analyze_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a\nvalid file\n")
    rc = main(["analyze", "--input", str(bad), "--out-dir",
               str(tmp_path / "x")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_bad_grid_argument(tmp_path, capsys):
    csv = tmp_path / "t.csv"
    csv.write_text("0,1.0,1\n120,2.0,1\n240,1.5,1\n")
    with pytest.raises(SystemExit):
        main(["analyze", "--input", str(csv), "--d-grid", "nope",
              "--out-dir", str(tmp_path / "y")])


def test_synth_nonstationary_spec_fails_cleanly(tmp_path, capsys):
    rc = main(["synth", "--kind", "garch", "--n", "1000", "--seed", "1",
               "--a-arch", "0.2", "--b-garch", "0.9",
               "--out", str(tmp_path / "z.csv")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
