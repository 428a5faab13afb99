import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ar2peak import cli
from ar2peak.datasets import SILSO_ENV, load_sunspots, read_series_csv, read_silso_yearly, silso_to_csv
from ar2peak.errors import DomainError, ParseError
from ar2peak.spectral_model import ProcessSpec, theoretical_acf


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_csv(path, values, header="t,value"):
    lines = [header] + [f"{i + 1},{float(v)!r}" for i, v in enumerate(values)]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestReaders:
    def test_round_trip(self):
        ts = read_series_csv(io.StringIO("year,x\n1,2.5\n2,-1\n3,4e2\n"))
        assert list(ts.values) == [2.5, -1.0, 400.0]
        assert ts.time_labels == ("1", "2", "3")

    @pytest.mark.parametrize(
        "text,line",
        [("a,b\n1,2\n2,x\n", 3), ("a,b\n1,2,3\n", 2), ("a,b\n1,nan\n", 2)],
    )
    def test_parse_errors_name_the_line(self, text, line):
        with pytest.raises(ParseError, match=f"line {line}:") as info:
            read_series_csv(io.StringIO(text))
        assert info.value.line == line

    def test_order(self):
        with pytest.raises(DomainError, match="ascending"):
            read_series_csv(io.StringIO("t,v\n2,1\n1,2\n"))

    def test_bundled_sunspots(self, monkeypatch):
        monkeypatch.delenv(SILSO_ENV, raising=False)
        ts = load_sunspots()
        assert ts.n == 309
        assert ts.time_labels[0] == "1700" and ts.time_labels[-1] == "2008"
        assert np.all(ts.values >= 0)

    def test_silso_format(self, tmp_path, monkeypatch):
        src = tmp_path / "SN_y_tot_V2.0.csv"
        src.write_text("1699.5;  10.0; -1.0;   -1;1\n1700.5;   8.3; -1.0;   -1;1\n2021.5;  1.0;1;1;0\n")
        ts = read_silso_yearly(src)
        assert ts.time_labels == ("1700",) and ts.values[0] == 8.3
        monkeypatch.setenv(SILSO_ENV, str(src))
        assert load_sunspots().values[0] == 8.3
        out = tmp_path / "c.csv"
        silso_to_csv(src, out)
        assert out.read_text() == "year,sunspots\n1700,8.3\n"


class TestFit:
    def test_sunspots_report(self, capsys, monkeypatch):
        monkeypatch.delenv(SILSO_ENV, raising=False)
        code, out, _ = run(["fit", "sunspots"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 309 and doc["centered"] and doc["acf"] == "hat"
        for e in doc["estimates"].values():
            assert e["status"] == "ok"
            assert 0 < e["lambda"] < math.pi
            assert e["period"] == pytest.approx(2 * math.pi / e["lambda"], rel=1e-15)
        assert doc["discriminant"] == pytest.approx(doc["a1"] ** 2 + 4 * doc["a2"])

    def test_round_trip(self, capsys, tmp_path):
        x = np.random.default_rng(0).standard_normal(64)
        code, out, _ = run(["fit", write_csv(tmp_path / "w.csv", x), "--acf", "tilde", "--raw"], capsys)
        assert code == 0
        rep = cli.FitReport.from_dict(json.loads(out))
        assert rep.acf == "tilde" and not rep.centered
        assert json.loads(rep.to_json()) == json.loads(out)

    def test_constant(self, capsys, tmp_path):
        code, _, err = run(["fit", write_csv(tmp_path / "c.csv", [3.0] * 20)], capsys)
        assert code == 2 and "degenerate series: zero variance" in err

    def test_too_short(self, capsys, tmp_path):
        code, _, err = run(["fit", write_csv(tmp_path / "s.csv", [1.0, 2.0])], capsys)
        assert code == 2 and "n < 8" in err

    def test_parse_error_exit(self, capsys, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("t,v\n1,2\n2,oops\n")
        code, _, err = run(["fit", str(p)], capsys)
        assert code == 3 and "line 3" in err

    def test_missing_file(self, capsys):
        assert run(["fit", "does-not-exist.csv"], capsys)[0] == 2

    def test_deterministic(self, capsys, monkeypatch):
        monkeypatch.delenv(SILSO_ENV, raising=False)
        assert run(["fit", "sunspots"], capsys)[1] == run(["fit", "sunspots"], capsys)[1]


class TestSimulate:
    ARGS = ["simulate", "--delta", "0.5", "--lambda0", "1.5708", "--driver", "white:1", "--n", "16", "--seed", "7"]

    def test_identical_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(self.ARGS + ["--out", str(a)], capsys)[0] == 0
        assert run(self.ARGS + ["--out", str(b)], capsys)[0] == 0
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().splitlines()
        assert lines[0] == "t,value" and len(lines) == 17

    def test_output_reads_back(self, capsys, tmp_path):
        p = tmp_path / "x.csv"
        run(self.ARGS + ["--out", str(p)], capsys)
        assert read_series_csv(p).n == 16

    def test_long_run_variance(self, capsys, tmp_path):
        p = tmp_path / "long.csv"
        code, _, _ = run(["simulate", "--delta", "0.1", "--lambda0", "1.0", "--n", "200000", "--out", str(p)], capsys)
        assert code == 0
        x = read_series_csv(p).values
        g0 = theoretical_acf(ProcessSpec(0.1, 1.0), 2).gamma[0]
        assert abs(x.var() / g0 - 1) <= 0.1

    @pytest.mark.parametrize("extra", [["--delta", "1.5"], ["--delta", "0.1", "--driver", "ar1:1.3"], ["--delta", "0.1", "--driver", "garch:1"]])
    def test_validation(self, capsys, extra):
        argv = ["simulate", "--lambda0", "1", "--n", "16"] + extra
        assert run(argv, capsys)[0] == 2

    def test_driver_parsing(self):
        assert cli.parse_driver("white").sigma2 == 1.0
        d = cli.parse_driver("ar1:0.5,2")
        assert (d.kind, d.coef, d.sigma2) == ("ar1", 0.5, 2.0)
        assert cli.parse_driver("ma1:-0.4").coef == -0.4
        with pytest.raises(DomainError):
            cli.parse_driver("ma1:a")


class TestPeriodogram:
    def test_sunspot_overlay(self, capsys, tmp_path, monkeypatch):
        monkeypatch.delenv(SILSO_ENV, raising=False)
        out = tmp_path / "pg.csv"
        code, summary, _ = run(["periodogram", "sunspots", "--overlay-ar2", "--out", str(out)], capsys)
        assert code == 0
        rows = np.loadtxt(out, delimiter=",", skiprows=1)
        assert out.read_text().splitlines()[0] == "lambda,I_n,f_fit"
        assert rows.shape == (154, 3)
        _, fit, _ = run(["fit", "sunspots"], capsys)
        lam_max = json.loads(fit)["estimates"]["ar2_max"]["lambda"]
        # the Fourier grid is 2 pi / 309 apart
        assert abs(rows[np.argmax(rows[:, 2]), 0] - lam_max) <= math.pi / 309 + 1e-12
        assert json.loads(summary)["warnings"] == []

    def test_tone(self, capsys, tmp_path):
        t = np.arange(1, 65)
        p = write_csv(tmp_path / "tone.csv", np.cos(2 * np.pi * 6 * t / 64))
        code, out, _ = run(["periodogram", p], capsys)
        assert code == 0
        rows = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
        assert rows.shape == (32, 2)
        assert int(np.argmax(rows[:, 1])) + 1 == 6

    def test_real_roots_warning(self, capsys, tmp_path):
        # strong positive lag-1 correlation, no oscillation
        x = np.cumsum(np.random.default_rng(1).standard_normal(200)) * 0.05
        x = x + 0.2 * np.random.default_rng(2).standard_normal(200)
        p = write_csv(tmp_path / "rw.csv", x)
        out = tmp_path / "o.csv"
        code, summary, err = run(["periodogram", p, "--overlay-ar2", "--out", str(out)], capsys)
        assert code == 0
        assert "real roots" in err
        assert json.loads(summary)["warnings"]
        assert out.read_text().splitlines()[0].endswith("f_fit")

    def test_svg(self, capsys, tmp_path, monkeypatch):
        pytest.importorskip("matplotlib")
        monkeypatch.delenv(SILSO_ENV, raising=False)
        svg = tmp_path / "f.svg"
        code, _, _ = run(["periodogram", "sunspots", "--overlay-ar2", "--out", str(tmp_path / "p.csv"), "--svg", str(svg)], capsys)
        assert code == 0 and svg.read_text().lstrip().startswith("<?xml")


class TestRates:
    def test_outputs(self, capsys, tmp_path):
        prefix = str(tmp_path / "r")
        argv = ["rates", "--n-grid", "256,512,1024,2048", "--replicas", "30", "--seed", "5", "--out", prefix]
        code, out, _ = run(argv, capsys)
        assert code == 0
        doc = json.loads(out)
        assert json.loads(open(prefix + ".json").read()) == doc
        assert open(prefix + ".csv").read().splitlines()[0] == "n,delta_n,target,rmse,bias,failures"
        assert doc["config"]["replicas"] == 30 and "slope" in doc
        assert run(argv, capsys)[1] == out

    def test_alpha_range(self, capsys):
        code, _, err = run(["rates", "--alpha", "0.4"], capsys)
        assert code == 2 and "alpha must lie in [0, 1/3)" in err

    def test_zero_replicas(self, capsys):
        assert run(["rates", "--replicas", "0"], capsys)[0] == 2

    def test_flagged_study_still_succeeds(self, capsys):
        argv = ["rates", "--alpha", "0", "--c-delta", "0.5", "--n-grid", "8,16,32,64", "--replicas", "100"]
        code, out, _ = run(argv, capsys)
        assert code == 0 and json.loads(out)["flagged"]


class TestMisc:
    def test_lemmas(self, capsys):
        code, out, _ = run(["lemmas"], capsys)
        assert code == 0 and all(c["passed"] for c in json.loads(out))

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["fit"])
        assert info.value.code == 2

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "ar2peak", "--version"], capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout.strip()
