import csv
import io
import json
import subprocess
import sys

import pytest

from thermomimo import sweep as sweep_mod
from thermomimo.cli import main
from thermomimo.exceptions import DomainError


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def parse_text(text):
    values = {}
    for line in text.splitlines():
        key, _, value = line.partition(":")
        values[key.strip()] = value.strip()
    return values


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


TABLE1 = ("--preset", "table1", "--snr-db", "10", "--psi", "0.2", "--noise-dof", "100")


def test_capacity_text():
    code, text = run("capacity", *TABLE1)
    assert code == 0
    v = parse_text(text)
    lo, c, hi = (float(v[k]) for k in ("lower_bound_bps", "thermo_capacity_bps", "upper_bound_bps"))
    assert lo <= c <= hi
    assert c < float(v["shannon_reference_bps"])
    assert "branch 3" in text


def test_capacity_infinite_noise_dof_matches_shannon():
    code, text = run("capacity", *TABLE1[:-1], "inf")
    assert code == 0
    v = parse_text(text)
    assert v["thermo_capacity_bps"] == v["shannon_reference_bps"]


def test_capacity_json():
    code, text = run("capacity", "--format", "json", "--n-r", "2")
    assert code == 0
    doc = json.loads(text)
    assert doc["scenario"]["n_r"] == 2
    assert len(doc["result"]["per_branch_terms"]) == 2


def test_config_file_and_cli_override(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('defaults = "table1"\nn_r = 2\nnoise_dof = 10\n')
    _, a = run("capacity", "--config", str(cfg))
    _, b = run("capacity", "--config", str(cfg), "--noise-dof", "1000")
    assert a.count("branch ") == 2
    assert float(parse_text(b)["thermo_capacity_bps"]) > float(parse_text(a)["thermo_capacity_bps"])


def test_malformed_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("n_t = 4\nnoise_dof = = 3\n")
    code, _ = run("capacity", "--config", str(cfg))
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_unknown_config_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("n_t = 4\nfrobnicate = 1\n")
    assert run("capacity", "--config", str(cfg))[0] == 2
    err = capsys.readouterr().err
    assert "frobnicate" in err and "line 2" in err


def test_invalid_scenario_exits_2():
    assert run("capacity", "--n-r", "0")[0] == 2


def test_energy_report():
    code, text = run("energy", *TABLE1)
    assert code == 0
    v = parse_text(text)
    assert float(v["landauer_floor_J"]) == pytest.approx(2.852e-21, rel=1e-3)
    assert float(v["energy_per_bit_direct_J"]) >= float(v["landauer_floor_J"])
    assert v["direct >= floor"] == "yes"


def test_energy_degenerate_detector_temperature_exits_3(capsys):
    assert run("energy", "--t-hi", "298.15", "--t-lo", "298.15")[0] == 3
    assert "domain error" in capsys.readouterr().err


def test_fig4_csv(tmp_path):
    out = tmp_path / "fig4.csv"
    assert run("fig4", "-o", str(out))[0] == 0
    rows = read_csv(out.read_text())
    assert len(rows) >= 50
    c = [float(r["thermo_bps"]) for r in rows]
    assert all(b > a for a, b in zip(c, c[1:]))
    assert rows[0]["lower_bps"] == ""


def test_fig5_csv():
    code, text = run("fig5", *TABLE1)
    assert code == 0
    rows = read_csv(text)
    assert len(rows) >= 40
    for r in rows:
        assert float(r["lower_bps"]) <= float(r["thermo_bps"]) <= float(r["upper_bps"])
    c = [float(r["thermo_bps"]) for r in rows]
    assert all(b > a for a, b in zip(c, c[1:]))


def test_fig_resolution_too_low_exits_2():
    assert run("fig4", "--num", "10")[0] == 2


def test_csv_is_byte_identical_across_runs_and_threads(tmp_path):
    paths = []
    for i, threads in enumerate(["1", "1", "4"]):
        p = tmp_path / f"run{i}.csv"
        assert run("fig5", "--threads", threads, "-o", str(p))[0] == 0
        paths.append(p)
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]


def test_generic_sweep_and_json():
    code, text = run("sweep", "--variable", "coding_overhead", "--grid", "0,0.5,1",
                     "--outputs", "thermo,energy_per_bit", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert [r["variable"] for r in doc["records"]] == [0.0, 0.5, 1.0]
    assert all(r["energy_per_bit"] > 0 for r in doc["records"])
    code, text = run("sweep", "--start", "1", "--stop", "100", "--num", "3")
    assert len(read_csv(text)) == 3


def test_bad_grid_exits_2():
    assert run("sweep", "--grid", "1,x")[0] == 2
    assert run("sweep", "--grid", "3,2")[0] == 2


def test_unwritable_output_exits_4(tmp_path):
    assert run("fig5", "-o", str(tmp_path / "nope" / "out.csv"))[0] == 4


def test_sweep_failure_writes_partial(tmp_path, monkeypatch):
    real = sweep_mod._evaluate

    def flaky(spec, value):
        if value > 10:
            raise DomainError("cannot evaluate")
        return real(spec, value)

    monkeypatch.setattr(sweep_mod, "_evaluate", flaky)
    out = tmp_path / "s.csv"
    assert run("sweep", "--grid", "1,5,20,30", "-o", str(out))[0] == 3
    assert not out.exists()
    rows = read_csv((tmp_path / "s.csv.partial").read_text())
    assert [float(r["variable"]) for r in rows] == [1.0, 5.0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thermomimo", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.1.0" in proc.stdout
