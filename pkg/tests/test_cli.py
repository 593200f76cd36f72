import csv
import json
import math

import numpy as np
import pytest

from polymerqm.cli import main
from polymerqm.dynamics import box_spectrum
from polymerqm.lattice import Lattice, LatticeWavefunction, PhysicalParams, delta_state
from polymerqm.stateio import load_wavefunction, save_wavefunction


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_kernel_free_identity_row(tmp_path, capsys):
    out = tmp_path / "k.csv"
    rc = main(["kernel", "--system", "free", "--dt", "0",
               "--j-min", "0", "--j-max", "0", "--r-min", "0", "--r-max", "0",
               "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    assert len(rows) == 1
    assert float(rows[0]["re"]) == 1.0
    assert float(rows[0]["im"]) == 0.0


def test_kernel_box_single_mode_phase(tmp_path):
    out = tmp_path / "k.csv"
    rc = main(["kernel", "--system", "box", "--N", "2", "--dt", repr(math.pi),
               "--j-min", "1", "--j-max", "1", "--r-min", "1", "--r-max", "1",
               "--out", str(out)])
    assert rc == 0
    row = read_csv(out)[0]
    assert float(row["re"]) == pytest.approx(-1.0, abs=1e-12)
    assert float(row["im"]) == pytest.approx(0.0, abs=1e-12)
    assert float(row["z"]) == pytest.approx(math.pi)


def test_kernel_periodic_system(tmp_path):
    out = tmp_path / "k.csv"
    rc = main(["kernel", "--system", "periodic", "--N", "3", "--dt", "0",
               "--j-min", "0", "--j-max", "6", "--r-min", "0", "--r-max", "0",
               "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    by_j = {int(r["j"]): float(r["re"]) for r in rows}
    assert by_j[0] == pytest.approx(1.0)   # j = r = 0
    assert by_j[6] == pytest.approx(1.0)   # one period 2N = 6 away
    assert by_j[3] == pytest.approx(0.0, abs=1e-15)


def test_kernel_box_index_out_of_range(tmp_path):
    rc = main(["kernel", "--system", "box", "--N", "3", "--dt", "1",
               "--j-min", "0", "--j-max", "5", "--out", str(tmp_path / "k.csv")])
    assert rc == 2
    assert not (tmp_path / "k.csv").exists()


def test_kernel_json_format(tmp_path):
    out = tmp_path / "k.json"
    rc = main(["kernel", "--system", "free", "--dt", "1.0", "--format", "json",
               "--j-min", "-1", "--j-max", "1", "--r-min", "0", "--r-max", "0",
               "--out", str(out)])
    assert rc == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 3
    assert rows[0]["system"] == "free"


def test_malformed_config_no_partial_output(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{this is not json")
    out = tmp_path / "k.csv"
    rc = main(["kernel", "--config", str(cfg), "--out", str(out)])
    assert rc == 2
    assert not out.exists()


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"mu": 0.5}))
    rc = main(["kernel", "--config", str(cfg)])
    assert rc == 2


def test_config_with_overrides(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"system": "box", "N": 2, "times": [0.0],
                               "format": "csv"}))
    out = tmp_path / "k.csv"
    rc = main(["kernel", "--config", str(cfg), "--N", "3", "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    assert {int(r["j"]) for r in rows} == {0, 1, 2, 3}  # flag overrode N


def test_evolve_delta_identity_bytes(tmp_path):
    params = PhysicalParams()
    lat = Lattice(params, -3, 3)
    src = tmp_path / "delta.csv"
    save_wavefunction(delta_state(lat, 1), src)
    dst = tmp_path / "out.csv"
    rc = main(["evolve", str(src), "--system", "free", "--dt", "0",
               "--out-window=-3:3", "--out", str(dst)])
    assert rc == 0
    assert src.read_bytes() == dst.read_bytes()


def test_evolve_box_eigenvector_norms(tmp_path, capsys):
    spec = box_spectrum(5, PhysicalParams(mu0=0.5))
    src = tmp_path / "eig.csv"
    save_wavefunction(spec.eigenstate(2), src)
    dst = tmp_path / "out.csv"
    rc = main(["evolve", str(src), "--system", "box", "--N", "5",
               "--dt", "1.7", "--out", str(dst)])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    before = float(lines[0].split("=")[1])
    after = float(lines[1].split("=")[1])
    assert abs(before - after) <= 1e-12


def test_evolve_output_reloads_identically(tmp_path):
    params = PhysicalParams()
    lat = Lattice(params, -4, 4)
    rng = np.random.default_rng(8)
    psi = LatticeWavefunction(lat, rng.normal(size=9) + 1j * rng.normal(size=9))
    src = tmp_path / "in.csv"
    save_wavefunction(psi, src)
    dst = tmp_path / "out.csv"
    rc = main(["evolve", str(src), "--system", "free", "--dt", "0.9",
               "--out", str(dst)])
    assert rc == 0
    evolved = load_wavefunction(dst)
    resaved = tmp_path / "resaved.csv"
    save_wavefunction(evolved, resaved)
    assert dst.read_bytes() == resaved.read_bytes()


def test_evolve_missing_sidecar(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("n,re,im\n0,1.0,0.0\n")
    rc = main(["evolve", str(src), "--system", "free", "--dt", "1",
               "--out", str(tmp_path / "out.csv")])
    assert rc == 2


def test_evolve_wall_violation_exit_code(tmp_path):
    params = PhysicalParams()
    lat = Lattice(params, 0, 4)
    psi = LatticeWavefunction(lat, [0.5, 0.5, 0.5, 0.5, 0.5])
    src = tmp_path / "in.csv"
    save_wavefunction(psi, src)
    rc = main(["evolve", str(src), "--system", "box", "--N", "4", "--dt", "1",
               "--out", str(tmp_path / "out.csv")])
    assert rc == 3


def test_verify_free_suite(tmp_path, capsys):
    out = tmp_path / "report.csv"
    rc = main(["verify", "--suite", "free", "--out", str(out)])
    assert rc == 0
    names = {row["name"] for row in read_csv(out)}
    assert {"unitarity", "composition", "greens-residual",
            "initial-condition"} <= names
    assert all(row["status"] == "pass" for row in read_csv(out))


def test_verify_box_suite(tmp_path):
    out = tmp_path / "report.csv"
    rc = main(["verify", "--suite", "box", "--N", "6", "--out", str(out)])
    assert rc == 0
    names = {row["name"] for row in read_csv(out)}
    assert {"spectral-vs-images", "boundary-zeros", "eigenphase"} <= names


def test_verify_corrupted_tolerance_fails(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "suite": "momentum",
        "tolerances": {"roundtrip": 0.0},
    }))
    rc = main(["verify", "--config", str(cfg),
               "--out", str(tmp_path / "r.csv")])
    assert rc == 1
    rows = read_csv(tmp_path / "r.csv")
    bad = [r for r in rows if r["name"] == "roundtrip"]
    assert bad[0]["status"] == "fail"


def test_sweep_outputs_and_monotone(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["sweep", "--dx", "1", "--dt", "1",
               "--mu0-list", "1/8,1/16,1/32,1/64", "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    errors = [float(r["abs_error"]) for r in rows]
    assert all(errors[i] > errors[i + 1] for i in range(3))
    assert [int(r["l"]) for r in rows] == [8, 16, 32, 64]
    assert rows[-1]["empirical_order"] == ""
    for row in rows[:-1]:
        assert row["empirical_order"] != ""


def test_sweep_single_mu0_no_order(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = main(["sweep", "--dx", "1", "--dt", "1", "--mu0-list", "0.125",
               "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    assert len(rows) == 1
    assert rows[0]["empirical_order"] == ""


def test_sweep_non_divisor_exits_2(tmp_path):
    rc = main(["sweep", "--dx", "1", "--dt", "1", "--mu0-list", "0.3",
               "--out", str(tmp_path / "s.csv")])
    assert rc == 2
    assert not (tmp_path / "s.csv").exists()


def test_output_determinism(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"system": "box", "N": 4, "times": [0.7, 1.9],
                               "seed": 42}))
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        rc = main(["kernel", "--config", str(cfg), "--out", str(path)])
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()
    va = tmp_path / "va.csv"
    vb = tmp_path / "vb.csv"
    for path in (va, vb):
        rc = main(["verify", "--suite", "momentum", "--seed", "7",
                   "--out", str(path)])
        assert rc == 0
    assert va.read_bytes() == vb.read_bytes()


def test_kernel_stdout_when_no_out(capsys):
    rc = main(["kernel", "--system", "free", "--dt", "0",
               "--j-min", "0", "--j-max", "0", "--r-min", "0", "--r-max", "0"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "system,j,r,dt,z,re,im"
    assert "free,0,0,0.0,0.0,1.0,0.0" in out


def test_evolve_requires_out(tmp_path):
    src = tmp_path / "in.csv"
    save_wavefunction(delta_state(Lattice(PhysicalParams(), 0, 1), 0), src)
    rc = main(["evolve", str(src), "--system", "free", "--dt", "1"])
    assert rc == 2
