"""End-to-end command-line behavior through real subprocesses."""

import json
import math
import pathlib
import subprocess
import sys

import numpy as np
import pytest

import spinboost.numgrid as ng
from spinboost.boostgen import spin_boost_generator
from spinboost.hamiltonians import equivalence_residual
from spinboost.syntax import parse

REPO = pathlib.Path(__file__).resolve().parents[1]
CONFIGS = REPO / "configs"


def run(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "spinboost", *argv],
                          capture_output=True, text=True, cwd=cwd)


# ---------------------------------------------------------------------------
# symbolic commands

def test_verify_passes():
    r = run("verify")
    assert r.returncode == 0
    assert "PASS gravitational-hermitian" in r.stdout
    assert "FAIL" not in r.stdout


def test_verify_detects_planted_bug():
    r = run("verify", "--mutate", "spin-coefficient")
    assert r.returncode == 1
    assert "FAIL spin-ratio-minus-2" in r.stdout


def test_verify_degenerate_moment():
    r = run("verify", "--mu-a=-1")
    assert r.returncode == 0
    assert "vanishes" in r.stdout


def test_residual_at_matched_moment_is_zero():
    r = run("residual", "--mu-a", "-3")
    assert r.returncode == 0
    assert r.stdout == "0\n"


def test_residual_round_trips_through_parser():
    r = run("residual", "--mu-a", "0")
    assert r.returncode == 0
    assert parse(r.stdout.strip()) == equivalence_residual(0)


def test_residual_fractional_moment_needs_equals_form():
    ok = run("residual", "--mu-a=-3/2")
    assert ok.returncode == 0
    assert parse(ok.stdout.strip()) == equivalence_residual("-3/2")
    bad = run("residual", "--mu-a", "-3/2")
    assert bad.returncode == 2
    garbage = run("residual", "--mu-a=abc")
    assert garbage.returncode == 2
    assert "rational" in garbage.stderr


def test_generate_round_trips():
    r = run("generate", "--mu-a", "0")
    assert r.returncode == 0
    lines = r.stdout.strip().split("\n")
    assert [ln.split(" = ")[0] for ln in lines] == ["chi_x", "chi_y", "chi_z"]
    gen = spin_boost_generator(0)
    for line, comp in zip(lines, gen.components):
        assert parse(line.split(" = ", 1)[1]) == comp


# ---------------------------------------------------------------------------
# evolve

def _csv_to_trajectory(path):
    data = np.genfromtxt(path, delimiter=",", skip_header=1)
    zeros = np.zeros(len(data))
    return ng.Trajectory(
        t_s=data[:, 0], sx=data[:, 1], sy=data[:, 2], sz=data[:, 3],
        theta=data[:, 4], phi=data[:, 5], norm=data[:, 6],
        z_mean_cm=data[:, 7], energy=zeros,
        phi_indeterminate=np.zeros(len(data), dtype=bool),
        method="eigen_exponential")


def test_evolve_demo_config(tmp_path):
    r = run("evolve", "--config", str(CONFIGS / "evolve_demo.json"),
            cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    out = tmp_path / "evolve_demo.csv"
    assert out.exists()
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "t,sx,sy,sz,theta,phi,norm,z_mean"
    assert len(lines) == 1026  # header + 1024 steps + initial row

    traj = _csv_to_trajectory(out)
    omega = 1.2e24 * 5.3e-27 / (2.0 * 1.6749e-24 * 2.99792458e10 ** 2)
    est = ng.precession_frequency(traj)
    assert est == pytest.approx(omega, rel=1e-4)
    assert np.abs(traj.norm - 1.0).max() <= 1e-10


def test_evolve_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    for d in (a, b):
        r = run("evolve", "--config", str(CONFIGS / "evolve_demo.json"),
                cwd=d)
        assert r.returncode == 0
    assert (a / "evolve_demo.csv").read_bytes() \
        == (b / "evolve_demo.csv").read_bytes()


def test_evolve_plot_renders_png(tmp_path):
    r = run("evolve", "--config", str(CONFIGS / "evolve_demo.json"),
            "--plot", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    png = tmp_path / "evolve_demo.png"
    assert png.exists()
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_evolve_requires_evolution_section(tmp_path):
    doc = {"grid": {"n_points": 32, "length_cm": 8.0},
           "params": {"a_cms2": 1.0}, "initial_spin": {"theta": 1.0}}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    r = run("evolve", "--config", str(path))
    assert r.returncode == 2
    assert "config error at /evolution" in r.stderr


# ---------------------------------------------------------------------------
# probe

def test_probe_demo_config(tmp_path):
    r = run("probe", "--config", str(CONFIGS / "probe_demo.json"),
            cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    payload = json.loads((tmp_path / "probe_report.json").read_text())
    thetas = (math.pi / 6, math.pi / 4, math.pi / 3)
    assert set(payload) == {repr(t) for t in thetas}
    for fields in payload.values():
        assert set(fields) == {"dtheta_dt_plus", "dtheta_dt_minus",
                               "dtheta_dt_mirror", "phi_drift_mean",
                               "phi_drift_std"}
        assert all(math.isfinite(v) for v in fields.values())


def test_probe_seed_override_and_determinism(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    for d in (a, b, c):
        d.mkdir()
    r1 = run("probe", "--config", str(CONFIGS / "probe_demo.json"), cwd=a)
    r2 = run("probe", "--config", str(CONFIGS / "probe_demo.json"), cwd=b)
    r3 = run("probe", "--config", str(CONFIGS / "probe_demo.json"),
             "--seed", "5", cwd=c)
    assert r1.returncode == r2.returncode == r3.returncode == 0
    bytes_a = (a / "probe_report.json").read_bytes()
    assert bytes_a == (b / "probe_report.json").read_bytes()
    assert bytes_a != (c / "probe_report.json").read_bytes()


def test_probe_rejects_csv_format(tmp_path):
    doc = json.loads((CONFIGS / "probe_demo.json").read_text())
    doc["output"]["format"] = "csv"
    path = tmp_path / "p.json"
    path.write_text(json.dumps(doc))
    r = run("probe", "--config", str(path))
    assert r.returncode == 2
    assert "config error at /output/format" in r.stderr


# ---------------------------------------------------------------------------
# scales

def test_scales_default_table():
    r = run("scales")
    assert r.returncode == 0
    lines = r.stdout.strip().split("\n")
    assert lines[0] == "name,a_cms2,x_a_cm,x_a_ly"
    sun = lines[1].split(",")
    assert sun[0] == "sun"
    assert float(sun[1]) == pytest.approx(27426.916145957402, rel=1e-12)
    assert float(sun[2]) == pytest.approx(6.553818693679785e16, rel=1e-12)


def test_scales_json_and_moment_magnitude():
    r = run("scales", "--format", "json", "--one-plus-mu-a-abs", "4")
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    sun = payload[0]
    assert sun["name"] == "sun"
    # twice the default magnitude halves the flight length
    assert sun["x_a_cm"] == pytest.approx(6.553818693679785e16 / 2.0,
                                          rel=1e-12)


def test_scales_with_custom_catalog(tmp_path):
    path = tmp_path / "cat.csv"
    path.write_text("name,mass_g,radius_cm\nearth,5.972e27,6.371e8\n")
    r = run("scales", "--catalog", str(path))
    assert r.returncode == 0
    assert r.stdout.startswith("name,a_cms2,x_a_cm,x_a_ly\nearth,")


def test_scales_output_and_plot(tmp_path):
    out = tmp_path / "scales.csv"
    r = run("scales", "--output", str(out), "--plot")
    assert r.returncode == 0, r.stderr
    assert out.exists()
    png = tmp_path / "scales.png"
    assert png.exists() and png.read_bytes()[:4] == b"\x89PNG"


def test_scales_error_paths(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("wrong,header,here\n")
    r = run("scales", "--catalog", str(bad))
    assert r.returncode == 1
    assert "header" in r.stderr
    r = run("scales", "--catalog", str(tmp_path / "missing.csv"))
    assert r.returncode == 2
    r = run("scales", "--plot")  # no --output to sit next to
    assert r.returncode == 2
    assert "--plot requires" in r.stderr
    r = run("scales", "--one-plus-mu-a-abs", "0")
    assert r.returncode == 2


# ---------------------------------------------------------------------------
# cow

def test_cow_routes_agree():
    grav = run("cow", "--config", str(CONFIGS / "cow_gravitational.json"))
    acc = run("cow", "--config", str(CONFIGS / "cow_accelerational.json"))
    assert grav.returncode == 0 and acc.returncode == 0
    pg = json.loads(grav.stdout)
    pa = json.loads(acc.stdout)
    assert pg["kind"] == "gravitational"
    assert pa["kind"] == "accelerational"
    assert pg["phase_rad"] == pa["phase_rad"] == 15574.775350843922


def test_cow_requires_section(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"params": {"g_cms2": 980.665}}))
    r = run("cow", "--config", str(path))
    assert r.returncode == 2
    assert "config error at /cow" in r.stderr


# ---------------------------------------------------------------------------
# config and usage errors

def test_config_error_pointers(tmp_path):
    doc = {"grid": {"n_points": 48, "length_cm": 8.0},
           "evolution": {"dt_s": 0.1, "steps": 4},
           "initial_spin": {"theta": 1.0}}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    r = run("evolve", "--config", str(path))
    assert r.returncode == 2
    assert "config error at /grid/n_points: 48 is not a power of two" \
        in r.stderr


def test_unknown_config_key(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"grids": {}}))
    r = run("evolve", "--config", str(path))
    assert r.returncode == 2
    assert "config error at /" in r.stderr


def test_malformed_json(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{oops")
    r = run("evolve", "--config", str(path))
    assert r.returncode == 2
    assert "invalid JSON" in r.stderr


def test_missing_config_file():
    r = run("evolve", "--config", "/nonexistent/run.json")
    assert r.returncode == 2
    assert "error:" in r.stderr


def test_usage():
    r = run()
    assert r.returncode == 2
    r = run("--help")
    assert r.returncode == 0
    for cmd in ("verify", "residual", "generate", "evolve", "probe",
                "scales", "cow"):
        assert cmd in r.stdout
