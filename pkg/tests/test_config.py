"""Strict config validation and section extraction."""

import json
import math

import pytest

import spinboost.config as cfg_mod
import spinboost.numgrid as ng
from spinboost.config import ConfigError
from spinboost.hamiltonians import ACCELERATIONAL, GRAVITATIONAL


def _base():
    return {
        "grid": {"n_points": 32, "length_cm": 8.0},
        "params": {"a_cms2": 1.2e24, "p_perp_gcms": 5.3e-27, "mu_a": 0.0},
    }


def test_validate_accepts_minimal_docs():
    cfg_mod.validate({})
    cfg_mod.validate(_base())


def test_unknown_top_level_key():
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate({"gird": {}})
    pointers = [p for p, _ in err.value.errors]
    assert pointers == ["/"]
    assert "gird" in err.value.errors[0][1]


def test_unknown_nested_key_has_pointer():
    doc = _base()
    doc["params"]["mu"] = 0.0
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    assert err.value.errors[0][0] == "/params"
    assert "mu" in err.value.errors[0][1]


def test_type_errors_carry_full_pointer():
    doc = _base()
    doc["grid"]["n_points"] = "many"
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    assert err.value.errors[0][0] == "/grid/n_points"


def test_multiple_errors_sorted_by_pointer():
    doc = _base()
    doc["grid"]["n_points"] = 8          # below minimum
    doc["evolution"] = {"dt_s": -1.0, "steps": 0}
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    pointers = [p for p, _ in err.value.errors]
    assert pointers == sorted(pointers)
    assert "/evolution/dt_s" in pointers
    assert "/evolution/steps" in pointers
    assert "/grid/n_points" in pointers


def test_power_of_two_post_check():
    doc = _base()
    doc["grid"]["n_points"] = 48
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    assert err.value.errors == [("/grid/n_points",
                                 "48 is not a power of two")]


def test_axis_is_pinned_to_z():
    doc = _base()
    doc["params"]["axis"] = "z"
    cfg_mod.validate(doc)
    doc["params"]["axis"] = "x"
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    assert err.value.errors[0][0] == "/params/axis"


def test_probe_theta_bounds():
    doc = _base()
    doc["probe"] = {"thetas": [0.0]}
    with pytest.raises(ConfigError) as err:
        cfg_mod.validate(doc)
    assert err.value.errors[0][0] == "/probe/thetas/0"
    doc["probe"] = {"thetas": [math.pi / 2]}
    cfg_mod.validate(doc)
    doc["probe"] = {"thetas": []}
    with pytest.raises(ConfigError):
        cfg_mod.validate(doc)


def test_load_round_trip_and_bad_json(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_base()))
    assert cfg_mod.load(path) == _base()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="invalid JSON"):
        cfg_mod.load(bad)


def test_require_section():
    with pytest.raises(ConfigError) as err:
        cfg_mod.require_section({}, "evolution")
    assert err.value.errors == [("/evolution",
                                 "section is required for this command")]
    assert cfg_mod.require_section({"evolution": {"a": 1}}, "evolution") \
        == {"a": 1}


def test_physical_params_defaults_and_overrides():
    p = cfg_mod.physical_params({})
    assert p == ng.PhysParams()
    p = cfg_mod.physical_params({"params": {"m_g": 2e-24, "mu_a": -3.0}})
    assert p.m_g == 2e-24
    assert p.mu_a == -3.0
    assert p.c_cms == ng.PhysParams().c_cms


def test_realization_context_requires_grid():
    with pytest.raises(ConfigError) as err:
        cfg_mod.realization_context({"params": {}})
    assert err.value.errors[0][0] == "/grid"
    ctx = cfg_mod.realization_context(_base())
    assert ctx.grid.n_points == 32
    assert ctx.p_x_gcms == 5.3e-27
    assert ctx.p_y_gcms == 0.0


def test_hamiltonian_spec_default_is_accelerational_spin_only():
    spec = cfg_mod.hamiltonian_spec(_base())
    assert spec.kind == ACCELERATIONAL
    assert spec.flags.spin and not spec.flags.rest_mass
    assert not spec.flags.kinetic and not spec.flags.potential
    assert spec.mu_a == 0


def test_hamiltonian_spec_reads_moment_from_params():
    doc = _base()
    doc["params"]["mu_a"] = -1.5
    spec = cfg_mod.hamiltonian_spec(doc)
    assert spec.mu_a == -1.5
    assert spec.mu_a.denominator == 2


def test_hamiltonian_spec_explicit_terms():
    doc = _base()
    doc["hamiltonian"] = {
        "kind": "gravitational",
        "terms": {"rest_mass": True, "potential": True, "kinetic": True,
                  "kinetic_redshift": True, "spin": True, "tidal": False},
    }
    spec = cfg_mod.hamiltonian_spec(doc)
    assert spec.kind == GRAVITATIONAL
    assert spec.mu_a is None
    assert spec.flags.kinetic_redshift


def test_hamiltonian_spec_rejects_tidal_elsewhere():
    doc = _base()
    doc["hamiltonian"] = {"kind": "accelerational",
                          "terms": {"spin": True, "tidal": True}}
    with pytest.raises(ConfigError) as err:
        cfg_mod.hamiltonian_spec(doc)
    assert err.value.errors[0][0] == "/hamiltonian/terms/tidal"


def test_initial_state_and_evolution_settings():
    doc = _base()
    doc["initial_spin"] = {"theta": 1.0, "phi": 0.25}
    doc["evolution"] = {"dt_s": 0.05, "steps": 16}
    ctx = cfg_mod.realization_context(doc)
    st = cfg_mod.initial_state(doc, ctx)
    ex = ng.spin_expect(st)
    assert ex.theta == pytest.approx(1.0, abs=1e-12)
    assert ex.phi == pytest.approx(0.25, abs=1e-12)
    assert cfg_mod.evolution_settings(doc) == (0.05, 16, "eigen_exponential")
    doc["evolution"]["method"] = "crank_nicolson"
    assert cfg_mod.evolution_settings(doc)[2] == "crank_nicolson"
    with pytest.raises(ConfigError):
        cfg_mod.initial_state({}, ctx)
