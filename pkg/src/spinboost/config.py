"""Run-configuration loading and strict validation.

Configs are plain JSON with a closed schema: unknown keys anywhere are
rejected, and every reported problem carries the JSON-pointer path of the
offending value.  Sections are individually optional so one file format
serves the evolve, probe, and interferometer-phase commands; each command
requires its own sections at run time.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import jsonschema

from . import numgrid as ng
from .hamiltonians import (ACCELERATIONAL, FREE, GRAVITATIONAL, KINDS,
                           SPIN_ONLY, HamiltonianSpec, TermFlags)

__all__ = ["ConfigError", "SCHEMA", "validate", "load", "require_section",
           "physical_params", "realization_context", "hamiltonian_spec",
           "initial_state", "evolution_settings"]

_TERM_NAMES = ("rest_mass", "potential", "kinetic", "kinetic_redshift",
               "spin", "tidal")

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["n_points", "length_cm"],
            "properties": {
                "n_points": {"type": "integer", "minimum": 32},
                "length_cm": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "params": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "m_g": {"type": "number", "exclusiveMinimum": 0},
                "c_cms": {"type": "number", "exclusiveMinimum": 0},
                "hbar_erg_s": {"type": "number", "exclusiveMinimum": 0},
                "a_cms2": {"type": "number"},
                "g_cms2": {"type": "number"},
                "mu_a": {"type": "number"},
                "p_perp_gcms": {"type": "number", "minimum": 0},
                "axis": {"const": "z"},
            },
        },
        "evolution": {
            "type": "object",
            "additionalProperties": False,
            "required": ["dt_s", "steps"],
            "properties": {
                "dt_s": {"type": "number", "exclusiveMinimum": 0},
                "steps": {"type": "integer", "minimum": 1},
                "method": {"enum": list(ng.EVOLVE_METHODS)},
            },
        },
        "initial_spin": {
            "type": "object",
            "additionalProperties": False,
            "required": ["theta"],
            "properties": {
                "theta": {"type": "number", "minimum": 0, "maximum": math.pi},
                "phi": {"type": "number"},
            },
        },
        "hamiltonian": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": list(KINDS)},
                "terms": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: {"type": "boolean"}
                                   for k in _TERM_NAMES},
                },
            },
        },
        "probe": {
            "type": "object",
            "additionalProperties": False,
            "required": ["thetas"],
            "properties": {
                "thetas": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "number", "exclusiveMinimum": 0,
                              "exclusiveMaximum": math.pi},
                },
                "n_pairs": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
            },
        },
        "cow": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "height_difference_cm", "traversal_time_s"],
            "properties": {
                "kind": {"enum": [GRAVITATIONAL, ACCELERATIONAL]},
                "height_difference_cm": {"type": "number",
                                         "exclusiveMinimum": 0},
                "traversal_time_s": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "path": {"type": "string", "minLength": 1},
                "format": {"enum": ["csv", "json"]},
            },
        },
    },
}


class ConfigError(ValueError):
    """Validation failure; .errors is a list of (json_pointer, message)."""

    def __init__(self, errors):
        self.errors = [(str(p), str(m)) for p, m in errors]
        super().__init__("; ".join(f"{p or '/'}: {m}" for p, m in self.errors))


def _pointer(path_parts) -> str:
    return "/" + "/".join(str(p) for p in path_parts)


def validate(doc) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = [(_pointer(e.absolute_path), e.message)
              for e in validator.iter_errors(doc)]
    errors.sort()
    if errors:
        raise ConfigError(errors)
    grid = doc.get("grid")
    if grid is not None:
        n = grid["n_points"]
        if n & (n - 1):
            raise ConfigError([("/grid/n_points",
                                f"{n} is not a power of two")])


def load(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError([("", f"invalid JSON: {exc}")]) from exc
    validate(doc)
    return doc


def require_section(cfg: dict, name: str) -> dict:
    if name not in cfg:
        raise ConfigError([(f"/{name}",
                            "section is required for this command")])
    return cfg[name]


def physical_params(cfg: dict) -> ng.PhysParams:
    p = cfg.get("params", {})
    defaults = ng.PhysParams()
    return ng.PhysParams(
        m_g=p.get("m_g", defaults.m_g),
        c_cms=p.get("c_cms", defaults.c_cms),
        hbar_erg_s=p.get("hbar_erg_s", defaults.hbar_erg_s),
        a_cms2=p.get("a_cms2", 0.0),
        g_cms2=p.get("g_cms2", 0.0),
        mu_a=p.get("mu_a", 0.0),
    )


def realization_context(cfg: dict) -> ng.RealizationContext:
    g = require_section(cfg, "grid")
    try:
        grid = ng.Grid1D(g["n_points"], g["length_cm"])
    except ValueError as exc:
        raise ConfigError([("/grid", str(exc))]) from exc
    p_perp = cfg.get("params", {}).get("p_perp_gcms", 0.0)
    # azimuth is a free choice for single runs; the probe draws its own
    return ng.RealizationContext(grid, physical_params(cfg),
                                 p_x_gcms=p_perp, p_y_gcms=0.0)


def hamiltonian_spec(cfg: dict) -> HamiltonianSpec:
    """Build spec from the optional hamiltonian section.

    Default is the accelerational spin term alone: on a numeric grid the
    rest energy exceeds the relativistic corrections by tens of orders, so
    including it erases them from double precision.  Full builds must be
    requested explicitly.
    """
    section = cfg.get("hamiltonian", {})
    kind = section.get("kind", ACCELERATIONAL)
    if "terms" in section:
        flags = TermFlags(**section["terms"])
    else:
        flags = SPIN_ONLY
    if flags.tidal and kind != GRAVITATIONAL:
        raise ConfigError([("/hamiltonian/terms/tidal",
                            "tidal term exists only for the gravitational "
                            "build")])
    mu_a = None
    if kind == ACCELERATIONAL:
        mu_value = cfg.get("params", {}).get("mu_a", 0.0)
        mu_a = Fraction(mu_value).limit_denominator(10 ** 12)
    try:
        return HamiltonianSpec(kind, flags, mu_a=mu_a)
    except ValueError as exc:
        raise ConfigError([("/hamiltonian", str(exc))]) from exc


def initial_state(cfg: dict, ctx: ng.RealizationContext) -> ng.SpinorState:
    spin = require_section(cfg, "initial_spin")
    return ng.gaussian_packet(ctx, theta=spin["theta"],
                              phi=spin.get("phi", 0.0))


def evolution_settings(cfg: dict) -> tuple:
    ev = require_section(cfg, "evolution")
    return ev["dt_s"], ev["steps"], ev.get("method", "eigen_exponential")
