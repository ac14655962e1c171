"""Astrophysical scale estimates in cgs units.

Converts body catalogs (name, mass, radius) into surface gravities and the
characteristic flight length

    x_a = 4 c^2 / (|1 + mu_a| a)

over which a spin flip completes for a particle crossing a region of
acceleration a.  Also carries the strong-force commutator estimate
(2/3) F / m_q with an auditable unit-conversion chain; the widely quoted
1e36 cm/s^2 order of magnitude is reported alongside for comparison and is
deliberately never asserted equal to the computed value.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from importlib import resources

__all__ = [
    "C_CMS", "G_CGS", "HBAR_ERG_S", "NEUTRON_MASS_G", "SOLAR_MASS_G",
    "SOLAR_RADIUS_CM", "GEV_ERG", "MEV_ERG", "LIGHT_YEAR_CM",
    "FOUR_C_SQUARED", "Body", "ScalesRow", "QuarkEstimate",
    "surface_gravity", "length_scale", "quark_commutator_estimate",
    "load_catalog", "default_catalog", "scales_table",
    "rows_to_csv", "rows_to_json",
]

# cgs constants
C_CMS = 2.99792458e10          # cm / s
G_CGS = 6.674e-8               # cm^3 / (g s^2)
HBAR_ERG_S = 1.0546e-27        # erg s
NEUTRON_MASS_G = 1.6749e-24    # g
SOLAR_MASS_G = 1.989e33        # g
SOLAR_RADIUS_CM = 6.957e10     # cm
GEV_ERG = 1.6022e-3            # erg per GeV
MEV_ERG = 1.6022e-6            # erg per MeV
SECONDS_PER_JULIAN_YEAR = 365.25 * 86400.0
LIGHT_YEAR_CM = C_CMS * SECONDS_PER_JULIAN_YEAR  # 9.4607e17 cm
FOUR_C_SQUARED = 4.0 * C_CMS ** 2                # 3.595e21 cm^2/s^2

CATALOG_HEADER = ("name", "mass_g", "radius_cm")


@dataclass(frozen=True)
class Body:
    name: str
    mass_g: float
    radius_cm: float

    def __post_init__(self):
        if not self.name:
            raise ValueError("body name must be nonempty")
        if not (self.mass_g > 0 and math.isfinite(self.mass_g)):
            raise ValueError(f"{self.name}: mass must be positive and finite")
        if not (self.radius_cm > 0 and math.isfinite(self.radius_cm)):
            raise ValueError(f"{self.name}: radius must be positive and finite")


@dataclass(frozen=True)
class ScalesRow:
    name: str
    surface_gravity_cms2: float
    x_a_cm: float
    x_a_ly: float


@dataclass(frozen=True)
class QuarkEstimate:
    force_gev_per_cm: float
    quark_mass_mev: float
    force_dyn: float
    quark_mass_g: float
    acceleration_cms2: float
    reference_cms2: float
    chain: tuple


def surface_gravity(mass_g: float, radius_cm: float) -> float:
    """G M / r^2 in cm/s^2."""
    if not (mass_g > 0 and radius_cm > 0):
        raise ValueError("mass and radius must be positive")
    return G_CGS * mass_g / radius_cm ** 2


def length_scale(acceleration_cms2: float, mu_a: float) -> float:
    """Spin-flip flight length 4 c^2 / (|1 + mu_a| a) in cm.

    Returns inf when 1 + mu_a = 0 (the spin term shuts off and no finite
    flight distance completes a flip).
    """
    if not (acceleration_cms2 > 0 and math.isfinite(acceleration_cms2)):
        raise ValueError("acceleration must be positive and finite")
    weight = abs(1.0 + mu_a)
    if weight == 0.0:
        return math.inf
    return FOUR_C_SQUARED / (weight * acceleration_cms2)


def quark_commutator_estimate(force_gev_per_cm: float = 1e22,
                              quark_mass_mev: float = 5.0) -> QuarkEstimate:
    """(2/3) F / m_q as an acceleration, with each conversion step recorded.

    The returned record also carries the quoted 1e36 cm/s^2 reference order
    of magnitude for the same inputs; the two are reported side by side
    because no conversion path connecting them is recoverable, and silently
    forcing agreement would hide that.
    """
    if not (force_gev_per_cm > 0 and quark_mass_mev > 0):
        raise ValueError("force and quark mass must be positive")
    force_dyn = force_gev_per_cm * GEV_ERG  # GeV/cm -> erg/cm = dyn
    mass_g = quark_mass_mev * MEV_ERG / C_CMS ** 2  # MeV/c^2 -> g
    accel = (2.0 / 3.0) * force_dyn / mass_g
    chain = (
        f"F = {force_gev_per_cm:.6g} GeV/cm * {GEV_ERG:.6g} erg/GeV"
        f" = {force_dyn:.6g} dyn",
        f"m_q = {quark_mass_mev:.6g} MeV/c^2 * {MEV_ERG:.6g} erg/MeV"
        f" / ({C_CMS:.9g} cm/s)^2 = {mass_g:.6g} g",
        f"a = (2/3) F / m_q = {accel:.6g} cm/s^2",
        "reference order of magnitude: 1e+36 cm/s^2 (not asserted)",
    )
    return QuarkEstimate(force_gev_per_cm=force_gev_per_cm,
                         quark_mass_mev=quark_mass_mev,
                         force_dyn=force_dyn, quark_mass_g=mass_g,
                         acceleration_cms2=accel, reference_cms2=1e36,
                         chain=chain)


def _parse_catalog(reader, source: str) -> list:
    rows = list(reader)
    if not rows:
        raise ValueError(f"{source}: empty catalog")
    if tuple(h.strip() for h in rows[0]) != CATALOG_HEADER:
        raise ValueError(f"{source}: header must be "
                         f"{','.join(CATALOG_HEADER)}, got {rows[0]!r}")
    bodies = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 3:
            raise ValueError(f"{source}: line {lineno}: expected 3 fields, "
                             f"got {len(row)}")
        name = row[0].strip()
        try:
            mass = float(row[1])
            radius = float(row[2])
        except ValueError as exc:
            raise ValueError(f"{source}: line {lineno}: {exc}") from None
        try:
            bodies.append(Body(name, mass, radius))
        except ValueError as exc:
            raise ValueError(f"{source}: line {lineno}: {exc}") from None
    if not bodies:
        raise ValueError(f"{source}: catalog has no body rows")
    return bodies


def load_catalog(path) -> list:
    """Read a body catalog CSV with header name,mass_g,radius_cm."""
    with open(path, newline="") as fh:
        return _parse_catalog(csv.reader(fh), str(path))


def default_catalog() -> list:
    """The catalog shipped with the package (Sun and a compact star)."""
    text = (resources.files("spinboost") / "data" / "bodies_default.csv") \
        .read_text()
    return _parse_catalog(csv.reader(io.StringIO(text)), "bodies_default.csv")


def scales_table(bodies, mu_a: float) -> list:
    """One ScalesRow per body, in catalog order."""
    rows = []
    for body in bodies:
        a = surface_gravity(body.mass_g, body.radius_cm)
        x_a = length_scale(a, mu_a)
        rows.append(ScalesRow(name=body.name, surface_gravity_cms2=a,
                              x_a_cm=x_a, x_a_ly=x_a / LIGHT_YEAR_CM))
    return rows


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def rows_to_csv(rows) -> str:
    out = ["name,a_cms2,x_a_cm,x_a_ly"]
    for r in rows:
        out.append(f"{r.name},{_fmt(r.surface_gravity_cms2)},"
                   f"{_fmt(r.x_a_cm)},{_fmt(r.x_a_ly)}")
    return "\n".join(out) + "\n"


def rows_to_json(rows) -> str:
    payload = [{"name": r.name, "a_cms2": r.surface_gravity_cms2,
                "x_a_cm": r.x_a_cm, "x_a_ly": r.x_a_ly} for r in rows]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
