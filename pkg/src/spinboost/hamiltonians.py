"""Low-energy Hamiltonians for a spin-1/2 neutral particle.

Three builds are supported, all on a field axis fixed to z:

    gravitational:   beta m c^2 - beta m g.x + (beta/2m) p^2
                     - (beta/2mc^2) p.(g.x)p + (hbar beta/2mc^2) sigma.(g x p)
                     - (beta/mc^2) (p.g)(x.p)
    accelerational:  beta m c^2 + beta m a.x + (beta/2m) p^2
                     + (beta/2mc^2) p.(a.x)p
                     + (1 + mu_a)(hbar beta/4mc^2) sigma.(a x p)
    free:            beta m c^2 + (beta/2m) p^2

with g = g_z zhat and a = a_z zhat kept symbolic.  mu_a scales only the
accelerational spin term; every term is individually flag-gated.  The last
gravitational term (the position-dependent redshift correction quadratic in
p.x) is kept in its literal ordering, which is not self-adjoint on its own;
it is off by default and excluded from the equivalence comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import opalg as oa
from .opalg import BETA, C, HBAR, M, OperatorExpr, P, SIG, X

__all__ = [
    "GRAVITATIONAL", "ACCELERATIONAL", "FREE", "KINDS",
    "TermFlags", "HamiltonianSpec", "SPIN_ONLY",
    "build", "equivalence_residual", "spin_term_ratio",
    "spin_orbit_identity_check",
]

GRAVITATIONAL = "gravitational"
ACCELERATIONAL = "accelerational"
FREE = "free"
KINDS = (GRAVITATIONAL, ACCELERATIONAL, FREE)

_G_VEC = (oa.ZERO, oa.ZERO, oa.symbol("g_z"))
_A_VEC = (oa.ZERO, oa.ZERO, oa.symbol("a_z"))


@dataclass(frozen=True)
class TermFlags:
    """Which physical terms a build includes.

    tidal selects the literally ordered (p.g)(x.p) correction and is only
    meaningful for the gravitational kind.
    """

    rest_mass: bool = True
    potential: bool = True
    kinetic: bool = True
    kinetic_redshift: bool = True
    spin: bool = True
    tidal: bool = False


SPIN_ONLY = TermFlags(rest_mass=False, potential=False, kinetic=False,
                      kinetic_redshift=False, spin=True, tidal=False)


@dataclass(frozen=True)
class HamiltonianSpec:
    """A Hamiltonian kind plus term selection; mu_a only for accelerational."""

    kind: str
    flags: TermFlags = field(default_factory=TermFlags)
    mu_a: Fraction | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == ACCELERATIONAL:
            if self.mu_a is None:
                raise ValueError("accelerational spec requires mu_a")
            object.__setattr__(self, "mu_a", Fraction(self.mu_a))
        elif self.mu_a is not None:
            raise ValueError(f"mu_a is only meaningful for {ACCELERATIONAL}")
        if self.flags.tidal and self.kind != GRAVITATIONAL:
            raise ValueError("tidal term exists only for the gravitational kind")


def _inv_mc2() -> OperatorExpr:
    return oa.symbol("m", -1) * oa.symbol("c", -2)


def build(spec: HamiltonianSpec) -> OperatorExpr:
    """Assemble the Hamiltonian selected by spec in canonical form."""
    f = spec.flags
    h = oa.ZERO
    if f.rest_mass:
        h = h + M * C ** 2 * BETA
    if f.kinetic:
        h = h + Fraction(1, 2) * oa.symbol("m", -1) * BETA * oa.dot(P, P)
    if spec.kind == FREE:
        return h

    fld = _G_VEC if spec.kind == GRAVITATIONAL else _A_VEC
    pot_sign = -1 if spec.kind == GRAVITATIONAL else 1
    if f.potential:
        h = h + pot_sign * M * BETA * oa.dot(fld, X)
    if f.kinetic_redshift:
        sandwich = sum((P[i] * oa.dot(fld, X) * P[i] for i in range(3)),
                       oa.ZERO)
        h = h + pot_sign * Fraction(1, 2) * _inv_mc2() * BETA * sandwich
    if f.spin:
        spin = HBAR * _inv_mc2() * BETA * oa.dot(SIG, oa.cross(fld, P))
        if spec.kind == GRAVITATIONAL:
            h = h + Fraction(1, 2) * spin
        else:
            h = h + (1 + spec.mu_a) * Fraction(1, 4) * spin
    if f.tidal:
        h = h - _inv_mc2() * BETA * oa.dot(P, fld) * oa.dot(X, P)
    return h


def equivalence_residual(mu_a, include_tidal: bool = False) -> OperatorExpr:
    """Gravitational build minus the accelerational build taken at a = -g.

    Identically zero exactly when mu_a = -3 (with the tidal term off);
    at mu_a = 0 it reduces to (3/4)(hbar beta / m c^2) sigma.(g x p).
    """
    grav = build(HamiltonianSpec(GRAVITATIONAL,
                                 TermFlags(tidal=include_tidal)))
    acc = build(HamiltonianSpec(ACCELERATIONAL, mu_a=Fraction(mu_a)))
    return grav - acc.substitute({"a_z": "-g_z"})


def spin_term_ratio(mu_a=Fraction(0)) -> Fraction:
    """Ratio of the gravitational to the accelerational spin coefficient.

    Both terms are proportional to beta (sigma_y p_x - sigma_x p_y) once the
    accelerational field is mapped to a = -g, so the ratio is a pure
    rational: -2 at mu_a = 0 and +1 at mu_a = -3.
    """
    pattern = (1, (0, 0, 0), (1, 0, 0), 2)  # beta p_x sigma_y
    grav = build(HamiltonianSpec(GRAVITATIONAL, SPIN_ONLY))
    acc = build(HamiltonianSpec(ACCELERATIONAL, SPIN_ONLY,
                                mu_a=Fraction(mu_a)))
    acc = acc.substitute({"a_z": "-g_z"})
    num = grav.coefficient_of(pattern)
    den = acc.coefficient_of(pattern)
    if den.is_zero:
        raise ZeroDivisionError(
            "accelerational spin term vanishes (1 + mu_a = 0)")
    return (num * den.inverse()).as_fraction()


def spin_orbit_identity_check(prefactor=Fraction(2)) -> bool:
    """Whether sigma.(x cross p) equals prefactor/hbar times L.S.

    L = x cross p and S = (hbar/2) sigma; uniform-field scalars are absorbed
    into the overall prefactor, so the identity is checked bare.  The default
    prefactor 2 is the one that holds; other values exist for mutation tests.
    """
    lhs = oa.dot(SIG, oa.cross(X, P))
    ell = oa.cross(X, P)
    spin = tuple(Fraction(1, 2) * HBAR * s for s in SIG)
    rhs = Fraction(prefactor) * oa.symbol("hbar", -1) * oa.dot(ell, spin)
    return lhs == rhs
