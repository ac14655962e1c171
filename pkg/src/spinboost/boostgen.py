"""Spin-dependent boost generators and the Hamiltonian increments they induce.

The generator family is

    chi_k = (1 + mu_a) (beta / 4 i c^2) (sigma cross x)_k

stored literally, so each component is anti self-adjoint
(adjoint(chi_k) = -chi_k) and every monomial carries a sigma factor.  The
field axis is fixed to z, so increments use a . chi = a_z chi_z.

Convention calibration.  Writing H = H0 + increment, the raw commutator
readings of the increment are

    plain:    [a.chi, H0]        Hermitian, but equal to minus the target
                                 spin term with the beta label lost
                                 (both operands carry beta and beta^2 = 1)
    times_i:  i [a.chi, H0]      anti-Hermitian, so never a Hamiltonian term

Neither reproduces the accelerational spin term
(1 + mu_a)(hbar beta / 4 m c^2) sigma.(a x p) literally.  The calibrated
form reverses the commutator order and restores the block label:

    calibrated:  beta [H0, a.chi]

which is Hermitian and matches the target exactly (the match is a block
statement: on the beta = +1 particle sector the three readings differ only
by sign and the calibrated one has the sign that agrees).  The choice is
hard-coded here and reported by calibration_report().
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import opalg as oa
from .hamiltonians import (ACCELERATIONAL, FREE, SPIN_ONLY, HamiltonianSpec,
                           build)
from .opalg import BETA, OperatorExpr, SIG, X

__all__ = [
    "CONVENTIONS", "CALIBRATED_CONVENTION", "BoostGenerator",
    "spin_boost_generator", "boost_increment", "trajectory_neutrality_check",
    "calibration_report",
]

CONVENTIONS = ("plain", "times_i", "calibrated")
CALIBRATED_CONVENTION = "calibrated"


@dataclass(frozen=True)
class BoostGenerator:
    """The three generator components at a fixed mu_a."""

    mu_a: Fraction
    components: tuple  # (chi_x, chi_y, chi_z) as OperatorExpr


def spin_boost_generator(mu_a) -> BoostGenerator:
    """The generator family member at mu_a, components in canonical form."""
    mu_a = Fraction(mu_a)
    kappa = (1 + mu_a) * Fraction(1, 4) * (-oa.IMAG) * oa.symbol("c", -2)
    comps = tuple(kappa * BETA * comp for comp in oa.cross(SIG, X))
    return BoostGenerator(mu_a=mu_a, components=comps)


def _a_dot_chi(gen: BoostGenerator) -> OperatorExpr:
    # field axis fixed to z
    return oa.symbol("a_z") * gen.components[2]


def boost_increment(gen: BoostGenerator, h0: OperatorExpr,
                    convention: str = CALIBRATED_CONVENTION) -> OperatorExpr:
    """The Hamiltonian increment generated by gen against h0."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if not oa.is_hermitian(h0):
        raise ValueError("h0 must be Hermitian")
    adc = _a_dot_chi(gen)
    if convention == "plain":
        return oa.commutator(adc, h0)
    if convention == "times_i":
        return oa.IMAG * oa.commutator(adc, h0)
    return BETA * oa.commutator(h0, adc)


def trajectory_neutrality_check(gen: BoostGenerator,
                                h0: OperatorExpr) -> bool:
    """True when every increment monomial carries a sigma factor.

    A sigma-free monomial would feed back into the orbital motion; the
    generator family is built so the induced increment is pure spin-orbit.
    """
    inc = boost_increment(gen, h0, CALIBRATED_CONVENTION)
    return all(genpart[3] != 0 for genpart, _ in inc.monomials())


def reference_spin_term(mu_a) -> OperatorExpr:
    """The accelerational spin term the calibrated increment must equal."""
    return build(HamiltonianSpec(ACCELERATIONAL, SPIN_ONLY,
                                 mu_a=Fraction(mu_a)))


def calibration_report(mu_a=Fraction(0)) -> list:
    """Each convention reading with its Hermiticity and target match.

    Returns [(convention, hermitian, matches_reference)]; exactly the
    calibrated reading must match.
    """
    gen = spin_boost_generator(mu_a)
    h0 = build(HamiltonianSpec(FREE))
    target = reference_spin_term(mu_a)
    rows = []
    for conv in CONVENTIONS:
        inc = boost_increment(gen, h0, conv)
        rows.append((conv, oa.is_hermitian(inc), inc == target))
    return rows
