"""Symbolic self-check suite behind the verify command.

Every check is exact rational algebra; there is nothing numeric to seed or
tune.  The mutation hook deliberately doubles the gravitational spin
coefficient so the suite can demonstrate that it catches a planted bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import boostgen
from . import opalg as oa
from . import syntax
from .hamiltonians import (ACCELERATIONAL, FREE, GRAVITATIONAL, SPIN_ONLY,
                           HamiltonianSpec, TermFlags, build,
                           spin_orbit_identity_check)

__all__ = ["CheckResult", "MUTATIONS", "run_checks", "format_report",
           "all_passed"]

MUTATIONS = ("spin-coefficient",)

_SPIN_PATTERN = (1, (0, 0, 0), (1, 0, 0), 2)  # beta p_x sigma_y

_SWEEP = [Fraction(k, 2) for k in range(-10, 5)]  # -5 .. 2 by halves


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # PASS / FAIL / INFO
    detail: str


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, "PASS" if ok else "FAIL", detail)


def _describe(expr: oa.OperatorExpr, limit: int = 70) -> str:
    text = syntax.format_expr(expr)
    if len(text) > limit:
        text = text[:limit] + " ..."
    return text


def run_checks(mu_a=Fraction(0), mutate: str | None = None) -> list:
    """Run the full suite; returns CheckResult rows in print order."""
    if mutate is not None and mutate not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutate!r}")
    mu_a = Fraction(mu_a)
    one_plus = 1 + mu_a

    grav = build(HamiltonianSpec(GRAVITATIONAL))
    grav_spin = build(HamiltonianSpec(GRAVITATIONAL, SPIN_ONLY))
    if mutate == "spin-coefficient":
        grav = grav + grav_spin
        grav_spin = grav_spin + grav_spin

    results = []

    for name, expr in (("gravitational-hermitian", grav),
                       ("accelerational-hermitian",
                        build(HamiltonianSpec(ACCELERATIONAL, mu_a=mu_a))),
                       ("free-hermitian", build(HamiltonianSpec(FREE)))):
        results.append(_result(name, oa.is_hermitian(expr),
                               "adjoint equals expression"
                               if oa.is_hermitian(expr)
                               else "adjoint differs"))

    tidal = build(HamiltonianSpec(GRAVITATIONAL, TermFlags(
        rest_mass=False, potential=False, kinetic=False,
        kinetic_redshift=False, spin=False, tidal=True)))
    defect = tidal - tidal.adjoint()
    results.append(CheckResult(
        "tidal-ordering", "INFO",
        "literally ordered correction is not self-adjoint on its own; "
        f"defect = {_describe(defect)}"))

    def ratio_of(g_expr, a_expr):
        num = g_expr.coefficient_of(_SPIN_PATTERN)
        den = a_expr.coefficient_of(_SPIN_PATTERN)
        if den.is_zero:
            raise ZeroDivisionError
        return (num * den.inverse()).as_fraction()

    acc0 = build(HamiltonianSpec(ACCELERATIONAL, SPIN_ONLY, mu_a=Fraction(0)))
    acc0 = acc0.substitute({"a_z": "-g_z"})
    ratio = ratio_of(grav_spin, acc0)
    results.append(_result("spin-ratio-minus-2", ratio == Fraction(-2),
                           f"coefficient ratio = {ratio}"))

    if mu_a != 0:
        try:
            acc_mu = build(HamiltonianSpec(ACCELERATIONAL, SPIN_ONLY,
                                           mu_a=mu_a))
            ratio_mu = ratio_of(grav_spin,
                                acc_mu.substitute({"a_z": "-g_z"}))
            detail = f"coefficient ratio = {ratio_mu}"
        except ZeroDivisionError:
            detail = ("accelerational spin term vanishes "
                      "(1 + mu_a = 0); ratio undefined")
        results.append(CheckResult(f"ratio-at-mu-a-{mu_a}", "INFO", detail))

    def residual_of(mu):
        acc = build(HamiltonianSpec(ACCELERATIONAL, mu_a=mu))
        return grav - acc.substitute({"a_z": "-g_z"})

    res3 = residual_of(Fraction(-3))
    results.append(_result("residual-zero-at-minus-3", res3.is_zero,
                           "gravitational and accelerational builds agree "
                           "at a = -g" if res3.is_zero
                           else f"residual = {_describe(res3)}"))

    offenders = [mu for mu in _SWEEP if mu != -3 and residual_of(mu).is_zero]
    results.append(_result("residual-nonzero-sweep", not offenders,
                           "residual nonzero at every swept mu_a except -3"
                           if not offenders
                           else f"unexpected zero at mu_a in {offenders}"))

    res_mu = residual_of(mu_a)
    results.append(CheckResult(
        f"residual-at-mu-a-{mu_a}", "INFO",
        "0 (exact)" if res_mu.is_zero
        else f"{len(tuple(res_mu.monomials()))} monomial(s): "
             f"{_describe(res_mu)}"))

    gen = boostgen.spin_boost_generator(mu_a)
    h0 = build(HamiltonianSpec(FREE))
    reference = boostgen.reference_spin_term(mu_a)
    for conv, herm, matches in boostgen.calibration_report(mu_a):
        results.append(CheckResult(
            f"calibration-{conv}", "INFO",
            f"hermitian={'yes' if herm else 'no'} "
            f"matches-spin-term={'yes' if matches else 'no'}"))
    increment = boostgen.boost_increment(gen, h0)
    note = " (both vanish at 1 + mu_a = 0)" if one_plus == 0 else ""
    results.append(_result("calibrated-increment-matches-spin-term",
                           increment == reference,
                           f"exact equality at mu_a = {mu_a}" + note
                           if increment == reference
                           else f"difference = "
                                f"{_describe(increment - reference)}"))

    base = boostgen.boost_increment(boostgen.spin_boost_generator(Fraction(0)),
                                    h0)
    bad = [mu for mu in (Fraction(-3), Fraction(-1), Fraction(1, 2),
                         Fraction(2), Fraction(-1, 2))
           if boostgen.boost_increment(boostgen.spin_boost_generator(mu), h0)
           != oa.scale(1 + mu, base)]
    results.append(_result("increment-linear-in-one-plus-mu", not bad,
                           "increment scales exactly with (1 + mu_a)"
                           if not bad else f"nonlinear at mu_a in {bad}"))

    neutral = boostgen.trajectory_neutrality_check(gen, h0)
    detail = "every increment monomial carries a spin factor"
    if one_plus == 0:
        detail += " (vacuous: increment vanishes)"
    results.append(_result("trajectory-neutrality", neutral,
                           detail if neutral
                           else "found a spin-free increment monomial"))

    results.append(_result("spin-orbit-identity", spin_orbit_identity_check(),
                           "sigma.(x cross p) = (2/hbar) L.S"))
    return results


def format_report(results) -> str:
    return "\n".join(f"{r.status:<4} {r.name}: {r.detail}"
                     for r in results) + "\n"


def all_passed(results) -> bool:
    return all(r.status != "FAIL" for r in results)
