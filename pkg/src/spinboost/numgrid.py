"""Numeric realization of operator expressions on spin-1/2 times a 1-D grid.

The grid carries the z axis with periodic boundaries; z is diagonal and p_z
is spectral (FFT).  Transverse momenta p_x, p_y enter as c-number scalars,
transverse positions are pinned to the origin, and beta is realized as +1
(the particle block).

Internally everything is nondimensionalized to hbar = m = 1 with a length
unit of 1 cm: the cgs magnitudes of the relativistic correction terms differ
from the rest energy by tens of orders of magnitude, so evolving in raw cgs
would lose them to roundoff.  Times, lengths, and momenta convert exactly at
the interface (seconds, cm, g cm/s in; seconds and cm out).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import opalg as oa
from .hamiltonians import (ACCELERATIONAL, GRAVITATIONAL, SPIN_ONLY,
                           HamiltonianSpec, TermFlags, build)
from .opalg import OperatorExpr

__all__ = [
    "Grid1D", "PhysParams", "RealizationContext", "MatrixOp", "SpinorState",
    "SpinExpectation", "Trajectory", "ProbeReport", "realize",
    "gaussian_packet", "spin_expect", "interior_support_fraction", "evolve",
    "trajectory_to_csv", "precession_frequency",
    "signed_precession_frequency", "cow_phase", "symmetry_probe",
    "EVOLVE_METHODS",
]

EVOLVE_METHODS = ("eigen_exponential", "crank_nicolson")

_PAULI = (np.eye(2, dtype=complex),
          np.array([[0, 1], [1, 0]], dtype=complex),
          np.array([[0, -1j], [1j, 0]], dtype=complex),
          np.array([[1, 0], [0, -1]], dtype=complex))


@dataclass(frozen=True)
class Grid1D:
    """Periodic 1-D grid centered on z = 0; n_points a power of two >= 32."""

    n_points: int
    length_cm: float

    def __post_init__(self):
        n = self.n_points
        if n < 32 or (n & (n - 1)) != 0:
            raise ValueError("n_points must be a power of two >= 32")
        if not (self.length_cm > 0 and math.isfinite(self.length_cm)):
            raise ValueError("length_cm must be positive and finite")

    @property
    def dz_cm(self) -> float:
        return self.length_cm / self.n_points

    @property
    def z_cm(self) -> np.ndarray:
        n = self.n_points
        return (np.arange(n) - n // 2) * self.dz_cm


@dataclass(frozen=True)
class PhysParams:
    """Numeric cgs parameter values bound into realizations."""

    m_g: float = 1.6749e-24
    c_cms: float = 2.99792458e10
    hbar_erg_s: float = 1.0546e-27
    a_cms2: float = 0.0
    g_cms2: float = 0.0
    mu_a: float = 0.0

    def __post_init__(self):
        if not (self.m_g > 0 and self.c_cms > 0 and self.hbar_erg_s > 0):
            raise ValueError("m_g, c_cms, hbar_erg_s must be positive")


@dataclass(frozen=True)
class RealizationContext:
    """Grid, parameters, pinned transverse momenta, and unit scales."""

    grid: Grid1D
    params: PhysParams = field(default_factory=PhysParams)
    p_x_gcms: float = 0.0
    p_y_gcms: float = 0.0
    length_unit_cm: float = 1.0

    @property
    def time_unit_s(self) -> float:
        # the scale making hbar = m = 1
        return self.params.m_g * self.length_unit_cm ** 2 / self.params.hbar_erg_s

    @property
    def energy_unit_erg(self) -> float:
        return self.params.hbar_erg_s / self.time_unit_s

    @property
    def momentum_unit_gcms(self) -> float:
        return self.params.hbar_erg_s / self.length_unit_cm

    def bindings(self) -> dict:
        t0, l0 = self.time_unit_s, self.length_unit_cm
        return {
            "hbar": 1.0,
            "m": 1.0,
            "c": self.params.c_cms * t0 / l0,
            "a_z": self.params.a_cms2 * t0 ** 2 / l0,
            "g_z": self.params.g_cms2 * t0 ** 2 / l0,
            "mu_a": self.params.mu_a,
        }

    @property
    def p_perp_gcms(self) -> float:
        return math.hypot(self.p_x_gcms, self.p_y_gcms)


@dataclass
class MatrixOp:
    """Dense matrix realization of an expression, dimension 2 n_points."""

    matrix: np.ndarray
    hermitian: bool
    ctx: RealizationContext


_P_MATRIX_CACHE: dict = {}


def _momentum_matrix(n: int, dz: float) -> np.ndarray:
    key = (n, dz)
    if key not in _P_MATRIX_CACHE:
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=dz)
        f = np.fft.fft(np.eye(n), axis=0)
        _P_MATRIX_CACHE[key] = np.fft.ifft(k[:, None] * f, axis=0)
    return _P_MATRIX_CACHE[key]


def realize(expr: OperatorExpr, ctx: RealizationContext) -> MatrixOp:
    """Realize expr as a dense matrix on spin tensor grid.

    Monomials with transverse position factors multiply the pinned value
    x_x = x_y = 0 and are dropped with a warning.  Scalar symbols without a
    numeric binding are rejected by name.
    """
    n = ctx.grid.n_points
    l0 = ctx.length_unit_cm
    z = ctx.grid.z_cm / l0
    dz = ctx.grid.dz_cm / l0
    bind = ctx.bindings()
    px = ctx.p_x_gcms / ctx.momentum_unit_gcms
    py = ctx.p_y_gcms / ctx.momentum_unit_gcms
    pz_mat = _momentum_matrix(n, dz)

    retained = []
    dropped = 0
    for genpart, coeff in expr.monomials():
        if genpart[1][0] or genpart[1][1]:
            dropped += 1
            continue
        retained.append((genpart, coeff))
    if dropped:
        warnings.warn(f"dropped {dropped} monomial(s) with transverse "
                      "position factors (x_x = x_y = 0 on this grid)",
                      RuntimeWarning, stacklevel=2)

    total = np.zeros((2 * n, 2 * n), dtype=complex)
    pz_powers = {0: np.eye(n, dtype=complex)}
    for genpart, coeff in retained:
        _, xe, pe, sig = genpart  # beta realized as +1
        value = coeff.eval(bind)
        value *= px ** pe[0] * py ** pe[1]
        kp = pe[2]
        if kp not in pz_powers:
            pz_powers[kp] = np.linalg.matrix_power(pz_mat, kp)
        orb = pz_powers[kp]
        if xe[2]:
            orb = (z ** xe[2])[:, None] * orb
        total += value * np.kron(_PAULI[sig], orb)

    tag = oa.is_hermitian(OperatorExpr(tuple(retained)))
    if tag:
        scale = np.abs(total).max()
        defect = np.abs(total - total.conj().T).max()
        if scale > 0 and defect > 1e-10 * scale:
            raise ArithmeticError(
                f"realization lost Hermiticity: defect {defect:.3e} "
                f"vs scale {scale:.3e}")
    return MatrixOp(matrix=total, hermitian=tag, ctx=ctx)


# ---------------------------------------------------------------------------
# states


@dataclass
class SpinorState:
    """Two-component wavefunction on the grid, unit norm."""

    psi: np.ndarray  # shape (2, n)
    ctx: RealizationContext

    def __post_init__(self):
        n = self.ctx.grid.n_points
        if self.psi.shape != (2, n):
            raise ValueError(f"psi must have shape (2, {n})")
        nrm = self.norm
        if not (abs(nrm - 1.0) <= 1e-12):
            raise ValueError(f"state norm is {nrm!r}, expected 1 "
                             "(normalize before constructing)")

    @property
    def _dz(self) -> float:
        return self.ctx.grid.dz_cm / self.ctx.length_unit_cm

    @property
    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.psi) ** 2)) * self._dz)


def gaussian_packet(ctx: RealizationContext, center_cm: float = 0.0,
                    width_cm: float | None = None, k_per_cm: float = 0.0,
                    theta: float = 0.0, phi: float = 0.0) -> SpinorState:
    """Normalized gaussian packet times the Bloch spinor (theta, phi)."""
    if width_cm is None:
        width_cm = ctx.grid.length_cm / 12.0
    if width_cm <= 0:
        raise ValueError("width_cm must be positive")
    l0 = ctx.length_unit_cm
    z = ctx.grid.z_cm / l0
    z0, w = center_cm / l0, width_cm / l0
    dz = ctx.grid.dz_cm / l0
    orb = np.exp(-((z - z0) ** 2) / (4.0 * w * w) + 1j * (k_per_cm * l0) * z)
    orb /= math.sqrt(float(np.sum(np.abs(orb) ** 2)) * dz)
    spinor = np.array([math.cos(theta / 2.0),
                       complex(math.cos(phi), math.sin(phi))
                       * math.sin(theta / 2.0)], dtype=complex)
    return SpinorState(psi=np.outer(spinor, orb), ctx=ctx)


def interior_support_fraction(state: SpinorState) -> float:
    """Probability mass on the central 50% of the grid.

    Position-operator checks are only trustworthy for packets that stay
    clear of the periodic seam; callers gate on this being close to 1.
    """
    z = state.ctx.grid.z_cm
    mask = np.abs(z) <= state.ctx.grid.length_cm / 4.0
    dens = np.sum(np.abs(state.psi) ** 2, axis=0) * state._dz
    return float(dens[mask].sum() / dens.sum())


@dataclass(frozen=True)
class SpinExpectation:
    sx: float
    sy: float
    sz: float
    theta: float
    phi: float              # nan when indeterminate
    phi_indeterminate: bool


def spin_expect(state: SpinorState) -> SpinExpectation:
    """Bloch vector and angles; phi is flagged near poles and at zero length."""
    up, dn = state.psi[0], state.psi[1]
    dz = state._dz
    cross_ud = complex(np.sum(np.conj(up) * dn)) * dz
    sx = 2.0 * cross_ud.real
    sy = 2.0 * cross_ud.imag
    sz = float(np.sum(np.abs(up) ** 2 - np.abs(dn) ** 2)) * dz
    r = math.sqrt(sx * sx + sy * sy + sz * sz)
    if r < 1e-9:
        return SpinExpectation(sx, sy, sz, 0.0, math.nan, True)
    theta = math.acos(min(1.0, max(-1.0, sz / r)))
    if math.sin(theta) < 1e-9:
        return SpinExpectation(sx, sy, sz, theta, math.nan, True)
    phi = math.atan2(sy, sx)
    if phi <= -math.pi:
        phi = math.pi
    return SpinExpectation(sx, sy, sz, theta, phi, False)


# ---------------------------------------------------------------------------
# time evolution


@dataclass
class Trajectory:
    """Sampled observables, one row per step including t = 0."""

    t_s: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    norm: np.ndarray
    z_mean_cm: np.ndarray
    energy: np.ndarray          # <H> in scaled units, not serialized
    phi_indeterminate: np.ndarray
    method: str


def evolve(h: MatrixOp, state: SpinorState, dt_s: float, steps: int,
           method: str = "eigen_exponential") -> Trajectory:
    """Propagate state under h, sampling every step.

    eigen_exponential diagonalizes once and applies exact phases;
    crank_nicolson factors (1 + i H dt/2) once and solves per step.
    """
    if not h.hermitian:
        raise ValueError("evolution requires a Hermitian-tagged matrix")
    if not (dt_s > 0 and math.isfinite(dt_s)):
        raise ValueError("dt_s must be positive and finite")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if method not in EVOLVE_METHODS:
        raise ValueError(f"unknown method {method!r}")
    if h.ctx.grid != state.ctx.grid:
        raise ValueError("state and matrix live on different grids")

    ctx = state.ctx
    n = ctx.grid.n_points
    dz = ctx.grid.dz_cm / ctx.length_unit_cm
    z_cm = ctx.grid.z_cm
    dt = dt_s / ctx.time_unit_s
    m = h.matrix

    rows = steps + 1
    out = {k: np.empty(rows) for k in
           ("t", "sx", "sy", "sz", "theta", "phi", "norm", "z", "e")}
    flags = np.zeros(rows, dtype=bool)

    def record(i: int, psi_flat: np.ndarray):
        st = SpinorState.__new__(SpinorState)  # skip norm gate while sampling
        st.psi = psi_flat.reshape(2, n)
        st.ctx = ctx
        ex = spin_expect(st)
        dens = np.abs(st.psi) ** 2
        out["t"][i] = i * dt_s
        out["sx"][i], out["sy"][i], out["sz"][i] = ex.sx, ex.sy, ex.sz
        out["theta"][i], out["phi"][i] = ex.theta, ex.phi
        flags[i] = ex.phi_indeterminate
        out["norm"][i] = st.norm
        out["z"][i] = float((dens.sum(axis=0) * z_cm).sum()) * dz
        out["e"][i] = float(np.real(np.vdot(psi_flat, m @ psi_flat))) * dz

    psi = state.psi.reshape(2 * n).astype(complex)
    record(0, psi)
    if method == "eigen_exponential":
        w, v = np.linalg.eigh(m)
        coeff = v.conj().T @ psi
        phase = np.exp(-1j * w * dt)
        for i in range(1, rows):
            coeff *= phase
            record(i, v @ coeff)
    else:
        eye = np.eye(2 * n, dtype=complex)
        lu = scipy.linalg.lu_factor(eye + 0.5j * dt * m)
        b = eye - 0.5j * dt * m
        for i in range(1, rows):
            psi = scipy.linalg.lu_solve(lu, b @ psi)
            record(i, psi)

    return Trajectory(t_s=out["t"], sx=out["sx"], sy=out["sy"], sz=out["sz"],
                      theta=out["theta"], phi=out["phi"], norm=out["norm"],
                      z_mean_cm=out["z"], energy=out["e"],
                      phi_indeterminate=flags, method=method)


def trajectory_to_csv(traj: Trajectory) -> str:
    lines = ["t,sx,sy,sz,theta,phi,norm,z_mean"]
    for i in range(len(traj.t_s)):
        vals = (traj.t_s[i], traj.sx[i], traj.sy[i], traj.sz[i],
                traj.theta[i], traj.phi[i], traj.norm[i], traj.z_mean_cm[i])
        lines.append(",".join(f"{v:.17g}" for v in vals))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# frequency extraction


def _dtft_power(sig: np.ndarray, t: np.ndarray, omega: float) -> float:
    return abs(np.sum(sig * np.exp(-1j * omega * t))) ** 2


def precession_frequency(traj: Trajectory) -> float:
    """Dominant angular frequency of the Bloch components, rad/s.

    Discrete Fourier peak refined by iterated quadratic (parabolic)
    interpolation of the windowed spectrum.  The two largest-swing
    components are paired into one complex series, so circular precession
    puts all its weight on one side of the spectrum and the mirror-lobe
    bias of a single real series drops out.  Returns 0.0 when no component
    oscillates above threshold (static spin).
    """
    demeaned = [c - np.mean(c) for c in (traj.sx, traj.sy, traj.sz)]
    amps = [float(np.max(np.abs(c))) for c in demeaned]
    order = sorted(range(3), key=lambda k: -amps[k])
    if amps[order[0]] < 1e-9:
        return 0.0
    sig = demeaned[order[0]] + 1j * demeaned[order[1]]
    t = traj.t_s
    n = len(t)
    if n < 4:
        return 0.0
    dt = t[1] - t[0]
    windowed = sig * np.hanning(n)
    spectrum = np.abs(np.fft.fft(windowed))
    k = int(np.argmax(spectrum[1:])) + 1  # skip the DC bin
    omega = 2.0 * math.pi * np.fft.fftfreq(n, d=dt)[k]
    h = 2.0 * math.pi / (n * dt)
    for _ in range(64):
        pm = _dtft_power(windowed, t, omega - h)
        p0 = _dtft_power(windowed, t, omega)
        pp = _dtft_power(windowed, t, omega + h)
        denom = pm - 2.0 * p0 + pp
        if denom == 0.0:
            break
        delta = 0.5 * (pm - pp) / denom
        delta = min(1.0, max(-1.0, delta))
        omega += delta * h
        h *= 0.6
    return abs(omega)


def signed_precession_frequency(traj: Trajectory, axis) -> float:
    """Angular rate of the Bloch vector about axis, sign right-handed."""
    ax = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(ax)
    if norm == 0:
        raise ValueError("axis must be nonzero")
    ax /= norm
    helper = np.array([0.0, 0.0, 1.0]) if abs(ax[2]) < 0.9 \
        else np.array([1.0, 0.0, 0.0])
    u = np.cross(ax, helper)
    u /= np.linalg.norm(u)
    v = np.cross(ax, u)
    s = np.vstack([traj.sx, traj.sy, traj.sz])
    angle = np.unwrap(np.arctan2(v @ s, u @ s))
    return float(np.polyfit(traj.t_s, angle, 1)[0])


# ---------------------------------------------------------------------------
# interferometer phase


def cow_phase(kind: str, height_difference_cm: float, traversal_time_s: float,
              params: PhysParams) -> float:
    """Phase between two arms separated in height, from the potential term.

    The linear-potential coefficient is extracted from the requested
    Hamiltonian build, so the gravitational and accelerational paths go
    through their own distinct terms; phase = -(dV) T / hbar.
    """
    if kind not in (GRAVITATIONAL, ACCELERATIONAL):
        raise ValueError(f"kind must be gravitational or accelerational, "
                         f"got {kind!r}")
    if height_difference_cm < 0 or traversal_time_s < 0:
        raise ValueError("geometry must be nonnegative")
    flags = TermFlags(rest_mass=False, potential=True, kinetic=False,
                      kinetic_redshift=False, spin=False, tidal=False)
    if kind == GRAVITATIONAL:
        spec = HamiltonianSpec(GRAVITATIONAL, flags)
    else:
        spec = HamiltonianSpec(ACCELERATIONAL, flags,
                               mu_a=Fraction(params.mu_a).limit_denominator(10 ** 12))
    expr = build(spec)
    coeff = expr.coefficient_of((1, (0, 0, 1), (0, 0, 0), 0))
    value = coeff.eval({"m": params.m_g, "g_z": params.g_cms2,
                        "a_z": params.a_cms2})
    if abs(value.imag) > 0:
        raise ArithmeticError("potential coefficient must be real")
    return -value.real * height_difference_cm * traversal_time_s \
        / params.hbar_erg_s


# ---------------------------------------------------------------------------
# mirror-angle probe


@dataclass
class ProbeReport:
    """Ensemble rates per opening angle, plus per-member detail for audits."""

    mu_a: float
    a_cms2: float
    p_perp_gcms: float
    omega_char_rad_s: float
    seed: int
    thetas: tuple
    azimuths: np.ndarray
    per_theta: dict          # theta -> {the five reported fields}
    member_theta_rates: dict  # (theta, 'plus'|'minus'|'mirror') -> np.ndarray
    member_phi_rates: dict    # theta -> np.ndarray (under +a)

    def to_json(self) -> str:
        payload = {repr(theta): {k: v for k, v in fields.items()}
                   for theta, fields in self.per_theta.items()}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _initial_rates(h: MatrixOp, theta0: float, dt_s: float):
    state = gaussian_packet(h.ctx, theta=theta0, phi=0.0)
    traj = evolve(h, state, dt_s, 4, "eigen_exponential")
    if traj.phi_indeterminate.any():
        raise ArithmeticError("phi became indeterminate inside the probe window")
    dtheta = float(np.polyfit(traj.t_s, traj.theta, 1)[0])
    dphi = float(np.polyfit(traj.t_s, np.unwrap(traj.phi), 1)[0])
    return dtheta, dphi


def symmetry_probe(mu_a, thetas, ctx: RealizationContext, n_pairs: int = 24,
                   seed: int = 0) -> ProbeReport:
    """Ensemble-averaged opening-angle rates under the spin term alone.

    The ensemble holds |p_perp| fixed and draws transverse momentum azimuths
    uniformly (stratified, with antithetic partners at azimuth + pi so the
    odd component of the initial rate cancels in pairs).  For each requested
    theta it reports the mean initial d(theta)/dt under +a and -a, the mean
    at the mirror angle pi - theta, and the per-member phi drift statistics
    under +a.
    """
    thetas = tuple(float(t) for t in thetas)
    if not thetas:
        raise ValueError("thetas must be nonempty")
    for t in thetas:
        if not (0.0 < t < math.pi) or math.sin(t) < 1e-6:
            raise ValueError(f"theta0 = {t!r} is at or too close to a pole")
    p_perp = ctx.p_perp_gcms
    if p_perp <= 0:
        raise ValueError("context must carry a nonzero transverse momentum")
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    params = ctx.params
    if params.a_cms2 == 0:
        raise ValueError("params.a_cms2 must be nonzero")

    mu_a = float(mu_a)
    omega_char = abs(1.0 + mu_a) * abs(params.a_cms2) * p_perp \
        / (2.0 * params.m_g * params.c_cms ** 2)
    dt_s = (1e-4 * 2.0 * math.pi / omega_char / 4.0) if omega_char > 0 else 1.0

    rng = np.random.default_rng(seed)
    base = 2.0 * math.pi * (np.arange(n_pairs) + rng.random(n_pairs)) / n_pairs
    azimuths = np.concatenate([base, base + math.pi])

    mu_frac = Fraction(mu_a).limit_denominator(10 ** 12)
    spin_expr = build(HamiltonianSpec(ACCELERATIONAL, SPIN_ONLY, mu_a=mu_frac))

    member_theta: dict = {}
    member_phi: dict = {}
    angle_list = []
    for theta0 in thetas:
        angle_list.append((theta0, "plus", theta0, +1.0))
        angle_list.append((theta0, "minus", theta0, -1.0))
        angle_list.append((theta0, "mirror", math.pi - theta0, +1.0))
    for key in angle_list:
        member_theta[(key[0], key[1])] = np.empty(len(azimuths))
    for theta0 in thetas:
        member_phi[theta0] = np.empty(len(azimuths))

    for j, az in enumerate(azimuths):
        ctx_m = replace(ctx, p_x_gcms=p_perp * math.cos(az),
                        p_y_gcms=p_perp * math.sin(az))
        h_plus = realize(spin_expr, ctx_m)
        ctx_neg = replace(ctx_m, params=replace(params,
                                                a_cms2=-params.a_cms2))
        h_minus = realize(spin_expr, ctx_neg)
        for theta0, label, angle, sign in angle_list:
            h = h_plus if sign > 0 else h_minus
            dtheta, dphi = _initial_rates(h, angle, dt_s)
            member_theta[(theta0, label)][j] = dtheta
            if label == "plus":
                member_phi[theta0][j] = dphi

    per_theta = {}
    for theta0 in thetas:
        per_theta[theta0] = {
            "dtheta_dt_plus": float(np.mean(member_theta[(theta0, "plus")])),
            "dtheta_dt_minus": float(np.mean(member_theta[(theta0, "minus")])),
            "dtheta_dt_mirror": float(np.mean(member_theta[(theta0, "mirror")])),
            "phi_drift_mean": float(np.mean(member_phi[theta0])),
            "phi_drift_std": float(np.std(member_phi[theta0])),
        }
    return ProbeReport(mu_a=mu_a, a_cms2=params.a_cms2,
                       p_perp_gcms=p_perp, omega_char_rad_s=omega_char,
                       seed=seed, thetas=thetas, azimuths=azimuths,
                       per_theta=per_theta, member_theta_rates=member_theta,
                       member_phi_rates=member_phi)
