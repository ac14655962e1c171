"""Exact operator algebra and numeric dynamics for spin-1/2 particles in
uniform gravitational and accelerated frames, plus the anomalous
acceleration-moment boost generator and its observable consequences."""

from .astro import (Body, QuarkEstimate, ScalesRow, default_catalog,
                    length_scale, load_catalog, quark_commutator_estimate,
                    scales_table, surface_gravity)
from .boostgen import (BoostGenerator, boost_increment, calibration_report,
                       spin_boost_generator, trajectory_neutrality_check)
from .hamiltonians import (ACCELERATIONAL, FREE, GRAVITATIONAL, SPIN_ONLY,
                           HamiltonianSpec, TermFlags, build,
                           equivalence_residual, spin_orbit_identity_check,
                           spin_term_ratio)
from .numgrid import (Grid1D, MatrixOp, PhysParams, ProbeReport,
                      RealizationContext, SpinorState, Trajectory, cow_phase,
                      evolve, gaussian_packet, precession_frequency, realize,
                      signed_precession_frequency, spin_expect,
                      symmetry_probe, trajectory_to_csv)
from .opalg import (BETA, IMAG, ONE, P, SIG, X, ZERO, OperatorExpr, Scalar,
                    UnknownSymbolError, adjoint, commutator, cross, dot,
                    is_hermitian, position, momentum, pauli, symbol)
from .syntax import ParseError, format_expr, parse

__version__ = "0.1.0"
