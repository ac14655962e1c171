"""Figure rendering for the report paths of the CLI.

Everything draws through the Agg backend and writes PNG files next to the
delimited data outputs; nothing here opens a window.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_trajectory", "plot_probe", "plot_scales"]


def plot_trajectory(traj, path: str) -> None:
    """Bloch components on top, spherical angles below, against time."""
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    for series, label in ((traj.sx, "sx"), (traj.sy, "sy"), (traj.sz, "sz")):
        ax1.plot(traj.t_s, series, label=label, linewidth=1.0)
    ax1.set_ylabel("Bloch components")
    ax1.legend(loc="upper right", fontsize="small")
    ax1.grid(alpha=0.3)

    ax2.plot(traj.t_s, traj.theta, label="theta", linewidth=1.0)
    phi = np.where(traj.phi_indeterminate, np.nan, traj.phi)
    ax2.plot(traj.t_s, phi, label="phi", linewidth=1.0)
    ax2.set_xlabel("t [s]")
    ax2.set_ylabel("angle [rad]")
    ax2.legend(loc="upper right", fontsize="small")
    ax2.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_probe(report, path: str) -> None:
    """Per-member opening-angle rates and their ensemble means."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2))
    markers = {"plus": "o", "minus": "x", "mirror": "^"}
    for theta in report.thetas:
        for label, mk in markers.items():
            rates = report.member_theta_rates[(theta, label)]
            ax1.scatter(report.azimuths, rates, s=12, marker=mk,
                        label=f"theta={theta:.3f} {label}")
    ax1.set_xlabel("momentum azimuth [rad]")
    ax1.set_ylabel("initial d(theta)/dt [rad/s]")
    ax1.grid(alpha=0.3)
    ax1.legend(fontsize="x-small", ncol=2)

    width = 0.25
    xs = np.arange(len(report.thetas))
    for k, label in enumerate(("plus", "minus", "mirror")):
        vals = [report.per_theta[t][f"dtheta_dt_{label}"]
                for t in report.thetas]
        ax2.bar(xs + (k - 1) * width, vals, width, label=label)
    ax2.set_xticks(xs)
    ax2.set_xticklabels([f"{t:.3f}" for t in report.thetas])
    ax2.set_xlabel("theta0 [rad]")
    ax2.set_ylabel("ensemble mean d(theta)/dt [rad/s]")
    ax2.axhline(0.0, color="k", linewidth=0.8)
    ax2.grid(alpha=0.3, axis="y")
    ax2.legend(fontsize="small")
    fig.suptitle(f"mirror-angle probe, mu_a={report.mu_a:g}, "
                 f"omega_char={report.omega_char_rad_s:.3e} rad/s")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_scales(rows, path: str) -> None:
    """Log-scale bar chart of the precession length scale per body."""
    fig, ax = plt.subplots(figsize=(7, 1.2 + 0.9 * len(rows)))
    names = [r.name for r in rows]
    finite = [r.x_a_cm if math.isfinite(r.x_a_cm) else 0.0 for r in rows]
    ys = np.arange(len(rows))
    ax.barh(ys, finite, color="tab:blue")
    for y, row in zip(ys, rows):
        note = (f"{row.x_a_cm:.2e} cm = {row.x_a_ly:.3g} ly"
                if math.isfinite(row.x_a_cm) else "infinite")
        ax.text(max(finite) * 1.02 if max(finite) > 0 else 1.0, y, note,
                va="center", fontsize="small")
    ax.set_yticks(ys)
    ax.set_yticklabels(names)
    ax.set_xscale("log")
    ax.set_xlabel("length scale [cm]")
    ax.grid(alpha=0.3, axis="x")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
