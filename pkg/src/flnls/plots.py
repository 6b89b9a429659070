"""Figure rendering for the CLI report paths (PNG next to each CSV)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "groundstate_figure",
    "conservation_figure",
    "stability_figure",
    "sweep_figure",
]


def _save(fig, outdir: Path, name: str) -> Path:
    path = Path(outdir) / name
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def groundstate_figure(outdir, result, bound: float) -> Path:
    grid = result.phi.grid
    fig, (ax_profile, ax_trace) = plt.subplots(1, 2, figsize=(10, 4))
    if grid.dim == 1:
        x = grid.axis_coordinates()
        ax_profile.plot(x, np.abs(result.phi.values), lw=1.5)
        ax_profile.set_xlabel("x")
        ax_profile.set_ylabel("|phi|")
    else:
        half = grid.extent / 2.0
        im = ax_profile.imshow(
            np.abs(result.phi.values).T,
            origin="lower",
            extent=(-half, half, -half, half),
            cmap="viridis",
        )
        fig.colorbar(im, ax=ax_profile, label="|phi|")
        ax_profile.set_xlabel("x")
        ax_profile.set_ylabel("y")
    ax_profile.set_title("ground state profile")

    trace = result.action_trace
    ax_trace.semilogy(np.maximum(trace - trace.min(), 1e-18), lw=1.0)
    ax_trace.axhline(max(bound - trace.min(), 1e-18), color="k", ls="--",
                     lw=0.8, label="closed-form lower bound")
    ax_trace.set_xlabel("iteration")
    ax_trace.set_ylabel("action - best")
    ax_trace.set_title(f"action trace, d = {result.d_omega:.6f}")
    ax_trace.legend(fontsize=8)
    return _save(fig, outdir, "groundstate.png")


def conservation_figure(outdir, report) -> Path:
    fig, (ax_q, ax_e) = plt.subplots(1, 2, figsize=(10, 4))
    t = report.times
    q0 = report.charge[0]
    ax_q.plot(t, np.abs(report.charge - q0) / abs(q0), lw=1.0)
    ax_q.set_yscale("log")
    ax_q.set_xlabel("t")
    ax_q.set_ylabel("relative charge drift")
    ax_q.set_title(f"max {report.max_charge_drift:.2e}")

    e0 = report.energy_m[0]
    scale = abs(e0) if e0 != 0.0 else 1.0
    ax_e.plot(t, np.abs(report.energy_m - e0) / scale, lw=1.0)
    ax_e.set_yscale("log")
    ax_e.set_xlabel("t")
    ax_e.set_ylabel("relative energy drift")
    ax_e.set_title(f"max {report.max_energy_drift:.2e}")
    return _save(fig, outdir, "conservation.png")


def stability_figure(outdir, reports, pass_ratio: float) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for rep in reports:
        ax.plot(rep.times, rep.distance, lw=1.0, label=f"seed {rep.seed}")
        if rep.delta0 > 0:
            ax.axhline(pass_ratio * rep.delta0, color="gray", ls=":", lw=0.6)
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("distance to ground-state orbit")
    ax.set_title("orbital stability")
    ax.legend(fontsize=8)
    return _save(fig, outdir, "stability.png")


def sweep_figure(outdir, rows) -> Path:
    """rows: list of dicts with s, omega, d_omega, bound."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    s_values = sorted({row["s"] for row in rows})
    for s in s_values:
        pts = sorted((r["omega"], r["d_omega"], r["bound"])
                     for r in rows if r["s"] == s)
        omegas = [p[0] for p in pts]
        ax.plot(omegas, [p[1] for p in pts], "o-", label=f"d, s={s:g}")
        ax.plot(omegas, [p[2] for p in pts], "--", lw=0.8,
                label=f"bound, s={s:g}")
    ax.set_yscale("log")
    ax.set_xlabel("omega")
    ax.set_ylabel("minimal action")
    ax.legend(fontsize=8)
    return _save(fig, outdir, "sweep.png")
