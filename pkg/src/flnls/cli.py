"""Command-line driver for reproducible experiments.

Subcommands: groundstate | evolve | verify | stability | sweep.  Every run
reads one ``key = value`` config file, writes delimited reports (17
significant digits, byte-reproducible for identical config + seeds) plus
PNG figures into the output directory, and exits with a code that encodes
the outcome class:

    0  success
    1  configuration error
    2  ground-state solve did not converge
    3  conservation drift threshold exceeded
    4  non-finite field during evolution
    5  verification suite failure
    6  stability experiment failure
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .config import ConfigError, load_config_file, serialize
from .evolution import EvolveConfig, NonFiniteFieldError, evolve
from .fieldio import read_field, write_field
from .functionals import action_nehari, d_lower_bound
from .ground_state import (
    GroundStateError,
    GroundStateParams,
    gausson_reference,
    solve_ground_state,
)
from .sampling import gaussian_field, plane_wave
from .spectral import Field, boundary_magnitude, make_grid, spectral_tail
from .stability import stability_experiment
from .verify import run_suites

_BOUNDARY_DECAY = 1e-12
_SPECTRAL_TAIL = 1e-10


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(c) for c in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _grid_from_cfg(cfg):
    d, n, L = cfg["d"], cfg["n"], cfg["L"]
    if d not in (1, 2):
        raise ConfigError(f"field 'd': must be 1 or 2, got {d}")
    if n < 8 or (n & (n - 1)) != 0:
        raise ConfigError(f"field 'n': must be a power of two >= 8, got {n}")
    if not (L > 0):
        raise ConfigError(f"field 'L': must be positive, got {L}")
    return make_grid(d, n, L)


def _check_field_quality(u: Field, label: str) -> None:
    mag = boundary_magnitude(u)
    if mag > _BOUNDARY_DECAY:
        print(f"warning: {label} has boundary magnitude {mag:.2e} "
              f"(> {_BOUNDARY_DECAY:.0e}); torus truncation may be felt",
              file=sys.stderr)
    tail = spectral_tail(u)
    if tail > _SPECTRAL_TAIL:
        print(f"warning: {label} carries {tail:.2e} of its spectral power "
              f"in the top frequency third; the grid may be too coarse",
              file=sys.stderr)


def _solve_groundstate_from_cfg(cfg, grid):
    params = GroundStateParams(
        s=cfg["s"],
        omega=cfg["omega"],
        grid=grid,
        init_width=cfg.get("init_width", 2.0),
        step_size=cfg.get("step_size"),
        max_iters=cfg.get("max_iters", 50_000),
        action_tol=cfg.get("action_tol", 1e-11),
        residual_tol=cfg.get("residual_tol", 1e-7),
    )
    return solve_ground_state(params)


def cmd_groundstate(cfg, args, outdir: Path) -> int:
    grid = _grid_from_cfg(cfg)
    bound = d_lower_bound(cfg["omega"], cfg["s"], cfg["d"])
    try:
        result = _solve_groundstate_from_cfg(cfg, grid)
    except GroundStateError as exc:
        print(f"ground-state solve aborted: {exc}", file=sys.stderr)
        np.savetxt(outdir / "action_trace.csv", exc.trace, fmt="%.17g",
                   header="action", comments="")
        return 2

    rep = action_nehari(result.phi, cfg["s"], cfg["omega"])
    write_field(outdir / "phi.flnls", result.phi, cfg["s"])
    _write_csv(
        outdir / "result.csv",
        "s,omega,d_omega,bound,residual,converged,iterations",
        [(cfg["s"], cfg["omega"], result.d_omega, bound, result.residual,
          result.converged, len(result.action_trace))],
    )
    (outdir / "verification.txt").write_text(serialize({
        "I_omega": rep.nehari,
        "residual": result.residual,
        "d_omega": result.d_omega,
        "lower_bound": bound,
        "bound_margin": result.d_omega / bound - 1.0,
        "l2_sq": rep.l2_sq,
        "luxemburg": rep.luxemburg,
        "converged": result.converged,
    }))
    np.savetxt(outdir / "action_trace.csv", result.action_trace,
               fmt="%.17g", header="action", comments="")
    _check_field_quality(result.phi, "ground state")
    if not args.no_plots:
        from . import plots
        plots.groundstate_figure(outdir, result, bound)
    print(f"d_omega = {result.d_omega:.8f} (bound {bound:.8f}), "
          f"residual = {result.residual:.3e}, converged = {result.converged}")
    return 0 if result.converged else 2


def _initial_field(cfg, grid):
    kind = cfg["init"]
    if kind == "gaussian":
        return gaussian_field(grid, width=cfg["init_width"],
                              amplitude=cfg["init_amplitude"])
    if kind == "plane_wave":
        return plane_wave(grid, mode=cfg["init_mode"],
                          amplitude=cfg["init_amplitude"])
    if kind == "file":
        path = cfg.get("init_file")
        if not path:
            raise ConfigError("field 'init_file': required when init = file")
        try:
            field, _, _ = read_field(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"field 'init_file': {exc}") from None
        if field.grid != grid:
            raise ConfigError("field 'init_file': grid does not match d/n/L")
        return field
    raise ConfigError(f"field 'init': expected gaussian|plane_wave|file, got {kind!r}")


def _plane_wave_exact(cfg, grid, t: float) -> np.ndarray:
    amp = cfg["init_amplitude"]
    mode = cfg["init_mode"]
    base = plane_wave(grid, mode=mode, amplitude=amp).values
    k_mag = abs(2.0 * np.pi * mode / grid.extent) * math.sqrt(grid.dim)
    phase = -t * k_mag ** (2.0 * cfg["s"]) + t * math.log(abs(amp) ** 2)
    return base * np.exp(1j * phase)


def cmd_evolve(cfg, args, outdir: Path) -> int:
    grid = _grid_from_cfg(cfg)
    u0 = _initial_field(cfg, grid)
    try:
        run_cfg = EvolveConfig(s=cfg["s"], m=cfg["m"], tau=cfg["tau"],
                               t_final=cfg["t_final"],
                               snapshot_every=cfg["snapshot_every"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    _check_field_quality(u0, "initial field")
    try:
        snapshots, report = evolve(u0, run_cfg)
    except NonFiniteFieldError as exc:
        print(f"evolution aborted: {exc}", file=sys.stderr)
        return 4

    is_plane_wave = cfg["init"] == "plane_wave"
    header = "t,charge,energy_m"
    rows = []
    for i, t in enumerate(report.times):
        row = [t, report.charge[i], report.energy_m[i]]
        if is_plane_wave:
            exact = _plane_wave_exact(cfg, grid, t)
            err = math.sqrt(float(np.sum(np.abs(snapshots[i].values - exact) ** 2))
                            * grid.cell_volume)
            row.append(err)
        rows.append(row)
    if is_plane_wave:
        header += ",plane_wave_error"
    _write_csv(outdir / "conservation.csv", header, rows)

    if cfg["write_snapshots"]:
        snapdir = outdir / "snapshots"
        snapdir.mkdir(exist_ok=True)
        for t, snap in zip(report.times, snapshots):
            step = int(round(t / run_cfg.tau))
            write_field(snapdir / f"snap_{step:08d}.flnls", snap,
                        cfg["s"], time=t)
    write_field(outdir / "final.flnls", snapshots[-1], cfg["s"],
                time=float(report.times[-1]))
    if not args.no_plots:
        from . import plots
        plots.conservation_figure(outdir, report)

    print(f"steps = {run_cfg.n_steps}, charge drift = {report.max_charge_drift:.3e}, "
          f"energy drift = {report.max_energy_drift:.3e}")
    if (report.max_charge_drift > cfg["charge_drift_max"]
            or report.max_energy_drift > cfg["energy_drift_max"]):
        print("conservation drift thresholds exceeded", file=sys.stderr)
        return 3
    return 0


def cmd_verify(cfg, args, outdir: Path) -> int:
    seed = args.seed if args.seed is not None else cfg["seed"]
    try:
        results = run_suites(seed, cfg["suites"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    print(f"{'suite':<28} {'cases':>6} {'worst':>13} {'threshold':>11} "
          f"{'status':>6}  witness")
    for res in results:
        print(res.table_row())
    _write_csv(
        outdir / "verify.csv",
        "suite,cases,worst,threshold,pass,witness",
        [(r.name, r.cases, r.worst, r.threshold, r.passed,
          f"\"{r.witness}\"") for r in results],
    )
    failures = [r for r in results if not r.passed]
    if failures:
        for r in failures:
            print(f"FAILED: {r.name} ({r.witness})", file=sys.stderr)
        return 5
    return 0


def _stability_profile(cfg, grid):
    path = cfg.get("groundstate_file")
    if path:
        try:
            field, _, _ = read_field(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"field 'groundstate_file': {exc}") from None
        if field.grid != grid:
            raise ConfigError("field 'groundstate_file': grid does not match d/n/L")
        return field
    if cfg["s"] == 1.0:
        return gausson_reference(grid, cfg["omega"])
    result = _solve_groundstate_from_cfg(
        {**cfg, "init_width": 2.0, "step_size": None,
         "max_iters": 50_000, "action_tol": 1e-11}, grid)
    if not result.converged:
        raise GroundStateError("inline ground-state solve did not converge",
                               result.action_trace)
    return result.phi


def cmd_stability(cfg, args, outdir: Path) -> int:
    grid = _grid_from_cfg(cfg)
    phi = _stability_profile(cfg, grid)
    run_cfg = EvolveConfig(s=cfg["s"], m=cfg["m"], tau=cfg["tau"],
                           t_final=cfg["t_final"],
                           snapshot_every=cfg["snapshot_every"])
    seeds = [args.seed] if args.seed is not None else cfg["seeds"]

    def one(seed):
        return stability_experiment(
            phi, cfg["s"], cfg["omega"], cfg["delta"], cfg["t_final"],
            run_cfg, [seed], pass_ratio=cfg["pass_ratio"])[0]

    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        reports = list(pool.map(one, seeds))

    for rep in reports:
        _write_csv(
            outdir / f"seed_{rep.seed}.csv",
            "seed,t,distance",
            [(rep.seed, t, d) for t, d in zip(rep.times, rep.distance)],
        )
    _write_csv(
        outdir / "summary.csv",
        "seed,delta0,sup_distance,ratio,pass",
        [(r.seed, r.delta0, r.sup_distance, r.ratio, r.passed)
         for r in reports],
    )
    if not args.no_plots:
        from . import plots
        plots.stability_figure(outdir, reports, cfg["pass_ratio"])

    for rep in reports:
        print(f"seed {rep.seed}: delta0 = {rep.delta0:.3e}, "
              f"sup = {rep.sup_distance:.3e}, ratio = {rep.ratio:.2f}, "
              f"pass = {rep.passed}")
    failing = [r for r in reports if not r.passed]
    if failing:
        worst = max(failing, key=lambda r: r.ratio)
        print(f"stability FAIL: worst seed {worst.seed} "
              f"(ratio {worst.ratio:.2f})", file=sys.stderr)
        return 6
    return 0


def cmd_sweep(cfg, args, outdir: Path) -> int:
    grid = _grid_from_cfg(cfg)
    jobs = [(s, omega) for s in cfg["s_list"] for omega in cfg["omega_list"]]

    def one(job):
        s, omega = job
        result = _solve_groundstate_from_cfg({**cfg, "s": s, "omega": omega}, grid)
        return s, omega, result

    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        solves = list(pool.map(one, jobs))

    rows = []
    for s, omega, result in solves:
        rows.append({
            "s": s, "omega": omega, "d_omega": result.d_omega,
            "bound": d_lower_bound(omega, s, cfg["d"]),
            "residual": result.residual, "converged": result.converged,
        })
    _write_csv(
        outdir / "sweep.csv",
        "s,omega,d_omega,bound,residual,converged",
        [(r["s"], r["omega"], r["d_omega"], r["bound"], r["residual"],
          r["converged"]) for r in rows],
    )

    ratio_rows = []
    for s in cfg["s_list"]:
        subset = sorted((r["omega"], r["d_omega"]) for r in rows if r["s"] == s)
        for (w_lo, d_lo), (w_hi, d_hi) in zip(subset, subset[1:]):
            expected = math.exp(w_hi - w_lo)
            measured = d_hi / d_lo
            ratio_rows.append((s, w_lo, w_hi, measured, expected,
                               measured / expected - 1.0))
    _write_csv(outdir / "ratios.csv",
               "s,omega_low,omega_high,measured_ratio,expected_ratio,rel_err",
               ratio_rows)
    if not args.no_plots:
        from . import plots
        plots.sweep_figure(outdir, rows)

    for row in ratio_rows:
        print(f"s = {row[0]:g}: d({row[2]:g})/d({row[1]:g}) = {row[3]:.5f} "
              f"(expected {row[4]:.5f}, rel err {row[5]:+.2e})")
    if all(r["converged"] for r in rows):
        return 0
    print("sweep contains non-converged solves", file=sys.stderr)
    return 2


_COMMANDS = {
    "groundstate": cmd_groundstate,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
    "stability": cmd_stability,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flnls",
        description="Fractional logarithmic NLS toolkit: ground states, "
                    "split-step evolution, certification suites and "
                    "orbital-stability experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="key = value config file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed(s)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker pool size for sweeps / stability seeds")
        p.add_argument("--no-plots", action="store_true",
                       help="skip figure rendering")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config_file(args.config, args.command)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](cfg, args, outdir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except GroundStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # parameter rejections raised past the config layer (bad s, ...)
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
