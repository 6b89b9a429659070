"""Randomized certification suites for the package's structural laws.

Each suite draws seeded fields, evaluates one inequality or identity over
them, and reports the worst margin observed together with the seed that
produced it.  The CLI ``verify`` command runs them as a pass/fail table;
the test suite reuses them directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import nonlinearity
from .functionals import (
    action_nehari,
    energy_m,
    grad_action,
    grad_energy_m,
    log_sobolev_gap,
    nehari_rescale,
)
from .nonlinearity import RegularizedNonlinearity
from .orlicz import luxemburg_norm, orlicz_modular
from .sampling import make_rng, random_band_limited
from .spectral import Field, inner, make_grid, sobolev_norms

__all__ = ["SuiteResult", "SUITES", "run_suites"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    worst: float
    threshold: float
    passed: bool
    witness: str

    def table_row(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"{self.name:<28} {self.cases:>6} {self.worst:>13.3e} "
                f"{self.threshold:>11.1e} {status:>6}  {self.witness}")


def _result(name, cases, worst, threshold, witness, larger_is_worse=True):
    passed = (worst <= threshold) if larger_is_worse else (worst >= threshold)
    return SuiteResult(name=name, cases=cases, worst=float(worst),
                       threshold=float(threshold), passed=bool(passed),
                       witness=witness)


def a_convexity(seed: int, cases: int = 4000) -> SuiteResult:
    """A is nonnegative, nondecreasing and convex on a dense sample of [0, 10]."""
    r = np.linspace(0.0, 10.0, cases + 1)
    a = nonlinearity.A_of(r)
    worst = max(
        float(np.max(-a)),             # negativity
        float(np.max(-np.diff(a))),    # decrease
        float(np.max(-np.diff(a, 2))),  # concavity (uniform spacing)
    )
    # midpoint convexity on random pairs, including pairs straddling the corner
    rng = make_rng(seed)
    x = rng.uniform(0.0, 10.0, size=cases)
    y = rng.uniform(0.0, 10.0, size=cases)
    slack = 0.5 * (nonlinearity.A_of(x) + nonlinearity.A_of(y)) \
        - nonlinearity.A_of(0.5 * (x + y))
    worst = max(worst, float(np.max(-slack)))
    return _result("a_convexity", 2 * cases + 1, worst, 1e-12,
                   "dense sample of [0, 10]")


def orlicz_modular_bounds(seed: int, cases: int = 500) -> SuiteResult:
    """min(||u||, ||u||^2) <= int A(|u|) <= max(||u||, ||u||^2)."""
    grid = make_grid(1, 64, 16.0)
    worst, witness = -np.inf, ""
    rng = make_rng(seed)
    for i in range(cases):
        scale = float(rng.uniform(0.05, 4.0))
        u = random_band_limited(grid, seed + 1000 + i, norm=scale)
        modular = orlicz_modular(u)
        norm = luxemburg_norm(u).norm
        lo = min(norm, norm**2)
        hi = max(norm, norm**2)
        tol_scale = max(1.0, hi)
        violation = max(lo - modular, modular - hi) / tol_scale
        if violation > worst:
            worst, witness = violation, f"seed {seed + 1000 + i}"
    return _result("orlicz_modular_bounds", cases, worst, 1e-9, witness)


def luxemburg_unit_modular(seed: int, cases: int = 200) -> SuiteResult:
    """int A(|u| / ||u||_LA) = 1 whenever the norm is positive."""
    grid = make_grid(1, 64, 16.0)
    rng = make_rng(seed)
    worst, witness = -np.inf, ""
    for i in range(cases):
        scale = float(rng.uniform(1e-3, 10.0))
        u = random_band_limited(grid, seed + 2000 + i, norm=scale)
        res = luxemburg_norm(u)
        dev = abs(res.modular_at_norm - 1.0)
        if dev > worst:
            worst, witness = dev, f"seed {seed + 2000 + i}"
    return _result("luxemburg_unit_modular", cases, worst, 1e-8, witness)


def log_sobolev(seed: int, cases: int = 100) -> SuiteResult:
    """Gap of the fractional log-Sobolev inequality stays >= -1e-8."""
    setups = [(1.0, make_grid(1, 128, 32.0)), (0.5, make_grid(2, 32, 16.0))]
    alphas = (0.5, 1.0, 2.0)
    worst, witness = -np.inf, ""
    for s, grid in setups:
        for i in range(cases):
            u = random_band_limited(grid, seed + 3000 + i, norm=1.0)
            for alpha in alphas:
                gap = log_sobolev_gap(u, s, alpha)
                if -gap > worst:
                    worst = -gap
                    witness = f"seed {seed + 3000 + i}, s={s}, alpha={alpha}"
    return _result("log_sobolev", 2 * cases * len(alphas), worst, 1e-8, witness)


def _directional(fn, u: Field, v: Field, eps: float = 1e-5) -> float:
    up = Field(u.grid, u.values + eps * v.values)
    dn = Field(u.grid, u.values - eps * v.values)
    return (fn(up) - fn(dn)) / (2.0 * eps)


def gradient_action(seed: int, cases: int = 20, s: float = 0.5,
                    omega: float = 0.7) -> SuiteResult:
    """Centered differences of S_w match <grad S_w, v> to 1e-6."""
    grid = make_grid(1, 64, 16.0)
    worst, witness = -np.inf, ""
    for i in range(cases):
        u = random_band_limited(grid, seed + 4000 + 2 * i, norm=2.0)
        v = random_band_limited(grid, seed + 4001 + 2 * i, norm=1.0)
        analytic = inner(grad_action(u, s, omega), v).real
        fd = _directional(lambda w: action_nehari(w, s, omega).action, u, v)
        err = abs(fd - analytic) / max(1.0, abs(analytic))
        if err > worst:
            worst, witness = err, f"seeds {seed + 4000 + 2 * i}/{seed + 4001 + 2 * i}"
    return _result("gradient_action", cases, worst, 1e-6, witness)


def gradient_energy_m(seed: int, cases: int = 20, s: float = 0.5,
                      m: int = 100) -> SuiteResult:
    """Centered differences of E_m match <(-D)^s u - g_m(u), v> to 1e-6."""
    grid = make_grid(1, 64, 16.0)
    nl = RegularizedNonlinearity(m)
    worst, witness = -np.inf, ""
    for i in range(cases):
        u = random_band_limited(grid, seed + 5000 + 2 * i, norm=2.0)
        v = random_band_limited(grid, seed + 5001 + 2 * i, norm=1.0)
        analytic = inner(grad_energy_m(u, s, nl), v).real
        fd = _directional(lambda w: energy_m(w, s, nl), u, v)
        err = abs(fd - analytic) / max(1.0, abs(analytic))
        if err > worst:
            worst, witness = err, f"seeds {seed + 5000 + 2 * i}/{seed + 5001 + 2 * i}"
    return _result("gradient_energy_m", cases, worst, 1e-6, witness)


def action_identity(seed: int, cases: int = 200) -> SuiteResult:
    """S_w(u) = 1/2 I_w(u) + 1/2 ||u||^2 to relative 1e-12."""
    grid = make_grid(1, 64, 16.0)
    rng = make_rng(seed)
    worst, witness = -np.inf, ""
    for i in range(cases):
        omega = float(rng.uniform(-2.0, 2.0))
        u = random_band_limited(grid, seed + 6000 + i,
                                norm=float(rng.uniform(0.1, 3.0)))
        rep = action_nehari(u, 0.5, omega)
        lhs = rep.action
        rhs = 0.5 * rep.nehari + 0.5 * rep.l2_sq
        err = abs(lhs - rhs) / max(1.0, abs(lhs))
        if err > worst:
            worst, witness = err, f"seed {seed + 6000 + i}"
    return _result("action_identity", cases, worst, 1e-12, witness)


def nehari_projection(seed: int, cases: int = 200) -> SuiteResult:
    """nehari_rescale drives |I_w| below 1e-10 relative on random fields."""
    grid = make_grid(1, 64, 16.0)
    rng = make_rng(seed)
    worst, witness = -np.inf, ""
    for i in range(cases):
        omega = float(rng.uniform(-1.0, 1.0))
        u = random_band_limited(grid, seed + 7000 + i,
                                norm=float(rng.uniform(0.3, 3.0)))
        w = nehari_rescale(u, 0.5, omega)
        rep = action_nehari(w, 0.5, omega)
        _, _, hs_sq = sobolev_norms(w, 0.5)
        err = abs(rep.nehari) / max(1.0, hs_sq)
        if err > worst:
            worst, witness = err, f"seed {seed + 7000 + i}"
    return _result("nehari_projection", cases, worst, 1e-10, witness)


SUITES = {
    "a_convexity": a_convexity,
    "orlicz_modular_bounds": orlicz_modular_bounds,
    "luxemburg_unit_modular": luxemburg_unit_modular,
    "log_sobolev": log_sobolev,
    "gradient_action": gradient_action,
    "gradient_energy_m": gradient_energy_m,
    "action_identity": action_identity,
    "nehari_projection": nehari_projection,
}


def run_suites(seed: int, name_filter: str = "") -> list[SuiteResult]:
    """Run every suite whose name contains the filter substring."""
    selected = {k: fn for k, fn in SUITES.items() if name_filter in k}
    if not selected:
        raise ValueError(f"no verification suite matches filter {name_filter!r}")
    return [fn(seed) for _, fn in sorted(selected.items())]
