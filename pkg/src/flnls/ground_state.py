"""Ground states by Nehari-projected gradient descent.

d(w) = inf{ S_w(u) : u != 0, I_w(u) = 0 } is approached by descending the
action with the plain L2 gradient and snapping back onto the Nehari
manifold after every step with the exact exponential rescaling.  On the
manifold S_w(u) = 1/2 ||u||^2, so the action trace reads off the d(w)
estimate directly.  Iterates are kept real (the minimizer is real up to a
constant phase); a complex field is returned.

At s = 1 the problem has the exact Gaussian solution
phi = exp((w+N)/2) exp(-|x|^2/2) with ||phi||^2 = pi^(N/2) e^(w+N), which
serves as the validation oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import nonlinearity
from .spectral import Field, Grid, l2_norm_sq
from .functionals import grad_action

__all__ = [
    "GroundStateParams",
    "GroundStateResult",
    "GroundStateError",
    "stationary_residual",
    "gausson_reference",
    "gausson_norm_sq",
    "gausson_action",
    "solve_ground_state",
]


class GroundStateError(RuntimeError):
    """Solver aborted (persistent divergence or zero collapse)."""

    def __init__(self, message: str, trace: np.ndarray):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class GroundStateParams:
    s: float
    omega: float
    grid: Grid
    init_width: float = 2.0
    init_field: Field | None = None
    step_size: float | None = None     # None: derived from the stiffest mode
    max_iters: int = 50_000
    action_tol: float = 1e-11
    residual_tol: float = 1e-7

    def __post_init__(self):
        if not (0.0 < self.s <= 1.0):
            raise ValueError(f"fractional order s must be in (0, 1], got {self.s}")
        if self.step_size is not None and not (self.step_size > 0.0):
            raise ValueError("step_size must be positive")
        if not (self.action_tol > 0.0 and self.residual_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.init_width <= 0.0:
            raise ValueError("init_width must be positive")


@dataclass(frozen=True)
class GroundStateResult:
    phi: Field
    d_omega: float
    residual: float
    action_trace: np.ndarray = field(repr=False)
    converged: bool


def stationary_residual(phi: Field, s: float, omega: float) -> float:
    """L2 norm of (-D)^s phi + w phi - phi log|phi|^2 (zero on solutions)."""
    g = grad_action(phi, s, omega)
    return math.sqrt(l2_norm_sq(g))


def _check_gausson_grid(grid: Grid) -> None:
    tail = math.exp(-grid.extent**2 / 8.0)
    if tail >= 1e-14:
        raise ValueError(
            f"grid extent {grid.extent} too small for the Gaussian profile: "
            f"boundary value {tail:.3e} >= 1e-14"
        )


def gausson_reference(grid: Grid, omega: float) -> Field:
    """Exact s = 1 standing-wave profile exp((w+N)/2) exp(-|x|^2/2)."""
    _check_gausson_grid(grid)
    amp = math.exp((omega + grid.dim) / 2.0)
    return Field(grid, amp * np.exp(-0.5 * grid.radius_sq()) + 0.0j)


def gausson_norm_sq(dim: int, omega: float) -> float:
    return math.pi ** (dim / 2.0) * math.exp(omega + dim)


def gausson_action(dim: int, omega: float) -> float:
    """d(w) of the s = 1 problem: half the squared L2 norm of the Gausson."""
    return 0.5 * gausson_norm_sq(dim, omega)


def _default_step(grid: Grid, s: float, omega: float) -> float:
    stiffest = float(grid.frac_multiplier(s).max())
    return 1.0 / (stiffest + abs(omega) + 6.0)


def solve_ground_state(p: GroundStateParams) -> GroundStateResult:
    grid = p.grid
    mult = grid.frac_multiplier(p.s)
    weight = grid.cell_volume
    plancherel = weight / grid.size

    def hs_semi(vals: np.ndarray) -> float:
        vh = np.fft.fftn(vals)
        return float(np.sum(mult * (vh.real**2 + vh.imag**2)) * plancherel)

    def l2(vals: np.ndarray) -> float:
        return float(np.sum(vals**2) * weight)

    def log_int(vals: np.ndarray) -> float:
        return float(np.sum(nonlinearity.log_term(np.abs(vals))) * weight)

    def action_of(vals: np.ndarray) -> float:
        h, q, li = hs_semi(vals), l2(vals), log_int(vals)
        return 0.5 * h + 0.5 * (p.omega + 1.0) * q - 0.5 * li

    def project(vals: np.ndarray) -> np.ndarray:
        q = l2(vals)
        if q < 1e-24:
            raise GroundStateError("iterate collapsed to zero", np.asarray(trace))
        nehari = hs_semi(vals) + p.omega * q - log_int(vals)
        return math.exp(nehari / (2.0 * q)) * vals

    def gradient(vals: np.ndarray) -> np.ndarray:
        lap = np.fft.ifftn(mult * np.fft.fftn(vals)).real
        return lap + p.omega * vals - nonlinearity.log_rate(np.abs(vals)) * vals

    if p.init_field is not None:
        if p.init_field.grid != grid:
            raise ValueError("init field lives on a different grid")
        v0 = np.abs(p.init_field.values)
    else:
        amp = math.exp((p.omega + grid.dim) / 2.0)
        v0 = amp * np.exp(-grid.radius_sq() / (2.0 * p.init_width**2))
    if not np.any(v0 > 0.0):
        raise ValueError("initial field must be nonzero")

    trace: list[float] = []
    v = project(v0)
    action = action_of(v)
    trace.append(action)

    eta = p.step_size if p.step_size is not None else _default_step(grid, p.s, p.omega)
    converged = False
    stalls = 0
    for _ in range(p.max_iters):
        g = gradient(v)
        residual = math.sqrt(float(np.sum(g**2)) * weight)

        accepted = False
        for _halving in range(60):
            trial = project(v - eta * g)
            trial_action = action_of(trial)
            if trial_action <= action + 1e-14 * max(1.0, abs(action)):
                accepted = True
                break
            eta *= 0.5
        if not accepted:
            stalls += 1
            if stalls >= 50:
                raise GroundStateError(
                    "action failed to decrease for 50 consecutive iterations",
                    np.asarray(trace),
                )
            continue
        stalls = 0
        decrease = action - trial_action
        v = trial
        action = trial_action
        trace.append(action)
        if decrease < p.action_tol and residual < p.residual_tol:
            converged = True
            break

    phi = Field(grid, v.astype(np.complex128))
    return GroundStateResult(
        phi=phi,
        d_omega=action,
        residual=stationary_residual(phi, p.s, p.omega),
        action_trace=np.asarray(trace),
        converged=converged,
    )
