"""Scalar functionals of a field: energy, action, Nehari functional.

Definitions (N = grid dimension, integrals = torus quadrature):

    E(u)      = 1/2 ||(-D)^{s/2} u||^2 - 1/2 int |u|^2 log|u|^2
    E_m(u)    = 1/2 ||(-D)^{s/2} u||^2 - int G_m(|u|)
    S_w(u)    = 1/2 ||(-D)^{s/2} u||^2 + (w+1)/2 ||u||^2 - 1/2 int |u|^2 log|u|^2
    I_w(u)    = ||(-D)^{s/2} u||^2 + w ||u||^2 - int |u|^2 log|u|^2

They satisfy S_w = E + (w+1)/2 ||u||^2 and S_w = 1/2 I_w + 1/2 ||u||^2.
The log integrand always routes through the B - A split, so zeros of u
contribute exactly zero.  The E_m convention carries the factor that makes
its first variation equal (-D)^s u - g_m(u); with it E_m is the quantity
the regularized flow conserves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nonlinearity
from .nonlinearity import RegularizedNonlinearity
from .orlicz import luxemburg_norm
from .spectral import Field, frac_laplacian, quadrature, sobolev_norms

__all__ = [
    "FunctionalReport",
    "energy",
    "energy_m",
    "action_nehari",
    "nehari_rescale",
    "log_sobolev_gap",
    "d_lower_bound",
    "log_integral",
    "grad_action",
    "grad_energy_m",
    "REPORT_CSV_HEADER",
]

REPORT_CSV_HEADER = "omega,s,l2_sq,hs_semi_sq,energy,action,nehari,luxemburg"


@dataclass(frozen=True)
class FunctionalReport:
    l2_sq: float
    hs_semi_sq: float
    energy: float
    action: float
    nehari: float
    omega: float
    s: float
    luxemburg: float

    def csv_row(self) -> str:
        cols = (self.omega, self.s, self.l2_sq, self.hs_semi_sq,
                self.energy, self.action, self.nehari, self.luxemburg)
        return ",".join(f"{c:.17g}" for c in cols)


def log_integral(u: Field) -> float:
    """int |u|^2 log|u|^2 dx, evaluated as int (B - A)(|u|) dx."""
    return quadrature(u.grid, nonlinearity.log_term(np.abs(u.values)))


def energy(u: Field, s: float) -> float:
    _, hs_semi_sq, _ = sobolev_norms(u, s)
    return 0.5 * hs_semi_sq - 0.5 * log_integral(u)


def energy_m(u: Field, s: float, nl: RegularizedNonlinearity) -> float:
    _, hs_semi_sq, _ = sobolev_norms(u, s)
    potential = quadrature(u.grid, nonlinearity.G_m_of(np.abs(u.values), nl))
    return 0.5 * hs_semi_sq - potential


def action_nehari(u: Field, s: float, omega: float) -> FunctionalReport:
    """Evaluate E, S_w, I_w and the Luxemburg norm in one pass."""
    l2_sq, hs_semi_sq, _ = sobolev_norms(u, s)
    log_int = log_integral(u)
    e = 0.5 * hs_semi_sq - 0.5 * log_int
    action = 0.5 * hs_semi_sq + 0.5 * (omega + 1.0) * l2_sq - 0.5 * log_int
    nehari = hs_semi_sq + omega * l2_sq - log_int
    return FunctionalReport(
        l2_sq=l2_sq,
        hs_semi_sq=hs_semi_sq,
        energy=e,
        action=action,
        nehari=nehari,
        omega=float(omega),
        s=float(s),
        luxemburg=luxemburg_norm(u).norm,
    )


def nehari_rescale(u: Field, s: float, omega: float) -> Field:
    """Scale u onto the Nehari manifold: rho = exp(I_w(u) / (2 ||u||^2)).

    The identity I_w(rho u) = rho^2 [I_w(u) - ||u||^2 log rho^2] makes the
    returned field satisfy I_w = 0 in exact arithmetic.
    """
    l2_sq, hs_semi_sq, _ = sobolev_norms(u, s)
    if l2_sq == 0.0:
        raise ValueError("cannot rescale the zero field onto the Nehari manifold")
    nehari = hs_semi_sq + omega * l2_sq - log_integral(u)
    rho = math.exp(nehari / (2.0 * l2_sq))
    return Field(u.grid, rho * u.values)


def log_sobolev_gap(u: Field, s: float, alpha: float) -> float:
    """Slack of the fractional logarithmic Sobolev inequality.

    Returns

        (alpha^2 / pi^s) ||(-D)^{s/2} u||^2
        - int |u|^2 log(|u|^2 / ||u||^2)
        - (N + (N/s) log alpha + log(s Gamma(N/2) / Gamma(N/2s))) ||u||^2;

    a nonnegative value certifies the inequality for this (u, alpha).
    """
    if not (alpha > 0.0):
        raise ValueError(f"alpha must be positive, got {alpha}")
    l2_sq, hs_semi_sq, _ = sobolev_norms(u, s)
    if l2_sq == 0.0:
        raise ValueError("log-Sobolev gap is undefined for the zero field")
    n_dim = u.grid.dim
    entropy = log_integral(u) - math.log(l2_sq) * l2_sq
    const = (n_dim + (n_dim / s) * math.log(alpha)
             + math.log(s * math.gamma(n_dim / 2.0) / math.gamma(n_dim / (2.0 * s))))
    return (alpha**2 / math.pi**s) * hs_semi_sq - entropy - const * l2_sq


def d_lower_bound(omega: float, s: float, dim: int) -> float:
    """Closed-form floor for the minimal action on the Nehari manifold:

        1/2 (s Gamma(N/2) / Gamma(N/2s)) pi^(N/2) e^(omega + N).
    """
    if dim not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {dim}")
    if not (0.0 < s <= 1.0):
        raise ValueError(f"fractional order s must satisfy 0 < s <= 1, got {s}")
    ratio = s * math.gamma(dim / 2.0) / math.gamma(dim / (2.0 * s))
    return 0.5 * ratio * math.pi ** (dim / 2.0) * math.exp(omega + dim)


def grad_action(u: Field, s: float, omega: float) -> Field:
    """L2 gradient of S_w:  (-D)^s u + w u - u log|u|^2 (0 where u = 0).

    Its pairing Re<grad, u> reproduces I_w(u), and it vanishes exactly on
    solutions of the stationary equation.
    """
    lap = frac_laplacian(u, s)
    rate = nonlinearity.log_rate(np.abs(u.values))
    return Field(u.grid, lap.values + omega * u.values - rate * u.values)


def grad_energy_m(u: Field, s: float, nl: RegularizedNonlinearity) -> Field:
    """L2 gradient of E_m:  (-D)^s u - g_m(u)."""
    lap = frac_laplacian(u, s)
    return Field(u.grid, lap.values - nonlinearity.g_m_apply(u.values, nl))
