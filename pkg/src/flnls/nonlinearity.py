"""Pointwise kernels of the logarithmic nonlinearity z*log|z|^2.

The singular kernel is split as r^2*log(r^2) = B(r) - A(r), where A is the
convex branch
    A(r) = -r^2 log(r^2)              for 0 <= r <= e^-3,
    A(r) = 3 r^2 + 4 e^-3 r - e^-6    for r >= e^-3,
and B(r) = r^2 log(r^2) + A(r), which vanishes identically on [0, e^-3].
Every integral of |u|^2 log|u|^2 in this package routes through B - A, so
no code path evaluates log at zero.

The band-limited regularization g_m freezes the log outside amplitudes
[1/m, m].  It is evaluated through the real phase rate gamma_m with
g_m(z) = z * gamma_m(|z|), together with the primitive
G_m(r) = int_0^r sigma * gamma_m(sigma) dsigma in closed form per piece.

All kernels accept scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "A_CORNER",
    "RegularizedNonlinearity",
    "A_of",
    "B_of",
    "log_term",
    "log_rate",
    "gamma_m",
    "g_m_apply",
    "G_m_of",
]

# Branch point of the A/B split.
A_CORNER = np.exp(-3.0)
_E3 = A_CORNER
_E6 = np.exp(-6.0)
_FOUR_E3 = 4.0 * A_CORNER


def _as_array(r):
    arr = np.asarray(r, dtype=np.float64)
    return arr, arr.ndim == 0


def _restore(arr: np.ndarray, scalar: bool):
    return float(arr[()]) if scalar else arr


def A_of(r):
    """Convex branch A of the split; A(0) = 0 exactly."""
    arr, scalar = _as_array(r)
    if np.any(arr < 0.0):
        raise ValueError("A is defined for nonnegative amplitudes only")
    out = np.zeros_like(arr)
    small = (arr > 0.0) & (arr <= _E3)
    if np.any(small):
        # -r^2 log(r^2) written so that square-underflow gives 0, not NaN
        rs = arr[small]
        out[small] = -2.0 * rs**2 * np.log(rs)
    big = arr > _E3
    if np.any(big):
        rb = arr[big]
        out[big] = 3.0 * rb**2 + _FOUR_E3 * rb - _E6
    return _restore(out, scalar)


def B_of(r):
    """B = r^2 log(r^2) + A(r); identically zero on [0, e^-3]."""
    arr, scalar = _as_array(r)
    if np.any(arr < 0.0):
        raise ValueError("B is defined for nonnegative amplitudes only")
    out = np.zeros_like(arr)
    big = arr > _E3
    if np.any(big):
        rb = arr[big]
        out[big] = rb**2 * np.log(rb**2) + 3.0 * rb**2 + _FOUR_E3 * rb - _E6
    return _restore(out, scalar)


def log_term(r):
    """r^2 log(r^2) evaluated as B - A, with value 0 at r = 0."""
    arr, scalar = _as_array(r)
    return _restore(np.asarray(B_of(arr) - A_of(arr), dtype=np.float64), scalar)


def log_rate(r):
    """The phase rate log(r^2) = log_term(r)/r^2 for r > 0, and 0 at r = 0.

    The product u * log_rate(|u|) equals u log|u|^2 with the correct zero
    limit; the masked direct log is the same quantity as the B/A quotient
    but immune to square-underflow at tiny amplitudes.
    """
    arr, scalar = _as_array(r)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        out[pos] = 2.0 * np.log(arr[pos])
    return _restore(out, scalar)


@dataclass(frozen=True)
class RegularizedNonlinearity:
    """Regularization level m; the log kernel is exact on amplitudes [1/m, m]."""

    m: int

    def __post_init__(self):
        if int(self.m) < 1:
            raise ValueError(f"regularization level m must be >= 1, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def band(self) -> tuple[float, float]:
        return 1.0 / self.m, float(self.m)


def gamma_m(r, nl: RegularizedNonlinearity):
    """Phase rate of g_m: g_m(z) = z * gamma_m(|z|).

    Equals log(r^2) on the band [1/m, m]; continuous constants splice the
    frozen pieces B(r)/r^2 - m^2 A(1/m) below and B(m)/m^2 - A(r)/r^2 above.
    """
    arr, scalar = _as_array(r)
    if np.any(arr < 0.0):
        raise ValueError("gamma_m is defined for nonnegative amplitudes only")
    lo, hi = nl.band
    out = np.empty_like(arr)

    band = (arr >= lo) & (arr <= hi)
    if np.any(band):
        out[band] = 2.0 * np.log(arr[band])

    below = arr < lo
    if np.any(below):
        const = (nl.m**2) * A_of(lo)
        rb = arr[below]
        ratio = np.zeros_like(rb)
        pos = rb > _E3  # B vanishes identically at and below the corner
        ratio[pos] = B_of(rb[pos]) / rb[pos] ** 2
        out[below] = ratio - const
    above = arr > hi
    if np.any(above):
        const = B_of(hi) / hi**2
        ra = arr[above]
        out[above] = const - A_of(ra) / ra**2
    return _restore(out, scalar)


def g_m_apply(z, nl: RegularizedNonlinearity):
    """g_m(z) = z * gamma_m(|z|); coincides with z log|z|^2 on the band."""
    arr = np.asarray(z, dtype=np.complex128)
    out = arr * gamma_m(np.abs(arr), nl)
    return complex(out[()]) if arr.ndim == 0 else out


def _primitive_band(r):
    """int sigma log(sigma^2) dsigma = (r^2/2)(log r^2 - 1), zero at 0."""
    arr, scalar = _as_array(r)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        rp = arr[pos]
        out[pos] = rp**2 * (np.log(rp) - 0.5)
    return _restore(out, scalar)


def _int_B_over_sigma(r):
    """int_0^r B(sigma)/sigma dsigma; zero on [0, e^-3]."""
    arr, scalar = _as_array(r)

    def anti(x):
        # antiderivative of sigma log(sigma^2) + 3 sigma + 4e-3 - e-6/sigma
        return (_primitive_band(x) + 1.5 * x**2 + _FOUR_E3 * x
                - _E6 * np.log(x))

    out = np.zeros_like(arr)
    big = arr > _E3
    if np.any(big):
        out[big] = anti(arr[big]) - anti(_E3)
    return _restore(out, scalar)


def _int_A_over_sigma_from(r0: float, r):
    """int_{r0}^r A(sigma)/sigma dsigma for r >= r0 >= e^-3."""
    arr, scalar = _as_array(r)

    def anti(x):
        # antiderivative of 3 sigma + 4e-3 - e-6/sigma
        return 1.5 * x**2 + _FOUR_E3 * x - _E6 * np.log(x)

    return _restore(np.asarray(anti(arr) - anti(r0), dtype=np.float64), scalar)


def G_m_of(r, nl: RegularizedNonlinearity):
    """Primitive int_0^r sigma*gamma_m(sigma) dsigma, closed form per piece.

    G_m(0) = 0 and dG_m/dr = r*gamma_m(r) everywhere; continuity constants
    are accumulated across the seams at 1/m and m.
    """
    arr, scalar = _as_array(r)
    if np.any(arr < 0.0):
        raise ValueError("G_m is defined for nonnegative amplitudes only")
    lo, hi = nl.band
    c_lo = (nl.m**2) * A_of(lo)

    def piece_low(x):
        return _int_B_over_sigma(x) - 0.5 * c_lo * x**2

    g_lo = piece_low(lo)
    g_hi = g_lo + _primitive_band(hi) - _primitive_band(lo)
    c_hi = B_of(hi) / hi**2

    out = np.empty_like(arr)
    below = arr < lo
    if np.any(below):
        out[below] = piece_low(arr[below])
    band = (arr >= lo) & (arr <= hi)
    if np.any(band):
        out[band] = g_lo + _primitive_band(arr[band]) - _primitive_band(lo)
    above = arr > hi
    if np.any(above):
        ra = arr[above]
        out[above] = (g_hi + 0.5 * c_hi * (ra**2 - hi**2)
                      - _int_A_over_sigma_from(hi, ra))
    return _restore(out, scalar)
