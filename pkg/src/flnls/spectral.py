"""Periodic-torus discretization, Fourier transforms and fractional Laplacian.

The torus is [-L/2, L/2)^d sampled on n points per axis (n a power of two),
with uniform quadrature weights h^d, h = L/n.  The fractional Laplacian acts
as the Fourier multiplier |k|^(2s); spectral coefficients are normalized so
that the discrete Plancherel identity

    sum_j |u_j|^2 h^d  ==  sum_k |u_hat_k|^2

holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "Field",
    "SpectralField",
    "make_grid",
    "forward",
    "inverse",
    "transform_roundtrip",
    "frac_laplacian",
    "sobolev_norms",
    "quadrature",
    "l2_norm_sq",
    "inner",
    "boundary_magnitude",
    "spectral_tail",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-L/2, L/2)^d.

    ``wavenumbers`` holds the per-axis discrete frequencies 2*pi*m/L for
    m in [-n/2, n/2), in standard FFT ordering: index j of the FFT output
    corresponds to m = j for j < n/2 and m = j - n for j >= n/2.
    """

    dim: int
    n: int
    extent: float
    wavenumbers: np.ndarray = field(repr=False, compare=False)

    @property
    def spacing(self) -> float:
        return self.extent / self.n

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def size(self) -> int:
        return self.n**self.dim

    def axis_coordinates(self) -> np.ndarray:
        """Sample positions -L/2 + j*h along one axis."""
        return -0.5 * self.extent + self.spacing * np.arange(self.n)

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        x = self.axis_coordinates()
        return tuple(np.meshgrid(*(x,) * self.dim, indexing="ij"))

    def radius_sq(self) -> np.ndarray:
        """|x|^2 at every sample site, shaped like a field."""
        coords = self.meshgrid()
        return sum(c**2 for c in coords)

    def k_magnitude(self) -> np.ndarray:
        """|k| at every spectral site (FFT ordering), shaped like a field."""
        mats = np.meshgrid(*(self.wavenumbers,) * self.dim, indexing="ij")
        return np.sqrt(sum(k**2 for k in mats))

    def frac_multiplier(self, s: float) -> np.ndarray:
        """The symbol |k|^(2s) of the fractional Laplacian; 0 at k = 0."""
        kmag = self.k_magnitude()
        mult = np.zeros_like(kmag)
        nz = kmag > 0.0
        mult[nz] = kmag[nz] ** (2.0 * s)
        return mult


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Field:
    """Complex samples of a function on a Grid (shape (n,)*d)."""

    grid: Grid
    values: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != self.grid.shape:
            raise ValueError(
                f"field shape {vals.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(vals.view(np.float64))):
            raise ValueError("field contains non-finite values")
        object.__setattr__(self, "values", _freeze(vals))

    def with_values(self, values: np.ndarray) -> "Field":
        return Field(self.grid, values)


@dataclass(frozen=True)
class SpectralField:
    """Discrete Fourier coefficients of a Field, Plancherel-normalized."""

    grid: Grid
    coefficients: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        coef = np.asarray(self.coefficients, dtype=np.complex128)
        if coef.shape != self.grid.shape:
            raise ValueError(
                f"coefficient shape {coef.shape} does not match grid {self.grid.shape}"
            )
        object.__setattr__(self, "coefficients", _freeze(coef))


def make_grid(d: int, n: int, L: float) -> Grid:
    """Build a periodic grid; d in {1, 2}, n a power of two >= 8, L > 0."""
    if d not in (1, 2):
        raise ValueError(f"dim must be 1 or 2, got {d}")
    if n < 8 or not _is_power_of_two(n):
        raise ValueError(f"points_per_axis must be a power of two >= 8, got {n}")
    if not (L > 0.0):
        raise ValueError(f"extent must be positive, got {L}")
    modes = np.fft.fftfreq(n, d=1.0 / n)  # 0, 1, ..., n/2-1, -n/2, ..., -1
    wavenumbers = _freeze(2.0 * np.pi * modes / L)
    return Grid(dim=d, n=n, extent=float(L), wavenumbers=wavenumbers)


def _check_s(s: float) -> float:
    if not (0.0 < s <= 1.0):
        raise ValueError(f"fractional order s must satisfy 0 < s <= 1, got {s}")
    return float(s)


def forward(u: Field) -> SpectralField:
    """Forward transform with sum(|coeff|^2) == quadrature of |u|^2."""
    g = u.grid
    scale = np.sqrt(g.cell_volume / g.size)
    return SpectralField(g, np.fft.fftn(u.values) * scale)


def inverse(uhat: SpectralField) -> Field:
    g = uhat.grid
    scale = np.sqrt(g.size / g.cell_volume)
    return Field(g, np.fft.ifftn(uhat.coefficients) * scale)


def transform_roundtrip(u: Field) -> Field:
    """inverse(forward(u)); self-test hook for the transform pair."""
    return inverse(forward(u))


def frac_laplacian(u: Field, s: float) -> Field:
    """Apply (-Delta)^s via the multiplier |k|^(2s); the k=0 mode maps to 0."""
    s = _check_s(s)
    mult = u.grid.frac_multiplier(s)
    return Field(u.grid, np.fft.ifftn(mult * np.fft.fftn(u.values)))


def quadrature(grid: Grid, samples: np.ndarray) -> float:
    """Trapezoidal (= uniform-weight) integral over the torus."""
    return float(np.sum(samples).real * grid.cell_volume)


def l2_norm_sq(u: Field) -> float:
    return quadrature(u.grid, np.abs(u.values) ** 2)


def inner(u: Field, v: Field) -> complex:
    """Discrete L2 pairing int u * conj(v)."""
    if u.grid is not v.grid and u.grid != v.grid:
        raise ValueError("fields live on different grids")
    return complex(np.sum(u.values * np.conj(v.values)) * u.grid.cell_volume)


def sobolev_norms(u: Field, s: float) -> tuple[float, float, float]:
    """Return (l2_sq, hs_semi_sq, hs_sq) for the field.

    l2_sq is the physical-space quadrature of |u|^2, hs_semi_sq the
    Plancherel sum of |k|^(2s) |u_hat(k)|^2, and hs_sq their sum.
    """
    s = _check_s(s)
    l2_sq = l2_norm_sq(u)
    uhat = forward(u)
    mult = u.grid.frac_multiplier(s)
    hs_semi_sq = float(np.sum(mult * np.abs(uhat.coefficients) ** 2))
    return l2_sq, hs_semi_sq, l2_sq + hs_semi_sq


def boundary_magnitude(u: Field) -> float:
    """Largest |u| on the outermost sample layer (decay diagnostic)."""
    vals = np.abs(u.values)
    if u.grid.dim == 1:
        return float(max(vals[0], vals[-1]))
    return float(max(vals[0, :].max(), vals[-1, :].max(),
                     vals[:, 0].max(), vals[:, -1].max()))


def spectral_tail(u: Field) -> float:
    """Relative spectral mass in the top third of the frequency range."""
    uhat = forward(u)
    kmag = u.grid.k_magnitude()
    kmax = float(kmag.max())
    power = np.abs(uhat.coefficients) ** 2
    total = float(power.sum())
    if total == 0.0:
        return 0.0
    return float(power[kmag > (2.0 / 3.0) * kmax].sum() / total)
