"""Fractional logarithmic NLS toolkit.

Pseudospectral discretization of i u_t - (-Delta)^s u + u log|u|^2 = 0 on a
periodic torus: exact split-step evolution of the band-regularized flow,
Nehari-manifold ground states, Orlicz/Luxemburg norms for the energy space,
and certification suites for the conservation laws, the fractional
logarithmic Sobolev inequality and orbital stability.
"""

from .spectral import (
    Grid,
    Field,
    SpectralField,
    make_grid,
    forward,
    inverse,
    transform_roundtrip,
    frac_laplacian,
    sobolev_norms,
)
from .nonlinearity import (
    RegularizedNonlinearity,
    A_of,
    B_of,
    log_term,
    gamma_m,
    g_m_apply,
    G_m_of,
)
from .orlicz import LuxemburgResult, orlicz_modular, luxemburg_norm, ws_norm
from .functionals import (
    FunctionalReport,
    energy,
    energy_m,
    action_nehari,
    nehari_rescale,
    log_sobolev_gap,
    d_lower_bound,
)
from .evolution import (
    EvolveConfig,
    ConservationReport,
    NonFiniteFieldError,
    nonlinear_substep,
    linear_substep,
    strang_step,
    evolve,
)
from .ground_state import (
    GroundStateParams,
    GroundStateResult,
    GroundStateError,
    stationary_residual,
    gausson_reference,
    gausson_action,
    solve_ground_state,
)
from .stability import StabilityReport, modded_distance, perturb, stability_experiment
from .fieldio import read_field, write_field

__version__ = "0.1.0"
