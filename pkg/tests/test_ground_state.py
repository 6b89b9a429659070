"""Gausson oracle and the Nehari-projected descent solver."""

import math

import numpy as np
import pytest

from flnls.functionals import action_nehari, d_lower_bound
from flnls.ground_state import (
    GroundStateParams,
    gausson_action,
    gausson_norm_sq,
    gausson_reference,
    solve_ground_state,
    stationary_residual,
)
from flnls.sampling import gaussian_field
from flnls.spectral import Field, l2_norm_sq, make_grid, sobolev_norms


class TestGaussonReference:
    def test_mass_and_action_closed_forms(self, grid_1d_wide):
        phi = gausson_reference(grid_1d_wide, 0.0)
        assert np.isclose(l2_norm_sq(phi), math.sqrt(math.pi) * math.e,
                          rtol=1e-12)
        assert np.isclose(gausson_action(1, 0.0),
                          0.5 * math.sqrt(math.pi) * math.e, rtol=1e-15)

    def test_solves_stationary_equation(self, grid_1d_wide):
        phi = gausson_reference(grid_1d_wide, 0.0)
        assert stationary_residual(phi, 1.0, 0.0) <= 1e-8

    def test_omega_sweep_residuals(self, grid_1d_wide):
        for omega in (-1.0, 0.5, 2.0):
            phi = gausson_reference(grid_1d_wide, omega)
            assert stationary_residual(phi, 1.0, omega) <= 1e-8

    def test_doubled_amplitude_is_not_a_solution(self, grid_1d_wide):
        phi = gausson_reference(grid_1d_wide, 0.0)
        bad = Field(grid_1d_wide, 2.0 * phi.values)
        res = stationary_residual(bad, 1.0, 0.0)
        assert res >= 0.1 * math.sqrt(l2_norm_sq(bad))

    def test_action_equals_lower_bound_at_s_one(self):
        # the closed-form floor is sharp in the classical limit
        for dim, omega in ((1, 0.0), (1, 1.5), (2, -0.7)):
            assert np.isclose(gausson_action(dim, omega),
                              d_lower_bound(omega, 1.0, dim), rtol=1e-14)

    def test_2d_norm_closed_form(self):
        grid = make_grid(2, 64, 20.0)
        phi = gausson_reference(grid, -2.0)
        assert np.isclose(l2_norm_sq(phi), math.pi, rtol=1e-12)
        assert np.isclose(gausson_norm_sq(2, -2.0), math.pi, rtol=1e-15)

    def test_rejects_small_grid(self):
        grid = make_grid(1, 64, 8.0)
        with pytest.raises(ValueError):
            gausson_reference(grid, 0.0)


class TestStationaryResidual:
    def test_zero_field(self, grid_1d):
        u = Field(grid_1d, np.zeros(64, dtype=complex))
        assert stationary_residual(u, 0.5, 1.0) == 0.0


class TestSolver:
    def test_gausson_recovered_at_s_one(self, grid_1d_wide):
        params = GroundStateParams(s=1.0, omega=0.0, grid=grid_1d_wide,
                                   residual_tol=1e-7)
        result = solve_ground_state(params)
        assert result.converged
        exact = gausson_action(1, 0.0)
        assert abs(result.d_omega - exact) <= 0.01 * exact
        assert result.residual <= 1e-6

    def test_result_invariants(self, grid_1d_wide):
        result = solve_ground_state(
            GroundStateParams(s=0.5, omega=0.0, grid=grid_1d_wide,
                              residual_tol=1e-6))
        rep = action_nehari(result.phi, 0.5, 0.0)
        _, _, hs_sq = sobolev_norms(result.phi, 0.5)
        assert abs(rep.nehari) <= 1e-8 * max(1.0, hs_sq)
        assert abs(result.d_omega - 0.5 * rep.l2_sq) \
            <= 1e-10 * max(1.0, result.d_omega)
        assert result.d_omega >= d_lower_bound(0.0, 0.5, 1) * (1.0 - 1e-3)

    def test_action_trace_monotone_up_to_tolerance(self, grid_1d_wide):
        result = solve_ground_state(
            GroundStateParams(s=0.5, omega=0.0, grid=grid_1d_wide,
                              residual_tol=1e-6))
        increases = np.diff(result.action_trace)
        assert np.max(increases, initial=0.0) <= 1e-11

    def test_translation_invariance(self, grid_1d_wide):
        centered = solve_ground_state(
            GroundStateParams(s=0.5, omega=0.0, grid=grid_1d_wide,
                              residual_tol=1e-7))
        shifted_init = gaussian_field(grid_1d_wide, width=2.0,
                                      amplitude=math.e, center=3.0)
        shifted = solve_ground_state(
            GroundStateParams(s=0.5, omega=0.0, grid=grid_1d_wide,
                              init_field=shifted_init, residual_tol=1e-7))
        assert abs(shifted.d_omega - centered.d_omega) <= 1e-6

    def test_phase_invariance(self, grid_1d_wide):
        init = gaussian_field(grid_1d_wide, width=2.0, amplitude=math.e)
        rotated = Field(grid_1d_wide, np.exp(1.1j) * init.values)
        a = solve_ground_state(GroundStateParams(
            s=0.5, omega=0.0, grid=grid_1d_wide, init_field=init,
            residual_tol=1e-6))
        b = solve_ground_state(GroundStateParams(
            s=0.5, omega=0.0, grid=grid_1d_wide, init_field=rotated,
            residual_tol=1e-6))
        # |exp(i theta) z| re-rounds at the last ulp, so "identical" means
        # agreement at rounding level, not bitwise
        assert abs(a.d_omega - b.d_omega) <= 1e-12 * a.d_omega
        assert abs(a.residual - b.residual) <= 1e-12
        assert len(a.action_trace) == len(b.action_trace)

    def test_profile_matches_gausson_after_alignment(self, grid_1d_wide):
        result = solve_ground_state(
            GroundStateParams(s=1.0, omega=0.0, grid=grid_1d_wide,
                              residual_tol=1e-7))
        ref = gausson_reference(grid_1d_wide, 0.0)
        err = np.sqrt(l2_norm_sq(Field(
            grid_1d_wide, np.abs(result.phi.values) - np.abs(ref.values))))
        assert err <= 1e-3 * np.sqrt(l2_norm_sq(ref))

    def test_two_dimensional_solve(self):
        grid = make_grid(2, 64, 16.0)
        result = solve_ground_state(
            GroundStateParams(s=0.5, omega=0.0, grid=grid, residual_tol=1e-5))
        assert result.converged
        assert result.d_omega >= d_lower_bound(0.0, 0.5, 2) * (1.0 - 1e-3)

    def test_scaling_law_between_frequencies(self, grid_1d_wide):
        d_values = {}
        for omega in (-1.0, 0.0):
            res = solve_ground_state(
                GroundStateParams(s=0.5, omega=omega, grid=grid_1d_wide,
                                  residual_tol=1e-6))
            d_values[omega] = res.d_omega
        ratio = d_values[0.0] / d_values[-1.0]
        assert abs(ratio - math.e) <= 0.02 * math.e

    def test_rejects_zero_init(self, grid_1d_wide):
        zero = Field(grid_1d_wide, np.zeros(grid_1d_wide.shape, dtype=complex))
        with pytest.raises(ValueError):
            solve_ground_state(GroundStateParams(
                s=0.5, omega=0.0, grid=grid_1d_wide, init_field=zero))

    def test_rejects_bad_params(self, grid_1d_wide):
        with pytest.raises(ValueError):
            GroundStateParams(s=0.5, omega=0.0, grid=grid_1d_wide,
                              step_size=-1.0)
        with pytest.raises(ValueError):
            GroundStateParams(s=2.0, omega=0.0, grid=grid_1d_wide)
