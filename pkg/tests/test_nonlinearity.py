"""Log-nonlinearity kernels: the A/B split and the banded regularization."""

import numpy as np
import pytest
from scipy.integrate import quad

from flnls.nonlinearity import (
    A_CORNER,
    A_of,
    B_of,
    G_m_of,
    RegularizedNonlinearity,
    g_m_apply,
    gamma_m,
    log_rate,
    log_term,
)

E3 = A_CORNER  # exp(-3)


class TestAB:
    def test_a_at_zero(self):
        assert A_of(0.0) == 0.0

    def test_a_branches_agree_at_corner(self):
        # both closed forms give 6 e^-6 at the corner
        first = -(E3**2) * np.log(E3**2)
        second = 3 * E3**2 + 4 * np.exp(-3) * E3 - np.exp(-6)
        assert np.isclose(first, 6 * np.exp(-6), rtol=1e-14)
        assert np.isclose(second, 6 * np.exp(-6), rtol=1e-14)
        assert np.isclose(A_of(E3), 6 * np.exp(-6), rtol=1e-13)

    def test_a_at_one(self):
        assert np.isclose(A_of(1.0), 3 + 4 * np.exp(-3) - np.exp(-6), rtol=1e-15)

    def test_a_rejects_negative(self):
        with pytest.raises(ValueError):
            A_of(-0.1)

    def test_b_vanishes_below_corner(self):
        r = np.linspace(0.0, E3, 500)
        assert np.all(B_of(r) == 0.0)
        assert B_of(0.01) == 0.0

    def test_b_at_one_equals_a_at_one(self):
        # F(1) = 0 so B(1) = A(1)
        assert np.isclose(B_of(1.0), A_of(1.0), rtol=1e-15)

    def test_b_continuous_at_corner(self):
        eps = 1e-9
        assert abs(B_of(E3 + eps)) < 1e-8
        assert B_of(E3) == 0.0

    def test_a_convex_increasing_nonnegative(self):
        r = np.linspace(0.0, 10.0, 4001)
        a = A_of(r)
        assert np.all(a >= 0.0)
        assert np.all(np.diff(a) >= -1e-12)
        assert np.all(np.diff(a, 2) >= -1e-12)


class TestLogTerm:
    def test_values(self):
        assert log_term(0.0) == 0.0
        assert abs(log_term(1.0)) < 1e-14
        assert np.isclose(log_term(np.e), 2.0 * np.e**2, rtol=1e-13)

    def test_matches_direct_evaluation_over_range(self):
        r = np.geomspace(1e-6, 1e3, 2000)
        direct = r**2 * np.log(r**2)
        safe = log_term(r)
        rel = np.abs(safe - direct) / np.maximum(np.abs(direct), 1e-300)
        assert np.max(rel) <= 1e-12

    def test_log_rate_is_log_of_square(self):
        r = np.geomspace(1e-5, 1e2, 500)
        assert np.allclose(log_rate(r), np.log(r**2), rtol=1e-11, atol=1e-11)
        assert log_rate(0.0) == 0.0


class TestGammaM:
    def test_inside_band_is_plain_log(self):
        for m in (1, 10, 100):
            assert gamma_m(1.0, RegularizedNonlinearity(m)) == 0.0
        nl = RegularizedNonlinearity(10)
        assert np.isclose(gamma_m(np.e, nl), 2.0, rtol=1e-14)

    def test_value_at_zero(self):
        nl = RegularizedNonlinearity(10)
        assert np.isclose(gamma_m(0.0, nl), -100.0 * A_of(0.1), rtol=1e-14)

    @pytest.mark.parametrize("m", [1, 3, 10, 20, 21, 100, 10**6])
    def test_continuity_at_both_seams(self, m):
        nl = RegularizedNonlinearity(m)
        lo, hi = nl.band
        for seam in (lo, hi):
            eps = 1e-9 * seam
            below = gamma_m(max(seam - eps, 0.0), nl)
            at = gamma_m(seam, nl)
            above = gamma_m(seam + eps, nl)
            scale = max(1.0, abs(at))
            assert abs(below - at) <= 1e-6 * scale
            assert abs(above - at) <= 1e-6 * scale
        # exact agreement of the two closed forms at the seams
        assert np.isclose(gamma_m(lo, nl), np.log(lo**2), rtol=1e-12, atol=1e-12)
        assert np.isclose(gamma_m(hi, nl), np.log(hi**2), rtol=1e-12, atol=1e-12)


class TestGmApply:
    def test_fixed_points(self):
        nl = RegularizedNonlinearity(10)
        assert g_m_apply(1.0 + 0.0j, nl) == 0.0
        assert g_m_apply(0.0j, nl) == 0.0

    def test_in_band_value(self):
        nl = RegularizedNonlinearity(10)
        assert np.isclose(g_m_apply(1j * np.e, nl), 2j * np.e, rtol=1e-14)

    def test_pointwise_convergence_to_log_kernel(self):
        # exact equality once the band contains |z|
        for z in (0.3 + 0.4j, 2.0 - 1.0j, 5.0j, 0.05 + 0.0j):
            target = z * np.log(abs(z) ** 2)
            m_min = int(np.ceil(max(abs(z), 1.0 / abs(z))))
            for m in (m_min, 2 * m_min, 10 * m_min):
                got = g_m_apply(z, RegularizedNonlinearity(m))
                assert abs(got - target) <= 1e-14 * max(1.0, abs(target))

    def test_gauge_symmetry(self):
        nl = RegularizedNonlinearity(7)
        rng = np.random.Generator(np.random.Philox(12))
        for _ in range(50):
            z = complex(rng.normal(), rng.normal()) * rng.uniform(0.01, 20.0)
            theta = rng.uniform(0.0, 2.0 * np.pi)
            rotated = g_m_apply(np.exp(1j * theta) * z, nl)
            direct = np.exp(1j * theta) * g_m_apply(z, nl)
            assert abs(rotated - direct) <= 1e-12 * max(1.0, abs(direct))


class TestGmPrimitive:
    def test_zero_at_zero(self):
        assert G_m_of(0.0, RegularizedNonlinearity(10)) == 0.0

    @pytest.mark.parametrize("m", [1, 10, 20, 21, 100])
    def test_matches_quadrature_oracle(self, m):
        nl = RegularizedNonlinearity(m)
        lo, hi = nl.band
        breakpoints = sorted({E3, lo, hi})

        def integrand(sigma):
            return sigma * gamma_m(sigma, nl)

        rng = np.random.Generator(np.random.Philox(m))
        radii = np.concatenate([
            [lo, 1.0, hi * 1.5, E3 / 2.0],
            rng.uniform(0.0, 2.0 * hi, size=20),
        ])
        for r in radii:
            pts = [b for b in breakpoints if 0.0 < b < r]
            oracle, err = quad(integrand, 0.0, r, points=pts or None,
                               limit=200, epsabs=1e-13, epsrel=1e-13)
            assert abs(G_m_of(r, nl) - oracle) <= 1e-10 * max(1.0, abs(oracle))

    @pytest.mark.parametrize("m", [3, 10, 100])
    def test_derivative_recovers_g_m(self, m):
        nl = RegularizedNonlinearity(m)
        rng = np.random.Generator(np.random.Philox(m + 1))
        for r in rng.uniform(1e-3, 2.0 * m, size=30):
            eps = 1e-6 * max(r, 1.0)
            fd = (G_m_of(r + eps, nl) - G_m_of(r - eps, nl)) / (2.0 * eps)
            expected = r * gamma_m(r, nl)
            assert abs(fd - expected) <= 1e-5 * max(1.0, abs(expected))

    def test_random_radii_against_oracle(self):
        nl = RegularizedNonlinearity(10)
        rng = np.random.Generator(np.random.Philox(99))

        def integrand(sigma):
            return sigma * gamma_m(sigma, nl)

        for r in rng.uniform(0.0, 15.0, size=100):
            pts = [b for b in (E3, 0.1, 10.0) if 0.0 < b < r]
            oracle, _ = quad(integrand, 0.0, r, points=pts or None,
                             limit=200, epsabs=1e-13, epsrel=1e-13)
            assert abs(G_m_of(r, nl) - oracle) <= 1e-10 * max(1.0, abs(oracle))


class TestRegularizedNonlinearity:
    def test_rejects_m_below_one(self):
        with pytest.raises(ValueError):
            RegularizedNonlinearity(0)

    def test_band_endpoints(self):
        nl = RegularizedNonlinearity(4)
        assert nl.band == (0.25, 4.0)


class TestExtremeAmplitudes:
    def test_no_nan_below_square_underflow(self):
        """Amplitudes whose square underflows must still evaluate cleanly."""
        r = np.array([0.0, 1e-300, 1e-200, 1e-160, 1e-120, 1e-8])
        nl = RegularizedNonlinearity(100)
        for fn in (A_of, B_of, log_term,
                   lambda x: gamma_m(x, nl), lambda x: G_m_of(x, nl)):
            vals = np.asarray(fn(r))
            assert np.all(np.isfinite(vals)), fn
        # the deep-tail values round to zero, matching the true limits
        assert A_of(1e-200) == 0.0
        assert log_term(1e-200) == 0.0

    def test_huge_amplitudes_stay_finite(self):
        r = np.array([1e8, 1e100, 1e150])
        nl = RegularizedNonlinearity(100)
        assert np.all(np.isfinite(A_of(r)))
        assert np.all(np.isfinite(log_term(r)))
        assert np.all(np.isfinite(gamma_m(r, nl)))
