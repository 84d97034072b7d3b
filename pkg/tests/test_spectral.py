import math

import numpy as np
import pytest

from fwlab.errors import GridMismatchError, UnsupportedParameterError
from fwlab.spectral import (Field, FourierMultiplier, GridSpec, dealiased_product,
                            lp_norm, multiplier_apply, oversampled_sup, to_samples,
                            to_spectrum)

from conftest import random_field


class TestGridSpec:
    def test_basic_quantities(self):
        g = GridSpec(half_length=64.0, n_points=1024)
        assert g.dx * g.n_points == pytest.approx(2 * g.half_length, abs=0)
        assert g.nyquist == pytest.approx(np.pi / g.dx)
        assert g.x[0] == -64.0 and g.x[-1] == pytest.approx(64.0 - g.dx)
        # frequency array symmetric about 0 except the single Nyquist mode
        xi = np.sort(g.xi)
        assert np.min(xi) == pytest.approx(-g.nyquist)
        assert np.max(xi) == pytest.approx(g.nyquist - g.delta_xi)

    @pytest.mark.parametrize("bad_n", [12, 100, 8, 3000])
    def test_rejects_non_power_of_two(self, bad_n):
        with pytest.raises(ValueError):
            GridSpec(half_length=1.0, n_points=bad_n)

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            GridSpec(half_length=-2.0, n_points=64)


class TestTransforms:
    def test_constant_concentrates_at_zero(self, pi_grid):
        f = Field.from_samples(pi_grid, np.ones(pi_grid.n_points))
        spec = to_spectrum(f)
        assert spec[0] == pytest.approx(pi_grid.n_points)
        assert np.max(np.abs(spec[1:])) < 1e-13 * pi_grid.n_points

    def test_single_mode_two_coefficients(self, pi_grid):
        # sin(pi x / L) is the k=1 mode
        f = Field.from_samples(pi_grid, np.sin(np.pi * pi_grid.x / pi_grid.half_length))
        spec = to_spectrum(f)
        mask = np.ones(pi_grid.n_points, dtype=bool)
        mask[[1, -1]] = False
        assert np.max(np.abs(spec[mask])) < 1e-10
        assert abs(spec[1]) == pytest.approx(pi_grid.n_points / 2, rel=1e-12)

    def test_roundtrip_random(self, pi_grid, rng):
        f = random_field(pi_grid, rng)
        back = to_samples(to_spectrum(f), pi_grid)
        assert np.max(np.abs(back.samples - f.samples)) < 1e-12

    def test_parseval(self, pi_grid, rng):
        f = random_field(pi_grid, rng)
        from_samples = lp_norm(f, 2)
        g = pi_grid
        from_spectrum = math.sqrt(g.dx / g.n_points * float(np.sum(np.abs(f.spectrum) ** 2)))
        assert from_samples == pytest.approx(from_spectrum, rel=1e-12)

    def test_length_mismatch_rejected(self, pi_grid):
        with pytest.raises(GridMismatchError):
            to_samples(np.zeros(17, dtype=complex), pi_grid)
        with pytest.raises(GridMismatchError):
            Field.from_samples(pi_grid, np.zeros(pi_grid.n_points - 1))

    def test_non_real_spectrum_rejected(self, pi_grid):
        spec = np.zeros(pi_grid.n_points, dtype=complex)
        spec[3] = 1.0  # no conjugate partner
        with pytest.raises(ValueError, match="conjugate"):
            Field.from_spectrum(pi_grid, spec)


class TestFieldArithmetic:
    def test_add_sub_scale(self, pi_grid, rng):
        f = random_field(pi_grid, rng)
        g = random_field(pi_grid, rng)
        assert np.allclose((f + g).samples, f.samples + g.samples)
        assert np.allclose((f - g).samples, f.samples - g.samples)
        assert np.allclose((2.5 * f).samples, 2.5 * f.samples)
        assert np.allclose((-f).samples, -f.samples)

    def test_grid_mismatch(self, pi_grid, box_grid, rng):
        f = random_field(pi_grid, rng)
        g = random_field(box_grid, rng)
        with pytest.raises(GridMismatchError):
            _ = f + g


class TestMultipliers:
    def test_identity(self, pi_grid, rng):
        f = random_field(pi_grid, rng)
        m = FourierMultiplier.from_symbol(pi_grid, lambda xi: np.ones_like(xi))
        out = multiplier_apply(m, f)
        assert np.max(np.abs(out.samples - f.samples)) < 1e-12

    def test_derivative_of_pure_mode(self, pi_grid):
        xi0 = 2.0  # grid frequency on the pi grid
        f = Field.from_samples(pi_grid, np.sin(xi0 * pi_grid.x))
        m = FourierMultiplier.from_symbol(pi_grid, lambda xi: 1j * xi)
        out = multiplier_apply(m, f)
        assert np.max(np.abs(out.samples - xi0 * np.cos(xi0 * pi_grid.x))) < 1e-12

    def test_helmholtz_multiplier_on_cosine(self, pi_grid):
        xi0 = 3.0
        f = Field.from_samples(pi_grid, np.cos(xi0 * pi_grid.x))
        m = FourierMultiplier.from_symbol(pi_grid, lambda xi: 1j * xi / (1 + xi**2))
        out = multiplier_apply(m, f)
        expected = -xi0 / (1 + xi0**2) * np.sin(xi0 * pi_grid.x)
        assert np.max(np.abs(out.samples - expected)) < 1e-12

    def test_derivative_annihilates_constants(self, pi_grid):
        f = Field.from_samples(pi_grid, np.full(pi_grid.n_points, 3.7))
        m = FourierMultiplier.from_symbol(pi_grid, lambda xi: 1j * xi)
        out = multiplier_apply(m, f)
        assert np.max(np.abs(out.samples)) < 1e-13

    def test_asymmetric_symbol_rejected(self, pi_grid):
        with pytest.raises(ValueError, match="conj"):
            FourierMultiplier.from_symbol(pi_grid, lambda xi: 1j * np.abs(xi))

    def test_grid_mismatch(self, pi_grid, box_grid, rng):
        f = random_field(box_grid, rng)
        m = FourierMultiplier.from_symbol(pi_grid, lambda xi: 1j * xi)
        with pytest.raises(GridMismatchError):
            multiplier_apply(m, f)


class TestDealiasedProduct:
    def test_zero(self, pi_grid):
        z = Field.zeros(pi_grid)
        assert np.max(np.abs(dealiased_product(z, z).samples)) == 0.0

    def test_identity_factor(self, pi_grid, rng):
        one = Field.from_samples(pi_grid, np.ones(pi_grid.n_points))
        g = random_field(pi_grid, rng, band_fraction=0.5)  # below 2/3 cutoff
        out = dealiased_product(one, g)
        assert np.max(np.abs(out.samples - g.samples)) < 1e-12

    def test_square_of_mode_closed_form(self, pi_grid):
        # 2*xi0 below the 2/3 cutoff: product is exact
        xi0 = 1.5
        f = Field.from_samples(pi_grid, np.sin(xi0 * pi_grid.x))
        out = dealiased_product(f, f)
        expected = (1 - np.cos(2 * xi0 * pi_grid.x)) / 2
        assert np.max(np.abs(out.samples - expected)) < 1e-12
        # and against the direct pointwise product oracle
        assert np.max(np.abs(out.samples - f.samples**2)) < 1e-12

    def test_matches_pointwise_product_below_third(self, pi_grid, rng):
        f = random_field(pi_grid, rng, band_fraction=1 / 3 - 0.02)
        g = random_field(pi_grid, rng, band_fraction=1 / 3 - 0.02)
        out = dealiased_product(f, g)
        assert np.max(np.abs(out.samples - f.samples * g.samples)) < 1e-12

    def test_truncates_high_modes(self, pi_grid):
        # product of two modes just below the cutoff lands above it -> zeroed
        xi0 = 0.6 * pi_grid.nyquist
        xi0 = round(xi0 / pi_grid.delta_xi) * pi_grid.delta_xi
        f = Field.from_samples(pi_grid, np.cos(xi0 * pi_grid.x))
        out = dealiased_product(f, f)
        # cos^2 = 1/2 + cos(2 xi0 x)/2, the high part is cut
        assert np.max(np.abs(out.samples - 0.5)) < 1e-12


class TestNorms:
    def test_l2_of_mode(self, pi_grid):
        f = Field.from_samples(pi_grid, np.sin(2.0 * pi_grid.x))
        assert lp_norm(f, 2) == pytest.approx(math.sqrt(pi_grid.half_length), rel=1e-12)

    def test_zero(self, pi_grid):
        z = Field.zeros(pi_grid)
        assert lp_norm(z, 2) == 0.0
        assert lp_norm(z, math.inf) == 0.0

    def test_peakon_sup(self):
        # the interpolation ripple near the crest scales like 1/N; the 1e-6
        # tolerance needs production-like resolution
        grid = GridSpec(half_length=64.0, n_points=2**14)
        u = Field.from_samples(grid, (8 / 9) * np.exp(-0.5 * np.abs(grid.x)))
        assert abs(lp_norm(u, math.inf) - 8 / 9) < 1e-6

    def test_unsupported_p(self, pi_grid):
        f = Field.from_samples(pi_grid, np.ones(pi_grid.n_points))
        with pytest.raises(UnsupportedParameterError):
            lp_norm(f, 4)


class TestOversampledSup:
    def test_factor_one_is_grid_max(self, pi_grid, rng):
        f = random_field(pi_grid, rng)
        assert oversampled_sup(f, 1) == np.max(np.abs(f.samples))

    def test_constant(self, pi_grid):
        f = Field.from_samples(pi_grid, np.full(pi_grid.n_points, -2.5))
        for factor in (1, 2, 4, 8):
            assert oversampled_sup(f, factor) == pytest.approx(2.5, rel=1e-13)

    def test_pure_modes_hit_one(self, pi_grid):
        # grid-aligned pure modes: the refined grid contains the crest exactly
        for k in (1, 3, 10, 40, 100):
            xi0 = k * pi_grid.delta_xi
            f = Field.from_samples(pi_grid, np.sin(xi0 * pi_grid.x))
            s = oversampled_sup(f, 4)
            assert 1 - 1e-6 <= s <= 1 + 1e-9

    def test_offset_near_nyquist_mode_approaches_one(self):
        grid = GridSpec(half_length=16 * np.pi, n_points=256)
        xi0 = grid.nyquist / 2
        f = Field.from_samples(grid, np.sin(xi0 * grid.x + 0.4))
        sups = [oversampled_sup(f, factor) for factor in (1, 2, 4, 8, 16, 32)]
        dense = np.max(np.abs(np.sin(xi0 * np.linspace(-grid.half_length,
                                                       grid.half_length, 2_000_001) + 0.4)))
        assert all(sups[i + 1] >= sups[i] - 1e-13 for i in range(len(sups) - 1))
        assert abs(sups[-1] - dense) < 1e-3
        assert sups[-1] <= 1 + 1e-12

    def test_invalid_factor(self, pi_grid):
        f = Field.zeros(pi_grid)
        with pytest.raises(ValueError):
            oversampled_sup(f, 0)
