import numpy as np
import pytest

from fwlab.spectral import Field, GridSpec


@pytest.fixture(scope="session")
def pi_grid():
    """Small grid whose length is a multiple of pi, so integer frequencies
    (sin x, sin 2x, ...) are exact grid modes."""
    return GridSpec(half_length=16 * np.pi, n_points=512)


@pytest.fixture(scope="session")
def box_grid():
    """Small grid with the production domain [-64, 64)."""
    return GridSpec(half_length=64.0, n_points=1024)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


def random_field(grid: GridSpec, rng, band_fraction=0.25) -> Field:
    """Band-limited random field, spectrum inside band_fraction * nyquist."""
    band = band_fraction * grid.nyquist
    envelope = (np.abs(grid.xi) <= band).astype(float)
    coeffs = (rng.standard_normal(grid.n_points)
              + 1j * rng.standard_normal(grid.n_points)) * envelope
    spec = coeffs + np.conj(coeffs[(-np.arange(grid.n_points)) % grid.n_points])
    u = np.fft.ifft(spec).real
    return Field.from_samples(grid, u / max(1e-30, np.max(np.abs(u))))
