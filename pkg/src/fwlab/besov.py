"""Dyadic partition of unity, Littlewood-Paley blocks and Besov norms.

The low-pass window ``chi`` equals 1 on ``|xi| <= 3/4`` and 0 on
``|xi| >= 4/3``; the annulus window is ``window(xi) = chi(xi/2) - chi(xi)``,
supported in ``3/4 <= |xi| <= 8/3``.  Building every window from the same
``chi`` makes the partition of unity

    chi(xi) + sum_j window(2^-j xi) = chi(2^-(j_max+1) xi)

hold by telescoping, i.e. to rounding rather than quadrature accuracy.

Two different objects are conventionally both called "phi" in this area: the
annulus window of the dyadic partition, and the spatial profile whose
transform is a frequency bump.  Here the former is always ``window`` /
``DyadicPartition`` and the latter lives in :mod:`fwlab.experiments` as the
"bump profile".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateInputError, UnsupportedParameterError
from .spectral import Field, GridSpec, block_sup, dealiased_product, lp_norm

__all__ = [
    "BumpProfile",
    "build_bump",
    "DyadicPartition",
    "build_partition",
    "dyadic_block",
    "low_pass",
    "block_decompose",
    "BesovIndex",
    "besov_norm",
    "inequality_ratio",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(96)


def _transition_integrand(s: np.ndarray) -> np.ndarray:
    out = np.zeros(s.shape)
    inside = np.abs(s) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


def _smooth_step(u: np.ndarray) -> np.ndarray:
    """C-infinity step: normalized integral of exp(-1/(1-s^2)) from -1 to u.

    Rises from 0 at u=-1 to 1 at u=+1, with value exactly 1/2 at u=0 by
    symmetry.  Evaluated by 96-node Gauss-Legendre quadrature on [-1, u],
    normalized by the same rule at u=1 so the endpoints are exact.
    """
    u = np.asarray(u, dtype=float)
    half = (u[..., None] + 1.0) / 2.0
    nodes = half * _GL_NODES + (u[..., None] - 1.0) / 2.0
    raw = half[..., 0] * (_transition_integrand(nodes) @ _GL_WEIGHTS)
    return raw


_STEP_NORM = float(_smooth_step(np.array([1.0]))[0])


class BumpProfile:
    """Smooth even window: 1 on ``|xi| <= r0``, 0 on ``|xi| >= r1``.

    The transition on ``r0 < |xi| < r1`` is the normalized integral of
    ``exp(-1/(1-s^2))``, so the profile is infinitely differentiable, takes
    values in [0, 1], is monotone nonincreasing in ``|xi|`` and equals 1/2 at
    the transition midpoint.
    """

    __slots__ = ("inner_radius", "outer_radius")

    def __init__(self, inner_radius: float, outer_radius: float):
        if not (0 < inner_radius < outer_radius):
            raise ValueError(
                f"need 0 < inner_radius < outer_radius, got ({inner_radius}, {outer_radius})"
            )
        self.inner_radius = float(inner_radius)
        self.outer_radius = float(outer_radius)

    def __call__(self, xi) -> np.ndarray:
        a = np.abs(np.asarray(xi, dtype=float))
        out = np.zeros(a.shape)
        out[a <= self.inner_radius] = 1.0
        band = (a > self.inner_radius) & (a < self.outer_radius)
        if np.any(band):
            u = 2.0 * (a[band] - self.inner_radius) / (
                self.outer_radius - self.inner_radius
            ) - 1.0
            out[band] = np.clip(1.0 - _smooth_step(u) / _STEP_NORM, 0.0, 1.0)
        return out

    def __repr__(self) -> str:
        return f"BumpProfile(r0={self.inner_radius}, r1={self.outer_radius})"


def build_bump(inner_radius: float, outer_radius: float) -> BumpProfile:
    """Construct the smooth plateau/support window (see :class:`BumpProfile`)."""
    return BumpProfile(inner_radius, outer_radius)


# The low-pass seed of the dyadic partition: plateau through 3/4, gone by 4/3.
_CHI = build_bump(0.75, 4.0 / 3.0)


class DyadicPartition:
    """The dyadic windows of a grid: low-pass ``chi`` plus annuli per block.

    ``j_max`` is the largest block index whose annulus has support on the
    grid; with that choice ``chi(2^-(j_max+1) xi) = 1`` for every grid
    frequency, so the partition of unity closes on the whole grid and block
    sums reconstruct every grid field.
    """

    __slots__ = ("grid", "j_max", "_chi_scaled")

    def __init__(self, grid: GridSpec):
        self.grid = grid
        self.j_max = int(math.floor(math.log2((4.0 / 3.0) * grid.nyquist)))
        scaled = []
        for j in range(self.j_max + 2):
            w = _CHI(grid.xi / 2.0**j)
            w.flags.writeable = False
            scaled.append(w)
        self._chi_scaled = scaled

    @property
    def chi(self) -> np.ndarray:
        """Low-pass window values ``chi(xi_k)``."""
        return self._chi_scaled[0]

    def window(self, j: int) -> np.ndarray:
        """Block window: ``chi`` for j=-1, ``chi(xi/2^(j+1)) - chi(xi/2^j)`` for j>=0."""
        if j == -1:
            return self._chi_scaled[0]
        if not (0 <= j <= self.j_max):
            raise ValueError(f"block index must lie in [-1, {self.j_max}], got {j}")
        return self._chi_scaled[j + 1] - self._chi_scaled[j]

    def low_pass_window(self, j: int) -> np.ndarray:
        """Symbol of the low-frequency cut-off: ``chi(xi/2^j)`` (identity past the grid)."""
        if j < 0:
            raise ValueError(f"low-pass index must be >= 0, got {j}")
        if j <= self.j_max + 1:
            return self._chi_scaled[j]
        return np.ones(self.grid.n_points)

    def partition_sum(self) -> np.ndarray:
        """``chi + sum_j window_j`` on the grid; equals 1 up to rounding."""
        total = self._chi_scaled[0].copy()
        for j in range(self.j_max + 1):
            total += self.window(j)
        return total


@lru_cache(maxsize=8)
def build_partition(grid: GridSpec) -> DyadicPartition:
    """Build (and cache) the dyadic partition for a grid."""
    return DyadicPartition(grid)


def dyadic_block(f: Field, j: int) -> Field:
    """Frequency-localized piece of ``f``: spectrum times the block-j window."""
    part = build_partition(f.grid)
    return Field.from_spectrum(f.grid, f.spectrum * part.window(j))


def low_pass(f: Field, j: int) -> Field:
    """Low-frequency cut-off: the sum of blocks up to ``j-1``.

    Equivalently multiplies the spectrum by ``chi(xi/2^j)``, by telescoping of
    the block windows.
    """
    part = build_partition(f.grid)
    return Field.from_spectrum(f.grid, f.spectrum * part.low_pass_window(j))


def block_decompose(f: Field) -> list[tuple[int, Field]]:
    """All blocks ``(j, block)`` for ``j = -1 .. j_max``; they sum back to ``f``."""
    part = build_partition(f.grid)
    return [(j, dyadic_block(f, j)) for j in range(-1, part.j_max + 1)]


@dataclass(frozen=True)
class BesovIndex:
    """The triple (s, p, r) selecting a norm; only p in {2, inf}, r in {1, inf}."""

    s: float
    p: float = math.inf
    r: float = 1.0

    def __post_init__(self):
        if self.p not in (2, math.inf):
            raise UnsupportedParameterError(f"supported p are 2 and inf, got {self.p}")
        if self.r not in (1, math.inf):
            raise UnsupportedParameterError(f"supported r are 1 and inf, got {self.r}")


def _block_lp(spectrum: np.ndarray, window: np.ndarray, grid: GridSpec, p: float,
              sup_factor: int) -> float:
    blocked = spectrum * window
    if p == 2:
        # Parseval with the dx weight: ||f||_2^2 = dx/N * sum |fhat|^2.
        return float(math.sqrt(grid.dx / grid.n_points * float(np.sum(np.abs(blocked) ** 2))))
    return block_sup(blocked, grid, sup_factor)


def besov_norm(f: Field, index: BesovIndex | None = None, *, s: float | None = None,
               p: float = math.inf, r: float = 1.0, sup_factor: int = 4) -> float:
    """Besov norm ``B^s_{p,r}`` of a grid field.

    ``r=1`` sums ``2^(j*s) * ||block_j||_p`` over blocks ``j = -1 .. j_max``;
    ``r=inf`` takes the max.  Block ``L^inf`` norms use the oversampled sup.
    The j=-1 block carries weight ``2^-s``, so e.g. a constant ``c`` has norm
    ``2^-s * |c|``.
    """
    if index is None:
        if s is None:
            raise UnsupportedParameterError("besov_norm needs a BesovIndex or s=")
        index = BesovIndex(s, p, r)
    part = build_partition(f.grid)
    spectrum = f.spectrum
    terms = [
        2.0 ** (j * index.s)
        * _block_lp(spectrum, part.window(j), f.grid, index.p, sup_factor)
        for j in range(-1, part.j_max + 1)
    ]
    return max(terms) if index.r == math.inf else float(sum(terms))


_RATIO_KINDS = ("product", "interpolation", "algebra")
_DENOM_FLOOR = 1e-300


def inequality_ratio(kind: str, f: Field, g: Field | None = None, s: float = 1.0) -> float:
    """LHS/RHS (without the constant) for one of the Besov inequalities.

    - ``product``:  ||fg||_{B^s_inf,1} / (||f||_{B^s}||g||_inf + ||g||_{B^s}||f||_inf)
    - ``algebra``:  ||fg||_{B^s_inf,1} / (||f||_{B^s}||g||_{B^s})
    - ``interpolation``:  ||f||_{B^1_inf,1} / (||f||_{B^0_inf,inf}^1/2 ||f||_{B^2_inf,inf}^1/2)

    The recorded ratios are properties of the chosen windows; they are asserted
    only against an artifact bound, never against a quoted constant.
    """
    if kind not in _RATIO_KINDS:
        raise UnsupportedParameterError(f"kind must be one of {_RATIO_KINDS}, got {kind!r}")
    if kind == "interpolation":
        num = besov_norm(f, s=1.0, p=math.inf, r=1.0)
        b0 = besov_norm(f, s=0.0, p=math.inf, r=math.inf)
        b2 = besov_norm(f, s=2.0, p=math.inf, r=math.inf)
        den = math.sqrt(b0) * math.sqrt(b2)
        if den <= _DENOM_FLOOR:
            raise DegenerateInputError("interpolation ratio denominator vanishes")
        return num / den
    if g is None:
        raise DegenerateInputError(f"{kind} ratio needs two fields")
    prod = dealiased_product(f, g)
    num = besov_norm(prod, s=s, p=math.inf, r=1.0)
    bf = besov_norm(f, s=s, p=math.inf, r=1.0)
    bg = besov_norm(g, s=s, p=math.inf, r=1.0)
    if kind == "product":
        den = bf * lp_norm(g, math.inf) + bg * lp_norm(f, math.inf)
    else:
        den = bf * bg
    if den <= _DENOM_FLOOR:
        raise DegenerateInputError(f"{kind} ratio denominator vanishes")
    return num / den
