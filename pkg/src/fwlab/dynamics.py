"""Time integration of the Fornberg-Whitham equation and the Camassa-Holm preset.

The FW equation is integrated in its nonlocal form

    u_t + (3/2) u u_x + d_x (1 - d_xx)^-1 u = 0,

the sign convention under which the peaked traveling wave
``(8/9) exp(-|x - (4/3)t| / 2)`` is an exact solution (the reflected
convention with ``-d_x(1-d_xx)^-1 u`` on the left admits the mirrored peakon
``-(8/9) exp(-|x + (4/3)t|/2)`` instead).  The CH preset

    u_t + u u_x + d_x (1 - d_xx)^-1 (u^2 + u_x^2 / 2) = 0

exists only for the qualitative critical-norm contrast run.

Time stepping is classical four-stage Runge-Kutta on the dealiased spectrum;
the nonlocal term has a bounded symbol, so nothing here is stiff.  A guard
monitors the critical norm ``B^1_{inf,1}`` at snapshot times and aborts with
:class:`~fwlab.errors.BlowUpError` once it exceeds the configured threshold,
a runtime proxy for leaving the guaranteed existence regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .besov import besov_norm
from .errors import BlowUpError, DomainError
from .spectral import Field, FourierMultiplier, GridSpec, lp_norm, multiplier_apply

__all__ = [
    "ModelKind",
    "SolverConfig",
    "Trajectory",
    "nonlocal_term",
    "rhs",
    "solve",
    "v0",
    "energy_functional",
    "peakon_exact",
    "default_dt",
]

PEAKON_AMPLITUDE = 8.0 / 9.0
PEAKON_SPEED = 4.0 / 3.0


class ModelKind(Enum):
    FW = "fw"
    CH = "ch"


@lru_cache(maxsize=16)
def _nonlocal_multiplier(grid: GridSpec) -> FourierMultiplier:
    return FourierMultiplier.from_symbol(grid, lambda xi: 1j * xi / (1.0 + xi**2))


@lru_cache(maxsize=16)
def _derivative_values(grid: GridSpec) -> np.ndarray:
    v = 1j * grid.xi.astype(complex)
    v[grid.n_points // 2] = 0.0
    v.flags.writeable = False
    return v


def nonlocal_term(u: Field) -> Field:
    """``d_x (1 - d_xx)^-1 u``: the multiplier ``i xi / (1 + xi^2)``."""
    return multiplier_apply(_nonlocal_multiplier(u.grid), u)


def _rhs_spectrum(model: ModelKind, spec: np.ndarray, grid: GridSpec) -> np.ndarray:
    """Right-hand side in spectrum space; shared by :func:`rhs` and :func:`solve`."""
    mask = grid.dealias_mask
    nonloc = _nonlocal_multiplier(grid).values
    deriv = _derivative_values(grid)
    fu = spec * mask
    u = np.fft.ifft(fu).real
    ux = np.fft.ifft(deriv * fu).real
    if model is ModelKind.FW:
        return -1.5 * (np.fft.fft(u * ux) * mask) - nonloc * fu
    if model is ModelKind.CH:
        quad = np.fft.fft(u * u) * mask + 0.5 * (np.fft.fft(ux * ux) * mask)
        return -(np.fft.fft(u * ux) * mask) - nonloc * quad
    raise ValueError(f"unknown model {model!r}")


def rhs(model: ModelKind, u: Field) -> Field:
    """Instantaneous tendency ``u_t`` for the chosen model."""
    return Field.from_spectrum(u.grid, _rhs_spectrum(model, u.spectrum, u.grid))


def v0(u0: Field) -> Field:
    """First-order expansion field of the FW flow: identically ``rhs(FW, u0)``."""
    return rhs(ModelKind.FW, u0)


def energy_functional(u0: Field) -> float:
    """``1 + ||u||_inf (||u||_{B^2_inf,1} + ||u||_inf ||u||_{B^3_inf,1})``.

    The quantity that controls the quadratic Taylor remainder of the flow.
    """
    sup = lp_norm(u0, math.inf)
    if sup == 0.0:
        return 1.0
    b2 = besov_norm(u0, s=2.0)
    b3 = besov_norm(u0, s=3.0)
    return 1.0 + sup * (b2 + sup * b3)


def peakon_exact(t: float, grid: GridSpec) -> Field:
    """Samples of the peaked traveling wave ``(8/9) e^{-|x - (4/3)t|/2}``.

    The argument is wrapped into ``[-L, L)``; the crest must stay at least
    ``L/2`` away from the periodic seam.
    """
    shift = PEAKON_SPEED * t
    if abs(shift) >= grid.half_length / 2.0:
        raise DomainError(
            f"peak position {shift:.3g} too close to the periodic seam (|4t/3| < L/2 = "
            f"{grid.half_length / 2.0:.3g} required)"
        )
    L = grid.half_length
    y = np.mod(grid.x - shift + L, 2.0 * L) - L
    return Field.from_samples(grid, PEAKON_AMPLITUDE * np.exp(-0.5 * np.abs(y)))


def default_dt(u0: Field, cfl_safety: float = 0.25) -> float:
    """CFL-style default step: ``cfl_safety * dx / max(1, sup|u0|)``."""
    return cfl_safety * u0.grid.dx / max(1.0, float(np.max(np.abs(u0.samples))))


@dataclass
class SolverConfig:
    """Time-stepping parameters.

    ``dt=None`` resolves to the CFL default at solve time.  The requested step
    is rounded down so a whole number of uniform steps lands exactly on
    ``t_final``; snapshots are captured at the step nearest each requested
    time and recorded with the time actually reached.
    """

    t_final: float
    dt: float | None = None
    cfl_safety: float = 0.25
    blowup_threshold: float | None = None
    snapshot_times: tuple[float, ...] = ()

    def __post_init__(self):
        if self.t_final < 0:
            raise ValueError(f"t_final must be >= 0, got {self.t_final}")
        if self.dt is not None and not (self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not (0 < self.cfl_safety <= 1):
            raise ValueError(f"cfl_safety must lie in (0, 1], got {self.cfl_safety}")
        if self.blowup_threshold is not None and not (self.blowup_threshold > 0):
            raise ValueError("blowup_threshold must be positive")
        self.snapshot_times = tuple(float(t) for t in self.snapshot_times)


@dataclass
class Trajectory:
    """Stored snapshots ``(t, field)`` plus per-snapshot diagnostics."""

    model: ModelKind
    config: SolverConfig
    dt: float
    snapshots: list[tuple[float, Field]] = field(default_factory=list)
    l2_norms: list[float] = field(default_factory=list)
    critical_norms: list[float] = field(default_factory=list)

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.snapshots])

    def field_at(self, t: float) -> Field:
        """Snapshot whose recorded time is closest to ``t``."""
        idx = int(np.argmin(np.abs(self.times - t)))
        return self.snapshots[idx][1]

    def final(self) -> tuple[float, Field]:
        return self.snapshots[-1]


def solve(u0: Field, model: ModelKind = ModelKind.FW,
          config: SolverConfig | None = None) -> Trajectory:
    """Integrate ``u_t = rhs(model, u)`` from ``u0`` with classical RK4.

    The initial state is projected onto the dealiased band (its evolution
    stays there).  The first snapshot is always ``t=0`` with that state;
    diagnostics (``L^2`` and the critical ``B^1_{inf,1}`` norm) are computed
    per snapshot, and the blow-up guard aborts once the critical norm exceeds
    the threshold (default 100x its initial value).

    Deterministic: identical ``(u0, model, config)`` give identical results.
    """
    if config is None:
        config = SolverConfig(t_final=0.0)
    grid = u0.grid
    cfl_bound = default_dt(u0, config.cfl_safety)
    dt_req = config.dt if config.dt is not None else cfl_bound
    if dt_req > cfl_bound * (1.0 + 1e-12):
        raise ValueError(
            f"dt={dt_req:.6g} violates the CFL bound {cfl_bound:.6g} "
            f"(cfl_safety*dx/max(1, sup|u0|))"
        )

    spec = u0.spectrum * grid.dealias_mask

    if config.t_final == 0.0:
        n_steps, dt = 0, dt_req
    else:
        n_steps = max(1, int(math.ceil(config.t_final / dt_req - 1e-9)))
        dt = config.t_final / n_steps

    # Snapshot schedule: nearest step per requested time, plus t=0 and t_final.
    wanted = {0, n_steps}
    for t in config.snapshot_times:
        if 0.0 <= t <= config.t_final + 1e-12:
            wanted.add(min(n_steps, int(round(t / dt))) if n_steps else 0)
    snap_steps = sorted(wanted)

    initial = Field.from_spectrum(grid, spec)
    norm0 = besov_norm(initial, s=1.0)
    if config.blowup_threshold is not None:
        threshold = config.blowup_threshold
    else:
        threshold = 100.0 * norm0 if norm0 > 0 else math.inf

    traj = Trajectory(model=model, config=config, dt=dt)

    def record(k: int, spectrum: np.ndarray) -> None:
        t = k * dt
        f = Field.from_spectrum(grid, spectrum.copy())
        crit = norm0 if k == 0 else besov_norm(f, s=1.0)
        traj.snapshots.append((t, f))
        traj.l2_norms.append(lp_norm(f, 2))
        traj.critical_norms.append(crit)
        if crit > threshold:
            raise BlowUpError(time_reached=t, norm=crit, threshold=threshold)

    record(0, spec)
    snap_iter = iter(snap_steps[1:])
    next_snap = next(snap_iter, None)
    for k in range(1, n_steps + 1):
        k1 = _rhs_spectrum(model, spec, grid)
        k2 = _rhs_spectrum(model, spec + 0.5 * dt * k1, grid)
        k3 = _rhs_spectrum(model, spec + 0.5 * dt * k2, grid)
        k4 = _rhs_spectrum(model, spec + dt * k3, grid)
        spec = spec + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(spec[0].real) or not np.isfinite(float(np.max(np.abs(spec)))):
            raise BlowUpError(time_reached=k * dt, norm=math.inf, threshold=threshold)
        if next_snap is not None and k == next_snap:
            record(k, spec)
            next_snap = next(snap_iter, None)
    return traj
