"""The measurement harness: sequences, slope fits and the experiment runs.

Each ``run_*`` function assembles an :class:`ExperimentReport` with raw
measurement rows, derived constants and pass/fail verdicts.  Every verdict
names the tolerance it was judged by and whether that tolerance is a declared
artifact tolerance or a constant measured by the run itself (none of them are
quoted constants; the estimates being probed only assert existence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .besov import besov_norm, build_bump, build_partition, inequality_ratio, low_pass
from .dynamics import (ModelKind, SolverConfig, Trajectory, peakon_exact, rhs, solve, v0,
                       energy_functional)
from .errors import BlowUpError, DegenerateInputError, ResolvabilityError
from .spectral import (Field, FourierMultiplier, GridSpec, _padded_spectrum,
                       dealiased_product, lp_norm, multiplier_apply)

__all__ = [
    "DEFAULT_GRID", "SEQUENCE_GRID", "CORPUS_GRID",
    "SequencePair", "SlopeFit", "Measurement", "Verdict", "ExperimentReport",
    "make_phi_profile", "carrier_frequency", "max_resolvable_n",
    "make_fn", "make_gn", "make_sequence_pair",
    "random_band_limited", "fit_loglog_slope",
    "run_lemma41_scalings", "run_peakon", "run_conservation", "run_taylor",
    "run_nonuniform", "run_continuity", "run_lipschitz_linf", "run_ch_contrast",
    "inequality_corpus_sweep",
]

# Default grids: dx = 1/256 covers the peakon and smooth runs; the sequence
# experiments need the dealiased band to hold (17/12)*2^9, hence dx = 1/512.
DEFAULT_GRID = GridSpec(half_length=64.0, n_points=2**15)
SEQUENCE_GRID = GridSpec(half_length=64.0, n_points=2**16)
CORPUS_GRID = GridSpec(half_length=64.0, n_points=2**13)

DEFAULT_N_RANGE = (5, 6, 7, 8, 9)
DEFAULT_T_LIST = (0.01, 0.02, 0.05, 0.1)
DEFAULT_SEED = 20250810

# Artifact bounds for quantities whose theoretical constants are
# non-constructive; measured values sit far below (see reports).
TAYLOR_RATIO_BOUND = 10.0
LIPSCHITZ_RATIO_BOUND = 10.0
INEQUALITY_RATIO_BOUND = 50.0

_CARRIER_RATE = 17.0 / 12.0
_GN_PREFACTOR = 12.0 / 17.0


# ---------------------------------------------------------------------------
# report plumbing


@dataclass
class Measurement:
    label: str
    value: float
    t: float | None = None
    n: int | None = None
    params: dict = dc_field(default_factory=dict)


@dataclass
class Verdict:
    name: str
    passed: bool
    measured: float
    tolerance: str
    provenance: str = "declared tolerance"


@dataclass
class ExperimentReport:
    name: str
    params: dict = dc_field(default_factory=dict)
    measurements: list[Measurement] = dc_field(default_factory=list)
    derived: dict = dc_field(default_factory=dict)
    verdicts: list[Verdict] = dc_field(default_factory=list)
    notes: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def add(self, label: str, value: float, t: float | None = None,
            n: int | None = None, **params) -> None:
        self.measurements.append(Measurement(label, float(value), t, n, params))

    def verdict(self, name: str, passed: bool, measured: float, tolerance: str,
                provenance: str = "declared tolerance") -> None:
        self.verdicts.append(Verdict(name, bool(passed), float(measured), tolerance, provenance))


@dataclass
class SlopeFit:
    """Least-squares line through (log x, log y)."""

    log_x: np.ndarray
    log_y: np.ndarray
    slope: float
    intercept: float
    residual: float


def fit_loglog_slope(points: Iterable[tuple[float, float]]) -> SlopeFit:
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points for a slope fit, got {len(pts)}")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("log-log fit needs strictly positive coordinates")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return SlopeFit(lx, ly, float(slope), float(intercept), resid)


# ---------------------------------------------------------------------------
# sequence construction


@dataclass
class SequencePair:
    """High-frequency f_n and low-frequency g_n sharing one bump profile."""

    n: int
    f_n: Field
    g_n: Field
    phi_profile: Field
    carrier: float  # snapped carrier frequency of f_n


@lru_cache(maxsize=8)
def make_phi_profile(grid: GridSpec) -> Field:
    """Spatial profile whose transform is the smooth bump on [1/4, 1/2].

    Samples equal ``(1/2L) * sum_k psi(xi_k) exp(i xi_k x)``, i.e. the
    periodization of the continuum profile; real, even, with super-polynomial
    (root-exponential) decay.
    """
    psi = build_bump(0.25, 0.5)(grid.xi)
    k = np.fft.fftfreq(grid.n_points, d=1.0 / grid.n_points)
    phase = np.where(np.mod(k, 2) == 0, 1.0, -1.0)  # x grid starts at -L
    samples = np.fft.ifft(psi * phase) * (grid.n_points / (2.0 * grid.half_length))
    return Field.from_samples(grid, samples.real)


def carrier_frequency(n: int, grid: GridSpec) -> float:
    """(17/12)*2^n snapped to the nearest grid frequency.

    The nominal value is irrational relative to ``pi/L``; snapping keeps the
    carrier exactly periodic so the packet spectrum has no seam leakage.
    """
    nominal = _CARRIER_RATE * 2.0**n
    return round(nominal / grid.delta_xi) * grid.delta_xi


def max_resolvable_n(grid: GridSpec) -> int:
    """Largest n whose packet band ``carrier +- 1/2`` fits under the 2/3 cutoff."""
    n = 0
    while carrier_frequency(n + 1, grid) + 0.5 <= grid.dealias_cutoff:
        n += 1
    return n


def _check_resolvable(n: int, grid: GridSpec) -> None:
    if n < 0:
        raise ValueError(f"sequence index must be >= 0, got {n}")
    if carrier_frequency(n, grid) + 0.5 > grid.dealias_cutoff:
        raise ResolvabilityError(n, max_resolvable_n(grid))


def make_fn(n: int, grid: GridSpec) -> Field:
    """High-frequency packet ``2^-n * phi(x) * sin(carrier * x)``."""
    _check_resolvable(n, grid)
    phi = make_phi_profile(grid)
    lam = carrier_frequency(n, grid)
    return Field.from_samples(grid, 2.0**-n * phi.samples * np.sin(lam * grid.x))


def make_gn(n: int, grid: GridSpec) -> Field:
    """Low-frequency companion ``(12/17) * 2^-n * phi(x)``."""
    _check_resolvable(n, grid)
    phi = make_phi_profile(grid)
    return Field.from_samples(grid, _GN_PREFACTOR * 2.0**-n * phi.samples)


def make_sequence_pair(n: int, grid: GridSpec) -> SequencePair:
    return SequencePair(
        n=n,
        f_n=make_fn(n, grid),
        g_n=make_gn(n, grid),
        phi_profile=make_phi_profile(grid),
        carrier=carrier_frequency(n, grid),
    )


@lru_cache(maxsize=16)
def _derivative_multiplier(grid: GridSpec) -> FourierMultiplier:
    return FourierMultiplier.from_symbol(grid, lambda xi: 1j * xi)


def derivative(u: Field) -> Field:
    return multiplier_apply(_derivative_multiplier(u.grid), u)


def random_band_limited(rng: np.random.Generator, grid: GridSpec,
                        band: float = 32.0, amplitude: float = 1.0) -> Field:
    """Seeded random real field with spectrum supported in ``|xi| <= band``,
    normalized to ``max|u| = amplitude``."""
    envelope = np.exp(-((grid.xi / (band / 2.0)) ** 2)) * (np.abs(grid.xi) <= band)
    coeffs = (rng.standard_normal(grid.n_points)
              + 1j * rng.standard_normal(grid.n_points)) * envelope
    spec = coeffs + np.conj(coeffs[(-np.arange(grid.n_points)) % grid.n_points])
    u = np.fft.ifft(spec).real
    peak = float(np.max(np.abs(u)))
    if peak == 0.0:
        raise DegenerateInputError("random field degenerated to zero")
    return Field.from_samples(grid, amplitude * u / peak)


# ---------------------------------------------------------------------------
# experiment runs


def _crest_position(f: Field, factor: int = 4) -> float:
    """Sub-grid crest location: oversample, then fit a parabola at the argmax."""
    grid = f.grid
    fine = (np.fft.ifft(_padded_spectrum(f.spectrum, grid.n_points, factor)) * factor).real
    m = grid.n_points * factor
    dxf = grid.dx / factor
    i = int(np.argmax(fine))
    a, b, c = fine[(i - 1) % m], fine[i], fine[(i + 1) % m]
    denom = a - 2.0 * b + c
    delta = 0.0 if denom == 0 else 0.5 * (a - c) / denom
    return -grid.half_length + (i + delta) * dxf


def run_peakon(grid: GridSpec = DEFAULT_GRID, t_final: float = 1.0,
               n_snapshots: int = 11, dt: float | None = None) -> ExperimentReport:
    """Evolve the exact peakon; report shape error and crest speed."""
    report = ExperimentReport("peakon", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "t_final": t_final, "n_snapshots": n_snapshots})
    u0 = peakon_exact(0.0, grid)
    snaps = tuple(np.linspace(0.0, t_final, n_snapshots))
    traj = solve(u0, ModelKind.FW, SolverConfig(t_final=t_final, dt=dt, snapshot_times=snaps))
    report.params["dt"] = traj.dt

    times, positions, errors = [], [], []
    for t, f in traj.snapshots:
        exact = peakon_exact(t, grid)
        err = lp_norm(f - exact, 2) / lp_norm(exact, 2)
        pos = _crest_position(f)
        times.append(t); positions.append(pos); errors.append(err)
        report.add("relative_l2_error", err, t=t)
        report.add("crest_position", pos, t=t)
    speed = float(np.polyfit(times, positions, 1)[0])
    report.derived["crest_speed"] = speed
    report.derived["max_relative_l2_error"] = max(errors)

    speed_err = abs(speed - 4.0 / 3.0) / (4.0 / 3.0)
    report.verdict("crest_speed_within_1pct", speed_err <= 0.01, speed,
                   "relative deviation from 4/3 <= 1e-2")
    report.verdict("shape_error_below_5e-3", max(errors) <= 5e-3, max(errors),
                   "max relative L2 error <= 5e-3")
    return report


def run_conservation(u0: Field | None = None, grid: GridSpec = DEFAULT_GRID,
                     t_final: float = 1.0, dt: float | None = None,
                     n_snapshots: int = 11) -> ExperimentReport:
    """Track the relative drift of the quadratic invariant along an FW run."""
    if u0 is None:
        u0 = make_gn(5, grid)
    report = ExperimentReport("conservation", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points, "t_final": t_final})
    snaps = tuple(np.linspace(0.0, t_final, n_snapshots))
    traj = solve(u0, ModelKind.FW, SolverConfig(t_final=t_final, dt=dt, snapshot_times=snaps))
    report.params["dt"] = traj.dt
    base = traj.l2_norms[0]
    drifts = []
    for (t, _), l2 in zip(traj.snapshots, traj.l2_norms):
        drift = abs(l2 - base) / base if base > 0 else 0.0
        drifts.append(drift)
        report.add("l2_norm", l2, t=t)
        report.add("relative_drift", drift, t=t)
    report.derived["max_relative_drift"] = max(drifts)
    report.verdict("l2_drift_below_1e-6", max(drifts) < 1e-6, max(drifts),
                   "max relative L2 drift over the run < 1e-6")
    return report


_NOISE_FLOOR = 1e-12


def run_taylor(u0: Field, t_list: Sequence[float] | None = None,
               dt: float | None = None, label: str = "custom") -> ExperimentReport:
    """Quadratic-remainder probe: R(t) = ||S_t(u0) - u0 - t*v0(u0)||_{B^1_inf,1}.

    Fits the log-log slope of R against the recorded snapshot times and
    reports R(t) / (t^2 * E(u0)).
    """
    grid = u0.grid
    if t_list is None:
        t_list = tuple(np.geomspace(1e-3, 1e-1, 9))
    t_list = tuple(sorted(float(t) for t in t_list))
    report = ExperimentReport("taylor", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "initial": label, "t_list": list(t_list)})

    if dt is None:
        dt = min(0.25 * grid.dx / max(1.0, float(np.max(np.abs(u0.samples)))),
                 t_list[0] / 4.0)
    traj = solve(u0, ModelKind.FW,
                 SolverConfig(t_final=t_list[-1], dt=dt, snapshot_times=t_list))
    report.params["dt"] = traj.dt

    base = traj.snapshots[0][1]  # dealias-projected initial state
    tendency = v0(base)
    energy = energy_functional(base)
    report.derived["energy_functional"] = energy

    pts, ratios = [], []
    for t, f in traj.snapshots[1:]:
        if t == 0.0:
            continue
        remainder = besov_norm(f - base - t * tendency, s=1.0)
        report.add("taylor_remainder", remainder, t=t)
        if remainder > _NOISE_FLOOR:
            pts.append((t, remainder))
            ratio = remainder / (t * t * energy)
            ratios.append(ratio)
            report.add("remainder_over_t2E", ratio, t=t)

    if len(pts) < 4:
        report.notes.append("remainder below noise floor; no slope fitted")
        report.verdict("quadratic_slope", True, 0.0,
                       "not applicable: remainder below 1e-12 noise floor")
        return report

    fit = fit_loglog_slope(pts)
    report.derived["slope"] = fit.slope
    report.derived["fit_residual"] = fit.residual
    report.derived["max_remainder_ratio"] = max(ratios)
    report.verdict("quadratic_slope", 1.8 <= fit.slope <= 2.2, fit.slope,
                   "log-log slope of the remainder in [1.8, 2.2]")
    report.verdict("remainder_ratio_bounded", max(ratios) <= TAYLOR_RATIO_BOUND,
                   max(ratios), f"max R/(t^2 E) <= {TAYLOR_RATIO_BOUND} (artifact bound)",
                   provenance="measured constant")
    return report


def _product_norm_b1_inf(pair: SequencePair) -> float:
    """||g_n * d_x f_n||_{B^1_inf,inf} for one sequence pair."""
    prod = dealiased_product(pair.g_n, derivative(pair.f_n))
    return besov_norm(prod, s=1.0, r=math.inf)


def run_lemma41_scalings(n_range: Sequence[int] = DEFAULT_N_RANGE,
                         sigma_list: Sequence[float] = (1.0, 2.0, 3.0),
                         grid: GridSpec = SEQUENCE_GRID) -> ExperimentReport:
    """Scaling checks for the f_n/g_n sequences and the measured floor M1."""
    n_range = tuple(int(n) for n in n_range)
    report = ExperimentReport("lemma41", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "n_range": list(n_range), "sigma_list": list(sigma_list)})

    sigma_ratio: dict[float, list[float]] = {s: [] for s in sigma_list}
    g_norms, m1_values = [], []
    for n in n_range:
        pair = make_sequence_pair(n, grid)
        for s in sigma_list:
            val = besov_norm(pair.f_n, s=float(s)) * 2.0 ** (-(s - 1.0) * n)
            sigma_ratio[s].append(val)
            report.add("fn_scaled_norm", val, n=n, sigma=s)
        g1 = besov_norm(pair.g_n, s=1.0)
        g_norms.append(g1)
        report.add("gn_b1_norm", g1, n=n)
        m1 = _product_norm_b1_inf(pair)
        m1_values.append(m1)
        report.add("product_b1_infty_norm", m1, n=n)

    ok_sigma = True
    for s in sigma_list:
        vals = sigma_ratio[s]
        spread = max(vals) / min(vals)
        report.add("fn_scaled_norm_spread", spread, sigma=s)
        ok_sigma = ok_sigma and spread <= 2.0
    worst_spread = max(max(v) / min(v) for v in sigma_ratio.values())
    report.verdict("fn_scaling_stable", ok_sigma, worst_spread,
                   "per-sigma spread of 2^{-(sigma-1)n}||f_n|| over n <= 2")

    step_ratios = [g_norms[i + 1] / g_norms[i] for i in range(len(g_norms) - 1)]
    for (i, rto) in enumerate(step_ratios):
        report.add("gn_step_ratio", rto, n=n_range[i + 1])
    ok_g = all(0.45 <= r <= 0.55 for r in step_ratios)
    worst_g = max(step_ratios, key=lambda r: abs(r - 0.5)) if step_ratios else 0.5
    report.verdict("gn_halving", ok_g, worst_g,
                   "per-step ratio ||g_{n+1}||/||g_n|| in [0.45, 0.55]")

    m1_hat = min(m1_values)
    report.derived["m1_hat"] = m1_hat
    report.derived["m1_spread"] = max(m1_values) / min(m1_values)
    report.verdict("m1_positive", m1_hat > 0.0, m1_hat,
                   "min_n ||g_n d_x f_n||_{B^1_inf,inf} > 0",
                   provenance="measured constant")
    report.verdict("m1_stable", max(m1_values) / min(m1_values) <= 2.0,
                   max(m1_values) / min(m1_values),
                   "max/min of the product norm over n <= 2",
                   provenance="measured constant")
    return report


def run_nonuniform(n_range: Sequence[int] = DEFAULT_N_RANGE,
                   t_list: Sequence[float] = DEFAULT_T_LIST,
                   grid: GridSpec = SEQUENCE_GRID,
                   dt: float | None = None) -> ExperimentReport:
    """Non-uniform-dependence demonstration.

    For each n solves from f_n + g_n and from f_n, measures
    D_n(t) = ||S_t(f_n+g_n) - S_t(f_n)||_{B^1_inf,1} and asserts the linear
    floor D_n(t)/t >= M1_hat/2, with M1_hat measured from the same sequences.
    Times whose measured quadratic remainder exceeds t*M1_hat/2 are dropped
    and recorded (the factor 1/2 is the artifact's allowance for them).
    """
    n_range = tuple(int(n) for n in n_range)
    t_list = tuple(sorted(float(t) for t in t_list))
    report = ExperimentReport("nonuniform", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "n_range": list(n_range), "t_list": list(t_list)})

    pairs = [make_sequence_pair(n, grid) for n in n_range]
    m1_hat = min(_product_norm_b1_inf(p) for p in pairs)
    report.derived["m1_hat"] = m1_hat

    f_norms, g_norms = [], []
    ratio_min = math.inf
    dropped: set[float] = set()
    for pair in pairs:
        n = pair.n
        fb = besov_norm(pair.f_n, s=1.0)
        gb = besov_norm(pair.g_n, s=1.0)
        f_norms.append(fb); g_norms.append(gb)
        report.add("fn_b1_norm", fb, n=n)
        report.add("gn_b1_norm", gb, n=n)

        cfg = SolverConfig(t_final=t_list[-1], dt=dt, snapshot_times=t_list)
        traj_sum = solve(pair.f_n + pair.g_n, ModelKind.FW, cfg)
        traj_f = solve(pair.f_n, ModelKind.FW, cfg)
        base_sum, base_f = traj_sum.snapshots[0][1], traj_f.snapshots[0][1]
        v_sum, v_f = v0(base_sum), v0(base_f)

        d0 = besov_norm(base_sum - base_f, s=1.0)
        report.add("difference_b1", d0, t=0.0, n=n)

        for (t, fs), (_, ff) in zip(traj_sum.snapshots[1:], traj_f.snapshots[1:]):
            if t == 0.0:
                continue
            dn = besov_norm(fs - ff, s=1.0)
            report.add("difference_b1", dn, t=t, n=n)
            report.add("difference_rate", dn / t, t=t, n=n)
            # measured quadratic corrections of both flows at this time
            correction = (besov_norm(fs - base_sum - t * v_sum, s=1.0)
                          + besov_norm(ff - base_f - t * v_f, s=1.0))
            if correction > 0.5 * t * m1_hat:
                dropped.add(t)
                continue
            ratio_min = min(ratio_min, dn / t)

    if dropped:
        report.notes.append(
            "dropped t in %s: measured quadratic correction exceeded t*M1_hat/2"
            % sorted(dropped))
        report.derived["t_dropped"] = sorted(dropped)

    g_steps = [g_norms[i + 1] / g_norms[i] for i in range(len(g_norms) - 1)]
    ok_g = all(0.45 <= r <= 0.55 for r in g_steps)
    worst_g = max(g_steps, key=lambda r: abs(r - 0.5)) if g_steps else 0.5
    report.verdict("gn_decays_geometrically", ok_g, worst_g,
                   "per-step ratio of ||g_n||_{B^1} in [0.45, 0.55]")
    f_spread = max(f_norms) / min(f_norms)
    report.verdict("fn_bounded", f_spread <= 2.0, f_spread,
                   "max/min of ||f_n||_{B^1} over n <= 2")
    report.derived["min_difference_rate"] = ratio_min
    report.verdict("difference_rate_floor",
                   bool(ratio_min != math.inf and ratio_min >= 0.5 * m1_hat),
                   ratio_min if ratio_min != math.inf else -1.0,
                   "min over n, t of D_n(t)/t >= M1_hat/2 = %.6g" % (0.5 * m1_hat),
                   provenance="measured constant")
    return report


def run_continuity(u0: Field | None = None, N_list: Sequence[int] = (3, 4, 5, 6, 7, 8),
                   t_eval: float = 0.1, grid: GridSpec = DEFAULT_GRID,
                   dt: float | None = None) -> ExperimentReport:
    """Continuous-dependence probe via low-pass truncated initial data.

    C_N = ||S_t(S_N u0) - S_t(u0)||_{B^1_inf,1} at t_eval must be
    nonincreasing in N (5% slack) and end below 1% of its initial value.
    """
    if u0 is None:
        u0 = make_fn(6, grid) + make_gn(6, grid)
    N_list = tuple(int(N) for N in N_list)
    part = build_partition(grid)
    if any(N < 0 or N > part.j_max for N in N_list):
        raise ValueError(f"N_list entries must lie in [0, {part.j_max}]")
    report = ExperimentReport("continuity", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "N_list": list(N_list), "t_eval": t_eval})

    cfg = SolverConfig(t_final=t_eval, dt=dt, snapshot_times=(t_eval,))
    ref = solve(u0, ModelKind.FW, cfg)
    t_rec, ref_final = ref.final()
    report.params["t_recorded"] = t_rec

    c_values = []
    for N in N_list:
        truncated = low_pass(u0, N)
        report.add("truncation_b1", besov_norm(u0 - truncated, s=1.0), n=N)
        traj = solve(truncated, ModelKind.FW, cfg)
        cn = besov_norm(traj.final()[1] - ref_final, s=1.0)
        c_values.append(cn)
        report.add("difference_b1", cn, t=t_rec, n=N)

    floor = 1e-10 * max(c_values)
    nonincreasing = all(
        c_values[i + 1] <= 1.05 * c_values[i] + floor for i in range(len(c_values) - 1))
    worst = max((c_values[i + 1] / c_values[i] if c_values[i] > 0 else 1.0)
                for i in range(len(c_values) - 1))
    report.verdict("c_n_nonincreasing", nonincreasing, worst,
                   "C_{N+1} <= 1.05 * C_N (absolute floor for roundoff ties)")
    terminal = c_values[-1] / c_values[0] if c_values[0] > 0 else 0.0
    report.derived["terminal_over_initial"] = terminal
    report.verdict("c_n_terminal_below_1pct", terminal < 0.01, terminal,
                   "C at largest N < 0.01 * C at smallest N")
    return report


def run_lipschitz_linf(pair_count: int = 20,
                       scales: Sequence[float] = (1e-2, 1e-3, 1e-4),
                       t_eval: float = 0.1, seed: int = DEFAULT_SEED,
                       grid: GridSpec = CORPUS_GRID,
                       dt: float | None = None) -> ExperimentReport:
    """Sup-norm stability of the flow map over a seeded corpus of pairs.

    For each base field u and unit perturbation direction d, measures
    ||S_t(u) - S_t(u + scale*d)||_inf / scale and asserts the worst ratio is
    bounded and stable (within factor 2) as the scale shrinks.
    """
    scales = tuple(sorted((float(s) for s in scales), reverse=True))
    report = ExperimentReport("lipschitz", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "pair_count": pair_count, "scales": list(scales),
        "t_eval": t_eval, "seed": seed})
    rng = np.random.default_rng(seed)
    cfg = SolverConfig(t_final=t_eval, dt=dt, snapshot_times=(t_eval,))

    bases, directions, evolved = [], [], []
    for _ in range(pair_count):
        u = random_band_limited(rng, grid, amplitude=0.5)
        d = random_band_limited(rng, grid, amplitude=1.0)
        if lp_norm(d, math.inf) == 0.0:
            raise DegenerateInputError("zero perturbation direction")
        bases.append(u)
        directions.append(d)
        evolved.append(solve(u, ModelKind.FW, cfg).final()[1])

    per_scale = []
    for scale in scales:
        worst = 0.0
        for u, d, su in zip(bases, directions, evolved):
            perturbed = Field.from_samples(grid, u.samples + scale * d.samples)
            sv = solve(perturbed, ModelKind.FW, cfg).final()[1]
            w0 = lp_norm(u - perturbed, math.inf)
            ratio = lp_norm(su - sv, math.inf) / w0
            worst = max(worst, ratio)
        per_scale.append(worst)
        report.add("max_linf_ratio", worst, scale=scale)

    report.derived["ratio_by_scale"] = dict(zip(map(str, scales), per_scale))
    spread = max(per_scale) / min(per_scale)
    report.verdict("ratio_scale_stable", spread <= 2.0, spread,
                   "max ratio varies by < 2x across perturbation scales")
    report.verdict("ratio_bounded", max(per_scale) <= LIPSCHITZ_RATIO_BOUND,
                   max(per_scale),
                   f"max ratio <= {LIPSCHITZ_RATIO_BOUND} (artifact bound)",
                   provenance="measured constant")
    return report


def run_ch_contrast(n: int = 6, t_list: Sequence[float] | None = None,
                    grid: GridSpec = DEFAULT_GRID,
                    dt: float | None = None) -> ExperimentReport:
    """Qualitative FW vs CH critical-norm comparison from the same data.

    No pass/fail verdict: a CH blow-up abort is recorded as data.
    """
    if t_list is None:
        t_list = tuple(np.linspace(0.0, 0.1, 6))
    t_list = tuple(sorted(float(t) for t in t_list))
    report = ExperimentReport("ch-contrast", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "n": n, "t_list": list(t_list)})
    u0 = make_fn(n, grid) + make_gn(n, grid)
    for model in (ModelKind.FW, ModelKind.CH):
        cfg = SolverConfig(t_final=t_list[-1], dt=dt, snapshot_times=t_list)
        try:
            traj = solve(u0, model, cfg)
            for (t, _), crit in zip(traj.snapshots, traj.critical_norms):
                report.add("critical_norm", crit, t=t, model=model.value)
        except BlowUpError as exc:
            report.notes.append(
                f"{model.value} run hit the blow-up guard at t={exc.time_reached:.6g} "
                f"(norm {exc.norm:.6g})")
            report.add("blowup_time", exc.time_reached, model=model.value)
    return report


def inequality_corpus_sweep(count: int = 100, seed: int = DEFAULT_SEED,
                            grid: GridSpec = CORPUS_GRID, s: float = 1.0) -> dict:
    """Max product/interpolation/algebra ratios over a seeded random corpus."""
    rng = np.random.default_rng(seed)
    worst = {"product": 0.0, "interpolation": 0.0, "algebra": 0.0}
    for _ in range(count):
        f = random_band_limited(rng, grid)
        g = random_band_limited(rng, grid)
        worst["product"] = max(worst["product"], inequality_ratio("product", f, g, s=s))
        worst["algebra"] = max(worst["algebra"], inequality_ratio("algebra", f, g, s=s))
        worst["interpolation"] = max(worst["interpolation"],
                                     inequality_ratio("interpolation", f))
    worst["seed"] = seed
    worst["count"] = count
    return worst
