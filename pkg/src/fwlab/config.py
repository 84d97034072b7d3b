"""Line-oriented run configuration: ``[section]`` headers and ``key = value`` lines.

Unknown sections or keys are rejected; parsing collects every problem it finds
(syntax errors with line numbers, type errors, invariant violations) and
raises a single :class:`~fwlab.errors.ConfigError` listing all of them.
Empty text yields the all-defaults configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields as dc_fields

from .errors import ConfigError
from .experiments import (CORPUS_GRID, DEFAULT_GRID, DEFAULT_N_RANGE, DEFAULT_SEED,
                          DEFAULT_T_LIST, SEQUENCE_GRID, max_resolvable_n)
from .spectral import GridSpec

__all__ = ["RunConfig", "parse_config", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1

EXPERIMENT_NAMES = ("peakon", "conservation", "taylor", "nonuniform",
                    "continuity", "lipschitz", "lemma41", "ch-contrast")
INITIAL_KINDS = ("peakon", "fn", "gn", "fn+gn", "corpus", "zero")

# Experiments built on the f_n/g_n ladder default to the finer grid whose
# dealiased band resolves n = 9.
_SEQUENCE_EXPERIMENTS = ("nonuniform", "lemma41", "ch-contrast")


@dataclass
class RunConfig:
    """Fully resolved run parameters (defaults filled in)."""

    # [grid]
    grid_L: float | None = None
    grid_N: int | None = None
    # [solver]
    dt: float | None = None
    t_final: float | None = None
    cfl_safety: float = 0.25
    blowup_threshold: float | None = None
    # [experiment]
    experiment: str | None = None
    n: int = 6
    n_range: tuple[int, ...] = DEFAULT_N_RANGE
    t_list: tuple[float, ...] = DEFAULT_T_LIST
    N_list: tuple[int, ...] = (3, 4, 5, 6, 7, 8)
    sigma_list: tuple[float, ...] = (1.0, 2.0, 3.0)
    seed: int = DEFAULT_SEED
    pair_count: int = 20
    scales: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    # [initial]
    initial_kind: str = "gn"
    initial_n: int = 5
    initial_amplitude: float = 1.0
    # [besov]
    besov_s: float = 1.0
    besov_p: float = math.inf
    besov_r: float = 1.0
    # [output]
    output_dir: str = "reports"
    figures: bool = True

    def grid(self, experiment: str | None = None) -> GridSpec:
        """The grid this run uses, honoring per-experiment defaults."""
        if self.grid_L is not None or self.grid_N is not None:
            name = experiment or self.experiment
            base = SEQUENCE_GRID if name in _SEQUENCE_EXPERIMENTS else DEFAULT_GRID
            L = self.grid_L if self.grid_L is not None else base.half_length
            N = self.grid_N if self.grid_N is not None else base.n_points
            return GridSpec(half_length=L, n_points=N)
        name = experiment or self.experiment
        if name in _SEQUENCE_EXPERIMENTS:
            return SEQUENCE_GRID
        if name == "lipschitz":
            return CORPUS_GRID
        return DEFAULT_GRID

    def resolved(self) -> dict:
        """Flat ``section.key -> value`` mapping with every default filled in."""
        g = self.grid()
        out = {
            "schema": SCHEMA_VERSION,
            "grid.L": g.half_length,
            "grid.N": g.n_points,
            "solver.dt": self.dt,
            "solver.T": self.t_final,
            "solver.cfl_safety": self.cfl_safety,
            "solver.blowup_threshold": self.blowup_threshold,
            "experiment.name": self.experiment,
            "experiment.n": self.n,
            "experiment.n_range": list(self.n_range),
            "experiment.t_list": list(self.t_list),
            "experiment.N_list": list(self.N_list),
            "experiment.sigma_list": list(self.sigma_list),
            "experiment.seed": self.seed,
            "experiment.pair_count": self.pair_count,
            "experiment.scales": list(self.scales),
            "initial.kind": self.initial_kind,
            "initial.n": self.initial_n,
            "initial.amplitude": self.initial_amplitude,
            "besov.s": self.besov_s,
            "besov.p": self.besov_p,
            "besov.r": self.besov_r,
            "output.directory": self.output_dir,
            "output.figures": self.figures,
        }
        return out


def _parse_float(text: str):
    return float(text)


def _parse_int(text: str):
    v = float(text)
    if v != int(v):
        raise ValueError(f"expected an integer, got {text!r}")
    return int(v)


def _parse_bool(text: str):
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_int_list(text: str):
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(_parse_int(lo), _parse_int(hi) + 1))
    return tuple(_parse_int(p) for p in text.split(",") if p.strip())


def _parse_float_list(text: str):
    return tuple(_parse_float(p) for p in text.split(",") if p.strip())


def _parse_pr(text: str):
    t = text.strip().lower()
    if t in ("inf", "infinity"):
        return math.inf
    return _parse_float(t)


# section -> key -> (attribute, parser)
_SCHEMA = {
    "grid": {
        "L": ("grid_L", _parse_float),
        "N": ("grid_N", _parse_int),
    },
    "solver": {
        "dt": ("dt", _parse_float),
        "T": ("t_final", _parse_float),
        "cfl_safety": ("cfl_safety", _parse_float),
        "blowup_threshold": ("blowup_threshold", _parse_float),
    },
    "experiment": {
        "name": ("experiment", str.strip),
        "n": ("n", _parse_int),
        "n_range": ("n_range", _parse_int_list),
        "t_list": ("t_list", _parse_float_list),
        "N_list": ("N_list", _parse_int_list),
        "sigma_list": ("sigma_list", _parse_float_list),
        "seed": ("seed", _parse_int),
        "pair_count": ("pair_count", _parse_int),
        "scales": ("scales", _parse_float_list),
    },
    "initial": {
        "kind": ("initial_kind", str.strip),
        "n": ("initial_n", _parse_int),
        "amplitude": ("initial_amplitude", _parse_float),
    },
    "besov": {
        "s": ("besov_s", _parse_float),
        "p": ("besov_p", _parse_pr),
        "r": ("besov_r", _parse_pr),
    },
    "output": {
        "directory": ("output_dir", str.strip),
        "figures": ("figures", _parse_bool),
    },
}


def _validate(cfg: RunConfig, problems: list[str], seen: set[str] | None = None) -> None:
    seen = seen or set()
    if cfg.grid_N is not None:
        n = cfg.grid_N
        if n < 16 or (n & (n - 1)) != 0:
            problems.append(f"grid.N must be a power of two >= 16, got {n}")
    if cfg.grid_L is not None and not (cfg.grid_L > 0):
        problems.append(f"grid.L must be positive, got {cfg.grid_L}")
    if cfg.dt is not None and not (cfg.dt > 0):
        problems.append(f"solver.dt must be positive, got {cfg.dt}")
    if cfg.t_final is not None and cfg.t_final < 0:
        problems.append(f"solver.T must be >= 0, got {cfg.t_final}")
    if not (0 < cfg.cfl_safety <= 1):
        problems.append(f"solver.cfl_safety must lie in (0, 1], got {cfg.cfl_safety}")
    if cfg.blowup_threshold is not None and not (cfg.blowup_threshold > 0):
        problems.append("solver.blowup_threshold must be positive")
    if cfg.experiment is not None and cfg.experiment not in EXPERIMENT_NAMES:
        problems.append(
            f"experiment.name must be one of {', '.join(EXPERIMENT_NAMES)}, got {cfg.experiment!r}")
    if cfg.initial_kind not in INITIAL_KINDS:
        problems.append(
            f"initial.kind must be one of {', '.join(INITIAL_KINDS)}, got {cfg.initial_kind!r}")
    if cfg.pair_count < 1:
        problems.append(f"experiment.pair_count must be >= 1, got {cfg.pair_count}")
    if any(t < 0 for t in cfg.t_list):
        problems.append("experiment.t_list entries must be >= 0")
    if any(s <= 0 for s in cfg.scales):
        problems.append("experiment.scales entries must be positive")
    if problems:
        return
    # Module preconditions that need grid arithmetic: sequence resolvability.
    wanted = []
    if cfg.experiment in ("nonuniform", "lemma41"):
        wanted += list(cfg.n_range)
    elif cfg.experiment == "ch-contrast":
        wanted.append(cfg.n)
    # The initial field only matters when the user configured one and it is
    # consumed by the command or experiment at hand.
    uses_initial = cfg.experiment in (None, "taylor", "conservation", "continuity")
    initial_explicit = bool(seen & {"initial.kind", "initial.n"})
    if uses_initial and initial_explicit and cfg.initial_kind in ("fn", "gn", "fn+gn"):
        wanted.append(cfg.initial_n)
    if wanted:
        grid = cfg.grid()
        limit = max_resolvable_n(grid)
        bad = [n for n in wanted if n > limit]
        if bad:
            problems.append(
                f"sequence index n={max(bad)} not resolvable on grid "
                f"(L={grid.half_length}, N={grid.n_points}); largest admissible n is {limit}")


def parse_config(text: str) -> RunConfig:
    """Parse configuration text; raise :class:`ConfigError` listing all problems."""
    cfg = RunConfig()
    problems: list[str] = []
    seen: set[str] = set()
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                problems.append(f"line {lineno}: unknown section [{name}]")
                section = None
            else:
                section = name
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            problems.append(f"line {lineno}: key {key!r} outside any [section]")
            continue
        spec = _SCHEMA[section].get(key)
        if spec is None:
            problems.append(f"line {lineno}: unknown key {key!r} in section [{section}]")
            continue
        attr, parser = spec
        try:
            setattr(cfg, attr, parser(value))
            seen.add(f"{section}.{key}")
        except ValueError as exc:
            problems.append(f"line {lineno}: bad value for {section}.{key}: {exc}")
    _validate(cfg, problems, seen)
    if problems:
        raise ConfigError(problems)
    return cfg
