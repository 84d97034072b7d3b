"""Command-line front end.

Exit status: 0 on pass, 1 when a verdict failed, 2 on usage or configuration
errors (including sequence resolvability), 3 when the blow-up guard aborted a
run.  Reports are written as CSV + JSON (plus PNG figures unless disabled)
into the output directory.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .besov import BesovIndex, besov_norm, block_decompose, low_pass
from .config import EXPERIMENT_NAMES, RunConfig, parse_config
from .dynamics import ModelKind, SolverConfig, peakon_exact, solve
from .errors import BlowUpError, ConfigError, DomainError, ResolvabilityError
from .experiments import (ExperimentReport, make_fn, make_gn, random_band_limited,
                          run_ch_contrast, run_conservation, run_continuity,
                          run_lemma41_scalings, run_lipschitz_linf, run_nonuniform,
                          run_peakon, run_taylor)
from .reporting import persist_report
from .spectral import Field, lp_norm

__all__ = ["run_command", "main"]

EXIT_PASS = 0
EXIT_VERDICT_FAILED = 1
EXIT_USAGE = 2
EXIT_BLOWUP = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); surface it instead
        raise ConfigError([f"usage error: {message}"])


def _build_parser() -> _Parser:
    parser = _Parser(prog="fwlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="path to a run configuration file")
        p.add_argument("--output", help="output directory (overrides config)")
        p.add_argument("--no-figures", action="store_true",
                       help="skip figure rendering")

    p_solve = sub.add_parser("solve", help="integrate the FW equation and report diagnostics")
    common(p_solve)
    p_solve.add_argument("--model", choices=["fw", "ch"], default="fw")

    p_norm = sub.add_parser("besov-norm", help="Besov norm of the configured initial field")
    common(p_norm)

    p_dec = sub.add_parser("decompose", help="dyadic block norms of the configured initial field")
    common(p_dec)

    p_exp = sub.add_parser("experiment", help="run one named experiment")
    p_exp.add_argument("name", choices=list(EXPERIMENT_NAMES))
    common(p_exp)

    return parser


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([f"cannot read config {path!r}: {exc}"])
    return parse_config(text)


def _initial_field(cfg: RunConfig, grid) -> Field:
    kind = cfg.initial_kind
    if kind == "peakon":
        return peakon_exact(0.0, grid)
    if kind == "fn":
        return cfg.initial_amplitude * make_fn(cfg.initial_n, grid)
    if kind == "gn":
        return cfg.initial_amplitude * make_gn(cfg.initial_n, grid)
    if kind == "fn+gn":
        return cfg.initial_amplitude * (make_fn(cfg.initial_n, grid)
                                        + make_gn(cfg.initial_n, grid))
    if kind == "corpus":
        rng = np.random.default_rng(cfg.seed)
        return random_band_limited(rng, grid, amplitude=cfg.initial_amplitude)
    if kind == "zero":
        return Field.zeros(grid)
    raise ConfigError([f"unknown initial kind {kind!r}"])


def _cmd_solve(cfg: RunConfig, model: ModelKind) -> ExperimentReport:
    grid = cfg.grid()
    u0 = _initial_field(cfg, grid)
    t_final = cfg.t_final if cfg.t_final is not None else 1.0
    snaps = tuple(np.linspace(0.0, t_final, 11)) if t_final > 0 else ()
    traj = solve(u0, model, SolverConfig(
        t_final=t_final, dt=cfg.dt, cfl_safety=cfg.cfl_safety,
        blowup_threshold=cfg.blowup_threshold, snapshot_times=snaps))
    report = ExperimentReport("solve", params={
        "model": model.value, "grid.L": grid.half_length, "grid.N": grid.n_points,
        "initial": cfg.initial_kind, "t_final": t_final, "dt": traj.dt})
    for (t, f), l2, crit in zip(traj.snapshots, traj.l2_norms, traj.critical_norms):
        report.add("l2_norm", l2, t=t)
        report.add("critical_norm", crit, t=t)
        report.add("sup_norm", lp_norm(f, math.inf), t=t)
    return report


def _cmd_besov_norm(cfg: RunConfig) -> ExperimentReport:
    grid = cfg.grid()
    u0 = _initial_field(cfg, grid)
    idx = BesovIndex(cfg.besov_s, cfg.besov_p, cfg.besov_r)
    value = besov_norm(u0, idx)
    report = ExperimentReport("besov-norm", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "initial": cfg.initial_kind, "s": idx.s, "p": idx.p, "r": idx.r})
    report.add("besov_norm", value)
    report.derived["besov_norm"] = value
    print(f"besov_norm(s={idx.s}, p={idx.p}, r={idx.r}) = {value:.17g}")
    return report


def _cmd_decompose(cfg: RunConfig) -> ExperimentReport:
    grid = cfg.grid()
    u0 = _initial_field(cfg, grid)
    report = ExperimentReport("decompose", params={
        "grid.L": grid.half_length, "grid.N": grid.n_points,
        "initial": cfg.initial_kind})
    for j, block in block_decompose(u0):
        report.add("block_sup_norm", lp_norm(block, math.inf), n=j)
        report.add("block_l2_norm", lp_norm(block, 2), n=j)
    recon = sum((b for _, b in block_decompose(u0)), Field.zeros(grid))
    report.derived["reconstruction_error"] = lp_norm(u0 - recon, math.inf)
    return report


def _run_experiment(name: str, cfg: RunConfig) -> ExperimentReport:
    grid = cfg.grid(name)
    if name == "peakon":
        return run_peakon(grid=grid, t_final=cfg.t_final or 1.0, dt=cfg.dt)
    if name == "conservation":
        u0 = None
        if cfg.initial_kind != "gn" or cfg.initial_n != 5:
            u0 = _initial_field(cfg, grid)
        return run_conservation(u0=u0, grid=grid, t_final=cfg.t_final or 1.0, dt=cfg.dt)
    if name == "taylor":
        if cfg.initial_kind == "gn" and cfg.initial_n == 5:
            u0 = make_fn(5, grid) + make_gn(5, grid)
            label = "fn+gn(n=5)"
        else:
            u0 = _initial_field(cfg, grid)
            label = cfg.initial_kind
        t_list = cfg.t_list if cfg.t_list != RunConfig().t_list else None
        return run_taylor(u0, t_list=t_list, dt=cfg.dt, label=label)
    if name == "nonuniform":
        return run_nonuniform(n_range=cfg.n_range, t_list=cfg.t_list, grid=grid, dt=cfg.dt)
    if name == "continuity":
        u0 = None
        if cfg.initial_kind in ("fn", "gn", "fn+gn", "corpus", "peakon") and \
                not (cfg.initial_kind == "gn" and cfg.initial_n == 5):
            u0 = _initial_field(cfg, grid)
        return run_continuity(u0=u0, N_list=cfg.N_list, t_eval=cfg.t_final or 0.1,
                              grid=grid, dt=cfg.dt)
    if name == "lipschitz":
        return run_lipschitz_linf(pair_count=cfg.pair_count, scales=cfg.scales,
                                  t_eval=cfg.t_final or 0.1, seed=cfg.seed,
                                  grid=grid, dt=cfg.dt)
    if name == "lemma41":
        return run_lemma41_scalings(n_range=cfg.n_range, sigma_list=cfg.sigma_list,
                                    grid=grid)
    if name == "ch-contrast":
        return run_ch_contrast(n=cfg.n, t_list=cfg.t_list if cfg.t_list else None,
                               grid=grid, dt=cfg.dt)
    raise ConfigError([f"unknown experiment {name!r}"])


def run_command(argv: list[str]) -> int:
    """Parse argv, run the requested command, write reports; return exit status."""
    try:
        args = _build_parser().parse_args(argv)
        cfg = _load_config(args.config)
        if args.output:
            cfg.output_dir = args.output
        figures = cfg.figures and not args.no_figures

        allow_blowup_as_data = args.command == "experiment" and args.name == "ch-contrast"
        try:
            if args.command == "solve":
                report = _cmd_solve(cfg, ModelKind(args.model))
                stem = "solve"
            elif args.command == "besov-norm":
                report = _cmd_besov_norm(cfg)
                stem = "besov-norm"
            elif args.command == "decompose":
                report = _cmd_decompose(cfg)
                stem = "decompose"
            else:
                if cfg.experiment is not None and cfg.experiment != args.name:
                    raise ConfigError([
                        f"config names experiment {cfg.experiment!r} but the command "
                        f"requested {args.name!r}"])
                report = _run_experiment(args.name, cfg)
                stem = args.name
        except BlowUpError as exc:
            if not allow_blowup_as_data:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_BLOWUP
            raise

        persist_report(report, cfg.output_dir, cfg, figures=figures, stem=stem)
        for v in report.verdicts:
            print(f"{report.name}: {v.name}: {'PASS' if v.passed else 'FAIL'} "
                  f"(measured {v.measured:.6g}; {v.tolerance})")
        for note in report.notes:
            print(f"{report.name}: note: {note}")
        return EXIT_PASS if report.passed else EXIT_VERDICT_FAILED
    except (ConfigError, ResolvabilityError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
