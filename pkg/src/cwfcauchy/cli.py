"""Command line driver: simulate -> add noise -> invert -> evaluate.

Exit codes: 0 ok, 1 configuration error, 2 forward divergence,
3 minimizer divergence, 4 data mismatch.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .carleman import level_domain_mask
from .config import ExperimentConfig, load_config, write_manifest
from .errors import (
    ConfigError,
    DataMismatchError,
    ForwardDivergenceError,
    InvalidMeshError,
    MinimizerDivergenceError,
)
from .forward import CauchyData, extract_flux, solve_forward
from .functional import make_context
from .grid import (
    Field,
    read_field_csv,
    read_series_csv,
    write_field_csv,
    write_series_csv,
)
from .metrics import line_error, slice_at, subdomain_error
from .minimizer import initial_guess, minimize
from .noise import apply_noise
from . import svg

log = logging.getLogger("cwfcauchy")

SUMMARY_POINTS = (0.45, 0.6, 0.8)


def lambda_tag(lam: float) -> str:
    return format(float(lam), "g")


def _outdir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    write_manifest(cfg, out / "manifest.ini")
    return out


def cmd_simulate(cfg: ExperimentConfig) -> list[Path]:
    out = _outdir(cfg)
    grid = cfg.grid()
    u = solve_forward(cfg.problem_spec(), grid)
    data = extract_flux(u)
    paths = [out / "field.csv", out / "p.csv", out / "q.csv"]
    write_field_csv(paths[0], u)
    write_series_csv(paths[1], grid.t, data.p_row, "p")
    write_series_csv(paths[2], grid.t, data.q_row, "q")
    log.info("simulate: wrote %s", ", ".join(p.name for p in paths))
    return paths


def _load_cauchy_data(cfg: ExperimentConfig, out: Path) -> CauchyData:
    grid = cfg.grid()
    p_path, q_path = out / "p.csv", out / "q.csv"
    if not (p_path.exists() and q_path.exists()):
        cmd_simulate(cfg)
    tp, p = read_series_csv(p_path)
    tq, q = read_series_csv(q_path)
    for t in (tp, tq):
        if t.size != grid.nt or not np.allclose(t, grid.t, atol=1e-12):
            raise DataMismatchError(f"lateral data in {out} do not match the {grid.nt}-node time grid")
    return CauchyData(p, q)


def cmd_invert(cfg: ExperimentConfig) -> list[Path]:
    out = _outdir(cfg)
    grid = cfg.grid()
    problem = cfg.problem_spec()
    data = _load_cauchy_data(cfg, out)
    rows = apply_noise(data, cfg.noise_spec(), grid.h)
    write_series_csv(out / "p_noisy.csv", grid.t, rows[0], "p")
    write_series_csv(out / "q_noisy.csv", grid.t, (rows[0] - rows[1]) / grid.h, "q")
    known = problem.initial(grid.x) if cfg.known_initial else None
    mcfg = cfg.minimizer_config()
    paths = []
    for lam in cfg.lambdas:
        tag = lambda_tag(lam)
        ctx = make_context(grid, problem, lam, cfg.beta)
        start = initial_guess(ctx, rows, known)
        t0 = time.perf_counter()
        try:
            report = minimize(ctx, start, mcfg)
        except MinimizerDivergenceError as exc:
            raise MinimizerDivergenceError(f"lambda={tag}: {exc}", index=exc.index) from exc
        log.info("invert: lambda=%s J %.6g -> %.6g in %.2fs", tag,
                 report.j_history[0], report.j_history[-1], time.perf_counter() - t0)
        recon = out / f"recon_lambda{tag}.csv"
        hist = out / f"history_lambda{tag}.csv"
        write_field_csv(recon, report.final)
        np.savetxt(
            hist,
            np.column_stack([report.iterations, report.j_history, report.grad_norm_history]),
            delimiter=",", header="iter,J,grad_norm", comments="", fmt=["%d", "%.17g", "%.17g"],
        )
        paths += [recon, hist]
    return paths


def cmd_evaluate(cfg: ExperimentConfig) -> list[Path]:
    out = _outdir(cfg)
    truth_path = out / "field.csv"
    if not truth_path.exists():
        raise DataMismatchError(f"{truth_path} not found; run simulate first")
    truth = read_field_csv(truth_path)
    mask = level_domain_mask(truth.grid, cfg.alpha) if cfg.alpha is not None else None
    profiles, summary, sub_rows, paths = {}, [], [], []
    for lam in cfg.lambdas:
        tag = lambda_tag(lam)
        recon = read_field_csv(out / f"recon_lambda{tag}.csv")
        if recon.grid != truth.grid:
            raise DataMismatchError(
                f"recon_lambda{tag}.csv grid {recon.grid.shape} differs from truth {truth.grid.shape}"
            )
        prof = line_error(recon, truth)
        profiles[f"lambda={tag}"] = (prof.x, prof.error)
        path = out / f"line_error_lambda{tag}.csv"
        np.savetxt(path, np.column_stack([prof.x, prof.error]), delimiter=",",
                   header="x,E", comments="", fmt="%.17g")
        paths.append(path)
        for xs in cfg.slices:
            x_node, rec = slice_at(recon, xs)
            _, tru = slice_at(truth, xs)
            path = out / f"slice_lambda{tag}_x{format(xs, 'g')}.csv"
            np.savetxt(path, np.column_stack([truth.grid.t, rec, tru]), delimiter=",",
                       header="t,value_recon,value_truth", comments="", fmt="%.17g")
            paths.append(path)
            svg.line_plot(path.with_suffix(".svg"),
                          {"reconstruction": (truth.grid.t, rec), "truth": (truth.grid.t, tru)},
                          title=f"u(x={x_node:.4f}, t), lambda={tag}", xlabel="t", ylabel="u")
        summary.append([lam] + [prof.error[np.argmin(np.abs(prof.x - x))] for x in SUMMARY_POINTS])
        if mask is not None:
            sub_rows.append([lam, cfg.alpha, subdomain_error(recon, truth, mask)])
    svg_path = out / "line_error.svg"
    svg.line_plot(svg_path, profiles, title="line error E(x)", xlabel="x", ylabel="E")
    paths.append(svg_path)
    summary_path = out / "summary.csv"
    np.savetxt(summary_path, np.asarray(summary), delimiter=",", comments="", fmt="%.17g",
               header="lambda," + ",".join(f"E_{format(x, 'g')}" for x in SUMMARY_POINTS))
    paths.append(summary_path)
    if sub_rows:
        sub_path = out / "subdomain_error.csv"
        np.savetxt(sub_path, np.asarray(sub_rows), delimiter=",", comments="", fmt="%.17g",
                   header="lambda,alpha,error")
        paths.append(sub_path)
    return paths


def cmd_pipeline(cfg: ExperimentConfig) -> list[Path]:
    return cmd_simulate(cfg) + cmd_invert(cfg) + cmd_evaluate(cfg)


COMMANDS = {
    "simulate": cmd_simulate,
    "invert": cmd_invert,
    "evaluate": cmd_evaluate,
    "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwfcauchy",
        description="Carleman-weighted inversion of lateral Cauchy data for a 1-D parabolic PDE.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--seed", type=int, help="noise seed (overrides config)")
    parser.add_argument("--lambda", dest="lambdas", help="comma separated lambda values")
    parser.add_argument("--known-initial", action="store_true", default=None,
                        help="hold the t = -T row at the known initial condition")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        lambdas = None
        if args.lambdas is not None:
            try:
                lambdas = [float(v) for v in args.lambdas.split(",") if v.strip()]
            except ValueError as exc:
                raise ConfigError(f"bad --lambda list {args.lambdas!r}") from exc
        cfg = load_config(args.config, {
            "out": args.out, "seed": args.seed, "lambdas": lambdas,
            "known_initial": args.known_initial,
        })
        COMMANDS[args.command](cfg)
    except (ConfigError, InvalidMeshError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ForwardDivergenceError as exc:
        print(f"error: forward solve diverged: {exc}", file=sys.stderr)
        return 2
    except MinimizerDivergenceError as exc:
        print(f"error: minimization diverged: {exc}", file=sys.stderr)
        return 3
    except DataMismatchError as exc:
        print(f"error: data mismatch: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
