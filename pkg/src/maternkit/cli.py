"""Command-line front end.

Subcommands: eval, surface, table (swap-diff | mse), jointcov, simulate,
fit, ridge, serve.  Batch outputs are CSV or JSON with the generating
parameters embedded in the header so every artifact is re-derivable.

Exit status: 0 on success, 2 on flag errors (argparse), 1 on numeric errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import analysis, conditional_joint
from .covariance import (
    DEFAULT_HALF_WIDTH,
    DEFAULT_RESOLUTION,
    NotPositiveDefiniteError,
    PointSet,
    cholesky_with_jitter,
    correlation_matrix,
    sample_gaussian_process,
    surface_grid,
    surface_to_csv,
    surface_to_json,
)
from .kernel import MaternParams, Parametrization, matern_corr, matern_corr_parts
from .server import DEFAULT_PORT, PORT_ENV_VAR

__all__ = ["main"]


def _load_config(path: str | None) -> dict:
    """Key=value config file for grid defaults (and the serve port)."""
    cfg: dict = {}
    if not path:
        return cfg
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key=value): {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            cfg[key] = value
    return cfg


def _params_from_args(args) -> MaternParams:
    if args.rho is not None:
        scale, tag = args.rho, Parametrization.RANGE
    elif args.scale is not None:
        scale, tag = args.scale, Parametrization.parse(args.param)
    else:
        raise ValueError("one of --rho or --scale is required")
    return MaternParams(
        nu=args.nu, scale=scale, sigma2=getattr(args, "sigma2", 1.0),
        parametrization=tag,
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _read_xy(path: str) -> tuple[np.ndarray, np.ndarray]:
    xs, ys = [], []
    with open(path, encoding="utf-8") as fh:
        for row in csv.reader(line for line in fh if not line.startswith("#")):
            if not row or row[0] == "x":
                continue
            xs.append(float(row[0]))
            ys.append(float(row[1]))
    return np.asarray(xs), np.asarray(ys)


def _cmd_eval(args) -> int:
    params = _params_from_args(args)
    corr = matern_corr(params, args.d)
    print(f"{corr:.7f}")
    if args.d > 0:
        parts = matern_corr_parts(params, args.d)
        print(f"constant={parts.constant!r}")
        print(f"power={parts.power!r}")
        print(f"bessel={parts.bessel!r}")
        print(f"log_scale={parts.log_scale}")
    return 0


def _cmd_surface(args, cfg) -> int:
    params = _params_from_args(args)
    half_width = args.half_width or float(cfg.get("half_width", DEFAULT_HALF_WIDTH))
    resolution = args.resolution or int(cfg.get("resolution", DEFAULT_RESOLUTION))
    surf = surface_grid(params, half_width=half_width, resolution=resolution)
    if args.format == "csv":
        _emit(surface_to_csv(surf), args.output)
    else:
        _emit(_dump_json(surface_to_json(surf)), args.output)
    return 0


def _parse_pairs(spec: str) -> list[tuple[float, float]]:
    if spec == "default":
        return list(analysis.DEFAULT_SWAP_PAIRS)
    pairs = []
    for chunk in spec.split(","):
        nu, rho = chunk.split(":")
        pairs.append((float(nu), float(rho)))
    return pairs


def _cmd_table(args, cfg) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.which == "swap-diff":
        d_step = args.d_step or float(cfg.get("d_step", 0.05))
        grid = np.arange(1, int(round(args.d_max / d_step)) + 1) * d_step
        buf.write(f"# d_max={args.d_max}\n# d_step={d_step}\n")
        writer.writerow(["nu", "rho", "min_diff", "max_diff"])
        for nu, rho in _parse_pairs(args.pairs):
            row = analysis.swap_difference(nu, rho, d_grid=grid)
            writer.writerow([nu, rho, repr(row.min_diff), repr(row.max_diff)])
    else:  # mse
        d_step = args.d_step or float(cfg.get("d_step", 0.01))
        grid = np.arange(1, int(round(args.d_max / d_step)) + 1) * d_step
        nus = [float(v) for v in args.nus.split(",")] if args.nus else [
            round(0.1 * i, 1) for i in range(1, 21)
        ]
        buf.write(
            f"# rho={args.rho_mse}\n# slope={args.slope}\n"
            f"# d_max={args.d_max}\n# d_step={d_step}\n"
        )
        writer.writerow(["nu", "mse"])
        for nu in nus:
            writer.writerow(
                [nu, repr(analysis.power_curve_mse(nu, args.rho_mse, args.slope, grid))]
            )
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_jointcov(args) -> int:
    grid = conditional_joint.default_grid(args.n)
    tent = conditional_joint.build_tent(grid, h=args.bandwidth, beta=args.beta)
    jc = conditional_joint.build_joint(
        grid,
        conditional_joint.matern32_params(args.kappa11, args.sigma2_11),
        conditional_joint.matern32_params(args.kappa21, args.sigma2_21),
        tent,
    )
    if args.format == "csv":
        _emit(conditional_joint.blocks_to_csv(jc), args.output)
    else:
        _emit(_dump_json(conditional_joint.render_blocks(jc)), args.output)
    return 0


def _cmd_simulate(args) -> int:
    params = _params_from_args(args)
    lo, hi = (float(v) for v in args.domain.split(":"))
    pts = PointSet(np.linspace(lo, hi, args.n))
    cov = params.sigma2 * correlation_matrix(params, pts).values
    factor = cholesky_with_jitter(cov)
    draws = sample_gaussian_process(factor, seed=args.seed, n_draws=args.draws)
    buf = io.StringIO()
    buf.write(
        f"# nu={params.nu}\n# scale={params.scale}\n# sigma2={params.sigma2}\n"
        f"# parametrization={params.parametrization.value}\n"
        f"# domain={lo}:{hi}\n# n={args.n}\n# seed={args.seed}\n"
        f"# jitter={factor.jitter!r}\n"
    )
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x"] + [f"draw{i}" for i in range(args.draws)])
    for i, x in enumerate(pts.coords[:, 0]):
        writer.writerow([repr(float(x))] + [repr(float(v)) for v in draws[:, i]])
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_fit(args) -> int:
    x, y = _read_xy(args.input)
    pts = PointSet(x)
    init = MaternParams(
        nu=args.init_nu, scale=args.init_kappa, sigma2=args.init_sigma2,
        parametrization=Parametrization.DECAY,
    )
    fit = analysis.fit_mle(y, pts, nu_fixed=args.nu_fixed, init=init)
    payload = {
        "sigma2": fit.params_hat.sigma2,
        "kappa": fit.params_hat.scale,
        "nu": fit.params_hat.nu,
        "nll": fit.nll,
        "microergodic": fit.microergodic_hat,
        "converged": fit.converged,
        "evaluations": fit.evaluations,
    }
    _emit(_dump_json(payload), args.output)
    return 0


def _cmd_ridge(args) -> int:
    x, y = _read_xy(args.input)
    pts = PointSet(x)
    prof = analysis.profile_ridge(args.nu, args.c, y, pts, n_steps=args.steps)
    buf = io.StringIO()
    buf.write(f"# nu={args.nu}\n# c={args.c}\n# n_steps={args.steps}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["sigma2", "kappa", "nll", "leg"])
    for leg, block in (("along", prof.along), ("across", prof.across)):
        for sigma2, kappa, nll in block:
            writer.writerow([repr(float(sigma2)), repr(float(kappa)), repr(float(nll)), leg])
    _emit(buf.getvalue(), args.output)
    return 0


def _cmd_serve(args, cfg) -> int:
    import uvicorn

    from .server import create_app

    port = args.port or int(cfg.get("port", os.environ.get(PORT_ENV_VAR, DEFAULT_PORT)))
    grid_defaults = {}
    if "half_width" in cfg:
        grid_defaults["half_width"] = float(cfg["half_width"])
    if "resolution" in cfg:
        grid_defaults["resolution"] = int(cfg["resolution"])
    app = create_app(grid_defaults or None)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def _add_param_flags(parser: argparse.ArgumentParser, with_sigma2: bool = False) -> None:
    parser.add_argument("--nu", type=float, required=True, help="smoothing order nu > 0")
    parser.add_argument("--rho", type=float, help="range parameter (RANGE form)")
    parser.add_argument("--scale", type=float, help="scale under --param")
    parser.add_argument(
        "--param", default="range",
        help="parametrization: range | decay | ml | handcock_stein",
    )
    if with_sigma2:
        parser.add_argument("--sigma2", type=float, default=1.0, help="marginal variance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maternkit", description=__doc__)
    parser.add_argument("--config", help="key=value file with grid defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="correlation and its three factors at one distance")
    _add_param_flags(p)
    p.add_argument("--d", type=float, required=True)

    p = sub.add_parser("surface", help="correlation surface over a square grid")
    _add_param_flags(p)
    p.add_argument("--half-width", type=float, dest="half_width")
    p.add_argument("--resolution", type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output")

    p = sub.add_parser("table", help="swap-difference or power-curve mse tables")
    p.add_argument("which", choices=["swap-diff", "mse"])
    p.add_argument("--pairs", default="default", help="nu:rho,... or 'default'")
    p.add_argument("--nus", help="comma-separated nu values (mse table)")
    p.add_argument("--rho-mse", type=float, default=10.0, dest="rho_mse")
    p.add_argument("--slope", type=float, default=0.1)
    p.add_argument("--d-max", type=float, default=10.0, dest="d_max")
    p.add_argument("--d-step", type=float, dest="d_step")
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--output")

    p = sub.add_parser("jointcov", help="two-process joint covariance blocks")
    p.add_argument("--kappa11", type=float, default=75.0)
    p.add_argument("--kappa21", type=float, default=1.5)
    p.add_argument("--sigma2-11", type=float, default=1.0, dest="sigma2_11")
    p.add_argument("--sigma2-21", type=float, default=1.0, dest="sigma2_21")
    p.add_argument("--beta", type=float, default=conditional_joint.DEFAULT_TENT_AMPLITUDE)
    p.add_argument("--bandwidth", type=float, default=conditional_joint.DEFAULT_TENT_BANDWIDTH)
    p.add_argument("--n", type=int, default=conditional_joint.DEFAULT_GRID_SIZE)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output")

    p = sub.add_parser("simulate", help="draw Gaussian fields on a 1-D grid")
    _add_param_flags(p, with_sigma2=True)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--domain", default="0:1", help="lo:hi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=1)
    p.add_argument("--output")

    p = sub.add_parser("fit", help="simplex maximum-likelihood fit on x,y CSV data")
    p.add_argument("--input", required=True, help="CSV with x,y columns")
    p.add_argument("--nu-fixed", type=float, dest="nu_fixed")
    p.add_argument("--init-sigma2", type=float, default=1.0, dest="init_sigma2")
    p.add_argument("--init-kappa", type=float, default=1.0, dest="init_kappa")
    p.add_argument("--init-nu", type=float, default=0.5, dest="init_nu")
    p.add_argument("--output")

    p = sub.add_parser("ridge", help="profile the likelihood along/across the ridge")
    p.add_argument("--input", required=True, help="CSV with x,y columns")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--output")

    p = sub.add_parser("serve", help="run the explorer JSON backend")
    p.add_argument("--port", type=int)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "surface":
            return _cmd_surface(args, cfg)
        if args.command == "table":
            return _cmd_table(args, cfg)
        if args.command == "jointcov":
            return _cmd_jointcov(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "fit":
            return _cmd_fit(args)
        if args.command == "ridge":
            return _cmd_ridge(args)
        if args.command == "serve":
            return _cmd_serve(args, cfg)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, OverflowError, NotPositiveDefiniteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
