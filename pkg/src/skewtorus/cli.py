"""Command-line driver: exponent estimation, field computation, beta
sweeps, forward orbits and time-one map checks.

Exit codes: 0 success, 2 configuration error, 3 numeric failure (NaN),
4 I/O error. File formats are documented in the README; every output
embeds the full run configuration and the artifact version.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, ctime
from .attractor import (
    ClassifyParams,
    Grid,
    classify,
    psi_field,
    two_point_forward,
)
from .base import GOLDEN_MEAN, CircleRotation, RandomShift
from .cocycle import (
    ConstantRotationCocycle,
    MatrixListCocycle,
    ScaledRotationCocycle,
    lyapunov_max,
)
from .errors import NumericsError
from .model import ArctanH, ModelSystem, critical_betas, section7_h
from .output import write_csv, write_json_field, write_ppm
from .polar import PolarSystem

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class ConfigError(ValueError):
    """Invalid run configuration."""


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise ConfigError(f"bad --grid {text!r}; expected NxM") from exc


def _parse_beta_range(text: str) -> list[float]:
    try:
        a, b, steps = text.split(":")
        a, b, steps = float(a), float(b), int(steps)
    except ValueError as exc:
        raise ConfigError(f"bad --beta-range {text!r}; expected a:b:steps") from exc
    if steps < 1:
        raise ConfigError("beta range needs at least one step")
    if steps == 1:
        return [a]
    return [a + (b - a) * i / (steps - 1) for i in range(steps)]


def _parse_v0(text: str) -> tuple[float, float]:
    try:
        x, y = text.split(",")
        return float(x), float(y)
    except ValueError as exc:
        raise ConfigError(f"bad --v0 {text!r}; expected x,y") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewtorus",
        description="Forced planar skew products: exponents, pullback fields, "
                    "regime sweeps, forward orbits, time-one map checks.",
    )
    parser.add_argument("--version", action="version", version=f"skewtorus {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--preset", choices=["section7"],
                       help="pin the worked example: golden rotation, c=1/2 "
                            "scaled-rotation cocycle, arctan profile")
        p.add_argument("--base", choices=["rotation", "random"], default="rotation")
        p.add_argument("--rho", type=float, default=GOLDEN_MEAN,
                       help="rotation per step (rotation base)")
        p.add_argument("--seed", type=int, default=0, help="symbol seed (random base)")
        p.add_argument("--alphabet", type=int, default=2,
                       help="alphabet size (random base)")
        p.add_argument("--window", type=int, default=2_000_000,
                       help="symbol window half-width (random base)")
        p.add_argument("--cocycle", default="example7",
                       help="example7 | rotation | list:FILE")
        p.add_argument("--c", type=float, default=0.5,
                       help="axis scaling of the example7 cocycle")
        p.add_argument("--angle", type=float, default=0.0,
                       help="angle in radians of the rotation cocycle")
        p.add_argument("--kappa", type=float, default=None,
                       help="arctan profile slope (default: the section7 value)")
        p.add_argument("--out", default=None, help="output path prefix")
        p.add_argument("--format", choices=["csv", "json", "ppm", "all"], default="all")

    p = sub.add_parser("lyapunov", help="maximal exponent and derived critical pair")
    common(p)
    p.add_argument("--steps", type=int, default=10_000_000)
    p.add_argument("--theta0", type=float, default=0.0)

    p = sub.add_parser("field", help="pullback field; CSV + JSON + optional PPM")
    common(p)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--grid", default="512x512")
    p.add_argument("--depth", type=int, default=3000)
    p.add_argument("--plane-projection", action="store_true",
                   help="also export the original-plane radii (angle-doubled)")

    p = sub.add_parser("scan", help="classify a beta range into regimes")
    common(p)
    p.add_argument("--beta-range", required=True, help="a:b:steps")
    p.add_argument("--grid", default="512x512")
    p.add_argument("--depth", type=int, default=3000)
    p.add_argument("--lyapunov-steps", type=int, default=1_000_000)

    p = sub.add_parser("forward", help="forward orbit vs the two-point attractor")
    common(p)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--v0", default="0.3,0.2", help="initial vector x,y")
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=5064)
    p.add_argument("--burn-in", type=int, default=5000)

    p = sub.add_parser("ctime", help="time-one map property report")
    common(p)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.3, help="rotation drift of the field")
    p.add_argument("--shear", type=float, default=0.4, help="modulation amplitude")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--samples", type=int, default=20)
    return parser


def _build_system(args):
    if args.preset == "section7":
        base = CircleRotation(GOLDEN_MEAN)
        coc = ScaledRotationCocycle(0.5)
        h = section7_h()
        return base, coc, h
    if args.base == "rotation":
        base = CircleRotation(args.rho)
    else:
        base = RandomShift(args.seed, n_max=args.window, alphabet_size=args.alphabet)
    name = args.cocycle
    if name == "example7":
        coc = ScaledRotationCocycle(args.c)
    elif name == "rotation":
        coc = ConstantRotationCocycle(args.angle)
    elif name.startswith("list:"):
        path = name[len("list:"):]
        try:
            with open(path, "r", encoding="ascii") as fh:
                coc = MatrixListCocycle(json.load(fh))
        except FileNotFoundError as exc:
            raise ConfigError(f"matrix list file not found: {path}") from exc
    else:
        raise ConfigError(f"unknown cocycle {name!r}")
    kappa = args.kappa if args.kappa is not None else section7_h().kappa
    return base, coc, ArctanH(kappa)


def _config_dict(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    cfg["artifact_version"] = __version__
    return cfg


def _point(base, args):
    theta0 = getattr(args, "theta0", 0.0)
    if isinstance(base, CircleRotation):
        return base.point(theta0)
    return base.point(int(theta0))


def cmd_lyapunov(args) -> int:
    base, coc, h = _build_system(args)
    p0 = _point(base, args)
    lam = lyapunov_max(coc, base, p0, args.steps)
    b1, b2 = critical_betas(h, max(lam, 0.0))
    print(f"lambda_max estimate: {lam:.9f}  (n = {args.steps})")
    print(f"critical betas: beta1 = {b1:.6f}  beta2 = {b2:.6f}")
    if args.out:
        cfg = _config_dict(args)
        write_csv(args.out + ".csv", ["n", "lambda_max", "beta1", "beta2"],
                  [[args.steps, lam, b1, b2]], cfg)
        print(f"wrote {args.out}.csv")
    return EXIT_OK


def _compute_field(args, beta):
    base, coc, h = _build_system(args)
    tr, ar = _parse_grid(args.grid)
    return psi_field(PolarSystem(base, coc, h, beta), Grid(tr, ar), args.depth)


def cmd_field(args) -> int:
    fld = _compute_field(args, args.beta)
    report = classify(fld)
    print(f"beta = {args.beta}: regime {report.regime.value}, "
          f"min {report.min_psi:.3e}, max {report.max_psi:.3e}")
    if args.out:
        cfg = _config_dict(args)
        fmts = {args.format} if args.format != "all" else {"csv", "json", "ppm"}
        if "csv" in fmts:
            th = fld.grid.theta_values()
            al = fld.grid.alpha_values()
            rows = ((th[i], al[j], float(fld.values[i, j]))
                    for i in range(fld.grid.theta_res)
                    for j in range(fld.grid.alpha_res))
            write_csv(args.out + ".csv", ["theta", "alpha", "psi"], rows, cfg)
            print(f"wrote {args.out}.csv")
        if "json" in fmts:
            write_json_field(args.out + ".json", fld, cfg)
            print(f"wrote {args.out}.json")
        if "ppm" in fmts:
            write_ppm(args.out + ".ppm", fld, cfg)
            print(f"wrote {args.out}.ppm")
        if args.plane_projection:
            from .attractor import torus_boundary
            tb = torus_boundary(fld)
            rows = ((fld.grid.theta_values()[i], tb.alphas[k], float(tb.radii[i, k]))
                    for i in range(fld.grid.theta_res)
                    for k in range(len(tb.alphas)))
            write_csv(args.out + "_plane.csv", ["theta", "alpha_plane", "radius"],
                      rows, cfg)
            print(f"wrote {args.out}_plane.csv")
    return EXIT_OK


def cmd_scan(args) -> int:
    betas = _parse_beta_range(args.beta_range)
    base, coc, h = _build_system(args)
    p0 = base.point() if isinstance(base, CircleRotation) else base.point(0)
    lam = max(lyapunov_max(coc, base, p0, args.lyapunov_steps), 0.0)
    b1, b2 = critical_betas(h, lam)
    rows = []
    for beta in betas:
        fld = _compute_field(args, beta)
        rep = classify(fld)
        rows.append([beta, rep.regime.value, rep.min_psi, rep.max_psi,
                     rep.max_row_fraction, b1, b2])
        print(f"beta = {beta:.4f}: {rep.regime.value:13s} "
              f"min {rep.min_psi:.3e}  max {rep.max_psi:.3e}")
    if args.out:
        write_csv(args.out + ".csv",
                  ["beta", "regime", "min_psi", "max_psi", "max_row_fraction",
                   "beta1", "beta2"],
                  rows, _config_dict(args))
        print(f"wrote {args.out}.csv")
    return EXIT_OK


def cmd_forward(args) -> int:
    base, coc, h = _build_system(args)
    p0 = _point(base, args)
    model = ModelSystem(base, coc, h, args.beta)
    v0 = _parse_v0(args.v0)
    cfg = _config_dict(args)
    if v0 == (0.0, 0.0):
        # the zero section is invariant: every series is identically zero
        ks = range(args.burn_in, args.steps)
        traj = [[int(k), 0.0, 0.0, 0.0] for k in ks]
        dist = [[int(k), 0.0, 0.0, 0.0] for k in ks]
        print("v0 = 0: orbit is identically zero")
    else:
        res = two_point_forward(model, p0, v0, args.steps, args.burn_in)
        print(f"distance to the endpoint pair over steps "
              f"[{res.steps[0]}, {res.steps[-1]}]: max {res.distances.max():.3e}, "
              f"final {res.distances[-1]:.3e}")
        traj = [[int(k), float(x), float(y), float(nm)]
                for k, (x, y), nm in zip(res.steps, res.positions, res.norms)]
        dist = [[int(k), float(d), float(r), float(a)]
                for k, d, r, a in zip(res.steps, res.distances,
                                      res.endpoint_radii, res.endpoint_angles)]
    if args.out:
        write_csv(args.out + "_trajectory.csv", ["n", "x", "y", "norm"], traj, cfg)
        write_csv(args.out + "_distance.csv",
                  ["n", "distance", "endpoint_radius", "endpoint_angle"], dist, cfg)
        print(f"wrote {args.out}_trajectory.csv")
        print(f"wrote {args.out}_distance.csv")
    return EXIT_OK


def cmd_ctime(args) -> int:
    spec = ctime.shear_rotation_field(args.omega, args.shear, rho=args.rho)
    report = ctime.time_one_report(spec, ctime.EtaSpec(), args.beta,
                                   samples=args.samples, step=args.step)
    for line in report.lines():
        print(line)
    if args.out:
        rows = [[line.rsplit(": ", 1)[0], line.rsplit(": ", 1)[1]]
                for line in report.lines()]
        write_csv(args.out + ".csv", ["check", "result"], rows, _config_dict(args))
        print(f"wrote {args.out}.csv")
    return EXIT_OK


COMMANDS = {
    "lyapunov": cmd_lyapunov,
    "field": cmd_field,
    "scan": cmd_scan,
    "forward": cmd_forward,
    "ctime": cmd_ctime,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NumericsError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
