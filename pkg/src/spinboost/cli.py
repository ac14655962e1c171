"""Command-line front end.

Subcommands wire the symbolic, numeric, and astrophysical modules to JSON
configs and delimited outputs.  Exit codes: 0 success, 1 computation
failure (including a failing verify suite), 2 usage or config errors.
All data outputs are byte-deterministic for identical inputs and seed;
``--plot`` renders PNG figures next to the data files and never touches
the data bytes themselves.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import astro, boostgen, config
from . import numgrid as ng
from . import syntax, verify
from .hamiltonians import build, equivalence_residual

__all__ = ["main", "build_parser"]


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a rational number (use forms like -3, 3/4, "
            "-1/2; attach negative values as --mu-a=-3/2)")


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinboost",
        description="Construct, compare, and evolve gravitational and "
                    "uniformly-accelerated spin-1/2 Hamiltonians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the exact symbolic check suite")
    p.add_argument("--mu-a", type=_rational, default=Fraction(0),
                   metavar="R", help="anomalous-moment value for the "
                   "reported residual/ratio notes (default 0)")
    p.add_argument("--mutate", choices=verify.MUTATIONS,
                   help="inject a known defect to demonstrate detection")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("residual",
                       help="print the gravitational-minus-accelerational "
                            "residual at a = -g")
    p.add_argument("--mu-a", type=_rational, required=True, metavar="R")
    p.add_argument("--tidal", action="store_true",
                   help="include the literally ordered tidal correction")
    p.set_defaults(func=_cmd_residual)

    p = sub.add_parser("generate",
                       help="print the spin-dependent boost generator "
                            "components")
    p.add_argument("--mu-a", type=_rational, required=True, metavar="R")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("evolve",
                       help="evolve a wavepacket per config; emit CSV "
                            "trajectory")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--plot", action="store_true",
                   help="also render a PNG next to the CSV output")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("probe",
                       help="run the mirror-angle ensemble probe; emit JSON")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--seed", type=int, metavar="N",
                   help="override the config's ensemble seed")
    p.add_argument("--plot", action="store_true",
                   help="also render a PNG next to the JSON output")
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("scales",
                       help="tabulate surface gravity and precession "
                            "length scales for a body catalog")
    p.add_argument("--catalog", metavar="PATH",
                   help="CSV catalog (default: packaged bodies)")
    p.add_argument("--one-plus-mu-a-abs", type=_positive, default=2.0,
                   metavar="X", help="|1 + mu_a| used for the length "
                   "scale (default 2)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH",
                   help="write the table here instead of stdout")
    p.add_argument("--plot", action="store_true",
                   help="also render a PNG next to the output file")
    p.set_defaults(func=_cmd_scales)

    p = sub.add_parser("cow",
                       help="two-arm interferometer phase from the "
                            "potential term")
    p.add_argument("--config", required=True, metavar="PATH")
    p.set_defaults(func=_cmd_cow)
    return parser


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _plot_target(args, data_path: str | None) -> str | None:
    """PNG path next to the data file; --plot needs a file to sit next to."""
    if not args.plot:
        return None
    if data_path is None:
        print("error: --plot requires a file output path", file=sys.stderr)
        raise SystemExit(2)
    return os.path.splitext(data_path)[0] + ".png"


def _require_format(cfg: dict, expected: str) -> None:
    declared = cfg.get("output", {}).get("format")
    if declared is not None and declared != expected:
        raise config.ConfigError(
            [("/output/format", f"this command emits {expected}")])


def _cmd_verify(args) -> int:
    results = verify.run_checks(mu_a=args.mu_a, mutate=args.mutate)
    sys.stdout.write(verify.format_report(results))
    return 0 if verify.all_passed(results) else 1


def _cmd_residual(args) -> int:
    expr = equivalence_residual(args.mu_a, include_tidal=args.tidal)
    print(syntax.format_expr(expr))
    return 0


def _cmd_generate(args) -> int:
    gen = boostgen.spin_boost_generator(args.mu_a)
    for axis, comp in zip("xyz", gen.components):
        print(f"chi_{axis} = {syntax.format_expr(comp)}")
    return 0


def _cmd_evolve(args) -> int:
    cfg = config.load(args.config)
    _require_format(cfg, "csv")
    out_path = cfg.get("output", {}).get("path")
    png = _plot_target(args, out_path)
    ctx = config.realization_context(cfg)
    state = config.initial_state(cfg, ctx)
    if ng.interior_support_fraction(state) < 0.99:
        print("warning: wavepacket support extends beyond the central "
              "half of the grid; position observables are unreliable",
              file=sys.stderr)
    h = ng.realize(build(config.hamiltonian_spec(cfg)), ctx)
    dt_s, steps, method = config.evolution_settings(cfg)
    traj = ng.evolve(h, state, dt_s, steps, method)
    _write_output(ng.trajectory_to_csv(traj), out_path)
    if png is not None:
        from . import plotting
        plotting.plot_trajectory(traj, png)
    return 0


def _cmd_probe(args) -> int:
    cfg = config.load(args.config)
    _require_format(cfg, "json")
    out_path = cfg.get("output", {}).get("path")
    png = _plot_target(args, out_path)
    section = config.require_section(cfg, "probe")
    ctx = config.realization_context(cfg)
    seed = args.seed if args.seed is not None else section.get("seed", 0)
    report = ng.symmetry_probe(ctx.params.mu_a, section["thetas"], ctx,
                               n_pairs=section.get("n_pairs", 24), seed=seed)
    _write_output(report.to_json(), out_path)
    if png is not None:
        from . import plotting
        plotting.plot_probe(report, png)
    return 0


def _cmd_scales(args) -> int:
    png = _plot_target(args, args.output)
    if args.catalog is None:
        bodies = astro.default_catalog()
    else:
        bodies = astro.load_catalog(args.catalog)
    mu_a = args.one_plus_mu_a_abs - 1.0  # |1 + mu_a| = requested magnitude
    rows = astro.scales_table(bodies, mu_a)
    if args.format == "csv":
        text = astro.rows_to_csv(rows)
    else:
        text = astro.rows_to_json(rows)
    _write_output(text, args.output)
    if png is not None:
        from . import plotting
        plotting.plot_scales(rows, png)
    return 0


def _cmd_cow(args) -> int:
    cfg = config.load(args.config)
    _require_format(cfg, "json")
    section = config.require_section(cfg, "cow")
    params = config.physical_params(cfg)
    phase = ng.cow_phase(section["kind"], section["height_difference_cm"],
                         section["traversal_time_s"], params)
    payload = {
        "kind": section["kind"],
        "height_difference_cm": section["height_difference_cm"],
        "traversal_time_s": section["traversal_time_s"],
        "phase_rad": phase,
    }
    _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                  cfg.get("output", {}).get("path"))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except config.ConfigError as exc:
        for pointer, message in exc.errors:
            print(f"config error at {pointer or '/'}: {message}",
                  file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
