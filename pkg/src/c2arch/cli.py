"""Command-line entry point: ``c2arch {compare,bounds,heatmap}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O error.
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from .quadrature import QuadratureError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_config_flags(p):
    p.add_argument("--config", help="flat 'key = value' config file")
    for f in dataclasses.fields(ex.ScenarioConfig):
        if f.name == "seeds":
            continue
        p.add_argument("--" + f.name.replace("_", "-"), dest=f.name, default=None)
    p.add_argument("--seeds", default=None, help="comma-separated seeds")
    p.add_argument("--seed", default=None, help="single seed (same as --seeds N)")


def build_parser():
    parser = _Parser(prog="c2arch", description="Capacity-centric clustering experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compare", help="architecture comparison table")
    _add_config_flags(p)
    p.add_argument("--r0-grid", default=None,
                   help="comma-separated network radii to sweep, or 'default' for 400,600,800,1000")

    p = sub.add_parser("bounds", help="capacity bounds versus cluster radius")
    _add_config_flags(p)
    p.add_argument("--rj-list", required=True, help="comma-separated cluster radii in metres")
    p.add_argument("--betas", default=None, help="comma-separated user/BS ratios (default: config beta)")

    p = sub.add_parser("heatmap", help="per-cluster tables for every architecture")
    _add_config_flags(p)
    return parser


def _floats(text, key):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise ex.ConfigError(key, f"cannot parse {text!r}") from exc


def resolve_config(args) -> ex.ScenarioConfig:
    overrides = {}
    for f in dataclasses.fields(ex.ScenarioConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            overrides[f.name] = v
    if args.seed is not None:
        if args.seeds is not None:
            raise ex.ConfigError("seeds", "give --seed or --seeds, not both")
        overrides["seeds"] = args.seed
    if args.config:
        return ex.ScenarioConfig.from_file(args.config, overrides)
    return ex.ScenarioConfig.from_mapping(overrides)


def _run(args):
    cfg = resolve_config(args)
    out = Path(cfg.output_dir)
    if args.command == "compare":
        if args.r0_grid == "default":
            grid = list(ex.DEFAULT_R0_GRID)
        else:
            grid = _floats(args.r0_grid, "r0_grid") if args.r0_grid else None
        if grid is not None and (not grid or min(grid) <= 0):
            raise ex.ConfigError("r0_grid", "values must be positive")
        rows = ex.run_compare(cfg, grid)
        ex.write_table(out / "comparison.csv", rows, ex.COMPARISON_COLUMNS)
        ex.write_sidecar(out / "summary.json", cfg, r0_grid=grid or [cfg.r0_m], summary=ex.summarize_compare(rows))
    elif args.command == "bounds":
        rj = _floats(args.rj_list, "rj_list")
        betas = _floats(args.betas, "betas") if args.betas else None
        rows = ex.run_bounds_curve(cfg, rj, betas)
        ex.write_table(out / "bounds_curve.csv", rows, ex.BOUNDS_COLUMNS)
        ex.write_sidecar(out / "bounds_curve.json", cfg, rj_list=rj, betas=betas or [cfg.beta])
    else:
        tables = ex.run_heatmap(cfg)
        for kind, rows in tables.items():
            ex.write_table(out / f"heatmap_{kind}.csv", rows, ex.HEATMAP_COLUMNS)
            ex.write_sidecar(out / f"heatmap_{kind}.json", cfg, architecture=kind)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        out = _run(args)
    except ex.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote results to {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
