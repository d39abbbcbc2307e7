"""Command-line interface.

Subcommands::

    epiage thresholds  --config run.ini --out outdir [--tol T]
    epiage simulate    --config run.ini --out outdir
    epiage steady      --config run.ini --out outdir [--tol T]
    epiage bifurcation --config run.ini --out outdir [--tol T]
    epiage preset NAME --out outdir [--tol T]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .bifurcation import sweep
from .config import parse_config
from .demography import analysis_kernel
from .errors import ModelError
from .presets import PRESETS, run_preset
from .steady import find_fixed_points
from .thresholds import classify
from .transport import simulate

_DEFAULT_TOL = 1e-10


def _load(args):
    path = Path(args.config)
    if not path.exists():
        raise ModelError(f"config file not found: {path}")
    return parse_config(path.read_text(), base_dir=path.parent)


def _outdir(args, config=None):
    if args.out:
        out = Path(args.out)
    elif config is not None and config.directory:
        out = Path(config.directory)
    else:
        out = Path("runs") / args.command
    out.mkdir(parents=True, exist_ok=True)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="epiage",
        description="Age-structured epidemic model with nonlinear relapse",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        if config_required:
            p.add_argument("--config", required=True, help="run configuration file")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument(
            "--tol", type=float, default=_DEFAULT_TOL, help="solver tolerance"
        )

    add_common(sub.add_parser("thresholds", help="R0, RC, growth rate, region"))
    add_common(sub.add_parser("simulate", help="run the transport solver"))
    add_common(sub.add_parser("steady", help="solve for every endemic steady state"))
    add_common(sub.add_parser("bifurcation", help="sweep a rate and emit the diagram"))
    preset = sub.add_parser("preset", help="run a named desk-scale experiment")
    preset.add_argument("name", choices=PRESETS)
    add_common(preset, config_required=False)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "preset":
        out = _outdir(args)
        written = run_preset(args.name, out, tol=args.tol)
        _announce(written)
        return 0

    config = _load(args)
    out = _outdir(args, config)

    if args.command == "thresholds":
        kernel = analysis_kernel(config.params)
        report = classify(config.params, kernel, tol=max(args.tol, 1e-9))
        path = io.write_report(out / "report.txt", report)
        print(f"wrote {path}")
        print(
            f"R0 = {report.r0:.6g}  RC = {report.rc:.6g}  "
            f"growth = {report.growth_rate:.6g}/yr  region = {report.region}"
        )
        return 0

    if args.command == "simulate":
        ages = config.grid.age_nodes()
        s0, i0, r0 = config.initial.rows(ages)
        trajectory = simulate(
            config.params,
            (s0, i0, r0),
            config.grid,
            mixing=config.mixing,
            store=config.stride,
        )
        kernel = analysis_kernel(config.params)
        report = classify(config.params, kernel, tol=max(args.tol, 1e-9))
        print(f"wrote {io.write_report(out / 'report.txt', report)}")
        print(f"wrote {io.write_initial(out / 'initial.csv', ages, s0, i0, r0)}")
        print(f"wrote {io.write_trajectory(out / 'trajectory.csv', trajectory.field)}")
        print(
            f"wrote {io.write_b_series(out / 'b_series.csv', config.grid.time_nodes(), trajectory.b_series)}"
        )
        print(
            f"B(T) = {trajectory.b_series[-1]:.6g}; "
            f"max |s+i+r-1| = {trajectory.conservation_max:.3g}"
        )
        return 0

    if args.command == "steady":
        kernel = analysis_kernel(config.params)
        report = classify(config.params, kernel, tol=max(args.tol, 1e-9))
        print(f"wrote {io.write_report(out / 'report.txt', report)}")
        states = find_fixed_points(config.params, kernel, tol=args.tol)
        path = io.write_steady_states(out / "steady_states.csv", states)
        print(f"wrote {path}")
        for state in states:
            print(f"fixed point B* = {state.b_star:.10g} (residual {state.residual:.2g})")
        if not states:
            print("no endemic steady state in (0, 1)")
        return 0

    if args.command == "bifurcation":
        if not config.sweep_param:
            raise ModelError("config needs a [sweep] section for this command")
        base = config.rates if config.rates is not None else config.params
        rows = sweep(
            base,
            config.sweep_param,
            sorted(config.sweep_values),
            tol=args.tol,
            probe=config.sweep_probe,
        )
        path = io.write_diagram(out / "diagram.csv", rows, ages=config.grid.age_nodes())
        print(f"wrote {path}")
        for row in rows:
            status = f"{len(row.branches)} branch(es)" if not row.error else row.error
            print(f"{config.sweep_param} = {row.swept_value:g}: R0 = {row.r0:.4g}, {status}")
        return 0

    raise ModelError(f"unknown command {args.command!r}")


def _announce(written: dict):
    for key, value in written.items():
        if not key.startswith("_"):
            print(f"wrote {value}")


if __name__ == "__main__":
    raise SystemExit(main())
