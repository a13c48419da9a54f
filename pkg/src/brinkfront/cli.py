"""Command-line interface.

    brinkfront run <config>            single simulation -> run directory
    brinkfront sweep <config> [-j N]   one run per sweep value + summary.csv
    brinkfront wave --nu V --pmax V    analytic wave table as CSV
    brinkfront check                   invariant self-test battery
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .backend import backend_name
from .config import ConfigError, parse_config, parse_sweep_config
from .runner import run_single, run_sweep, self_check
from .wave import build_wave


def _read_text(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _cmd_run(args) -> int:
    try:
        cfg = parse_config(_read_text(args.config))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        result = run_single(cfg, args.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    print(f"[{backend_name()}] {result.status}: {result.n_steps} steps to t={result.final_t:g} "
          f"in {result.out_dir}")
    print(f"  max_p={result.max_p:.6g} mass_residual={result.max_mass_residual:.3e} "
          f"sigma_est={result.sigma_est:.6g}")
    return 0 if result.ok else 1


def _cmd_sweep(args) -> int:
    try:
        cfg = parse_sweep_config(_read_text(args.config))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        results = run_sweep(cfg, parallelism=args.parallel, out_dir=args.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    for value, res in zip(cfg.values, results):
        print(f"  {cfg.axis}={value:g}: {res.status} sigma_est={res.sigma_est:.6g} "
              f"comp_residual={res.comp_residual_final:.6g}")
    return 0 if all(r.ok for r in results) else 1


def _cmd_wave(args) -> int:
    try:
        wave = build_wave(args.nu, args.pmax)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"w0={wave.w0:.12g} sigma={wave.sigma:.12g} jump={wave.jump:.12g}")
    if wave.nu == 0.0:
        print("nu = 0: spatial profiles undefined, no table written")
        return 0
    from .io import write_wave_table

    x = np.arange(args.x_min, args.x_max + 0.5 * args.dx, args.dx)
    try:
        write_wave_table(args.out, wave, x)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out} ({x.shape[0]} rows)")
    return 0


def _cmd_check(_args) -> int:
    checks = self_check()
    width = max(len(name) for name, _, _ in checks)
    failed = 0
    for name, ok, detail in checks:
        tag = "PASS" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{tag}  {name:<{width}}{suffix}")
        failed += 0 if ok else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed [{backend_name()} backend]")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="brinkfront", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single simulation")
    p_run.add_argument("config", help="path to a key=value config document")
    p_run.add_argument("--out", default=None, help="output directory (overrides config)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("config", help="path to a sweep config document")
    p_sweep.add_argument("--out", default=None, help="output root (overrides config)")
    p_sweep.add_argument("-j", "--parallel", type=int, default=1, help="worker processes")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_wave = sub.add_parser("wave", help="write the analytic traveling-wave table")
    p_wave.add_argument("--nu", type=float, required=True)
    p_wave.add_argument("--pmax", type=float, required=True)
    p_wave.add_argument("--out", default="wave.csv")
    p_wave.add_argument("--x-min", type=float, default=-10.0)
    p_wave.add_argument("--x-max", type=float, default=10.0)
    p_wave.add_argument("--dx", type=float, default=0.01)
    p_wave.set_defaults(func=_cmd_wave)

    p_check = sub.add_parser("check", help="run the invariant self-test battery")
    p_check.set_defaults(func=_cmd_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
