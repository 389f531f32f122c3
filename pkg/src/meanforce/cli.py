"""Command-line driver.

Subcommands:
  sweep    thermal + ergotropy temperature sweep -> CSV
  epsweep  entropy-production temperature sweep -> CSV
  point    single-temperature diagnostic dump (JSON on stdout)

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 convergence warning or
record-level numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .models import JC, TWO_QUBIT
from .sweep import (
    build_config,
    log_stderr,
    point_diagnostics,
    read_config_file,
    run_sweep,
    sweep_exit_code,
    write_csv,
)

USAGE_EXIT = 1
IO_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument("--model", choices=[TWO_QUBIT, JC])
    parser.add_argument(
        "--coupling",
        help="comma-separated subset of weak,moderate,strong (default: all three)",
    )
    parser.add_argument(
        "--lambda", dest="lambdas", type=float, action="append", metavar="X",
        help="explicit coupling amplitude (repeatable)",
    )
    parser.add_argument("--omega0", type=float, help="qubit transition frequency (default 2.0)")
    parser.add_argument("--omegac", dest="omega_c", type=float,
                        help="resonator frequency, jc model (default 1.0)")
    parser.add_argument("--omega", type=float, help="bath-mode frequency, two-qubit model (default 1.0)")
    parser.add_argument("--xi", type=float, help="inter-qubit separation (default 0.05)")
    parser.add_argument("--n-fock", dest="n_fock", type=int,
                        help="bosonic truncation level (default 20 two-qubit, 30 jc)")
    parser.add_argument("--tmin", dest="t_min", type=float)
    parser.add_argument("--tmax", dest="t_max", type=float)
    parser.add_argument("--tsteps", dest="t_steps", type=int)
    parser.add_argument("--time", type=float, help="evolution time for entropy production")
    parser.add_argument("--fd-step", dest="fd_step", type=float,
                        help="relative finite-difference step (default 1e-4)")
    parser.add_argument("--zero-point", dest="include_zero_point",
                        choices=["on", "off"],
                        help="override the per-model zero-point-energy default")
    parser.add_argument("--out", help="output path")


def _make_parser() -> _Parser:
    parser = _Parser(prog="meanforce", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("sweep", "thermal + ergotropy sweep over a temperature grid"),
        ("epsweep", "entropy-production sweep over a temperature grid"),
        ("point", "full diagnostics at one temperature (JSON)"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_common_flags(p)
        if name == "point":
            p.add_argument("--temperature", "-T", type=float, default=1.0,
                           help="evaluation temperature (default 1.0)")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    over = {
        "model": args.model,
        "omega0": args.omega0,
        "omega_c": args.omega_c,
        "omega": args.omega,
        "xi": args.xi,
        "n_fock": args.n_fock,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "t_steps": args.t_steps,
        "time": args.time,
        "fd_step": args.fd_step,
        "out": args.out,
    }
    if args.coupling is not None:
        over["couplings"] = tuple(s for s in args.coupling.split(",") if s)
    if args.lambdas:
        over["lambdas"] = tuple(args.lambdas)
        if args.coupling is None:
            over["couplings"] = ()
    if args.include_zero_point is not None:
        over["include_zero_point"] = args.include_zero_point == "on"
    return over


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        file_values = read_config_file(args.config) if args.config else {}
    except OSError as exc:
        print(f"meanforce: cannot read config: {exc}", file=sys.stderr)
        return IO_EXIT
    except ValueError as exc:
        print(f"meanforce: {exc}", file=sys.stderr)
        return USAGE_EXIT

    overrides = _overrides(args)
    if args.command == "epsweep":
        overrides["outputs"] = ("entropy-production",)
        # entropy-production defaults: T in [0.5, 5.0], output epsweep.csv
        for key, default in (("t_min", 0.5), ("t_max", 5.0), ("out", "epsweep.csv")):
            if overrides.get(key) is None and key not in file_values:
                overrides[key] = default
    try:
        config = build_config(file_values, overrides)
    except (ValueError, TypeError) as exc:
        print(f"meanforce: {exc}", file=sys.stderr)
        return USAGE_EXIT

    if args.command == "point":
        diag = point_diagnostics(config, args.temperature)
        json.dump(diag, sys.stdout, indent=2, sort_keys=True)
        print()
        return 0

    records = run_sweep(config, log=log_stderr)
    try:
        write_csv(records, config.out)
    except OSError as exc:
        print(f"meanforce: cannot write {config.out}: {exc}", file=sys.stderr)
        return IO_EXIT
    log_stderr(f"wrote {len(records)} records to {config.out}")
    return sweep_exit_code(records)


if __name__ == "__main__":
    raise SystemExit(main())
