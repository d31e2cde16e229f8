"""Command-line entry point: ``framehomodyne {sweep,validate,transform} CONFIG``.

Exit codes: 0 success, 1 validation tolerance breach, 2 invalid
configuration, 3 numerical failure.
"""

import argparse
import dataclasses
import json
import sys

from .config import PRESETS, ConfigError, load_config
from .errors import DegenerateScenarioError, DiscretizationError, DomainError, QuadratureError
from .runner import run_sweep, run_transform, run_validate

EXIT_OK, EXIT_BREACH, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
_NUMERIC = (QuadratureError, DiscretizationError, DegenerateScenarioError, DomainError,
            FloatingPointError, ArithmeticError)


def build_parser():
    ap = argparse.ArgumentParser(prog="framehomodyne",
                                 description="Homodyne detection across inertial, accelerated and delayed frames")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("sweep", "write X/V traces (CSV), a JSON summary and a PNG"),
                        ("validate", "run analytic and oracle checks, write a JSON report"),
                        ("transform", "write the signal displacement per wedge (CSV + JSON)")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config", help=f"JSON config path or preset name ({', '.join(PRESETS)})")
        p.add_argument("--out-dir", default=".", help="output directory (default: current)")
        p.add_argument("--n-phi", type=int, default=None, help="override the number of phase nodes")
        p.add_argument("--seedless", action="store_true",
                       help="assert deterministic execution (no random numbers are used anywhere)")
        if name == "sweep":
            p.add_argument("--no-plot", action="store_true", help="skip the PNG")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.n_phi is not None:
            if args.n_phi < 4:
                raise ConfigError("--n-phi", "must be at least 4")
            cfg = dataclasses.replace(cfg, n_phi=args.n_phi)
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "sweep":
            paths = run_sweep(cfg, args.out_dir, plot=not args.no_plot)
        elif args.command == "transform":
            paths = run_transform(cfg, args.out_dir)
        else:
            report, path = run_validate(cfg, args.out_dir)
            for name, chk in report["checks"].items():
                state = "skip" if chk["passed"] is None else ("ok" if chk["passed"] else "FAIL")
                print(f"{state:4s} {name}: {chk['value']:.3e} (tol {chk['tolerance']})")
            if report["oracle"]["skipped"]:
                print("skip oracle section (oracle.enabled = false)")
            print(path)
            if not report["passed"]:
                failed = {k: c["value"] for k, c in report["checks"].items() if c["passed"] is False}
                print(f"error: tolerance breach: {json.dumps(failed)}", file=sys.stderr)
                return EXIT_BREACH
            return EXIT_OK
    except _NUMERIC as exc:
        print(f"error: numerical failure in {type(exc).__module__}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERIC
    for p in paths.values():
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
