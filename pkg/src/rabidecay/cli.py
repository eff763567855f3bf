"""Command-line interface: simulate, sweep, report.

Exit codes: 0 when every target passes, 2 when any fit failed to converge,
3 when a fit converged but missed its target tolerance, 1 for usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (
    ConfigError,
    ExperimentConfig,
    load_preset,
    parse_config_file,
    preset_names,
    resolve_out_dir,
    run_experiment,
    sweep,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; reserve that for non-convergence."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="rabidecay",
        description="Reproduce decoherence-model experiments on driven two-level systems.",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", default=None,
                        help="output directory (default: $RABIDECAY_OUT or ./rabidecay-out)")
    common.add_argument("--workers", type=int, default=1, metavar="N",
                        help="worker processes for sweep elements (default: 1)")
    common.add_argument("--no-plot", action="store_true", help="skip the SVG plot")

    p_sim = sub.add_parser("simulate", parents=[common],
                           help="run one experiment from a preset name or config file")
    p_sim.add_argument("config", metavar="PRESET|FILE")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="run a config once per value of a parameter")
    p_sweep.add_argument("config", metavar="PRESET|FILE")
    p_sweep.add_argument("--axis", metavar="NAME", default=None,
                         help="model parameter to sweep (default: the config's sweep.axis)")
    p_sweep.add_argument("--values", metavar="V1,V2,...", default=None,
                         help="comma-separated values (default: the config's sweep.values)")

    p_rep = sub.add_parser("report", help="summarize the reports in a results directory")
    p_rep.add_argument("directory", metavar="DIR")
    return parser


def _load_config(source: str) -> ExperimentConfig:
    path = Path(source)
    if path.is_file():
        return parse_config_file(path)
    if path.suffix or "/" in source:
        raise ConfigError(f"config file not found: {source}")
    return load_preset(source)


def _exit_code(any_nonconverged: bool, all_passed: bool) -> int:
    if any_nonconverged:
        return 2
    if not all_passed:
        return 3
    return 0


def _print_targets(targets: dict) -> None:
    for name, entry in targets.items():
        verdict = "PASS" if entry["passed"] else "FAIL"
        if "minimum" in entry:
            bounds = f"range [{entry['minimum']:g}, {entry['maximum']:g}]"
        elif "target" in entry:
            bounds = f"target {entry['target']:g} tol {entry['tolerance']:g}"
        else:
            bounds = f"tol {entry['tolerance']:g}"
        print(f"  {verdict} {name}: actual {entry['actual']:.6g} ({bounds})")


def _print_report(report) -> None:
    print(f"{report.name} [{report.model}]  {report.wall_clock_s:.2f}s")
    for record in report.runs:
        if "error" in record:
            print(f"  ERROR {record['label']}: {record['error']}")
            continue
        flag = "" if record["converged"] else "  (did not converge)"
        print(
            f"  {record['label']}: gamma {record['gamma']:.6g}, "
            f"omega {record['omega_fit']:.6g}, rms {record['residual_rms']:.2g}{flag}"
        )
    for key in ("alpha", "slope", "characteristic_frequency"):
        if key in report.derived:
            print(f"  {key}: {report.derived[key]:.6g}")
    _print_targets(report.targets)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1

    if args.command == "report":
        directory = Path(args.directory)
        if not directory.is_dir():
            print(f"not a directory: {directory}", file=sys.stderr)
            return 1
        paths = sorted(directory.glob("*_report.json"))
        if not paths:
            print(f"no reports found in {directory}", file=sys.stderr)
            return 1
        any_nonconverged = False
        all_passed = True
        for path in paths:
            data = json.loads(path.read_text())
            n_targets = len(data["targets"])
            n_passed = sum(1 for entry in data["targets"].values() if entry["passed"])
            flags = []
            if data["any_nonconverged"]:
                flags.append("nonconverged")
                any_nonconverged = True
            if not data["all_passed"]:
                all_passed = False
            note = f" [{', '.join(flags)}]" if flags else ""
            print(f"{data['name']} [{data['model']}]: {n_passed}/{n_targets} targets passed{note}")
        return _exit_code(any_nonconverged, all_passed)

    try:
        config = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "simulate":
            report = run_experiment(
                config, out_dir=args.out, workers=args.workers, plot=not args.no_plot
            )
            _print_report(report)
            print(f"outputs written to {resolve_out_dir(args.out)}")
            return _exit_code(report.any_nonconverged, report.all_passed)

        # sweep
        axis = args.axis
        values = None
        if args.values is not None:
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError:
                print(f"config error: --values must be numeric, got {args.values!r}",
                      file=sys.stderr)
                return 1
        if config.sweep_spec is not None:
            axis = axis or config.sweep_spec.get("axis")
            if values is None and "values" in config.sweep_spec:
                raw = config.sweep_spec["values"]
                values = [float(v) for v in (raw if isinstance(raw, list) else [raw])]
        if axis is None or not values:
            print("config error: sweep needs --axis and --values "
                  "(or a sweep block in the config)", file=sys.stderr)
            return 1
        config.sweep_spec = None
        reports = sweep(
            config, axis, values, out_dir=args.out, workers=args.workers,
            plot=not args.no_plot,
        )
        for report in reports:
            _print_report(report)
        print(f"outputs written to {resolve_out_dir(args.out)}")
        return _exit_code(
            any(r.any_nonconverged for r in reports),
            all(r.all_passed for r in reports),
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
