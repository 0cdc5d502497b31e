"""Command-line entry point: ``sweep``, ``figure`` and ``validate``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import ConfigError
from .figures import FIGURES, figure
from .sweep import MODELS, OUTPUTS, build_config, parse_config_file, run_sweep, write_sweep
from .validation import SUITES, run_suite

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION = 0, 1, 2


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinchain-discord", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="sweep the transverse field and write a table")
    sweep.add_argument("--config", type=Path, help="key = value file; flags override it")
    sweep.add_argument("--model", choices=MODELS)
    sweep.add_argument("--n", type=int)
    sweep.add_argument("--jx", type=float)
    aniso = sweep.add_mutually_exclusive_group()
    aniso.add_argument("--jy", type=float)
    aniso.add_argument("--chi", type=float, help="J_y / J_x")
    sweep.add_argument("--b-min", type=float)
    sweep.add_argument("--b-max", type=float)
    sweep.add_argument("--b-steps", type=int)
    sweep.add_argument("--L", dest="separations", type=_int_list, help="separations, e.g. 1,2,5")
    sweep.add_argument("--outputs", type=_str_list, help=f"subset of {','.join(OUTPUTS)}")
    sweep.add_argument("--format", choices=("csv", "json"))
    sweep.add_argument("--side-limits", action="store_true", default=None, help="add B_s - delta and B_s + delta")
    sweep.add_argument("--side-limit-delta", type=float)
    sweep.add_argument("--workers", type=int)
    sweep.add_argument("--out", type=Path, default=Path("."), help="output directory or file")

    fig = sub.add_parser("figure", help="write the data tables of one figure")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--out", type=Path, default=Path("."))

    val = sub.add_parser("validate", help="run a check suite and print a JSON report")
    val.add_argument("suite", choices=SUITES)
    return parser


def _sweep(args: argparse.Namespace) -> int:
    file_values = parse_config_file(args.config) if args.config else {}
    keys = ("model", "n", "jx", "jy", "chi", "b_min", "b_max", "b_steps", "separations", "outputs",
            "format", "side_limits", "side_limit_delta", "workers")
    overrides = {k: getattr(args, k) for k in keys}
    config = build_config(file_values, overrides)
    path = write_sweep(config, run_sweep(config), args.out)
    print(path)
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    results = run_suite(args.suite)
    for res in results:
        print(res.line(), file=sys.stderr)
    passed = all(r.passed for r in results)
    report = {"suite": args.suite, "passed": passed, "checks": [r.as_dict() for r in results]}
    print(json.dumps(report, indent=1))
    return EXIT_OK if passed else EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _sweep(args)
        if args.command == "figure":
            for path in figure(args.name, args.out):
                print(path)
            return EXIT_OK
        return _validate(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
