"""Command-line entry point: ``diamond-bath run|preset|presets|factors``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import OUTPUTS, PRESETS, ConfigError, get_preset, list_presets, load_config
from .quadrature import QuadratureError
from .sweep import run_scenario, write_csv

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _columns(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [n for n in names if n not in OUTPUTS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"columns must be chosen from {', '.join(OUTPUTS)}")
    return names


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diamond-bath",
        description="Central-pair negativity of a diamond spin cluster in a dephasing bosonic bath.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, columns=True):
        p.add_argument("--out", help="CSV output path (default: standard output)")
        if columns:
            p.add_argument("--columns", type=_columns, help="comma-separated outputs: " + ", ".join(OUTPUTS))
        p.add_argument("--tol", type=_positive_float, help="quadrature relative tolerance")
        p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")

    p = sub.add_parser("run", help="run a scenario config file")
    p.add_argument("config")
    common(p)
    p = sub.add_parser("preset", help="run a built-in figure preset")
    p.add_argument("name", choices=sorted(PRESETS))
    common(p)
    sub.add_parser("presets", help="list built-in presets")
    p = sub.add_parser("factors", help="emit gamma and delta only")
    p.add_argument("config")
    common(p, columns=False)
    return parser


def _emit(table, out):
    if out:
        with open(out, "w", newline="") as fh:
            write_csv(table, fh)
    else:
        write_csv(table, sys.stdout)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        for name, description in list_presets():
            print(f"{name}\t{description}")
        return 0
    try:
        if args.command == "preset":
            scenario = get_preset(args.name)
        else:
            scenario = load_config(args.config)
        if args.tol is not None:
            scenario = scenario.replace(rtol=args.tol)
        columns = ["gamma", "delta"] if args.command == "factors" else args.columns
        table = run_scenario(scenario, jobs=args.jobs, columns=columns)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        _emit(table, args.out)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
