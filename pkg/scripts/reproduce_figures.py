"""Run every built-in preset, write one CSV per preset, and optionally plot.

    python3 scripts/reproduce_figures.py --outdir figures --plot --jobs 2
"""

import argparse
import sys
import time
from pathlib import Path

from diamond_bath.config import PRESETS
from diamond_bath.sweep import run_scenario, write_csv


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="figures")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--plot", action="store_true", help="also write PNGs (needs matplotlib)")
    parser.add_argument("presets", nargs="*", default=list(PRESETS))
    args = parser.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in args.presets:
        start = time.perf_counter()
        table = run_scenario(PRESETS[name].scenario, jobs=args.jobs)
        path = outdir / f"{name}.csv"
        with open(path, "w", newline="") as fh:
            write_csv(table, fh)
        print(f"{name}: {len(table.rows)} rows -> {path} ({time.perf_counter() - start:.1f} s)")
        if args.plot:
            # Imported lazily so CSV generation works without matplotlib.
            from plot_csv import main as plot_main

            plot_main([str(path), "--y", "negativity", "--out", str(outdir / f"{name}.png")])
    return 0


if __name__ == "__main__":
    sys.exit(main())
