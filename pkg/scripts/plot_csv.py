"""Plot one column of a diamond-bath CSV against t, one curve per sweep value.

    python3 scripts/plot_csv.py fig2.csv --y negativity --out fig2.png
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from diamond_bath.sweep import read_csv  # noqa: E402


def plot(table, y: str, ax, title: str | None = None):
    sweep = [c for c in table.columns[1:2] if c in ("s", "lambda", "beta")]
    if sweep:
        values = list(dict.fromkeys(r[1] for r in table.rows))
        for v in values:
            sub = table.select(**{sweep[0]: v})
            ax.plot(sub.column("t"), sub.column(y), label=f"{sweep[0]} = {v:g}")
        ax.legend()
    else:
        ax.plot(table.column("t"), table.column(y))
    ax.set_xlabel("t")
    ax.set_ylabel(y)
    if title:
        ax.set_title(title)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("--y", default="negativity")
    parser.add_argument("--out", required=True, help="image path, e.g. fig2.png")
    args = parser.parse_args(argv)
    with open(args.csv) as fh:
        table = read_csv(fh)
    if args.y not in table.columns:
        parser.error(f"column {args.y!r} not in {table.columns}")
    fig, ax = plt.subplots(figsize=(6, 4))
    plot(table, args.y, ax, title=args.csv)
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    return 0


if __name__ == "__main__":
    sys.exit(main())
