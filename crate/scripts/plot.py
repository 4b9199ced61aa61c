#!/usr/bin/env python3
"""Plot a bundle written by `netdiff reproduce`.

    python3 scripts/plot.py netdiff-out/scale-free [out.png]

Trajectory bundles plot means.csv (one line per initial count) with the
p10/p90 band of the k=10 ensemble; power-law bundles plot the merged degree
histogram on log-log axes; random-vs-stochastic plots both mean curves.
"""
import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def main():
    bundle = Path(sys.argv[1])
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else bundle / "plot.png"
    fig, ax = plt.subplots(figsize=(7, 4.5))

    if (bundle / "means.csv").exists():
        data = rows(bundle / "means.csv")
        for col in [c for c in data[0] if c != "loop"]:
            ax.plot([int(r["loop"]) for r in data], [float(r[col]) for r in data], label=col)
        band = bundle / "ensemble-k10.csv"
        if band.exists():
            b = rows(band)
            ax.fill_between(
                [int(r["loop"]) for r in b],
                [float(r["p10"]) for r in b],
                [float(r["p90"]) for r in b],
                alpha=0.2,
                label="k10 p10-p90",
            )
        ax.set_xlabel("loop")
        ax.set_ylabel("informed")
    elif (bundle / "degrees-ensemble.csv").exists():
        data = rows(bundle / "degrees-ensemble.csv")
        pts = [(int(r["degree"]), int(r["count"])) for r in data if int(r["degree"]) > 0]
        ax.loglog([k for k, _ in pts], [c for _, c in pts], "o")
        ax.set_xlabel("degree")
        ax.set_ylabel("vertices")
    elif (bundle / "comparison.csv").exists():
        data = rows(bundle / "comparison.csv")
        loops = [int(r["loop"]) for r in data]
        for col in ("random_mean", "stochastic_mean"):
            ax.plot(loops, [float(r[col]) for r in data], label=col)
        ax.set_xlabel("loop")
        ax.set_ylabel("mean informed")
    else:
        sys.exit(f"don't know how to plot {bundle}")

    if ax.get_legend_handles_labels()[0]:
        ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
