#!/usr/bin/env python3
"""Plot the four error-vs-eps panels from a sweep CSV.

Usage: plot_sweep.py sweep.csv [out.png]
"""

import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    sweep_path = sys.argv[1]
    out_path = sys.argv[2] if len(sys.argv) > 2 else "sweep.png"

    curves = defaultdict(list)  # (quantity, level, k) -> [(eps, err)]
    with open(sweep_path) as fh:
        for row in csv.DictReader(fh):
            eps = float(row["eps"])
            k = int(row["k"])
            curves[(row["quantity"], "macro", k)].append(
                (eps, float(row["macro_sup"])))
            curves[(row["quantity"], "micro", k)].append(
                (eps, float(row["micro_sup"])))

    fig, axes = plt.subplots(2, 2, figsize=(11, 8), sharex=True)
    panels = [("mean", "macro"), ("mean", "micro"),
              ("variance", "macro"), ("variance", "micro")]
    for ax, (quantity, level) in zip(axes.flat, panels):
        ks = sorted({k for (q, l, k) in curves if q == quantity and l == level})
        for k in ks:
            pts = sorted(curves[(quantity, level, k)])
            ax.loglog([p[0] for p in pts], [p[1] for p in pts],
                      marker="o", label=f"k={k}")
        ax.set_title(f"{level} error, {quantity}")
        ax.set_xlabel("eps")
        ax.set_ylabel("sup error")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
