#!/usr/bin/env python3
"""Mean diameter versus size on a log-log scale with the fitted exponent.

Input: `polyaforge diam-stats` CSV.  The scaling limit predicts
mean D(T_n) ~ c sqrt(n); the fitted slope is annotated and printed as JSON.
"""

import argparse
import json
import math
import sys

import numpy as np

from _common import fail, load_csv, save
import matplotlib.pyplot as plt


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--in", dest="diam", required=True, help="diam-stats CSV")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    rows = load_csv(args.diam, ("n", "diameter"))
    by_n: dict[int, list[float]] = {}
    for r in rows:
        by_n.setdefault(int(r["n"]), []).append(float(r["diameter"]))
    if len(by_n) < 2:
        fail("need at least two sizes for a slope fit")

    ns = np.array(sorted(by_n), dtype=float)
    means = np.array([np.mean(by_n[int(n)]) for n in ns])
    slope, intercept = np.polyfit(np.log(ns), np.log(means), 1)
    print(json.dumps({"slope": round(float(slope), 4),
                      "sizes": [int(n) for n in ns]}))

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.loglog(ns, means, "o", label="mean D(T_n)")
    grid = np.linspace(math.log(ns[0]), math.log(ns[-1]), 50)
    ax.loglog(np.exp(grid), np.exp(intercept + slope * grid), "-",
              label=f"fit: slope {slope:.3f}")
    ax.set_xlabel("n")
    ax.set_ylabel("mean diameter")
    ax.set_title("diameter scaling (slope 0.5 expected)")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
