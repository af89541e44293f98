#!/usr/bin/env python3
"""Class mixture of the cycle-pointing decomposition versus size.

Input: `polyaforge count` CSV (columns n, a_n, s_n, e_n, v_n, f_n).  Plots
the three class fractions s/(n f), e/(n f), v/(n f) on a log scale; the
edge-centered fraction decays geometrically and shows as a straight line.
"""

import argparse
import sys

from _common import fail, load_csv, save
import matplotlib.pyplot as plt


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--in", dest="counts", required=True, help="count CSV")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    rows = load_csv(args.counts, ("n", "s_n", "e_n", "v_n", "f_n"))
    ns, fs, es, vs, ss = [], [], [], [], []
    for r in rows:
        n = int(r["n"])
        f = int(r["f_n"])
        if n < 2 or f == 0:
            continue
        tot = n * f
        ns.append(n)
        ss.append(int(r["s_n"]) / tot)
        es.append(int(r["e_n"]) / tot)
        vs.append(int(r["v_n"]) / tot)
    if not ns:
        fail("no usable rows (need n >= 2 with f_n > 0)")

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(ns, ss, label="marked fixpoint  s/(n f)")
    ax.plot(ns, vs, label="vertex-centered  v/(n f)")
    pos = [(n, e) for n, e in zip(ns, es) if e > 0]
    if pos:
        ax.plot([p[0] for p in pos], [p[1] for p in pos],
                label="edge-centered  e/(n f)")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("class fraction")
    ax.set_title("cycle-pointed class mixture")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
