#!/usr/bin/env python3
"""Overlay of empirical rescaled diameter survival curves on the model tail.

Inputs: --crt crt.csv (columns x, tail) from `polyaforge crt table`;
optionally --in diam.csv (columns omega, n, sample_idx, diameter) from
`polyaforge diam-stats` plus --calib calib.json (key e_hat) from
`polyaforge calibrate`.  With no sample input, only the analytic curve is
drawn.  Prints one JSON line per sample size with the KS distance to the
model curve and the 1% KS band 1.63/sqrt(N).
"""

import argparse
import json
import math
import sys

import numpy as np

from _common import fail, load_csv, load_json, save
import matplotlib.pyplot as plt


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--in", dest="diam", default=None, help="diam-stats CSV")
    ap.add_argument("--crt", required=True, help="crt table CSV (model tail)")
    ap.add_argument("--calib", default=None, help="calibrate JSON (e_hat)")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    model = load_csv(args.crt, ("x", "tail"))
    mx = np.array([float(r["x"]) for r in model])
    mt = np.array([float(r["tail"]) for r in model])

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(mx, mt, "k-", lw=2, label="CRT diameter tail (model)")

    if args.diam is not None:
        if args.calib is None:
            fail("--calib is required when sample input is given")
        e_hat = float(load_json(args.calib, ("e_hat",))["e_hat"])
        rows = load_csv(args.diam, ("omega", "n", "sample_idx", "diameter"))
        if not rows:
            fail(f"{args.diam}: no samples")
        by_n: dict[int, list[float]] = {}
        for r in rows:
            by_n.setdefault(int(r["n"]), []).append(float(r["diameter"]))
        for n in sorted(by_n):
            vals = np.sort(np.array(by_n[n]) * (e_hat / math.sqrt(n)))
            N = len(vals)
            surv = 1.0 - np.arange(1, N + 1) / N
            ax.step(vals, surv, where="post", alpha=0.8, label=f"n = {n} (N = {N})")
            model_cdf = np.interp(vals, mx, 1.0 - mt)
            i = np.arange(N)
            ks = float(np.max(np.maximum(model_cdf - i / N,
                                         (i + 1) / N - model_cdf)))
            print(json.dumps({"n": n, "N": N, "ks": round(ks, 6),
                              "band_1pct": round(1.63 / math.sqrt(N), 6)}))
        ax.set_title(f"rescaled diameter survival vs model (e_hat = {e_hat:.4f})")
    else:
        ax.set_title("CRT diameter tail")

    ax.set_xlabel("x")
    ax.set_ylabel("P(D > x)")
    ax.set_xlim(0, max(mx))
    ax.set_ylim(0, 1.02)
    ax.legend()
    ax.grid(alpha=0.3)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
