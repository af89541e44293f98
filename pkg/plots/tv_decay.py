#!/usr/bin/env python3
"""Total-variation decay of neighborhood censuses.

Input: one or two `polyaforge local-stats` CSVs (columns code, count, n, k).
With one file, compares the census at n with the census at 2n for every
size pair present.  With two files, compares the two censuses at each
common n (identical files give a flat zero line).  Prints one JSON line per
comparison.
"""

import argparse
import json
import sys

from _common import fail, load_csv, save
import matplotlib.pyplot as plt


def census_by_n(rows):
    out: dict[int, dict[str, int]] = {}
    k_seen = set()
    for r in rows:
        n = int(r["n"])
        k_seen.add(int(r["k"]))
        out.setdefault(n, {})[r["code"]] = out.get(n, {}).get(r["code"], 0) + int(r["count"])
    if len(k_seen) > 1:
        fail(f"mixed radii in one census file: {sorted(k_seen)}")
    return out


def tv(c1: dict, c2: dict) -> float:
    t1 = sum(c1.values())
    t2 = sum(c2.values())
    codes = set(c1) | set(c2)
    return 0.5 * sum(abs(c1.get(c, 0) / t1 - c2.get(c, 0) / t2) for c in codes)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--in", dest="inputs", nargs="+", required=True,
                    help="one or two local-stats CSVs")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    if len(args.inputs) > 2:
        fail("expected one or two input files")

    censuses = [census_by_n(load_csv(p, ("code", "count", "n", "k")))
                for p in args.inputs]
    pairs = []
    if len(censuses) == 2:
        common = sorted(set(censuses[0]) & set(censuses[1]))
        if not common:
            fail("no common sizes between the two inputs")
        for n in common:
            pairs.append((n, tv(censuses[0][n], censuses[1][n])))
    else:
        c = censuses[0]
        ns = sorted(c)
        for n in ns:
            if 2 * n in c:
                pairs.append((n, tv(c[n], c[2 * n])))
        if not pairs:
            fail("no (n, 2n) size pairs in the input")

    for n, d in pairs:
        print(json.dumps({"n": n, "tv": round(d, 6)}))

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot([p[0] for p in pairs], [p[1] for p in pairs], "o-")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("TV distance between censuses")
    ax.set_title("neighborhood census stability"
                 + (" (two runs)" if len(censuses) == 2 else " (n vs 2n)"))
    ax.grid(alpha=0.3)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
