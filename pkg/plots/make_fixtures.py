#!/usr/bin/env python3
"""Regenerate the checked-in CSV/JSON fixtures for the figure scripts.

Everything comes through the primary component's external interfaces (the
polyaforge CLI); the synthetic diameter sample for the CDF self-test is an
inverse-transform draw from the model curve read back out of `crt table`,
so no formula is re-implemented here.
"""

import csv
import pathlib
import subprocess
import sys

import numpy as np

HERE = pathlib.Path(__file__).parent
FIX = HERE / "fixtures"
SEED = "20260809"


def cli(*args, out=None):
    cmd = [sys.executable, "-m", "polyaforge.cli", *args]
    if out is not None:
        cmd += ["--out", str(out)]
    print("+", " ".join(cmd[2:]))
    subprocess.run(cmd, check=True, stdout=subprocess.DEVNULL)


def main() -> None:
    FIX.mkdir(exist_ok=True)
    cli("count", "--omega", "1+", "--max-n", "200", out=FIX / "count.csv")
    cli("crt", "table", "--xmax", "4", "--step", "0.002", out=FIX / "crt.csv")
    # sizes large enough that the additive O(1) diameter correction leaves
    # the fitted log-log slope within 0.02 of 1/2
    cli("diam-stats", "--omega", "1+", "--n", "1024,2048,4096,8192",
        "--samples", "4000", "--seed", SEED, out=FIX / "diam.csv")
    cli("calibrate", "--omega", "1+", "--n", "2048,4096,8192",
        "--samples", "4000", "--seed", SEED, out=FIX / "calib.json")
    cli("local-stats", "--omega", "1+", "--n", "32,64,128,256", "--k", "2",
        "--samples", "4000", "--seed", SEED, out=FIX / "local_a.csv")
    cli("local-stats", "--omega", "1+", "--n", "32,64,128,256", "--k", "2",
        "--samples", "4000", "--seed", "777", out=FIX / "local_b.csv")

    # synthetic rescaled-diameter sample drawn from the model curve itself:
    # u ~ U(0,1), x = quantile(u) via the tabulated CDF, D = sqrt(n) x / e
    with open(FIX / "crt.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    xs = np.array([float(r["x"]) for r in rows])
    cdf = 1.0 - np.array([float(r["tail"]) for r in rows])
    n, e_hat, count = 4096, 1.0, 10_000
    rng = np.random.default_rng(31337)
    draws = np.interp(rng.random(count), cdf, xs) * np.sqrt(n) / e_hat
    with open(FIX / "synth_diam.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["omega", "n", "sample_idx", "diameter"])
        for i, d in enumerate(draws):
            w.writerow(["synthetic", n, i, f"{d:.6f}"])
    with open(FIX / "synth_calib.json", "w") as fh:
        fh.write('{"omega": "synthetic", "e_hat": 1.0}\n')
    print("fixtures written to", FIX)


if __name__ == "__main__":
    main()
