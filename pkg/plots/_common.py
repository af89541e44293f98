"""Shared plumbing for the figure scripts: CSV/JSON loading with column
validation and deterministic figure saving (no timestamps embedded)."""

from __future__ import annotations

import csv
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "polyaforge"


def fail(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)
    sys.exit(2)


def load_csv(path: str, required: tuple[str, ...]) -> list[dict]:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            cols = reader.fieldnames or []
            for col in required:
                if col not in cols:
                    fail(f"{path}: missing column {col!r} (found {cols})")
            rows = list(reader)
    except OSError as exc:
        fail(f"cannot read {path}: {exc}")
    return rows


def load_json(path: str, required: tuple[str, ...]) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        fail(f"cannot read {path}: {exc}")
    for key in required:
        if key not in doc:
            fail(f"{path}: missing key {key!r}")
    return doc


def save(fig, out: str) -> None:
    meta = {"Date": None} if out.endswith(".svg") else {}
    fig.savefig(out, dpi=120, metadata=meta)
    plt.close(fig)
