#!/usr/bin/env python3
"""Render the declarative plot specs emitted by the intrsm CLI.

Usage: render_plots.py SPEC.plotspec.json [more specs...]
Writes a PNG next to each spec.
"""
import csv
import json
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def render(spec_path: pathlib.Path) -> pathlib.Path:
    spec = json.loads(spec_path.read_text())
    data_path = spec_path.parent / spec["data"]
    with open(data_path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    col = {name: i for i, name in enumerate(header)}

    def column(name):
        out = []
        for r in body:
            cell = r[col[name]]
            out.append(float(cell) if cell else float("nan"))
        return out

    x = column(spec["x"])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for yname in spec["y"]:
        if yname in col:
            ax.plot(x, column(yname), marker=".", label=yname)
    ax.set_xscale(spec.get("xscale", "linear"))
    ax.set_yscale(spec.get("yscale", "linear"))
    ax.set_xlabel(spec["x"])
    ax.set_title(spec.get("title", spec_path.stem))
    ax.legend()
    ax.grid(True, alpha=0.3)
    out = spec_path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 64
    for arg in sys.argv[1:]:
        out = render(pathlib.Path(arg))
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
