#!/usr/bin/env python3
"""Plot monolat sweep CSVs (rhomax or window tables) with matplotlib.

Usage:
    python3 docs/plot_curves.py curve.csv [more.csv ...]

Each file is detected by its `# table:` metadata line. rho_max curves are
drawn together with the necessary-bound curve; window curves shade the
(z_-, z_+) band over R.
"""

import csv
import sys

import matplotlib.pyplot as plt


def load(path):
    meta, rows = {}, []
    with open(path, newline="") as f:
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
            else:
                rows.append(line)
    reader = csv.DictReader(rows)
    cols = {name: [] for name in reader.fieldnames}
    for row in reader:
        for name, cell in row.items():
            cols[name].append(float(cell) if cell != "" else float("nan"))
    return meta, cols


def main(paths):
    for path in paths:
        meta, cols = load(path)
        table = meta.get("table", "")
        fig, ax = plt.subplots(figsize=(6, 4))
        if table == "rho_max_curve":
            ax.plot(cols["R"], cols["rho_max"], lw=1.0, label="rho_max(R)")
            ax.plot(cols["R"], cols["corollary_bound"], "--", lw=1.0, label="min(1, s/max(R,1/R))")
            ax.fill_between(cols["R"], 0, cols["rho_max"], alpha=0.2)
            ax.set_xlabel("R")
            ax.set_ylabel("rho")
            ax.set_ylim(0, 1.05)
            ax.set_title(f"feasible region, s = {meta.get('s', '?')}")
        elif table == "dual_window_curve":
            ax.plot(cols["R"], cols["z_minus"], lw=1.0, label="z_-(R)")
            ax.plot(cols["R"], cols["z_plus"], lw=1.0, label="z_+(R)")
            ax.fill_between(cols["R"], cols["z_minus"], cols["z_plus"], alpha=0.2)
            ax.set_xlabel("R")
            ax.set_ylabel("z1")
            ax.set_title(f"dual windows, rho = {meta.get('rho', '?')}, s = {meta.get('s', '?')}")
        else:
            print(f"{path}: unknown table {table!r}", file=sys.stderr)
            continue
        ax.legend()
        out = path.rsplit(".", 1)[0] + ".png"
        fig.tight_layout()
        fig.savefig(out, dpi=150)
        print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) < 2:
        print(__doc__, file=sys.stderr)
        sys.exit(2)
    main(sys.argv[1:])
