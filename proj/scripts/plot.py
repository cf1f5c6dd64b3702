#!/usr/bin/env python3
"""Quick-look figures from ajj run directories (optional utility)."""
import argparse
import csv
import pathlib
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def read_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows


def plot_quench(run, out):
    rows = read_csv(run / "timeseries.csv")
    ts, zs = [], []
    dens = {}
    for r in rows:
        t = float(r["t"])
        if r["observable"] == "imbalance":
            ts.append(t)
            zs.append(float(r["value"]))
        elif r["observable"] == "density":
            dens.setdefault(t, {})[int(r["i"])] = float(r["value"])

    fig, axes = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    axes[0].plot(ts, zs, lw=0.8)
    axes[0].set_ylabel("population imbalance z")
    if dens:
        times = sorted(dens)
        sites = sorted(dens[times[0]])
        grid = np.array([[dens[t][i] for t in times] for i in sites])
        im = axes[1].imshow(grid, aspect="auto", origin="lower",
                            extent=[times[0], times[-1], -0.5, len(sites) - 0.5])
        fig.colorbar(im, ax=axes[1], label="<n_i>")
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("site")
    fig.savefig(out, dpi=150, bbox_inches="tight")


def plot_gap(run, out):
    rows = read_csv(run / "gap_scan.csv")
    curves = {}
    for r in rows:
        curves.setdefault(float(r["theta"]), []).append(
            (float(r["J"]), float(r["gap"])))
    fig, ax = plt.subplots(figsize=(6, 4))
    for theta, pts in sorted(curves.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                marker="o", ms=3, label=f"theta = {theta:.3f}")
    ax.set_xlabel("J")
    ax.set_ylabel("first excitation gap")
    ax.legend(fontsize=8)
    fig.savefig(out, dpi=150, bbox_inches="tight")


def plot_mft(run, out):
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    traj = run / "mft_trajectory.csv"
    if traj.exists():
        rows = read_csv(traj)
        axes[0].plot([float(r["phi"]) for r in rows],
                     [float(r["z"]) for r in rows], lw=0.7)
        axes[0].set_xlabel("phi")
        axes[0].set_ylabel("z")
        axes[0].set_title("trajectory")
    port = run / "mft_portrait.csv"
    if port.exists():
        rows = read_csv(port)
        phi = np.array([float(r["phi"]) for r in rows])
        z = np.array([float(r["z"]) for r in rows])
        dphi = np.array([float(r["dphi"]) for r in rows])
        dz = np.array([float(r["dz"]) for r in rows])
        axes[1].quiver(phi, z, dphi, dz, angles="xy", width=2e-3)
        axes[1].set_xlabel("phi")
        axes[1].set_title("flow field")
    fig.savefig(out, dpi=150, bbox_inches="tight")


def plot_ground(run, out):
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    dens = read_csv(run / "density.csv")
    axes[0].bar([int(r["site"]) for r in dens], [float(r["value"]) for r in dens])
    axes[0].set_xlabel("site")
    axes[0].set_ylabel("<n_i>")
    corr = read_csv(run / "correlations.csv")
    L = max(int(r["i"]) for r in corr) + 1
    mag = np.zeros((L, L))
    for r in corr:
        mag[int(r["i"]), int(r["j"])] = abs(complex(float(r["re"]), float(r["im"])))
    im = axes[1].imshow(mag, origin="lower")
    fig.colorbar(im, ax=axes[1], label="|<b+_i b_j>|")
    fig.savefig(out, dpi=150, bbox_inches="tight")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("run", type=pathlib.Path, help="run output directory")
    ap.add_argument("--kind", choices=["quench", "gap", "mft", "ground"],
                    default="quench")
    ap.add_argument("--out", type=pathlib.Path, default=None)
    args = ap.parse_args()
    out = args.out or args.run / f"{args.kind}.png"
    {"quench": plot_quench, "gap": plot_gap,
     "mft": plot_mft, "ground": plot_ground}[args.kind](args.run, out)
    print(out)


if __name__ == "__main__":
    sys.exit(main())
