#!/usr/bin/env python3
"""Render weylab CSV output (ab or spectrum subcommands) to a PNG."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_ab(df, ax):
    ax.plot(df["x"], df["density_orthodox"], label="orthodox")
    ax.plot(df["x"], df["density_pilot"], label="pilot wave")
    ax.plot(df["x"], df["density_averaged"], ":", label="averaged")
    ax.set_xlabel("x")
    ax.set_ylabel("density on screen")


def plot_spectrum(df, ax):
    ax.plot(df["omega"], df["c1sq"])
    ax.set_yscale("log")
    ax.set_xlabel("drive frequency")
    ax.set_ylabel("|c1|^2")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("csv")
    p.add_argument("-o", "--output", default="plot.png")
    args = p.parse_args()

    df = pd.read_csv(args.csv)
    fig, ax = plt.subplots(figsize=(7, 4))
    if "density_pilot" in df.columns:
        plot_ab(df, ax)
        ax.legend()
    elif "c1sq" in df.columns:
        plot_spectrum(df, ax)
    else:
        raise SystemExit("unrecognised CSV columns: " + ", ".join(df.columns))
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
