#!/usr/bin/env python3
"""Single-node switching statistics of a 3-state p-bit.

A node holding one of three states is updated once: it keeps its state
with probability (1 + tanh(beta * phi)) / 2 and otherwise hops to one of
the other two states uniformly. Sweeping the synaptic input phi traces
the retention curve and the two (identical) alternative curves; raising
beta sharpens the transition from "certain switch" to "certain retain".

Usage:
    python demos/01_state_probability_curves.py [--samples N] [--plot out.png]
"""

import argparse

import numpy as np

from kpbit import RngStream, probcurve
from kpbit.engine import alternative_states


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--plot", default=None, metavar="FILE")
    args = ap.parse_args()

    grid = np.arange(-4.0, 4.01, 0.5)
    rng = RngStream(2024)
    curves = {beta: probcurve(3, beta, grid, args.samples, rng) for beta in (1.0, 5.0)}

    alt_labels = alternative_states(3, 0)
    for beta, curve in curves.items():
        print(f"\nbeta = {beta:g}, start state 0, {args.samples} updates per point")
        print(f"{'phi':>6} {'P(retain)':>10} {'analytic':>9} "
              f"{'P(-> ' + str(alt_labels[0]) + ')':>9} {'P(-> ' + str(alt_labels[1]) + ')':>9} {'analytic':>9}")
        for i, phi in enumerate(curve.phi):
            print(
                f"{phi:>6.1f} {curve.p_retain_mc[i]:>10.4f} "
                f"{curve.p_retain_analytic[i]:>9.4f} "
                f"{curve.p_alt_mc[i, 0]:>9.4f} {curve.p_alt_mc[i, 1]:>9.4f} "
                f"{curve.p_alt_analytic[i]:>9.4f}"
            )

    worst = max(
        float(np.abs(c.p_retain_mc - c.p_retain_analytic).max()) for c in curves.values()
    )
    print(f"\nlargest deviation from the closed form: {worst:.4f}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
        for ax, (beta, curve) in zip(axes, curves.items()):
            ax.plot(curve.phi, curve.p_retain_mc, "o", label="retain (MC)")
            ax.plot(curve.phi, curve.p_retain_analytic, "-", label="retain (analytic)")
            for j in range(2):
                ax.plot(curve.phi, curve.p_alt_mc[:, j], ".", label=f"to state {alt_labels[j]} (MC)")
            ax.plot(curve.phi, curve.p_alt_analytic, "--", label="alternative (analytic)")
            ax.set_title(f"beta = {beta:g}")
            ax.set_xlabel("synaptic input")
            ax.grid(alpha=0.3)
        axes[0].set_ylabel("probability")
        axes[1].legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"saved {args.plot}")


if __name__ == "__main__":
    main()
