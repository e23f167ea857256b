#!/usr/bin/env python3
"""Behavioral VO2 p-bit circuits: switching curve and branch selection.

Two experiments. First, the two-state p-bit: sweeping the drive current
through the trigger-current distribution turns the device from
never-switching to always-switching, with a tunable stochastic window in
between. Second, the multi-state p-bit: four device+resistor branches
share one current source sized so exactly one branch can go metallic;
2000 selection cycles show the winner is uniform across branches.

Usage:
    python demos/04_vo2_multistate_pbit.py [--cycles N] [--plot out.png]
"""

import argparse

import numpy as np

from kpbit import (
    INSULATING,
    METALLIC,
    MultiStateCell,
    RngStream,
    Vo2Device,
    chi_square_uniform,
    current_bounds,
    resolve_selection,
    sample_two_state,
    simulate_cycles,
    two_state_switch_probability,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cycles", type=int, default=2000)
    ap.add_argument("--plot", default=None, metavar="FILE")
    args = ap.parse_args()

    dev = Vo2Device()
    print("device: R_ins 20 kOhm, R_met 1 kOhm, trigger 30 uA (sigma 1.5 uA), "
          "hold 50 uA")

    print("\ntwo-state p-bit: switch probability vs drive current")
    rng = RngStream(41)
    print(f"{'drive (uA)':>11} {'analytic':>9} {'observed':>9}")
    for drive in np.arange(25e-6, 35.5e-6, 1.0e-6):
        p = two_state_switch_probability(drive, dev)
        n = 20_000
        hits = 0
        for _ in range(n):
            dev.state = INSULATING
            hits += sample_two_state(drive, dev, rng) == METALLIC
        print(f"{drive * 1e6:>11.1f} {p:>9.4f} {hits / n:>9.4f}")

    print("\nmulti-state p-bit: drive windows by branch count")
    print(f"{'M':>3} {'lower (uA)':>11} {'upper (uA)':>11}")
    for m in range(1, 7):
        cell = MultiStateCell.uniform(m, i_source=1e-3, device=Vo2Device())
        b = current_bounds(cell)
        print(f"{m:>3} {b.lower * 1e6:>11.1f} {b.upper * 1e6:>11.1f}")

    cell = MultiStateCell.uniform(4, i_source=200e-6, device=Vo2Device())
    one = resolve_selection(cell, RngStream(42))
    ua = one.branch_currents * 1e6
    print(f"\none 4-branch cycle at 200 uA: branch {one.selected} went metallic")
    print("  branch currents (uA): " + ", ".join(f"{c:.2f}" for c in ua))

    stats = simulate_cycles(cell, args.cycles, RngStream(43))
    chi = chi_square_uniform(stats.counts)
    print(f"\n{args.cycles} cycles: counts {stats.counts.tolist()}")
    print(f"chi-square {chi.statistic:.2f} with {chi.dof} dof "
          f"(critical {chi.critical:.2f} at p>0.001): "
          f"{'uniform' if chi.passed else 'NOT uniform'}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, axes = plt.subplots(1, 3, figsize=(13, 4))
        drives = np.linspace(24e-6, 36e-6, 200)
        axes[0].plot(drives * 1e6,
                     [two_state_switch_probability(d, Vo2Device()) for d in drives])
        axes[0].set_xlabel("drive current (uA)")
        axes[0].set_ylabel("P(switch to metallic)")
        axes[0].set_title("two-state p-bit")
        axes[1].hist(stats.triggers.ravel() * 1e6, bins=40)
        axes[1].set_xlabel("sampled trigger current (uA)")
        axes[1].set_title("trigger distribution")
        axes[2].bar(range(4), stats.counts)
        axes[2].axhline(args.cycles / 4, color="k", ls="--", alpha=0.5)
        axes[2].set_xlabel("branch")
        axes[2].set_ylabel("selections")
        axes[2].set_title(f"{args.cycles} selection cycles")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"saved {args.plot}")


if __name__ == "__main__":
    main()
