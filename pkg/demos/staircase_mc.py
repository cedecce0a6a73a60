#!/usr/bin/env python3
"""Staircase multiplier statistics, checked three ways.

A staircase device multiplies carriers step by step: each carrier
either passes or duplicates with probability p, so the per-step gain is
M = 1 + Bernoulli(p).  This script

1. prints the closed-form per-step moments and excess noise,
2. maps the device onto an equivalent power cascade and shows the
   corrected stage factors landing on the same numbers, and
3. runs a seeded Monte Carlo over the full device.

The Monte Carlo mean gain has a sharp analytic target, prod(1 + p_x).
The sampled multi-step excess noise is printed as a diagnostic only:
carrier-count fluctuations feed forward between steps, so it is a
genuinely different quantity from the per-step product and the two
numbers are expected to sit close without matching.
"""

from noisebudget import (
    StaircaseApd,
    apd_to_cascade,
    build_report,
    mc_step_gain,
    mc_total_gain,
    step_stats,
    total_excess_noise,
    total_mean_gain,
)

PROBS = (0.5, 0.3, 0.8)
SEED = 20260816
TRIALS = 400_000


def closed_forms(apd):
    print("step   p     <M>    var(M)   excess noise F")
    for i, p in enumerate(apd.steps, start=1):
        s = step_stats(p)
        print(
            f"{i:>4}  {p:<4}  {s.mean_gain:<5}  {s.variance:<7.4f}  {float(s.excess_noise):.8f}"
        )
    print(f"\nper-step product   F_total = {float(total_excess_noise(apd)):.8f}")
    print(f"mean gain          <M_tot> = {total_mean_gain(apd):.4f}\n")


def cascade_view(apd):
    report = build_report(apd_to_cascade(apd))
    print("same device as a power cascade (gain (1+p)^2, internal noise only)")
    print("stage  corrected factor   step excess noise")
    for row, p in zip(report.per_stage, apd.steps):
        print(
            f"{row.stage:>5}  {float(row.corrected):<17.8f}  "
            f"{float(step_stats(p).excess_noise):.8f}"
        )
    print(
        f"cascade product {float(report.totals.product_composition):.8f} "
        f"matches the per-step product\n"
    )


def monte_carlo(apd):
    one = mc_step_gain(apd.steps[0], TRIALS, seed=SEED)
    want = step_stats(apd.steps[0])
    print(f"single step p={apd.steps[0]}, {TRIALS} trials, seed {SEED}")
    print(f"  sampled <M> {one.mean:.6f}  vs closed form {want.mean_gain}")
    print(f"  sampled  F  {one.excess_noise:.6f}  vs closed form {float(want.excess_noise):.6f}")
    print(f"  std error of the mean {one.std_error_mean:.2e}\n")

    full = mc_total_gain(apd, TRIALS, seed=SEED)
    print(f"full device, {TRIALS} trials, seed {SEED}")
    print(f"  sampled <M_tot> {full.mean:.6f}  vs analytic {total_mean_gain(apd):.6f}")
    print(
        f"  sampled  F_tot  {full.excess_noise:.6f}  "
        f"(diagnostic; per-step product is {float(total_excess_noise(apd)):.6f})"
    )
    rerun = mc_total_gain(apd, TRIALS, seed=SEED)
    print(f"  rerun with the same seed is bit-identical: {rerun == full}")


def main():
    apd = StaircaseApd(PROBS)
    closed_forms(apd)
    cascade_view(apd)
    monte_carlo(apd)


if __name__ == "__main__":
    main()
