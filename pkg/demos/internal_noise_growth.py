#!/usr/bin/env python3
"""Internal noise: invisible to the classic convention, compounding in truth.

Part 1 uses a two-stage chain whose stages add only internal noise.
The classic total stays at exactly 1 while the direct SNR ratio shows
real degradation, so the classic books simply miss it.

Part 2 scales each stage's internal noise with the noise arriving at
that stage (ratio delta, gain G).  Every corrected stage factor is then
1 + delta/G and the corrected total compounds geometrically as
(1 + delta/G)^n, printed against that closed form.
"""

from noisebudget import (
    CascadeNetwork,
    ScenarioConfig,
    StageSpec,
    build_report,
    fig3_internal_only,
)

DELTA = 1.0
GAIN = 10.0
STAGES = 6


def part_one():
    net = CascadeNetwork(100.0, 1.0, (StageSpec(10.0, 5.0, 0.0),) * 2)
    report = build_report(net)
    t = report.totals
    print("two stages, internal noise 5 each, gain 10, input noise 1\n")
    print("stage  f_friis  f_corrected")
    for row in report.per_stage:
        print(f"{row.stage:>5}  {float(row.friis):<7.4f}  {float(row.corrected):.6f}")
    print(f"\nclassic total      {float(t.base_friis):.6f}   (claims a clean chain)")
    print(f"direct SNR ratio   {float(t.snr_ratio):.6f}   (the chain is not clean)")
    print(f"corrected product  {float(t.product_composition):.6f}\n")


def part_two():
    cfg = ScenarioConfig(n=STAGES, gain=GAIN, internal_ratio=DELTA)
    table = fig3_internal_only(cfg)
    per_stage = 1.0 + DELTA / GAIN
    print(
        f"internal noise = {DELTA} x arriving noise at each of {STAGES} stages, "
        f"gain {GAIN:g}"
    )
    print(f"every corrected stage factor: {table.rows[0].corrected:.6f} "
          f"(closed form {per_stage:.6f})\n")
    print("stages  corrected_total  (1 + delta/G)^n")
    for m, row in enumerate(table.totals, start=1):
        print(f"{m:>6}  {row.corrected:<15.9f}  {per_stage**m:.9f}")


if __name__ == "__main__":
    part_one()
    part_two()
