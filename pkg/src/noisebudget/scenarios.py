"""Bundled comparison scenarios producing plot-ready factor series.

Each generator induces a concrete :class:`~noisebudget.network.CascadeNetwork`
from a small shared config and reads every number off the cascade
engine, so the series carry no arithmetic of their own.  The scenario
names double as the CLI's scenario tokens:

* ``fig2a`` -- noiseless stages; both factor families pin to unity.
* ``fig2b`` -- identical external noise at every stage; the Friis
  factors sit flat while the corrected ones decay toward unity.
* ``fig2c`` -- total factors of the fig2b chain per prefix length;
  the Friis and corrected totals coincide.
* ``fig3``  -- internal noise only, a fixed fraction of each stage's
  input noise; Friis sees nothing while the corrected totals compound
  geometrically.

A generator fixes the config fields its scenario is defined by (for
example fig2a zeroes both noise knobs) and leaves the rest to the
caller, so no combination of config values can make one fail.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple

from .cascade import (
    build_report,
    total_friis_composition,
    total_product_composition,
)
from .network import CascadeNetwork, StageSpec

__all__ = [
    "ScenarioConfig",
    "SeriesRow",
    "SeriesTable",
    "fig2a_no_noise",
    "fig2b_identical_external",
    "fig2c_totals",
    "fig3_internal_only",
]


@dataclass(frozen=True)
class ScenarioConfig:
    """Shared knobs for the bundled scenarios.

    ``internal_ratio`` is the constant ratio of stage-wise internal
    noise to the noise arriving at that stage, so scenario networks
    satisfy ``N_int(x) = internal_ratio * N_in(x)``.  Defaults give the
    classic demonstration chain: six stages of gain 10 fed by unit
    noise, with either external noise 10 or internal ratio 1 depending
    on the scenario.
    """

    n: int = 6
    gain: float = 10.0
    external_noise: float = 10.0
    internal_ratio: float = 1.0
    input_noise: float = 1.0
    input_signal: float = 100.0

    def __post_init__(self) -> None:
        if self.n != int(self.n) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not (math.isfinite(self.gain) and self.gain >= 1.0):
            raise ValueError(f"gain must be finite and >= 1, got {self.gain}")
        if not (math.isfinite(self.external_noise) and self.external_noise >= 0.0):
            raise ValueError(
                f"external_noise must be finite and >= 0, got {self.external_noise}"
            )
        if not (math.isfinite(self.internal_ratio) and self.internal_ratio >= 0.0):
            raise ValueError(
                f"internal_ratio must be finite and >= 0, got {self.internal_ratio}"
            )
        if not (math.isfinite(self.input_noise) and self.input_noise > 0.0):
            raise ValueError(
                f"input_noise must be finite and > 0, got {self.input_noise}"
            )
        if not (math.isfinite(self.input_signal) and self.input_signal > 0.0):
            raise ValueError(
                f"input_signal must be finite and > 0, got {self.input_signal}"
            )


class SeriesRow(NamedTuple):
    """One bar pair: stage (or prefix length) with both factor values."""

    stage: int
    friis: float
    corrected: float


@dataclass(frozen=True)
class SeriesTable:
    """A labelled factor series, plus cumulative totals where the
    scenario defines them (`totals` stays None otherwise)."""

    label: str
    rows: tuple[SeriesRow, ...]
    totals: tuple[SeriesRow, ...] | None = None


def _effective(config: ScenarioConfig | None, **pins: float) -> ScenarioConfig:
    return dataclasses.replace(config or ScenarioConfig(), **pins)


def _uniform_network(cfg: ScenarioConfig, external_noise: float) -> CascadeNetwork:
    stages = tuple(
        StageSpec(power_gain=cfg.gain, external_noise=external_noise)
        for _ in range(cfg.n)
    )
    return CascadeNetwork(cfg.input_signal, cfg.input_noise, stages)


def _factor_rows(network: CascadeNetwork) -> tuple[SeriesRow, ...]:
    report = build_report(network)
    return tuple(
        SeriesRow(stage=r.stage, friis=float(r.friis), corrected=float(r.corrected))
        for r in report.per_stage
    )


def _prefix_totals(network: CascadeNetwork) -> tuple[SeriesRow, ...]:
    rows = []
    for m in range(1, len(network.stages) + 1):
        prefix = CascadeNetwork(
            network.input_signal, network.input_noise, network.stages[:m]
        )
        rows.append(
            SeriesRow(
                stage=m,
                friis=float(total_friis_composition(prefix)),
                corrected=float(total_product_composition(prefix)),
            )
        )
    return tuple(rows)


def fig2a_no_noise(config: ScenarioConfig | None = None) -> SeriesTable:
    """Stage factors of a noiseless chain: every value is exactly 1.

    Fixes ``external_noise = 0`` and ``internal_ratio = 0``; only ``n``,
    ``gain`` and the input powers are taken from the config (and the
    result is gain-independent anyway).
    """
    cfg = _effective(config, external_noise=0.0, internal_ratio=0.0)
    return SeriesTable(label="fig2a", rows=_factor_rows(_uniform_network(cfg, 0.0)))


def fig2b_identical_external(config: ScenarioConfig | None = None) -> SeriesTable:
    """Stage factors when every stage adds the same external noise.

    Fixes ``internal_ratio = 0``.  The Friis column repeats
    ``1 + N_ext/(N_i * G)`` at every stage; the corrected column starts
    at the same value and decays strictly toward 1 as the accumulated
    noise at each stage input grows.
    """
    cfg = _effective(config, internal_ratio=0.0)
    return SeriesTable(
        label="fig2b",
        rows=_factor_rows(_uniform_network(cfg, cfg.external_noise)),
    )


def fig2c_totals(config: ScenarioConfig | None = None) -> SeriesTable:
    """Total factors of the fig2b chain, one row per prefix length.

    Fixes ``internal_ratio = 0``.  Row m holds both total-factor
    compositions for the first m stages; without internal noise the two
    agree to rounding.
    """
    cfg = _effective(config, internal_ratio=0.0)
    return SeriesTable(
        label="fig2c",
        rows=_prefix_totals(_uniform_network(cfg, cfg.external_noise)),
    )


def fig3_internal_only(config: ScenarioConfig | None = None) -> SeriesTable:
    """Stage factors and cumulative totals with internal noise only.

    Fixes ``external_noise = 0`` and sizes each stage's internal noise
    as ``internal_ratio`` times the noise arriving at that stage, so
    every corrected stage factor equals ``1 + internal_ratio/gain``
    while every Friis factor stays at 1.  ``rows`` holds the stage
    factors; ``totals`` holds both cumulative totals per prefix length,
    the corrected one compounding geometrically.
    """
    cfg = _effective(config, external_noise=0.0)
    stages = []
    noise_in = cfg.input_noise
    for _ in range(cfg.n):
        internal = cfg.internal_ratio * noise_in
        stages.append(StageSpec(power_gain=cfg.gain, internal_noise=internal))
        noise_in = noise_in * cfg.gain + internal
    network = CascadeNetwork(cfg.input_signal, cfg.input_noise, tuple(stages))
    return SeriesTable(
        label="fig3",
        rows=_factor_rows(network),
        totals=_prefix_totals(network),
    )
