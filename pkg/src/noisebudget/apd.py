"""Staircase-multiplier gain statistics and their cascade counterpart.

A staircase device multiplies a discrete carrier population step by
step: at each step every carrier independently spawns one duplicate
with that step's ionization probability p, so the per-carrier step gain
is M = 1 + Bernoulli(p).  The closed-form moments are

    <M> = 1 + p      var(M) = p(1 - p)      <M^2> = 1 + 3p

and the per-step excess noise is F = <M^2>/<M>^2.  A whole device is
scored by the product of its per-step factors, and
:func:`apd_to_cascade` builds the power-cascade network whose corrected
stage factors reproduce those per-step factors exactly.

The Monte Carlo routines probe the closed forms by direct sampling.
Draws come from numpy's default PCG64 bit generator; per-worker streams
derive from ``SeedSequence(seed).spawn(workers)`` and trials are swept
in fixed-size blocks, so a fixed (seed, trials, workers) triple yields
bit-identical estimates on every run.  Aggregate carrier counts are
capped at :data:`EVENT_BUDGET`; a run that would exceed the cap raises
:class:`EventBudgetError` instead of burning unbounded time and memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .network import CascadeNetwork, NoiseFactor, PowerLevel, StageSpec, ensure_valid

__all__ = [
    "EVENT_BUDGET",
    "EventBudgetError",
    "StaircaseApd",
    "StepStats",
    "McEstimate",
    "step_stats",
    "total_excess_noise",
    "total_mean_gain",
    "apd_to_cascade",
    "mc_step_gain",
    "mc_total_gain",
]

#: Cap on the aggregate carrier count across all trials of one Monte
#: Carlo run.  Carrier populations only grow, so the cap bounds both
#: memory and the number of Bernoulli events simulated.
EVENT_BUDGET = 10**9

# Trials are simulated in blocks of this size to bound peak memory.
_TRIALS_PER_BLOCK = 1 << 22


class EventBudgetError(RuntimeError):
    """A Monte Carlo run would exceed :data:`EVENT_BUDGET` carriers."""


@dataclass(frozen=True)
class StaircaseApd:
    """Ordered per-step ionization probabilities of a staircase device."""

    steps: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(float(p) for p in self.steps))
        if not self.steps:
            raise ValueError("a staircase device needs at least one step")
        bad = [i for i, p in enumerate(self.steps, start=1) if not 0.0 <= p <= 1.0]
        if bad:
            raise ValueError(
                f"ionization probabilities must lie in [0, 1]; bad steps: {bad}"
            )

    def __len__(self) -> int:
        return len(self.steps)


class StepStats(NamedTuple):
    """Closed-form per-step gain moments for one ionization probability."""

    p: float
    mean_gain: float
    variance: float
    second_moment: float
    excess_noise: NoiseFactor


class McEstimate(NamedTuple):
    """Sample gain moments from one seeded Monte Carlo run.

    ``variance`` is the sample variance (n-1 denominator, 0.0 for a
    single trial) and ``std_error_mean`` its square root over trials.
    The (seed, trials, workers) triple pins the run for reproduction.
    """

    trials: int
    mean: float
    variance: float
    second_moment: float
    excess_noise: float
    std_error_mean: float
    seed: int
    workers: int


def _check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"ionization probability must lie in [0, 1], got {p}")
    return p


def step_stats(p: float) -> StepStats:
    """Moments of the per-step gain ``M = 1 + Bernoulli(p)``.

    The excess noise is computed as ``<M^2>/<M>^2``; the equivalent
    form ``1 + var/<M>^2`` is left to the tests as a cross-check.  Both
    endpoints are noiseless: p = 0 never duplicates, p = 1 duplicates
    deterministically, so F = 1 at either.
    """
    p = _check_probability(p)
    mean = 1.0 + p
    second = 1.0 + 3.0 * p
    return StepStats(
        p=p,
        mean_gain=mean,
        variance=p * (1.0 - p),
        second_moment=second,
        excess_noise=NoiseFactor(second / (mean * mean)),
    )


def total_excess_noise(apd: StaircaseApd) -> NoiseFactor:
    """Device excess noise: the product of the per-step factors."""
    total = 1.0
    for p in apd.steps:
        total *= step_stats(p).excess_noise
    return NoiseFactor(total)


def total_mean_gain(apd: StaircaseApd) -> float:
    """Mean end-to-end carrier gain, ``prod(1 + p_x)``."""
    total = 1.0
    for p in apd.steps:
        total *= 1.0 + p
    return total


def apd_to_cascade(
    apd: StaircaseApd,
    input_signal: PowerLevel = 1.0,
    input_noise: PowerLevel = 1.0,
) -> CascadeNetwork:
    """Equivalent power-cascade network of a staircase device.

    Stage x carries power gain ``G_x = (1+p_x)^2`` (the squared mean
    carrier gain), no external noise, and an internal noise sized so
    that the stage's internal-noise ratio ``N_int(x)/(N_in(x) * G_x)``
    equals ``p_x(1-p_x)/(1+p_x)^2``.  The corrected stage factors of
    the result equal the per-step excess noises and the product
    composition equals :func:`total_excess_noise`, both to within
    normal double rounding.
    """
    stages = []
    n_in = float(input_noise)
    for p in apd.steps:
        mean = 1.0 + p
        gain = mean * mean
        ratio = p * (1.0 - p) / gain
        internal = n_in * gain * ratio
        stages.append(StageSpec(power_gain=gain, internal_noise=internal))
        n_in = n_in * gain + internal
    network = CascadeNetwork(
        input_signal=input_signal, input_noise=input_noise, stages=tuple(stages)
    )
    ensure_valid(network)
    return network


class _CarrierMeter:
    """Budget guard: total carriers across one run may not pass the cap."""

    __slots__ = ("_retired",)

    def __init__(self) -> None:
        self._retired = 0

    def charge(self, live: int) -> None:
        if self._retired + live > EVENT_BUDGET:
            raise EventBudgetError(
                f"carrier budget exceeded: {self._retired + live} carriers "
                f"against a cap of {EVENT_BUDGET}; reduce trials or steps"
            )

    def retire(self, final: int) -> None:
        self._retired += final
        if self._retired > EVENT_BUDGET:
            raise EventBudgetError(
                f"carrier budget exceeded: {self._retired} carriers "
                f"against a cap of {EVENT_BUDGET}; reduce trials or steps"
            )


def _check_mc_args(trials: int, workers: int) -> tuple[int, int]:
    trials = int(trials)
    workers = int(workers)
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    return trials, workers


def _block_sizes(total: int) -> list[int]:
    sizes = [_TRIALS_PER_BLOCK] * (total // _TRIALS_PER_BLOCK)
    if total % _TRIALS_PER_BLOCK:
        sizes.append(total % _TRIALS_PER_BLOCK)
    return sizes


def _chunk_sizes(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _run_mc(trials: int, seed: int, workers: int, simulate) -> tuple[int, int]:
    """Drive ``simulate(rng, size, meter) -> (sum M, sum M^2)`` over all trials.

    Workers own disjoint spawned seed streams and run sequentially;
    blocks within a worker reuse its stream in order.  Moment sums stay
    exact Python integers.
    """
    meter = _CarrierMeter()
    meter.charge(trials)
    streams = np.random.SeedSequence(seed).spawn(workers)
    s1 = 0
    s2 = 0
    for stream, size in zip(streams, _chunk_sizes(trials, workers)):
        if size == 0:
            continue
        rng = np.random.default_rng(stream)
        for block in _block_sizes(size):
            b1, b2 = simulate(rng, block, meter)
            s1 += b1
            s2 += b2
    return s1, s2


def _estimate(trials: int, s1: int, s2: int, seed: int, workers: int) -> McEstimate:
    mean = s1 / trials
    second = s2 / trials
    if trials > 1:
        variance = max((s2 - s1 * s1 / trials) / (trials - 1), 0.0)
    else:
        variance = 0.0
    return McEstimate(
        trials=trials,
        mean=mean,
        variance=variance,
        second_moment=second,
        excess_noise=second / (mean * mean),
        std_error_mean=math.sqrt(variance / trials),
        seed=seed,
        workers=workers,
    )


def mc_step_gain(p: float, trials: int, seed: int, *, workers: int = 1) -> McEstimate:
    """Sample the single-step gain ``M = 1 + Bernoulli(p)`` over many trials.

    Returns the sample mean, variance, second moment and excess noise;
    a fixed (seed, trials, workers) triple reproduces the estimate
    bit for bit.
    """
    p = _check_probability(p)
    trials, workers = _check_mc_args(trials, workers)

    def simulate(rng: np.random.Generator, size: int, meter: _CarrierMeter):
        meter.charge(size)
        m = 1 + rng.binomial(1, p, size=size)
        final = int(m.sum())
        meter.charge(final)
        meter.retire(final)
        return final, int((m * m).sum())

    s1, s2 = _run_mc(trials, seed, workers, simulate)
    return _estimate(trials, s1, s2, seed, workers)


def mc_total_gain(
    apd: StaircaseApd, trials: int, seed: int, *, workers: int = 1
) -> McEstimate:
    """Sample the end-to-end carrier count of a whole staircase device.

    Each trial starts from a single carrier and applies every step's
    duplication in turn; the estimate summarizes the final count M.
    The sample mean tracks ``total_mean_gain``.  The sampled excess
    noise ``<M^2>/<M>^2`` is reported as observed: for devices with
    more than one step it need not match the per-step product of
    :func:`total_excess_noise`, because later steps act on whole
    carrier populations rather than single carriers, so reports pair
    the two numbers as a diagnostic without asserting agreement.
    """
    steps = [_check_probability(p) for p in apd.steps]
    trials, workers = _check_mc_args(trials, workers)

    def simulate(rng: np.random.Generator, size: int, meter: _CarrierMeter):
        m = np.ones(size, dtype=np.int64)
        meter.charge(size)
        live = size
        for p in steps:
            m = m + rng.binomial(m, p)
            live = int(m.sum())
            meter.charge(live)
        meter.retire(live)
        return live, int((m * m).sum())

    s1, s2 = _run_mc(trials, seed, workers, simulate)
    return _estimate(trials, s1, s2, seed, workers)
