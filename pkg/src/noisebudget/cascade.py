"""Signal/noise propagation and the cascade noise-factor formulas.

Every closed form is implemented as its own computation path so that the
identities between them remain independently testable:

* stage factors -- the textbook Friis form (stage external noise over the
  *chain* input noise times stage gain) and the corrected form that falls
  out of the SNR-ratio definition (all stage noise over the noise actually
  arriving at that stage's input);
* totals -- the two base sums, the two stage-factor compositions, and the
  direct SNR ratio read off the propagation trace, which serves as the
  oracle for everything else.

The corrected paths (base sum, product composition, SNR ratio) always
agree to within :data:`IDENTITY_RTOL`; the two Friis paths agree with
each other likewise.  The two families coincide exactly when all
internal noises are zero and diverge otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .network import CascadeNetwork, NoiseFactor, PowerLevel, ensure_valid

__all__ = [
    "IDENTITY_RTOL",
    "NodeState",
    "PropagationTrace",
    "StageReport",
    "TotalFactors",
    "NoiseReport",
    "propagate",
    "stage_input_noise",
    "stage_factor_friis",
    "stage_factor_corrected",
    "stage_factor_corrected_recursive",
    "total_base_friis",
    "total_base_corrected",
    "total_friis_composition",
    "total_product_composition",
    "snr_ratio_total",
    "build_report",
]

#: Relative tolerance for the algebraic identities between formula paths.
#: The identities are exact; this only absorbs double-precision rounding.
IDENTITY_RTOL = 1e-12


class NodeState(NamedTuple):
    """Signal power, noise power and SNR at one node of the chain."""

    signal: float
    noise: float
    snr: float


@dataclass(frozen=True)
class PropagationTrace:
    """Node-by-node signal and noise powers through a cascade.

    Arrays have length ``n + 1``: index 0 is the network input, index x
    the output of stage x.  SNRs are derived, never stored.
    """

    signal: np.ndarray
    noise: np.ndarray

    def __post_init__(self) -> None:
        self.signal.setflags(write=False)
        self.noise.setflags(write=False)

    def __len__(self) -> int:
        return len(self.signal)

    @property
    def snr(self) -> np.ndarray:
        return self.signal / self.noise

    def node(self, x: int) -> NodeState:
        """State at node ``x`` (0 = network input, x = output of stage x)."""
        s = float(self.signal[x])
        n = float(self.noise[x])
        return NodeState(signal=s, noise=n, snr=s / n)

    @property
    def nodes(self) -> list[NodeState]:
        return [self.node(x) for x in range(len(self))]


def propagate(network: CascadeNetwork) -> PropagationTrace:
    """Run the chain node by node.

    Node 0 carries the source powers; every stage scales both paths by
    its gain and adds its own noise to the noise path::

        S[x] = S[x-1] * G_x
        N[x] = N[x-1] * G_x + N_int_x + N_ext_x
    """
    ensure_valid(network)
    return _propagate(network)


def _propagate(network: CascadeNetwork) -> PropagationTrace:
    n = len(network.stages)
    signal = np.empty(n + 1)
    noise = np.empty(n + 1)
    s = float(network.input_signal)
    nz = float(network.input_noise)
    signal[0] = s
    noise[0] = nz
    for x, stage in enumerate(network.stages, start=1):
        s = s * stage.power_gain
        nz = nz * stage.power_gain + stage.internal_noise + stage.external_noise
        signal[x] = s
        noise[x] = nz
    return PropagationTrace(signal=signal, noise=noise)


def _check_stage_index(network: CascadeNetwork, x: int) -> None:
    if not 1 <= x <= len(network.stages):
        raise IndexError(
            f"stage index {x} out of range for an {len(network.stages)}-stage network"
        )


def stage_input_noise(network: CascadeNetwork, x: int) -> PowerLevel:
    """Noise power arriving at the input terminals of stage ``x`` (1-based).

    Evaluated in closed form -- the chain input noise amplified by the
    first x-1 gains, plus each earlier stage's added noise amplified by
    the gains between it and stage x::

        N_in(x) = N_i * prod(G_1..G_{x-1})
                  + sum_k (N_int_k + N_ext_k) * prod(G_{k+1}..G_{x-1})

    which keeps it an independent cross-check of the recurrence used by
    :func:`propagate`.  ``N_in(1)`` is the chain input noise exactly.
    """
    ensure_valid(network)
    _check_stage_index(network, x)
    total = 0.0
    suffix = 1.0
    for k in range(x - 2, -1, -1):
        stage = network.stages[k]
        total += (stage.internal_noise + stage.external_noise) * suffix
        suffix *= stage.power_gain
    return float(network.input_noise * suffix + total)


def stage_factor_friis(network: CascadeNetwork, x: int) -> NoiseFactor:
    """Textbook stage noise factor, ``1 + N_ext_x / (N_i * G_x)``.

    By construction this sees only the stage's external noise and the
    *chain* input noise: internal noises and everything upstream of the
    stage are ignored.
    """
    ensure_valid(network)
    _check_stage_index(network, x)
    stage = network.stages[x - 1]
    return NoiseFactor(
        1.0 + stage.external_noise / (float(network.input_noise) * stage.power_gain)
    )


def stage_factor_corrected(network: CascadeNetwork, x: int) -> NoiseFactor:
    """Stage noise factor from the SNR-ratio definition.

    The stage is judged against the noise that actually arrives at its
    own terminals::

        F_x = 1 + (N_int_x + N_ext_x) / (N_in(x) * G_x)

    which equals ``SNR(node x-1) / SNR(node x)`` on the propagation
    trace.  At stage 1 the two stage-factor conventions coincide.
    """
    ensure_valid(network)
    _check_stage_index(network, x)
    stage = network.stages[x - 1]
    n_in = stage_input_noise(network, x)
    return NoiseFactor(
        1.0 + (stage.internal_noise + stage.external_noise) / (n_in * stage.power_gain)
    )


def stage_factor_corrected_recursive(network: CascadeNetwork, x: int) -> NoiseFactor:
    """Corrected stage factor via the running-product recursion.

    Rebuilds the factor from scratch as::

        F_x = 1 + (N_int_x + N_ext_x)
                  / (N_i * prod(G_1..G_x) * prod(F_1..F_{x-1}))

    without touching the propagation trace, so it cross-checks
    :func:`stage_factor_corrected` along an independent route.
    """
    ensure_valid(network)
    _check_stage_index(network, x)
    denom = float(network.input_noise)
    factor_prod = 1.0
    f = 1.0
    for k, stage in enumerate(network.stages[:x], start=1):
        denom *= stage.power_gain
        f = 1.0 + (stage.internal_noise + stage.external_noise) / (denom * factor_prod)
        if k < x:
            factor_prod *= f
    return NoiseFactor(f)


def _base_sum(network: CascadeNetwork, include_internal: bool) -> float:
    """Sum of stage-local noise increments over the running gain product."""
    denom = float(network.input_noise)
    total = 0.0
    for stage in network.stages:
        denom *= stage.power_gain
        added = stage.external_noise + (stage.internal_noise if include_internal else 0.0)
        total += added / denom
    return total


def total_base_friis(network: CascadeNetwork) -> NoiseFactor:
    """Total noise factor from the external-noise base sum.

    ``1 + sum_x N_ext_x / (N_i * prod(G_1..G_x))`` -- internal noises are
    deliberately excluded, following the classic convention.
    """
    ensure_valid(network)
    return NoiseFactor(1.0 + _base_sum(network, include_internal=False))


def total_base_corrected(network: CascadeNetwork) -> NoiseFactor:
    """Total noise factor from the all-noise base sum.

    ``1 + sum_x (N_int_x + N_ext_x) / (N_i * prod(G_1..G_x))``
    """
    ensure_valid(network)
    return NoiseFactor(1.0 + _base_sum(network, include_internal=True))


def total_friis_composition(network: CascadeNetwork) -> NoiseFactor:
    """Total noise factor composed from the textbook stage factors.

    ``F_1 + sum_{x>=2} (F_x - 1) / prod(G_1..G_{x-1})`` with the Friis
    stage factors.  Agrees with :func:`total_base_friis` to within
    :data:`IDENTITY_RTOL`.
    """
    ensure_valid(network)
    stages = network.stages
    n_i = float(network.input_noise)
    total = 1.0 + stages[0].external_noise / (n_i * stages[0].power_gain)
    gain_prod = 1.0
    for x in range(2, len(stages) + 1):
        gain_prod *= stages[x - 2].power_gain
        f_x = 1.0 + stages[x - 1].external_noise / (n_i * stages[x - 1].power_gain)
        total += (f_x - 1.0) / gain_prod
    return NoiseFactor(total)


def _corrected_factors(network: CascadeNetwork) -> list[float]:
    """All corrected stage factors in one O(n) pass."""
    n_in = float(network.input_noise)
    out = []
    for stage in network.stages:
        added = stage.internal_noise + stage.external_noise
        out.append(1.0 + added / (n_in * stage.power_gain))
        n_in = n_in * stage.power_gain + added
    return out


def total_product_composition(network: CascadeNetwork) -> NoiseFactor:
    """Total noise factor as the product of the corrected stage factors.

    Agrees with :func:`total_base_corrected` and :func:`snr_ratio_total`
    to within :data:`IDENTITY_RTOL`.
    """
    ensure_valid(network)
    total = 1.0
    for f in _corrected_factors(network):
        total *= f
    return NoiseFactor(total)


def snr_ratio_total(network: CascadeNetwork) -> NoiseFactor:
    """Total noise factor straight from the definition.

    Input SNR over output SNR, both read off the propagation trace.
    This is the independent oracle for both composition paths.
    """
    ensure_valid(network)
    trace = _propagate(network)
    snr_in = float(trace.signal[0]) / float(trace.noise[0])
    snr_out = float(trace.signal[-1]) / float(trace.noise[-1])
    return NoiseFactor(snr_in / snr_out)


@dataclass(frozen=True)
class StageReport:
    """Per-stage noise summary: input noise and both stage factors."""

    stage: int
    input_noise: PowerLevel
    friis: NoiseFactor
    corrected: NoiseFactor


@dataclass(frozen=True)
class TotalFactors:
    """The five total-factor computation paths for one network."""

    base_friis: NoiseFactor
    base_corrected: NoiseFactor
    friis_composition: NoiseFactor
    product_composition: NoiseFactor
    snr_ratio: NoiseFactor


@dataclass(frozen=True)
class NoiseReport:
    """Everything the engine knows about one network's noise budget."""

    per_stage: tuple[StageReport, ...]
    totals: TotalFactors


def build_report(network: CascadeNetwork) -> NoiseReport:
    """Assemble per-stage factors, stage input noises and all five totals.

    Runs in O(n): the propagation trace is computed once and the
    per-stage quantities are read off it, while each total still goes
    through its own formula path.
    """
    ensure_valid(network)
    trace = _propagate(network)
    n_i = float(network.input_noise)
    per_stage = []
    for x, stage in enumerate(network.stages, start=1):
        n_in = float(trace.noise[x - 1])
        added = stage.internal_noise + stage.external_noise
        per_stage.append(
            StageReport(
                stage=x,
                input_noise=n_in,
                friis=NoiseFactor(1.0 + stage.external_noise / (n_i * stage.power_gain)),
                corrected=NoiseFactor(1.0 + added / (n_in * stage.power_gain)),
            )
        )
    snr_in = float(trace.signal[0]) / float(trace.noise[0])
    snr_out = float(trace.signal[-1]) / float(trace.noise[-1])
    totals = TotalFactors(
        base_friis=total_base_friis(network),
        base_corrected=total_base_corrected(network),
        friis_composition=total_friis_composition(network),
        product_composition=total_product_composition(network),
        snr_ratio=NoiseFactor(snr_in / snr_out),
    )
    return NoiseReport(per_stage=tuple(per_stage), totals=totals)
