"""Domain types and validation for cascade noise budgets.

Powers are plain floats holding *linear* power in arbitrary but
consistent units -- every power within one network must share the unit.
Decibels never enter the model; convert at the boundary with
:mod:`noisebudget.units`.

Construction never raises, so an invalid network can always be built
and then inspected with :func:`validate`.  Engine operations call
:func:`ensure_valid` and refuse invalid networks with a
:class:`ValidationError` listing every violation at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "MAX_STAGES",
    "PowerLevel",
    "NoiseFactor",
    "StageSpec",
    "CascadeNetwork",
    "ValidationError",
    "validate",
    "ensure_valid",
]

#: Linear, non-negative power in arbitrary consistent units.
PowerLevel = float

#: Largest supported chain length.  Longer chains push the running gain
#: products outside double-precision range, so they are rejected up front.
MAX_STAGES = 10_000


class NoiseFactor(float):
    """A dimensionless noise factor (>= 1 whenever added noise is >= 0).

    Behaves as a plain float so factors compose arithmetically; the
    decibel noise figure is derived on demand, which keeps composed
    formulas free of double rounding.
    """

    __slots__ = ()

    @property
    def figure_db(self) -> float:
        """Noise figure in decibels, ``10 * log10(F)``."""
        return 10.0 * math.log10(self)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"NoiseFactor({float(self)!r})"


@dataclass(frozen=True)
class StageSpec:
    """One cascade stage: a power gain plus its two noise contributions.

    ``internal_noise`` is generated within the stage by its own
    irregularities; ``external_noise`` is added at the stage output.
    Both are amplified only by the succeeding stages.
    """

    power_gain: float
    internal_noise: PowerLevel = 0.0
    external_noise: PowerLevel = 0.0

    @property
    def amplitude_gain(self) -> float:
        """Carrier (amplitude) gain M, with ``power_gain == M ** 2``."""
        return math.sqrt(self.power_gain)


@dataclass(frozen=True)
class CascadeNetwork:
    """An n-stage cascade: source signal/noise powers plus ordered stages.

    ``stages`` accepts any iterable of :class:`StageSpec` and is stored
    as a tuple, so networks are immutable values.
    """

    input_signal: PowerLevel
    input_noise: PowerLevel
    stages: tuple[StageSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "stages", tuple(self.stages))

    def __len__(self) -> int:
        return len(self.stages)


class ValidationError(ValueError):
    """A network failed validation; ``violations`` lists every reason."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid cascade network: " + "; ".join(self.violations))


def _bad(value: float) -> bool:
    return not math.isfinite(value)


def validate(network: CascadeNetwork) -> list[str]:
    """Check every network invariant, returning all violations found.

    An empty list means the network is acceptable to every engine
    operation.  Messages name the offending stage (1-based), so they can
    be surfaced directly to users.
    """
    v: list[str] = []
    if not network.stages:
        v.append("stages: at least one stage required (n >= 1)")
    if len(network.stages) > MAX_STAGES:
        v.append(
            f"stages: n = {len(network.stages)} exceeds the supported "
            f"maximum of {MAX_STAGES}"
        )
    if _bad(network.input_signal) or not network.input_signal > 0:
        v.append(f"input_signal: must be finite and > 0, got {network.input_signal}")
    if _bad(network.input_noise) or not network.input_noise > 0:
        v.append(f"input_noise: must be finite and > 0, got {network.input_noise}")
    for x, stage in enumerate(network.stages, start=1):
        if _bad(stage.power_gain) or not stage.power_gain > 0:
            v.append(f"stage {x}: power_gain must be finite and > 0, got {stage.power_gain}")
        if _bad(stage.internal_noise) or stage.internal_noise < 0:
            v.append(f"stage {x}: internal_noise must be finite and >= 0, got {stage.internal_noise}")
        if _bad(stage.external_noise) or stage.external_noise < 0:
            v.append(f"stage {x}: external_noise must be finite and >= 0, got {stage.external_noise}")
    return v


def ensure_valid(network: CascadeNetwork) -> None:
    """Raise :class:`ValidationError` unless ``network`` validates cleanly."""
    violations = validate(network)
    if violations:
        raise ValidationError(violations)
