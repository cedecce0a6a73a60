"""Noise-budget analysis for n-stage cascade networks.

The package computes stage-wise and total noise factors two ways -- the
classic Friis formulas, which judge every stage against the chain input
noise, and corrected formulas derived from the SNR-ratio definition,
which judge each stage against the noise actually arriving at its
input -- and cross-validates both against direct signal/noise
propagation.  A staircase-multiplier model ties the corrected cascade
factors to per-step excess-noise statistics, with a seeded Monte Carlo
probe for the closed forms.
"""

from .apd import (
    EVENT_BUDGET,
    EventBudgetError,
    McEstimate,
    StaircaseApd,
    StepStats,
    apd_to_cascade,
    mc_step_gain,
    mc_total_gain,
    step_stats,
    total_excess_noise,
    total_mean_gain,
)
from .cascade import (
    IDENTITY_RTOL,
    NodeState,
    NoiseReport,
    PropagationTrace,
    StageReport,
    TotalFactors,
    build_report,
    propagate,
    snr_ratio_total,
    stage_factor_corrected,
    stage_factor_corrected_recursive,
    stage_factor_friis,
    stage_input_noise,
    total_base_corrected,
    total_base_friis,
    total_friis_composition,
    total_product_composition,
)
from .network import (
    MAX_STAGES,
    CascadeNetwork,
    NoiseFactor,
    PowerLevel,
    StageSpec,
    ValidationError,
    ensure_valid,
    validate,
)
from .scenarios import (
    ScenarioConfig,
    SeriesRow,
    SeriesTable,
    fig2a_no_noise,
    fig2b_identical_external,
    fig2c_totals,
    fig3_internal_only,
)
from .units import db_to_linear, linear_to_db

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # units
    "db_to_linear",
    "linear_to_db",
    # network model
    "MAX_STAGES",
    "PowerLevel",
    "NoiseFactor",
    "StageSpec",
    "CascadeNetwork",
    "ValidationError",
    "validate",
    "ensure_valid",
    # cascade engine
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
    # staircase devices
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
    # scenarios
    "ScenarioConfig",
    "SeriesRow",
    "SeriesTable",
    "fig2a_no_noise",
    "fig2b_identical_external",
    "fig2c_totals",
    "fig3_internal_only",
]
