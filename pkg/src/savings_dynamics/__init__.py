"""Simulation and chaos diagnostics for a threshold-contribution savings
process under negative real interest."""

from .analysis import (
    CycleReport,
    DichotomyVerdict,
    FrequencyReport,
    OmegaApprox,
    SensitivityReport,
    classify_dichotomy,
    detect_cycle,
    omega_limit_approx,
    sensitivity_probe,
    visit_frequency,
)
from .process import (
    ChaoticConfig,
    NormalizedMap,
    ProcessParams,
    TimeSeries,
    absorbing_bound,
    chaotic_params,
    closed_form,
    conjugacy_L,
    limit_value,
    normalized_step,
    simulate,
    step,
)
from .semiconjugacy import (
    FrequencyPrediction,
    GapSystem,
    breakpoint_from_gaps,
    build_gap_system,
    h_evaluate,
    predict_frequency,
    semiconjugacy_residual,
)
from .words import (
    GOLDEN_ALPHA,
    PHI,
    RotationParams,
    fibonacci_word,
    rotation_coding,
    rotation_step,
)

__version__ = "0.1.0"
