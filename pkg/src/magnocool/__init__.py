"""Feedback cooling of a mechanical mode in cavity magnomechanics.

Core model: linearized cavity-magnon-mechanics dynamics at a resonantly
driven working point, with a measurement-based feedback force on the
mechanical resonator.  The package computes steady states, noise spectral
densities, steady variances and the effective phonon occupation, and
optimizes the feedback gain; an HTTP service and a CLI wrap the model.
"""

__version__ = "0.1.0"

from .cooling import (CoolingResult, DriftMatrix, GainOptimum, Numerics,
                      StabilityReport, drift_matrix, drift_matrix_at,
                      effective_occupation, is_stable, lyapunov_covariance,
                      markovian_diffusion, min_imp_noise, optimize_gain,
                      stability_report, variances)
from .errors import (ConvergenceError, MagnocoolError, ParameterError,
                     UnstableSystemError)
from .params import (Detunings, FeedbackConfig, Occupations, OperatingPoint,
                     SystemParams)
from .steady import (SteadyState, bose_occupation, effective_coupling,
                     rabi_for_target_coupling, resonant_steady_state,
                     steady_state, thermal_occupations)

__all__ = [
    "__version__",
    "CoolingResult", "DriftMatrix", "GainOptimum", "Numerics",
    "StabilityReport", "drift_matrix", "drift_matrix_at",
    "effective_occupation", "is_stable", "lyapunov_covariance",
    "markovian_diffusion", "min_imp_noise", "optimize_gain",
    "stability_report", "variances",
    "ConvergenceError", "MagnocoolError", "ParameterError",
    "UnstableSystemError",
    "Detunings", "FeedbackConfig", "Occupations", "OperatingPoint",
    "SystemParams",
    "SteadyState", "bose_occupation", "effective_coupling",
    "rabi_for_target_coupling", "resonant_steady_state", "steady_state",
    "thermal_occupations",
]
