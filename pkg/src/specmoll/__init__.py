"""Adaptive spectral mollifiers for Gibbs-free recovery of piecewise
smooth 2*pi-periodic signals from truncated Fourier data.

The reconstruction convolves the spectral projection (or the raw
equidistant samples) with a compactly supported localized Dirichlet
kernel whose width tracks the distance to the nearest jump and whose
degree grows with it; near the jumps a moment-matched rescaling of the
kernel restores polynomial accuracy.
"""

from ._backend import backend_name
from .errors import (DegenerateKernelError, DegenerateWindowError,
                     NormalizationError, QuadratureError, SpecmollError,
                     UnsupportedOrderError)
from .fourier import (GridSamples, SpectralCoefficients, compute_coefficients,
                      dirichlet, eval_projection, interpolant_coefficients,
                      monomial_coefficients, project_monomial, sample_signal)
from .lab import (ErrorReport, ReconstructionSettings, convergence_study,
                  default_grid, detect_edges_naive,
                  error_decomposition_discrete, error_decomposition_spectral,
                  measure_loss_onset, predicted_loss_location,
                  run_reconstruction)
from .localizer import LocalizerConfig, raw_moment, rho_c
from .mollifier import (KAPPA_DEFAULT, KAPPA_STAR, DegreePolicy, MollifierSpec,
                        choose_params, mollify_discrete, mollify_spectral,
                        psi_eval)
from .normalization import (DiscreteNormalization, SpectralNormalization,
                            build_spectral_normalization, discrete_moments,
                            mollify_discrete_normalized,
                            mollify_spectral_normalized,
                            solve_discrete_normalization, spectral_q0,
                            spectral_q2)
from .signals import (SIGNALS, PiecewiseSignal, ThetaPolicy, discrete_floor,
                      distance_to_edge, eval_signal, get_signal, raw_theta,
                      smooth_signal, spectral_floor, theta_of)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "SpecmollError", "QuadratureError", "DegenerateKernelError",
    "DegenerateWindowError", "NormalizationError", "UnsupportedOrderError",
    "SpectralCoefficients", "GridSamples", "compute_coefficients",
    "dirichlet", "eval_projection", "interpolant_coefficients",
    "monomial_coefficients", "project_monomial", "sample_signal",
    "ErrorReport", "ReconstructionSettings", "convergence_study",
    "default_grid", "detect_edges_naive", "error_decomposition_discrete",
    "error_decomposition_spectral", "measure_loss_onset",
    "predicted_loss_location", "run_reconstruction",
    "LocalizerConfig", "raw_moment", "rho_c",
    "KAPPA_DEFAULT", "KAPPA_STAR", "DegreePolicy", "MollifierSpec",
    "choose_params", "mollify_discrete", "mollify_spectral", "psi_eval",
    "DiscreteNormalization", "SpectralNormalization",
    "build_spectral_normalization", "discrete_moments",
    "mollify_discrete_normalized", "mollify_spectral_normalized",
    "solve_discrete_normalization", "spectral_q0", "spectral_q2",
    "SIGNALS", "PiecewiseSignal", "ThetaPolicy", "discrete_floor",
    "distance_to_edge", "eval_signal", "get_signal", "raw_theta",
    "smooth_signal", "spectral_floor", "theta_of",
]
