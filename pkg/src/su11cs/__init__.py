"""SU(1,1)-displaced coherent states of a one-mode photon field.

Coefficients and certified truncations (:mod:`.states`), photon counting and
the Mandel parameter (:mod:`.statistics`), su(1,1) operators, displacements
and squeezing (:mod:`.squeezing`), disk quantization (:mod:`.quantization`)
and figure data (:mod:`.figures`).
"""
from .errors import (
    ConvergenceError, DomainError, LabelMismatchError, QuadratureWarning, SU11Error,
    SupportRangeError, TruncationError,
)
from .special import JacobiParams, jacobi, jacobi_eval, log_binomial, log_gamma, log_gamma_ratio
from .states import (
    DiskAmplitude, GlauberFamily, GroupElement, RepresentationLabel, StateCoefficients,
    SU11Family, build_state, gscs_state, matrix_element, nonlinear_factorization_check,
)
from .quadrature import QuadratureRule, gauss_jacobi_unit, gauss_laguerre
from .statistics import (
    MomentSummary, PhotonDistribution, Regime, crossover_by_bisection, distribution,
    gscs_distribution, invert_mean, mandel_q, mandel_q_limit_kappa_infinity, mean_photon_number,
    negative_binomial_pmf, photocount_distribution, poisson_crossover, sample_counts,
)
from .squeezing import (
    OperatorRole, SqueezedAxis, SqueezingReport, TruncatedOperator, build_generators,
    displacement_operator, even_odd_generators, numeric_moments, phase_space_point,
    squeezing_inequality_surfaces, squeezing_report,
)
from .quantization import (
    Monomial, PortraitDensity, corrective_weight, count_crests, displacement_from_quantized,
    identity_resolution_check, k_minus_quantization_check, lower_symbol, orthonormality_matrix,
    overlap, portrait_density, portrait_normalization, quantize_radial_function, radial_section,
    tau_series,
)

__all__ = [
    "ConvergenceError", "DomainError", "LabelMismatchError", "QuadratureWarning", "SU11Error",
    "SupportRangeError", "TruncationError", "JacobiParams", "jacobi", "jacobi_eval",
    "log_binomial", "log_gamma", "log_gamma_ratio", "DiskAmplitude", "GlauberFamily",
    "GroupElement", "RepresentationLabel", "StateCoefficients", "SU11Family", "build_state",
    "gscs_state", "matrix_element", "nonlinear_factorization_check", "QuadratureRule",
    "gauss_jacobi_unit", "gauss_laguerre", "MomentSummary", "PhotonDistribution", "Regime",
    "crossover_by_bisection", "distribution", "gscs_distribution", "invert_mean", "mandel_q",
    "mandel_q_limit_kappa_infinity", "mean_photon_number", "negative_binomial_pmf",
    "photocount_distribution", "poisson_crossover", "sample_counts", "OperatorRole",
    "SqueezedAxis", "SqueezingReport", "TruncatedOperator", "build_generators",
    "displacement_operator", "even_odd_generators", "numeric_moments", "phase_space_point",
    "squeezing_inequality_surfaces", "squeezing_report", "Monomial", "PortraitDensity",
    "corrective_weight", "count_crests", "displacement_from_quantized",
    "identity_resolution_check", "k_minus_quantization_check", "lower_symbol",
    "orthonormality_matrix", "overlap", "portrait_density", "portrait_normalization",
    "quantize_radial_function", "radial_section", "tau_series",
]

__version__ = "0.1.0"
