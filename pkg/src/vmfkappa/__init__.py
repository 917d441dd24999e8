"""Concentration estimates for the von Mises-Fisher distribution.

The maximum-likelihood concentration solves ``I_{p/2}(k) / I_{p/2-1}(k) = rbar``.
This package evaluates that Bessel ratio by continued fraction, solves the
equation by fixed-point iteration or bracketing, and checks the Turan-type
inequalities that make the fixed-point map a contraction.
"""

from .bessel_ratio import phi, phi_prime, ratio, turanian_normalized
from .errors import (
    ClassificationError,
    ConvergenceError,
    DegenerateDataError,
    DomainError,
    NormError,
    ParseError,
    SaturatedDataError,
    VmfKappaError,
)
from .inequality_lab import SweepGrid, asymptote_check, monotonicity_profile, sweep
from .kappa_solver import (
    EstimationProblem,
    SolverOptions,
    SolveResult,
    cross_validate,
    solve,
    solve_bracket,
    solve_fixed_point,
)
from .vmf_data import MleFit, SampleSet, fit_mle, load_samples, mean_resultant, sample_vmf

__version__ = "0.1.0"

__all__ = [
    "ClassificationError", "ConvergenceError", "DegenerateDataError", "DomainError",
    "EstimationProblem", "MleFit", "NormError", "ParseError", "SampleSet",
    "SaturatedDataError", "SolveResult", "SolverOptions", "SweepGrid", "VmfKappaError",
    "asymptote_check", "cross_validate", "fit_mle", "load_samples", "mean_resultant",
    "monotonicity_profile", "phi", "phi_prime", "ratio", "sample_vmf", "solve",
    "solve_bracket", "solve_fixed_point", "sweep", "turanian_normalized",
]
