"""Entanglement dynamics of a coherently pumped cascade-emission laser.

Closed-form two-mode second moments under dephasing and pump-phase
fluctuation, three entanglement criteria on top of them, an independent
Runge-Kutta moment oracle, and a scenario CLI.
"""

from .criteria import (
    CovarianceSummary,
    EntanglementReport,
    HzData,
    covariance,
    dgcz_sum,
    evaluate,
    hz_correlation,
    log_negativity,
    report,
    symplectic_smallest,
)
from .dynamics import (
    PropagatorData,
    SecondMoments,
    drift_matrix,
    moments_at,
    propagator,
    propagator_matrix,
    second_moments,
    steady_state_moments,
)
from .errors import CelError
from .oracle import ComparisonReport, MomentState, compare, integrate_moments, moment_rhs
from .params import (
    DerivedParams,
    DiffusionData,
    SpectralData,
    SystemParams,
    derived_params,
    diffusion_data,
    spectral_data,
    validate_params,
)

__all__ = [
    "CelError",
    "SystemParams",
    "DerivedParams",
    "SpectralData",
    "DiffusionData",
    "validate_params",
    "derived_params",
    "spectral_data",
    "diffusion_data",
    "PropagatorData",
    "SecondMoments",
    "propagator",
    "propagator_matrix",
    "drift_matrix",
    "second_moments",
    "moments_at",
    "steady_state_moments",
    "CovarianceSummary",
    "EntanglementReport",
    "HzData",
    "covariance",
    "symplectic_smallest",
    "log_negativity",
    "dgcz_sum",
    "hz_correlation",
    "evaluate",
    "report",
    "MomentState",
    "ComparisonReport",
    "moment_rhs",
    "integrate_moments",
    "compare",
]

__version__ = "0.1.0"
