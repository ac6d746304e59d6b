"""Cavity-QED single-photon sources: emission, HOM visibility, drive optimization."""

from cavityhom._core import (
    CoherenceMatrix,
    Gamma32Target,
    GaussianDrive,
    HOMResult,
    OptimizationResult,
    OptimizerConfig,
    PhotonWavefunction,
    PiecewiseLinearDrive,
    SystemRecord,
    SystemType,
    TimeGrid,
    ZeroDrive,
    __version__,
    coherence,
    drive_eval,
    hom_correlation,
    normalize_coherence,
    optimize_pair,
    pair_visibility,
    simulate,
    visibility,
)

__all__ = [
    "CoherenceMatrix",
    "Gamma32Target",
    "GaussianDrive",
    "HOMResult",
    "OptimizationResult",
    "OptimizerConfig",
    "PhotonWavefunction",
    "PiecewiseLinearDrive",
    "SystemRecord",
    "SystemType",
    "TimeGrid",
    "ZeroDrive",
    "__version__",
    "coherence",
    "drive_eval",
    "hom_correlation",
    "normalize_coherence",
    "optimize_pair",
    "pair_visibility",
    "simulate",
    "visibility",
]
