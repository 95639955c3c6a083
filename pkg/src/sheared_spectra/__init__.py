"""Bound-state spectra and travelling nodes of sheared 1D potentials.

The package combines closed-form results (half-line spectra, node-at-origin
shear values, the large-index limit), a from-scratch Airy engine, and a
Numerov shooting solver that works at arbitrary shear, together with node
tracking that ties eigenvalue oscillations to nodes crossing the origin.
"""
from .airy import AiryZero, airy_ai, airy_zero
from .analytic import (
    Branch,
    CrossingEvent,
    Endpoint,
    HalfLineLevel,
    ho_crossings,
    ho_endpoint_spectrum,
    ho_half_line_energy,
    linear_crossings,
    linear_half_line_energy,
    semiclassical_energy,
    table_rows,
)
from .errors import (
    BracketFailureError,
    ConvergenceFailureError,
    IndexOutOfRangeError,
    IntegrationOverflowError,
    NodeCountMismatchError,
    NonPositiveEnergyError,
    OutOfRangeError,
    ShearedSpectraError,
    ShearOutOfRangeError,
    TrajectoryBreakError,
)
from .nodes import (
    DetectedCrossing,
    NodeTrajectory,
    detect_crossings,
    extract_nodes,
    track_nodes,
)
from .potentials import (
    HARMONIC_UNITS,
    LINEAR_UNITS,
    Model,
    ModelKind,
    TurningPoints,
    Units,
    evaluate,
    harmonic_model,
    linear_model,
    turning_points,
)
from .shooting import (
    EigenSolution,
    SolverConfig,
    SweepResult,
    linear_exact_eigensolve,
    match_discriminant,
    solve_level,
    spectrum_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AiryZero",
    "airy_ai",
    "airy_zero",
    "Branch",
    "CrossingEvent",
    "Endpoint",
    "HalfLineLevel",
    "ho_crossings",
    "ho_endpoint_spectrum",
    "ho_half_line_energy",
    "linear_crossings",
    "linear_half_line_energy",
    "semiclassical_energy",
    "table_rows",
    "DetectedCrossing",
    "NodeTrajectory",
    "detect_crossings",
    "extract_nodes",
    "track_nodes",
    "HARMONIC_UNITS",
    "LINEAR_UNITS",
    "Model",
    "ModelKind",
    "TurningPoints",
    "Units",
    "evaluate",
    "harmonic_model",
    "linear_model",
    "turning_points",
    "EigenSolution",
    "SolverConfig",
    "SweepResult",
    "linear_exact_eigensolve",
    "match_discriminant",
    "solve_level",
    "spectrum_sweep",
    "ShearedSpectraError",
    "NonPositiveEnergyError",
    "ShearOutOfRangeError",
    "OutOfRangeError",
    "IndexOutOfRangeError",
    "BracketFailureError",
    "ConvergenceFailureError",
    "IntegrationOverflowError",
    "NodeCountMismatchError",
    "TrajectoryBreakError",
]
