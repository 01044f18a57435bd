"""SIR dynamics with attendance-scaled transmission.

Trajectories, closed-form final sizes via the Lambert W function, home-time
maximization over the attendance rate, and staffing-savings conversion.
"""

from ._core import (
    DiseaseEntry,
    DiseaseParams,
    DiseaseTableRow,
    OptimizationResult,
    RidgePoint,
    SweepGrid,
    Trajectory,
    attack_rate,
    default_disease_catalog,
    disease_table,
    final_size,
    lambert_w0,
    optimize_attendance,
    simulate,
    staff_savings,
    sweep,
    th_infinity,
)

__all__ = [
    "DiseaseEntry",
    "DiseaseParams",
    "DiseaseTableRow",
    "OptimizationResult",
    "RidgePoint",
    "SweepGrid",
    "Trajectory",
    "attack_rate",
    "default_disease_catalog",
    "disease_table",
    "final_size",
    "lambert_w0",
    "optimize_attendance",
    "simulate",
    "staff_savings",
    "sweep",
    "th_infinity",
]

__version__ = "0.1.0"
