"""LQR pitch control of a light aircraft flying through a microburst."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .analysis import (
    Mode,
    RankReport,
    controllability_matrix,
    modal_analysis,
    numerical_rank,
    observability_matrix,
)
from .riccati import LqrSynthesis, LqrWeights, care_residual, control_law, solve_care
from .sim import ResponseMetrics, SimConfig, Trajectory, extract_metrics, simulate
from .statespace import (
    NAVION,
    FlightCondition,
    LongitudinalModel,
    StabilityDerivatives,
    assemble_model,
    quadratic_cost,
)
from .wind import MicroburstProfile, alpha_gust, gust_at

__all__ = [
    "BACKEND",
    "FlightCondition",
    "LongitudinalModel",
    "LqrSynthesis",
    "LqrWeights",
    "MicroburstProfile",
    "Mode",
    "NAVION",
    "RankReport",
    "ResponseMetrics",
    "SimConfig",
    "StabilityDerivatives",
    "Trajectory",
    "alpha_gust",
    "assemble_model",
    "care_residual",
    "control_law",
    "controllability_matrix",
    "extract_metrics",
    "gust_at",
    "modal_analysis",
    "numerical_rank",
    "observability_matrix",
    "quadratic_cost",
    "simulate",
    "solve_care",
]
