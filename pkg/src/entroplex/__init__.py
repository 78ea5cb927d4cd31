"""Entropic uncertainty and information exclusion bounds with quantum memory."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bounds import (
    BoundReport,
    bound_report,
    capacity_witness,
    complementarity_matrix,
    h_factors,
    q_mu,
    q_opt,
    q_prime,
    q_state,
    r_bound,
    r_grudka,
    r_hall,
)
from .errors import DimensionError, ValidationError
from .quantum import DensityMatrix, KrausChannel, OrthonormalBasis, Povm, RandomSource

__all__ = [
    "BACKEND",
    "BoundReport",
    "DensityMatrix",
    "DimensionError",
    "KrausChannel",
    "OrthonormalBasis",
    "Povm",
    "RandomSource",
    "ValidationError",
    "__version__",
    "bound_report",
    "capacity_witness",
    "complementarity_matrix",
    "h_factors",
    "q_mu",
    "q_opt",
    "q_prime",
    "q_state",
    "r_bound",
    "r_grudka",
    "r_hall",
]
