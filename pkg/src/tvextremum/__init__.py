"""Closed-form extremum problems with total variation distance on finite alphabets."""

from .errors import (
    DimensionError,
    DomainError,
    InfeasibleError,
    InvalidProbabilityError,
    InvalidSignedMeasureError,
    NonterminationError,
    SweepError,
    TVExtremumError,
)
from .measures import (
    PayoffVector,
    ProbabilityVector,
    SignedMeasureVector,
    expectation,
    jordan_decompose,
    tv_distance,
)
from .metrics import check_bounds, hellinger_integral, kh_distance, kl_divergence
from .partition import LevelPartition, build_partition, oscillation
from .solvers import (
    ExtremumSolution,
    ProblemInstance,
    d_max,
    r_max,
    r_max_lower,
    solve,
    solve_d_minus,
    solve_d_plus,
    solve_r_minus,
    solve_r_plus,
    sweep,
)

__version__ = "0.1.0"
