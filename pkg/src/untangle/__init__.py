"""Exact solvers for covering temporal graphs with few, short activity intervals."""

from .branch import solve_max_branching
from .core import (
    Instance,
    Interval,
    MalformedTimelineError,
    Multicolored,
    NonUniform,
    Objective,
    ObjectiveKind,
    SolveOutcome,
    SolverRefusal,
    TemporalGraph,
    Uniform,
    Verdict,
    make_timeline,
    permute_layers,
    verify_timeline,
)
from .dp import solve_max_dp, solve_sum_dp
from .layerzero import solve_ab_coloring, solve_zero
from .oracle import oracle_min_ell, oracle_solve
from .patterns import solve_sum_patterns

__all__ = [
    "Instance",
    "Interval",
    "MalformedTimelineError",
    "Multicolored",
    "NonUniform",
    "Objective",
    "ObjectiveKind",
    "SolveOutcome",
    "SolverRefusal",
    "TemporalGraph",
    "Uniform",
    "Verdict",
    "make_timeline",
    "oracle_min_ell",
    "oracle_solve",
    "permute_layers",
    "solve_ab_coloring",
    "solve_max_branching",
    "solve_max_dp",
    "solve_sum_dp",
    "solve_sum_patterns",
    "solve_zero",
    "verify_timeline",
]
