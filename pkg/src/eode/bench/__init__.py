"""Benchmark problems, budgeted evaluation, scoring and the grid oracle."""

from .budget import FitnessBudget
from .functions import build_objective_data, evaluate, objective_for
from .metrics import aggregate_pr_sr, count_found_peaks
from .oracle import grid_oracle
from .problems import ProblemSpec, all_problems, problem_spec

__all__ = [
    "FitnessBudget",
    "ProblemSpec",
    "aggregate_pr_sr",
    "all_problems",
    "build_objective_data",
    "count_found_peaks",
    "evaluate",
    "grid_oracle",
    "objective_for",
    "problem_spec",
]
