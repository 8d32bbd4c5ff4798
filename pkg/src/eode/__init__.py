"""Multimodal optimization with stage-wise opposition DE over niched species,
benchmarked with peak-ratio/success-rate scoring."""

from ._kernels import BACKEND
from .bench import (FitnessBudget, aggregate_pr_sr, count_found_peaks,
                    evaluate, grid_oracle, problem_spec)
from .engine import JumpWindow, MutationMode
from .harness import RunConfig, run_ablation, run_eode, run_experiment
from .reporting import emit_report
from .types import Individual, Species

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FitnessBudget",
    "Individual",
    "JumpWindow",
    "MutationMode",
    "RunConfig",
    "Species",
    "aggregate_pr_sr",
    "count_found_peaks",
    "emit_report",
    "evaluate",
    "grid_oracle",
    "problem_spec",
    "run_ablation",
    "run_eode",
    "run_experiment",
    "__version__",
]
