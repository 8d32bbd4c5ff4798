"""Peak counting and PR/SR aggregation (competition convention)."""

from __future__ import annotations

import math

from ..errors import EmptyRuns
from .problems import ProblemSpec


def count_found_peaks(spec: ProblemSpec, solutions, epsilon: float) -> int:
    """Number of distinct known peaks represented in ``solutions``.

    Greedy, fitness-descending: a candidate counts as a new peak iff its
    fitness is within ``epsilon`` of the peak height and it lies farther
    than the niche radius from every peak already accepted.  Consumes no
    budget.  Result is capped at the known peak count.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    ranked = sorted(solutions, key=lambda s: -s.fitness)
    accepted = []
    r = spec.niche_radius
    for cand in ranked:
        if spec.peak_height - cand.fitness > epsilon:
            continue
        ok = True
        for kept in accepted:
            d = 0.0
            for a, b in zip(cand.genome, kept.genome):
                d += (a - b) * (a - b)
            if math.sqrt(d) <= r:
                ok = False
                break
        if ok:
            accepted.append(cand)
            if len(accepted) == spec.num_known_peaks:
                break
    return min(len(accepted), spec.num_known_peaks)


def aggregate_pr_sr(per_run_found, nkp: int):
    """(peak ratio, success rate) over per-run peak counts."""
    counts = list(per_run_found)
    if not counts:
        raise EmptyRuns("no runs to aggregate")
    if any(c < 0 or c > nkp for c in counts):
        raise ValueError("peak counts must lie in [0, nkp]")
    runs = len(counts)
    pr = sum(counts) / (runs * nkp)
    sr = sum(1 for c in counts if c == nkp) / runs
    return pr, sr
