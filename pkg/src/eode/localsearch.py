"""Refinement of a species' best member: alternating directed steps
along the last improving direction and draws from the distribution of
the better members."""

from __future__ import annotations

import numpy as np

from .balance import _cholesky_jitter
from .bench.budget import FitnessBudget
from .bench.functions import evaluate
from .engine import repair_bounds
from .errors import BudgetExhausted, TooFewMembers
from .types import Individual, Species

LOCAL_SEARCH_ITERATIONS = 10


def niche_mean_std(members):
    """Componentwise sample mean and (M-1)-denominator std."""
    if len(members) < 2:
        raise TooFewMembers("niche statistics need at least 2 members")
    x = np.stack([m.genome for m in members])
    return x.mean(axis=0), x.std(axis=0, ddof=1)


def covariance_matrix(members):
    """Sample covariance (M-1 denominator) of the member genomes."""
    if len(members) < 2:
        raise TooFewMembers("covariance needs at least 2 members")
    x = np.stack([m.genome for m in members])
    return np.atleast_2d(np.cov(x, rowvar=False, ddof=1))


def local_search(localbest: Individual, species: Species,
                 budget: FitnessBudget, spec, rng,
                 iterations: int = LOCAL_SEARCH_ITERATIONS) -> Individual:
    """Up to ``iterations`` probes around the best member; never degrades.

    A fair coin (once a direction is known) chooses between the directed
    step best + vars*dirvec and a Gaussian draw with the covariance of
    the better quarter of the species.  Failed probes widen ``vars``.
    """
    dim = spec.dim
    best_x = np.array(localbest.genome, dtype=np.float64)
    best_f = float(localbest.fitness)
    variances = np.array([0.001 + rng.uniform() * 0.009 for _ in range(dim)])
    dirvec = None

    size = len(species.members)
    mbest = min(size, max(size // 4, 10))
    ranked = sorted(species.members, key=lambda m: -m.fitness)[:mbest]
    if len(ranked) >= 2:
        cov = covariance_matrix(ranked)
    else:
        rng_width = spec.upper_bounds - spec.lower_bounds
        cov = np.diag((0.01 * rng_width) ** 2)
    chol = _cholesky_jitter(cov)

    for _ in range(iterations):
        if dirvec is not None and rng.uniform() <= 0.5:
            cand = best_x + variances * dirvec
        else:
            z = np.array([rng.gauss() for _ in range(dim)])
            cand = best_x + chol @ z
        cand = repair_bounds(cand, spec.lower_bounds, spec.upper_bounds)
        try:
            cf = evaluate(spec, cand, budget)
        except BudgetExhausted:
            break
        if cf > best_f:
            dirvec = cand - best_x
            best_x = cand
            best_f = cf
        else:
            for d in range(dim):
                variances[d] += 0.001 + rng.uniform() * 0.009
    return Individual(best_x, best_f, 0)
