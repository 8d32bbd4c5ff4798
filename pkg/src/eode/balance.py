"""Species balancing: top up tiny species, trim oversized ones, refill
undersized ones (widest spread first) with Gaussian samples around the
seed."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bench.budget import FitnessBudget
from .bench.functions import evaluate
from .engine import repair_bounds
from .errors import BudgetExhausted
from .types import Individual, Species

_SINGLETON_STD_FRACTION = 0.01  # of the domain range, per dimension


@dataclass
class SpeciesStats:
    variance: float        # trace of the covariance = sum of eigenvalues
    avg_size: float
    covariance: np.ndarray


def _best_members(species: Species, count: int):
    order = sorted(range(len(species.members)),
                   key=lambda i: (-species.members[i].fitness, i))
    return [species.members[i] for i in order[:count]]


def _covariance_of(members, dim, spec):
    if len(members) < 2:
        std = _SINGLETON_STD_FRACTION * (spec.upper_bounds - spec.lower_bounds)
        return np.diag(std * std)
    x = np.stack([m.genome for m in members])
    return np.atleast_2d(np.cov(x, rowvar=False, ddof=1))


def species_spread(species: Species, gen: int, spec=None, np_total=None,
                   n_species=None) -> SpeciesStats:
    """Covariance of the ``t`` best members, t = max(size//gen, 10)."""
    size = len(species.members)
    t = min(size, max(size // gen, 10))
    dim = species.members[0].genome.size
    cov = _covariance_of(_best_members(species, t), dim, spec)
    avg = (np_total / n_species) if (np_total and n_species) else float(size)
    return SpeciesStats(variance=float(np.trace(cov)), avg_size=avg, covariance=cov)


def _cholesky_jitter(cov):
    jitter = 0.0
    for _ in range(6):
        try:
            return np.linalg.cholesky(cov + jitter * np.eye(cov.shape[0]))
        except np.linalg.LinAlgError:
            jitter = 1e-12 if jitter == 0.0 else jitter * 1e3
    return np.diag(np.sqrt(np.maximum(np.diag(cov), 0.0)) + 1e-8)


def sample_around_seed(species: Species, count: int, cov, spec, rng,
                       budget: FitnessBudget):
    """Append ``count`` evaluated Gaussian samples centered on the seed.

    Stops early (having appended what it could) on budget exhaustion.
    """
    seed = species.seed.genome
    dim = seed.size
    chol = _cholesky_jitter(cov)
    for _ in range(count):
        z = np.array([rng.gauss() for _ in range(dim)])
        point = repair_bounds(seed + chol @ z, spec.lower_bounds, spec.upper_bounds)
        try:
            f = evaluate(spec, point, budget)
        except BudgetExhausted:
            return False
        species.members.append(Individual(point, f, 0))
    return True


def balance_species(species_list, np_total: int, delta: float, gen: int,
                    budget: FitnessBudget, spec, rng):
    """Redistribute members so every niche is workable.

    Order of operations: (a) species at or below max(dim, 10) members
    gain max(dim - size, 10) seed-neighborhood samples; (b) species
    above delta*avgsize lose their worst members; (c) species below it
    are refilled, widest variance first.  All generated members are
    bound-repaired and evaluated.
    """
    if gen < 1:
        raise ValueError("balance generation counter is 1-based")
    dim = spec.dim
    for sp in species_list:
        size = len(sp.members)
        if size <= dim or size <= 10:
            c = max(dim - size, 10)
            cov = _covariance_of(sp.members, dim, spec)
            if not sample_around_seed(sp, c, cov, spec, rng, budget):
                return species_list

    n_species = len(species_list)
    stats = [species_spread(sp, gen, spec, np_total, n_species)
             for sp in species_list]
    # never trim below the 10-member working minimum: species smaller
    # than that stall before reaching peak accuracy
    target = max(10, int(np.floor(delta * (np_total / n_species) + 0.5)))

    for sp in species_list:
        if len(sp.members) > target:
            sp.members = _best_members(sp, target)

    refill_order = sorted(range(n_species),
                          key=lambda i: (-stats[i].variance, i))
    for i in refill_order:
        sp = species_list[i]
        missing = target - len(sp.members)
        if missing > 0:
            if not sample_around_seed(sp, missing, stats[i].covariance, spec,
                                      rng, budget):
                return species_list
    return species_list
