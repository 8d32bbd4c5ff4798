"""Species evolution: stage-wise mutation, crossover, bound repair,
opposition jumps and stagnation restarts.

The per-generation member loop runs in the kernel backend; this module
owns the orchestration and exposes the individual operators for direct
use and testing.
"""

from __future__ import annotations

import enum

import numpy as np

from . import _kernels as K
from ._kernels import pure as _pure
from .adapt import AdaptiveState, update_crossover_rate, update_mutation_factor
from .bench.budget import FitnessBudget
from .bench.functions import evaluate, objective_for
from .errors import BudgetExhausted
from .types import Individual, Species

DEFAULT_STAGNATION_K = 10

# once past the exploitation threshold, a species whose member loop
# yields no successful trial for this many consecutive generations has
# converged (or locked); ending its inner loop early frees budget for
# further framework passes without ever cutting exploration short
STALL_EXIT_GENERATIONS = 5
STALL_EXIT_AFTER_PR = 0.67


class MutationMode(enum.Enum):
    EODE = "eode"
    EODE_R = "eode-r"
    EODE_B = "eode-b"
    EODE_RB = "eode-rb"

    @property
    def code(self) -> int:
        return {"eode": K.MODE_EODE, "eode-r": K.MODE_RAND,
                "eode-b": K.MODE_BEST, "eode-rb": K.MODE_RAND_BEST}[self.value]


class JumpWindow(enum.Enum):
    """Generation-fraction gate for the opposite population."""

    LATE = "late"    # (0.67, 1]
    EARLY = "early"  # [0, 0.5]
    FULL = "full"    # [0, 1]

    def contains(self, jr: float) -> bool:
        if self is JumpWindow.LATE:
            return 0.67 < jr <= 1.0
        if self is JumpWindow.EARLY:
            return jr <= 0.5
        return True


def default_max_gen(dim: int) -> int:
    return 40 if dim <= 10 else 60


def _fitness_order(fit: np.ndarray) -> np.ndarray:
    """Indices sorted by fitness descending, position ascending on ties."""
    return np.lexsort((np.arange(fit.size), -fit)).astype(np.intp)


def repair_bounds(v, lb, ub):
    """Reflect out-of-bounds components back inside, clamped to the box."""
    out = np.array(v, dtype=np.float64)
    lb = np.asarray(lb, dtype=np.float64)
    ub = np.asarray(ub, dtype=np.float64)
    low = out < lb
    out[low] = np.minimum(ub[low], 2.0 * lb[low] - out[low])
    high = out > ub
    out[high] = np.maximum(lb[high], 2.0 * ub[high] - out[high])
    return out


def binomial_crossover(target, donor, cr, rng):
    """Per-component mix of donor into target; the forced component
    guarantees at least one donor gene."""
    dim = len(target)
    jrand = rng.below(dim)
    out = np.empty(dim, dtype=np.float64)
    for d in range(dim):
        u = rng.uniform()
        if u <= cr[d] or d == jrand:
            out[d] = donor[d]
        else:
            out[d] = target[d]
    return out


def select_donor(species: Species, member_index: int, pr: float, f1, f2,
                 mode: MutationMode, rng):
    """Donor vector for one member under the stage-wise policy.

    Reference-path implementation: species smaller than an operator
    needs degrade to the best-members operator.
    """
    pop = [list(m.genome) for m in species.members]
    fit = np.array([m.fitness for m in species.members])
    n = len(pop)
    dim = len(pop[0])
    order = _fitness_order(fit).tolist()
    b3i = [order[0], order[min(1, n - 1)], order[min(2, n - 1)]]
    b3f = [fit[b3i[0]], fit[b3i[1]], fit[b3i[2]]]
    v = [0.0] * dim
    _pure._donor(pop, fit.tolist(), member_index, n, dim, pr,
                 list(np.asarray(f1, dtype=float)), list(np.asarray(f2, dtype=float)),
                 mode.code, rng, order, b3i, b3f, v)
    return np.array(v)


def opposition_jump(species: Species, gen: int, max_gen: int, rng,
                    budget: FitnessBudget, spec,
                    window: JumpWindow = JumpWindow.LATE) -> Species:
    """Apply the opposite-population step when the window is active.

    No-op outside the window; on budget exhaustion the species is
    returned un-jumped (evaluations already spent stay spent).
    """
    jr = gen / max_gen
    if not window.contains(jr):
        return species
    pop = species.genomes()
    fit = species.fitnesses()
    stag = np.array([m.stagnation for m in species.members], dtype=np.int64)
    obj = objective_for(spec)
    used, _ = K.opposition_jump(obj, rng, pop, fit, stag, budget.remaining)
    budget.consume(used)
    species.members = [Individual(pop[i].copy(), float(fit[i]), int(stag[i]))
                       for i in range(len(fit))]
    return species


def _restart_arrays(spec, rng, budget, pop, fit, stag, k) -> int:
    """Replace stagnant members (never the current best, which holds the
    species' peak) with fresh uniform points; returns how many were
    restarted."""
    n, dim = pop.shape
    lb = spec.lower_bounds
    ub = spec.upper_bounds
    best = 0
    for i in range(1, n):
        if fit[i] > fit[best]:
            best = i
    restarted = 0
    for i in range(n):
        if i == best or stag[i] < k:
            continue
        point = np.empty(dim)
        for d in range(dim):
            point[d] = lb[d] + rng.uniform() * (ub[d] - lb[d])
        try:
            f = evaluate(spec, point, budget)
        except BudgetExhausted:
            break
        pop[i] = point
        fit[i] = f
        stag[i] = 0
        restarted += 1
    return restarted


def restart_stagnant(species: Species, k: int, rng, budget: FitnessBudget,
                     spec) -> Species:
    """Restart every member stuck for ``k`` generations."""
    pop = species.genomes()
    fit = species.fitnesses()
    stag = np.array([m.stagnation for m in species.members], dtype=np.int64)
    _restart_arrays(spec, rng, budget, pop, fit, stag, k)
    species.members = [Individual(pop[i].copy(), float(fit[i]), int(stag[i]))
                       for i in range(len(fit))]
    return species


def evolve_species(species: Species, spec, budget: FitnessBudget,
                   adaptive_state=None, mode: MutationMode = MutationMode.EODE,
                   max_gen: int | None = None, rng=None,
                   jr_window: JumpWindow = JumpWindow.LATE,
                   stagnation_k: int = DEFAULT_STAGNATION_K,
                   anchor=None) -> Individual:
    """Run the inner DE on one species; returns a copy of its best member.

    Each generation: member loop (greedy replacement, success
    bookkeeping), opposite population inside the jump window, restarts,
    then the parameter update.  Stops cleanly when the budget runs out.
    """
    if max_gen is None:
        max_gen = default_max_gen(spec.dim)
    if adaptive_state is None:
        if species.adaptive_state is None:
            species.adaptive_state = AdaptiveState.fresh(rng, spec.dim)
        adaptive_state = species.adaptive_state
    st = adaptive_state

    pop = species.genomes()
    fit = species.fitnesses()
    stag = np.array([m.stagnation for m in species.members], dtype=np.int64)
    obj = objective_for(spec)

    zero_streak = 0
    for gen in range(max_gen):
        if budget.remaining <= 0:
            break
        pr = gen / max_gen
        order = _fitness_order(fit)
        used, dfs = K.evolve_generation(obj, rng, pop, fit, stag, st.f1, st.f2,
                                        st.cr, pr, mode.code, budget.remaining,
                                        order, anchor)
        budget.consume(used)
        st.record_successes(dfs)
        if budget.remaining <= 0:
            break
        if jr_window.contains(gen / max_gen):
            used, _ = K.opposition_jump(obj, rng, pop, fit, stag, budget.remaining)
            budget.consume(used)
            if budget.remaining <= 0:
                break
        _restart_arrays(spec, rng, budget, pop, fit, stag, stagnation_k)
        if budget.remaining <= 0:
            break
        mn = pop.min(axis=0)
        mx = pop.max(axis=0)
        update_mutation_factor(st, "F1", mn, mx, spec.lower_bounds,
                               spec.upper_bounds, budget.used, budget.cap, rng)
        update_mutation_factor(st, "F2", mn, mx, spec.lower_bounds,
                               spec.upper_bounds, budget.used, budget.cap, rng)
        update_crossover_rate(st, rng)
        st.clear()
        zero_streak = zero_streak + 1 if len(dfs) == 0 else 0
        if (STALL_EXIT_GENERATIONS and pr > STALL_EXIT_AFTER_PR
                and zero_streak >= STALL_EXIT_GENERATIONS):
            break

    species.members = [Individual(pop[i].copy(), float(fit[i]), int(stag[i]))
                       for i in range(len(fit))]
    return species.seed.copy()
