"""Success-history adaptation of the mutation factors and crossover rate.

Parameters are per-dimension vectors.  Each generation the successful
(F1, F2, CR) vectors and their fitness gains are collected; at
generation end the vectors are pulled toward fitness-weighted means of
the successes (power mean for F1/CR, Lehmer mean for F2), blended with a
species-geometry term.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptySuccessSet

_POWER_EXPONENT = 1.0 / 1.5
F_FLOOR = 0.01  # keeps mutation alive; no floor is given anywhere


class AdaptiveState:
    """Per-species parameter vectors plus the current success sets."""

    __slots__ = ("f1", "f2", "cr", "s_f1", "s_f2", "s_cr")

    def __init__(self, f1, f2, cr):
        self.f1 = np.asarray(f1, dtype=np.float64)
        self.f2 = np.asarray(f2, dtype=np.float64)
        self.cr = np.asarray(cr, dtype=np.float64)
        self.s_f1 = []
        self.s_f2 = []
        self.s_cr = []

    @classmethod
    def fresh(cls, rng, dim):
        f1 = np.array([rng.uniform() for _ in range(dim)])
        f2 = np.array([rng.uniform() for _ in range(dim)])
        cr = np.array([rng.uniform() for _ in range(dim)])
        return cls(f1, f2, cr)

    def record_successes(self, delta_fs):
        """A successful trial stores the full current vectors plus its gain."""
        for df in delta_fs:
            df = float(df)
            self.s_f1.append((self.f1, df))
            self.s_f2.append((self.f2, df))
            self.s_cr.append((self.cr, df))

    def clear(self):
        self.s_f1 = []
        self.s_f2 = []
        self.s_cr = []


def success_weights(delta_fs):
    """Weights proportional to the fitness gains, summing to one."""
    dfs = np.asarray(list(delta_fs), dtype=np.float64)
    if dfs.size == 0:
        raise EmptySuccessSet("no successful trials recorded")
    if np.any(dfs <= 0):
        raise ValueError("fitness gains must be positive")
    return dfs / dfs.sum()


def weighted_power_mean(values, weights):
    """((sum w*s) / |S|) ** (1/1.5).

    Note the extra 1/|S| inside the base: a singleton set maps 0.5 to
    0.5**(2/3) ~ 0.63, i.e. the mean can exceed its inputs.
    """
    vals = np.asarray(list(values), dtype=np.float64)
    if vals.size == 0:
        raise EmptySuccessSet("no successful trials recorded")
    w = np.asarray(list(weights), dtype=np.float64)
    return float((np.dot(w, vals) / vals.size) ** _POWER_EXPONENT)


def weighted_lehmer_mean(values, weights):
    """sum(w*s^2) / sum(w*s); lies between min and max of the values."""
    vals = np.asarray(list(values), dtype=np.float64)
    if vals.size == 0:
        raise EmptySuccessSet("no successful trials recorded")
    w = np.asarray(list(weights), dtype=np.float64)
    return float(np.dot(w, vals * vals) / np.dot(w, vals))


def _success_matrix(success_set):
    vectors = np.stack([v for v, _ in success_set])
    dfs = np.array([df for _, df in success_set], dtype=np.float64)
    return vectors, dfs / dfs.sum()


def _power_mean_vec(success_set):
    vectors, w = _success_matrix(success_set)
    return (w @ vectors / len(success_set)) ** _POWER_EXPONENT


def _lehmer_mean_vec(success_set):
    vectors, w = _success_matrix(success_set)
    return (w @ (vectors * vectors)) / (w @ vectors)


def update_mutation_factor(state: AdaptiveState, which: str, species_min,
                           species_max, fn_lb, fn_ub, fes, max_fes, rng):
    """New F1 or F2 vector; stores it on the state and clears its set.

    The base value mixes the previous vector, the species extent
    relative to the domain, and the remaining budget fraction; when the
    generation produced successes it is blended toward their weighted
    mean (power mean for F1, Lehmer mean for F2).
    """
    wf = 0.8 + 0.2 * rng.uniform()
    old = state.f1 if which == "F1" else state.f2
    sset = state.s_f1 if which == "F1" else state.s_f2
    base = (0.25 * old
            + 0.25 * (np.asarray(species_max) - np.asarray(species_min))
            / (np.asarray(fn_ub) - np.asarray(fn_lb))
            + 0.5 * (1.0 - fes / max_fes))
    if sset:
        mean = _power_mean_vec(sset) if which == "F1" else _lehmer_mean_vec(sset)
        new = wf * base + (1.0 - wf) * mean
    else:
        new = base
    new = np.clip(new, F_FLOOR, 1.0)
    if which == "F1":
        state.f1 = new
        state.s_f1 = []
    else:
        state.f2 = new
        state.s_f2 = []
    return new


def update_crossover_rate(state: AdaptiveState, rng):
    """New CR vector; unchanged when the generation had no successes."""
    wf = 0.9 + 0.1 * rng.uniform()
    if state.s_cr:
        mean = _power_mean_vec(state.s_cr)
        new = np.clip(wf * state.cr + (1.0 - wf) * mean, 0.0, 1.0)
    else:
        new = state.cr
    state.cr = new
    state.s_cr = []
    return new
