"""Nearest-better speciation with subtree-size guards and valley checks,
applied at two levels to split merged niches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bench.budget import FitnessBudget
from .bench.functions import evaluate
from .engine import repair_bounds
from .errors import BudgetExhausted, PopulationTooSmall
from .types import Individual, Species


@dataclass
class NearestBetterTree:
    """Spanning structure linking every individual to its nearest
    strictly-better neighbor (node values are population indices)."""

    nodes: list
    parent: np.ndarray       # follower -> leader, -1 at the root
    edge_length: np.ndarray  # Euclidean distance to the leader, nan at the root
    follow: np.ndarray       # subtree sizes
    root: int
    mu_dist: float           # mean edge length


def build_tree(population) -> NearestBetterTree:
    """Link each individual to the nearest one of strictly better rank.

    Rank is (fitness, -index): equal fitnesses break toward the lower
    index, which keeps the tree single-rooted and deterministic.
    """
    n = len(population)
    if n < 2:
        raise PopulationTooSmall("nearest-better tree needs at least 2 individuals")
    x = np.stack([np.asarray(m.genome, dtype=np.float64) for m in population])
    fit = np.array([m.fitness for m in population])
    idx = np.arange(n)

    parent = np.full(n, -1, dtype=np.int64)
    edge = np.full(n, np.nan)
    chunk = max(1, int(2e6) // n)
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        diff = x[start:stop, None, :] - x[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        block_idx = idx[start:stop, None]
        better = (fit[None, :] > fit[start:stop, None]) | (
            (fit[None, :] == fit[start:stop, None]) & (idx[None, :] < block_idx))
        d2 = np.where(better, d2, np.inf)
        j = np.argmin(d2, axis=1)
        has = np.isfinite(d2[np.arange(stop - start), j])
        rows = np.arange(start, stop)[has]
        parent[rows] = j[has]
        edge[rows] = np.sqrt(d2[np.arange(stop - start), j][has])

    roots = np.nonzero(parent < 0)[0]
    root = int(roots[0])

    follow = np.ones(n, dtype=np.int64)
    topo = np.lexsort((-idx, fit))  # children strictly before parents
    for i in topo:
        p = parent[i]
        if p >= 0:
            follow[p] += follow[i]

    lengths = edge[parent >= 0]
    mu = float(lengths.mean()) if lengths.size else 0.0
    return NearestBetterTree(nodes=list(population), parent=parent,
                             edge_length=edge, follow=follow, root=root,
                             mu_dist=mu)


def minsize_schedule(gen: int, dim: int) -> int:
    """Grows with the framework generation, capped by the dimension bound."""
    return min(5 + gen // 2, max(10, 3 * dim))


def _component_root(parent, i):
    while parent[i] >= 0:
        i = parent[i]
    return i


def cut_species(tree: NearestBetterTree, phi: float, minsize: int,
                budget: FitnessBudget, spec, rng=None) -> list:
    """Split the tree into species by cutting long edges.

    Edges are visited longest first; a cut needs both resulting sides to
    hold at least ``minsize`` members and an interior probe of the edge
    evaluating strictly below both endpoints (the valley check, one
    budget-charged evaluation per candidate edge).  With an ``rng`` the
    probe position is drawn from the middle half of the edge: benchmark
    peaks often sit on an even lattice, where the exact midpoint of two
    non-adjacent basin bests lands on a third peak and a deterministic
    probe would veto every cut.  Runs out of budget gracefully: cutting
    stops and the current components are returned.
    """
    parent = tree.parent.copy()
    follow = tree.follow.copy()
    n = len(tree.nodes)
    followers = np.nonzero(tree.parent >= 0)[0]
    order = followers[np.lexsort((followers, -tree.edge_length[followers]))]
    threshold = phi * tree.mu_dist

    for ef in order:
        ef = int(ef)
        if tree.edge_length[ef] <= threshold:
            break
        # an edge shorter than the problem's niche radius stays inside a
        # single scoring niche by definition; cutting it only shreds
        # rugged basins into sub-ripple species
        if tree.edge_length[ef] <= spec.niche_radius:
            continue
        er = _component_root(parent, ef)
        if follow[ef] < minsize or follow[er] - follow[ef] < minsize:
            continue
        el = int(parent[ef])
        t = 0.5 if rng is None else 0.25 + 0.5 * rng.uniform()
        a = tree.nodes[ef].genome
        b = tree.nodes[el].genome
        probe = repair_bounds(a + t * (b - a), spec.lower_bounds,
                              spec.upper_bounds)
        try:
            mf = evaluate(spec, probe, budget)
        except BudgetExhausted:
            break
        f_ef = tree.nodes[ef].fitness
        f_el = tree.nodes[el].fitness
        # below both endpoints: the edge crosses a valley; above both:
        # it crosses a ridge belonging to a third peak -- either way the
        # two sides are different niches
        if (mf < f_el and mf < f_ef) or (mf > f_el and mf > f_ef):
            parent[ef] = -1
            node = el
            while True:
                follow[node] -= follow[ef]
                if parent[node] < 0:
                    break
                node = int(parent[node])

    groups: dict = {}
    order_keys = []
    for i in range(n):
        r = _component_root(parent, i)
        if r not in groups:
            groups[r] = []
            order_keys.append(r)
        groups[r].append(tree.nodes[i])
    return [Species(members=groups[r]) for r in order_keys]


def two_level_speciation(population, phi1: float, phi2: float, minsize1: int,
                         minsize2: int, gen: int, dim: int,
                         budget: FitnessBudget, spec, rng=None) -> list:
    """First cut with the scheduled (or fixed) minsize, then re-speciate
    every species large enough to hold two second-level species."""
    ms1 = minsize_schedule(gen, dim) if minsize1 == -1 else minsize1
    first = cut_species(build_tree(population), phi1, ms1, budget, spec, rng)
    result = []
    for sp in first:
        if len(sp) >= 2 * minsize2:
            sub = cut_species(build_tree(sp.members), phi2, minsize2, budget,
                              spec, rng)
            result.extend(sub)
        else:
            result.append(sp)
    return result
