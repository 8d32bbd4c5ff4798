"""Full-run orchestration: seeded runs over the benchmark problems,
PR/SR scoring at the five accuracy levels, and the ablation variants."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .archive import PeakArchive
from .balance import balance_species
from .bench.budget import FitnessBudget
from .bench.functions import evaluate
from .bench.metrics import aggregate_pr_sr, count_found_peaks
from .bench.problems import problem_spec
from .engine import JumpWindow, MutationMode, default_max_gen, evolve_species
from .errors import BudgetExhausted
from .localsearch import local_search
from .niching import two_level_speciation
from .types import Individual

EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)


@dataclass(frozen=True)
class RunConfig:
    """One experiment: a problem plus every knob of the optimizer."""

    problem_index: int
    np: int | None = None          # population size; None = benchmark default
    runs: int = 10
    base_seed: int = 1000
    phi1: float = 1.0
    phi2: float = 1.0
    minsize1: int = -1             # -1 = generation-adaptive schedule
    minsize2: int = 5
    delta: float = 1.0
    mutation_mode: str = "eode"
    jr_window: str = "late"
    max_gen: int | None = None     # None = dimension default
    epsilons: tuple = EPSILONS
    stagnation_k: int = 10
    dump_generations: bool = False
    jobs: int = 1

    def resolved(self):
        spec = problem_spec(self.problem_index)
        return (spec,
                self.np if self.np else spec.default_np,
                MutationMode(self.mutation_mode),
                JumpWindow(self.jr_window),
                self.max_gen if self.max_gen else default_max_gen(spec.dim))

    def to_dict(self):
        d = {f: getattr(self, f) for f in self.__dataclass_fields__}
        d["epsilons"] = list(self.epsilons)
        return d

    @classmethod
    def from_dict(cls, data):
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        if "epsilons" in known:
            known["epsilons"] = tuple(known["epsilons"])
        return cls(**known)


@dataclass
class RunRecord:
    """Outcome of a single seeded run."""

    run: int
    seed: int
    counts: dict               # epsilon -> peaks found
    fes_used: int
    wall_time: float           # kept in memory, never written to reports
    generations_completed: int
    archive_lines: list
    dumps: list = field(default_factory=list)  # (gen, rows) when enabled


@dataclass
class RunResult:
    """Aggregate over an experiment's runs."""

    config: RunConfig
    records: list
    pr_sr: dict                # epsilon -> (pr, sr)

    @property
    def nkp(self):
        return problem_spec(self.config.problem_index).num_known_peaks


def run_eode(config: RunConfig, seed: int) -> RunRecord:
    """One run: initialize, then loop speciate / balance / evolve /
    refine / merge until the evaluation budget is gone."""
    spec, np_size, mode, window, max_gen = config.resolved()
    dim = spec.dim
    lb = spec.lower_bounds
    ub = spec.upper_bounds
    rng = K.Rng(seed)
    budget = FitnessBudget(spec.max_fes)
    t0 = time.perf_counter()

    population = []
    for _ in range(np_size):
        g = np.empty(dim)
        for d in range(dim):
            g[d] = lb[d] + rng.uniform() * (ub[d] - lb[d])
        try:
            f = evaluate(spec, g, budget)
        except BudgetExhausted:
            break
        population.append(Individual(g, f, 0))

    # the textbook best/1, best/2 operators of the ablation modes anchor
    # on the run's best point so far, not the species best
    anchored = mode in (MutationMode.EODE_B, MutationMode.EODE_RB)
    global_best = None
    global_best_fit = -np.inf
    for m in population:
        if m.fitness > global_best_fit:
            global_best = m.genome.copy()
            global_best_fit = m.fitness

    archive = PeakArchive()
    gen = 0
    completed = 0
    dumps = []
    while True:
        species_list = two_level_speciation(population, config.phi1, config.phi2,
                                            config.minsize1, config.minsize2,
                                            gen, dim, budget, spec, rng)
        species_list = balance_species(species_list, np_size, config.delta,
                                       gen + 1, budget, spec, rng)
        # fittest species first: when the budget dies mid-pass, the
        # starved tail is the low-fitness (local-optimum) species
        species_list.sort(key=lambda sp: -sp.seed.fitness)
        # hold one evaluation per pending merge so every refined peak
        # can still be scored on the final, budget-starved pass
        budget.reserve(len(species_list))
        for sp in species_list:
            localbest = evolve_species(sp, spec, budget, mode=mode,
                                       max_gen=max_gen, rng=rng,
                                       jr_window=window,
                                       stagnation_k=config.stagnation_k,
                                       anchor=global_best if anchored else None)
            refined = local_search(localbest, sp, budget, spec, rng)
            if refined.fitness > global_best_fit:
                global_best = refined.genome.copy()
                global_best_fit = refined.fitness
            bi = sp.seed_index()
            if refined.fitness > sp.members[bi].fitness:
                sp.members[bi] = Individual(refined.genome.copy(),
                                            refined.fitness, 0)
            budget.release(1)
            archive.merge(refined, budget, spec, rng)
        budget.release(budget.reserved)
        population = [m for sp in species_list for m in sp.members]
        if config.dump_generations:
            rows = []
            for si, sp in enumerate(species_list):
                for m in sp.members:
                    rows.append((si, [float(v) for v in m.genome], m.fitness))
            dumps.append((gen + 1, rows))
        if budget.remaining > 0:
            completed += 1
        gen += 1
        if budget.remaining <= 0:
            break

    solutions = archive.as_individuals()
    counts = {eps: count_found_peaks(spec, solutions, eps)
              for eps in config.epsilons}
    return RunRecord(run=0, seed=seed, counts=counts, fes_used=budget.used,
                     wall_time=time.perf_counter() - t0,
                     generations_completed=completed,
                     archive_lines=archive.to_lines(), dumps=dumps)


def _run_indexed(args):
    config, run_idx = args
    rec = run_eode(config, config.base_seed + run_idx)
    rec.run = run_idx
    return rec


def run_experiment(config: RunConfig) -> RunResult:
    """All runs of a config (seeds base_seed .. base_seed+runs-1).

    Runs are independent, so they may execute in parallel; records are
    assembled in run order either way, keeping reports byte-identical.
    """
    tasks = [(config, i) for i in range(config.runs)]
    if config.jobs > 1 and config.runs > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, config.runs)) as pool:
            records = list(pool.map(_run_indexed, tasks))
    else:
        records = [_run_indexed(t) for t in tasks]
    records.sort(key=lambda r: r.run)
    nkp = problem_spec(config.problem_index).num_known_peaks
    pr_sr = {eps: aggregate_pr_sr([r.counts[eps] for r in records], nkp)
             for eps in config.epsilons}
    return RunResult(config=config, records=records, pr_sr=pr_sr)


ABLATION_KINDS = {
    "mutation": [("eode", {}), ("eode-r", {"mutation_mode": "eode-r"}),
                 ("eode-b", {"mutation_mode": "eode-b"}),
                 ("eode-rb", {"mutation_mode": "eode-rb"})],
    "phi": [("phi1=1,phi2=1", {"phi1": 1.0, "phi2": 1.0}),
            ("phi1=0.6,phi2=0.6", {"phi1": 0.6, "phi2": 0.6}),
            ("phi1=2,phi2=1", {"phi1": 2.0, "phi2": 1.0})],
    "jr": [("late", {"jr_window": "late"}), ("early", {"jr_window": "early"}),
           ("full", {"jr_window": "full"})],
}


def run_ablation(kind: str, config: RunConfig):
    """Run every variant of one ablation axis on the config's problem.

    Returns [(variant_label, RunResult), ...] in the fixed variant
    order.  The mutation axis overrides mutation_mode, the phi axis the
    speciation granularity pair, the jr axis the jump window.
    """
    if kind not in ABLATION_KINDS:
        raise ValueError(f"unknown ablation kind {kind!r}; choose from "
                         f"{sorted(ABLATION_KINDS)}")
    out = []
    for label, overrides in ABLATION_KINDS[kind]:
        out.append((label, run_experiment(replace(config, **overrides))))
    return out
