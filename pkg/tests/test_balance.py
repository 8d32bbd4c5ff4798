import numpy as np
import pytest

from eode._kernels import Rng
from eode.balance import balance_species, species_spread
from eode.bench import FitnessBudget, problem_spec
from eode.types import Individual, Species

from conftest import make_species


class TestSpeciesSpread:
    def test_identical_members_zero_variance(self, spec_f5):
        sp = make_species([[1.0, 1.0]] * 12, [0] * 12)
        stats = species_spread(sp, 1, spec_f5)
        assert stats.variance == 0.0

    def test_square_corners_hand_value(self, spec_f5):
        pts = [[0, 0], [2, 0], [0, 2], [2, 2]] * 3  # 12 members
        sp = make_species(pts, [0] * 12)
        stats = species_spread(sp, 1, spec_f5)
        assert abs(stats.variance - np.trace(stats.covariance)) < 1e-12
        eigsum = np.linalg.eigvalsh(stats.covariance).sum()
        assert abs(stats.variance - eigsum) < 1e-9

    def test_t_best_selection(self, spec_f5):
        # gen large: t = max(size//gen, 10) -> the 10 best; the best 10
        # members sit at one point, so the spread is zero even though
        # the worst members are far away
        pts = [[0.0, 0.0]] * 10 + [[5.0, 5.0]] * 5
        fits = [10.0] * 10 + [0.0] * 5
        sp = make_species(pts, fits)
        stats = species_spread(sp, 50, spec_f5)
        assert stats.variance == 0.0


class TestBalance:
    def _uniform_species(self, spec, rng, n, center, spread, budget):
        from eode.bench.functions import objective_for
        obj = objective_for(spec)
        pts = np.clip(center + spread * np.random.default_rng(7).standard_normal((n, spec.dim)),
                      spec.lower_bounds, spec.upper_bounds)
        members = [Individual(p, obj.eval(p)) for p in pts]
        for _ in members:
            budget.spend_one()
        return Species(members=members)

    def test_fixed_point_sizes(self, spec_f5):
        budget = FitnessBudget(10**6)
        rng = Rng(1)
        sizes = [25, 25, 25, 25]
        sl = [self._uniform_species(spec_f5, rng, s, np.array([0.1, -0.7]), 0.05, budget)
              for s in sizes]
        used0 = budget.used
        out = balance_species(sl, 100, 1.0, 1, budget, spec_f5, rng)
        assert [len(s) for s in out] == sizes
        assert budget.used == used0  # nothing generated

    def test_tiny_species_topped_up(self, spec_f5):
        budget = FitnessBudget(10**6)
        rng = Rng(2)
        small = self._uniform_species(spec_f5, rng, 2, np.array([0.1, -0.7]), 0.02, budget)
        big = self._uniform_species(spec_f5, rng, 78, np.array([-0.1, 0.7]), 0.05, budget)
        out = balance_species([small, big], 80, 1.0, 1, budget, spec_f5, rng)
        # 2-member species gains max(dim-2, 10) = 10, then refills to the
        # 40-member target
        assert len(out[0]) == 40
        assert len(out[1]) == 40

    def test_oversized_trimmed_to_worst_removed(self, spec_f5):
        budget = FitnessBudget(10**6)
        rng = Rng(3)
        sl = [self._uniform_species(spec_f5, rng, 70, np.array([0.1, -0.7]), 0.05, budget),
              self._uniform_species(spec_f5, rng, 30, np.array([-0.1, 0.7]), 0.05, budget)]
        worst_fits = sorted(m.fitness for m in sl[0].members)[:20]
        out = balance_species(sl, 100, 1.0, 1, budget, spec_f5, rng)
        assert len(out[0]) == 50
        kept = [m.fitness for m in out[0].members]
        assert min(kept) > max(worst_fits) - 1e-12

    def test_simulated_rebalance_sizes(self, spec_f5):
        # NP=100 over sizes {70,10,10,10}: oversized trimmed to 25,
        # undersized refilled toward 25 (subject to the 10-member floor)
        budget = FitnessBudget(10**6)
        rng = Rng(4)
        centers = [np.array([0.1, -0.7]), np.array([-0.1, 0.7]),
                   np.array([1.0, 0.5]), np.array([-1.0, -0.5])]
        sl = [self._uniform_species(spec_f5, rng, n, c, 0.04, budget)
              for n, c in zip((70, 10, 10, 10), centers)]
        out = balance_species(sl, 100, 1.0, 1, budget, spec_f5, rng)
        assert [len(s) for s in out] == [25, 25, 25, 25]

    def test_generated_members_evaluated_in_bounds(self, spec_f5):
        budget = FitnessBudget(10**6)
        rng = Rng(5)
        sl = [self._uniform_species(spec_f5, rng, 4, np.array([0.5, 0.5]), 0.02, budget)]
        used0 = budget.used
        out = balance_species(sl, 40, 1.0, 1, budget, spec_f5, rng)
        gained = budget.used - used0
        assert gained == len(out[0]) - 4
        from eode.bench.functions import objective_for
        obj = objective_for(spec_f5)
        for m in out[0].members:
            assert np.all(m.genome >= spec_f5.lower_bounds)
            assert np.all(m.genome <= spec_f5.upper_bounds)
            assert m.fitness == obj.eval(m.genome)

    def test_refill_order_descending_variance(self, spec_f5, monkeypatch):
        import eode.balance as bal
        budget = FitnessBudget(10**6)
        rng = Rng(6)
        tight = self._uniform_species(spec_f5, rng, 15, np.array([0.5, 0.5]), 0.001, budget)
        wide = self._uniform_species(spec_f5, rng, 15, np.array([-0.5, -0.5]), 0.2, budget)
        seen = []
        orig = bal.sample_around_seed
        def spy(species, count, cov, spec, rng_, budget_):
            seen.append(species)
            return orig(species, count, cov, spec, rng_, budget_)
        monkeypatch.setattr(bal, "sample_around_seed", spy)
        balance_species([tight, wide], 120, 1.0, 1, budget, spec_f5, rng)
        refisll = [s for s in seen]
        assert refisll.index(wide) < refisll.index(tight)

    def test_budget_exhaustion_partial(self, spec_f5):
        budget = FitnessBudget(3)
        rng = Rng(7)
        sp = make_species([[0.5, 0.5], [0.52, 0.5]], [1.0, 0.9])
        out = balance_species([sp], 40, 1.0, 1, budget, spec_f5, rng)
        assert budget.used == 3  # spent everything, returned partial
        assert len(out[0]) == 5  # 2 original + the 3 evaluated top-ups
