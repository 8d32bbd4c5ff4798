import numpy as np
import pytest

from eode.bench import (FitnessBudget, aggregate_pr_sr, count_found_peaks,
                        evaluate, objective_for, problem_spec)
from eode.errors import (BudgetExhausted, DimensionMismatch, EmptyRuns,
                         UnknownProblem)
from eode.types import Individual


class TestProblemTable:
    def test_row_8(self):
        sp = problem_spec(8)
        assert sp.function_id == "F6" and sp.dim == 3
        assert sp.num_known_peaks == 81
        assert round(sp.peak_height, 4) == 2709.0935
        assert sp.niche_radius == 0.5
        assert sp.max_fes == 400_000 and sp.default_np == 3000

    def test_row_10(self):
        sp = problem_spec(10)
        assert sp.function_id == "F8" and sp.dim == 2
        assert sp.num_known_peaks == 12
        assert sp.peak_height == -2.0
        assert sp.niche_radius == 0.01 and sp.default_np == 1000

    def test_row_6_displayed_height(self):
        assert round(problem_spec(6).peak_height, 3) == 186.731

    def test_unknown_problem(self):
        with pytest.raises(UnknownProblem):
            problem_spec(21)
        with pytest.raises(UnknownProblem):
            problem_spec(0)

    def test_all_rows_valid(self):
        for i in range(1, 21):
            sp = problem_spec(i)
            assert np.all(sp.lower_bounds < sp.upper_bounds)
            assert sp.num_known_peaks >= 1
            assert sp.max_fes > 0 and sp.default_np > 0
            assert sp.niche_radius > 0


class TestEvaluate:
    def test_six_hump_peak(self):
        sp = problem_spec(5)
        b = FitnessBudget(10)
        f = evaluate(sp, [0.08984201049804703, -0.7126563995361329], b)
        assert abs(f - 1.03163) < 1e-5
        assert b.used == 1

    def test_budget_exhausted(self):
        sp = problem_spec(1)
        b = FitnessBudget(2)
        evaluate(sp, [1.0], b)
        evaluate(sp, [1.0], b)
        with pytest.raises(BudgetExhausted):
            evaluate(sp, [1.0], b)
        assert b.used == 2

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            evaluate(problem_spec(4), [1.0], FitnessBudget(5))

    def test_f1_grid_argmax(self):
        # brute-force grid over the whole domain reaches the table height
        sp = problem_spec(1)
        xs = np.linspace(0.0, 30.0, 10**6)
        from eode.bench.vectorized import VectorizedObjective
        vals = VectorizedObjective(sp)(xs[:, None])
        assert abs(vals.max() - 200.0) < 1e-3

    def test_pure_eval_is_deterministic(self):
        sp = problem_spec(13)
        obj = objective_for(sp)
        x = [1.234, -2.345]
        assert obj.eval(x) == obj.eval(x)


class TestCountFoundPeaks:
    def _ind(self, x, f):
        return Individual(np.asarray(x, dtype=float), f)

    def test_two_distinct(self):
        sp = problem_spec(1)  # NKP 2, r 0.01, height 200
        sols = [self._ind([0.0], 200.0), self._ind([30.0], 200.0)]
        assert count_found_peaks(sp, sols, 1e-4) == 2

    def test_radius_dedup(self):
        sp = problem_spec(1)
        sols = [self._ind([0.0], 200.0), self._ind([0.005], 199.9999)]
        assert count_found_peaks(sp, sols, 1e-3) == 1

    def test_epsilon_filter(self):
        sp = problem_spec(1)
        sols = [self._ind([0.0], 199.0)]
        assert count_found_peaks(sp, sols, 1e-4) == 0
        assert count_found_peaks(sp, sols, 2.0) == 1

    def test_capped_at_nkp(self):
        sp = problem_spec(3)  # NKP 1
        sols = [self._ind([0.08], 1.0), self._ind([0.9], 1.0)]
        assert count_found_peaks(sp, sols, 1e-1) == 1

    def test_monotone_in_solutions(self):
        sp = problem_spec(2)
        sols = [self._ind([x], 1.0) for x in (0.1, 0.3, 0.5)]
        c1 = count_found_peaks(sp, sols, 1e-4)
        c2 = count_found_peaks(sp, sols + [self._ind([0.7], 1.0)], 1e-4)
        assert c2 >= c1


class TestAggregate:
    def test_all_full(self):
        pr, sr = aggregate_pr_sr([18] * 10, 18)
        assert (pr, sr) == (1.0, 1.0)

    def test_one_short_run(self):
        pr, sr = aggregate_pr_sr([18] * 9 + [17], 18)
        assert abs(pr - 179 / 180) < 1e-12
        assert sr == 0.9

    def test_zero(self):
        assert aggregate_pr_sr([0, 0], 5) == (0.0, 0.0)

    def test_empty_runs(self):
        with pytest.raises(EmptyRuns):
            aggregate_pr_sr([], 5)

    def test_range_check(self):
        with pytest.raises(ValueError):
            aggregate_pr_sr([6], 5)


class TestBudget:
    def test_reserve_release(self):
        b = FitnessBudget(5)
        b.reserve(3)
        assert b.remaining == 2
        b.spend_one()
        b.spend_one()
        with pytest.raises(BudgetExhausted):
            b.spend_one()
        b.release(1)
        b.spend_one()
        assert b.used == 3

    def test_consume_guard(self):
        b = FitnessBudget(5)
        with pytest.raises(ValueError):
            b.consume(6)


class TestOracleDerivedCounts:
    def test_f5_oracle_optima_count_as_two_peaks(self):
        from eode.bench import grid_oracle
        sp = problem_spec(5)
        peaks = grid_oracle(sp, 400)
        sols = [Individual(np.asarray(p), f) for p, f in peaks]
        assert count_found_peaks(sp, sols, 1e-4) == 2
