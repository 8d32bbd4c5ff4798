import numpy as np
import pytest

from eode.bench import grid_oracle, problem_spec
from eode.errors import DimensionTooHigh


class TestGridOracle:
    def test_f2_five_peaks(self):
        sp = problem_spec(2)
        peaks = grid_oracle(sp, 10**6)
        assert len(peaks) == 5
        for p, f in peaks:
            assert abs(f - 1.0) < 1e-9
        xs = sorted(p[0] for p, _ in peaks)
        np.testing.assert_allclose(xs, [0.1, 0.3, 0.5, 0.7, 0.9], atol=1e-6)

    def test_f4_four_peaks(self):
        peaks = grid_oracle(problem_spec(4), 2000)
        assert len(peaks) == 4
        assert all(abs(f - 200.0) < 1e-6 for _, f in peaks)

    def test_f7_36_peaks(self):
        peaks = grid_oracle(problem_spec(7), 4000)
        assert len(peaks) == 36
        assert abs(peaks[0][1] - 1.0) < 1e-9

    def test_dimension_guard(self):
        with pytest.raises(DimensionTooHigh):
            grid_oracle(problem_spec(16), 50)

    def test_peak_heights_match_table(self):
        # the stored full-precision heights agree with an independent
        # refinement from a coarse grid
        for idx, res in ((5, 400), (6, 1000)):
            sp = problem_spec(idx)
            peaks = grid_oracle(sp, res)
            assert len(peaks) == sp.num_known_peaks
            assert abs(peaks[0][1] - sp.peak_height) < 1e-9
