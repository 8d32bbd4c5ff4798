"""The twenty benchmark problems: bounds, peak counts, budgets.

Peak heights are stored at full double precision (the counting metric
needs them exact); the published table rounds them for display, which
the tests check against at that precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnknownProblem

# precise global-optimum values for the functions whose optimum is not a
# round number; derived by grid scan + monotone refinement (see
# tests/test_oracle.py, which re-derives them independently)
SIX_HUMP_PEAK = 1.0316284534898772
SHUBERT_2D_PEAK = 186.7309088310239
SHUBERT_3D_PEAK = 2709.093505572828


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark problem instance (maximization)."""

    index: int
    function_id: str
    dim: int
    lower_bounds: np.ndarray
    upper_bounds: np.ndarray
    num_known_peaks: int
    peak_height: float
    niche_radius: float
    max_fes: int
    default_np: int

    @property
    def name(self) -> str:
        return f"{self.function_id}({self.dim}D)"


def _bounds(fid: str, dim: int):
    if fid == "F1":
        return [0.0], [30.0]
    if fid in ("F2", "F3"):
        return [0.0], [1.0]
    if fid == "F4":
        return [-6.0, -6.0], [6.0, 6.0]
    if fid == "F5":
        return [-1.9, -1.1], [1.9, 1.1]
    if fid == "F6":
        return [-10.0] * dim, [10.0] * dim
    if fid == "F7":
        return [0.25] * dim, [10.0] * dim
    if fid == "F8":
        return [0.0] * dim, [1.0] * dim
    # composition functions
    return [-5.0] * dim, [5.0] * dim


# index -> (fid, dim, nkp, peak_height, r, max_fes, np)
_TABLE = {
    1: ("F1", 1, 2, 200.0, 0.01, 50_000, 250),
    2: ("F2", 1, 5, 1.0, 0.01, 50_000, 250),
    3: ("F3", 1, 1, 1.0, 0.01, 50_000, 250),
    4: ("F4", 2, 4, 200.0, 0.01, 50_000, 250),
    5: ("F5", 2, 2, SIX_HUMP_PEAK, 0.5, 50_000, 250),
    6: ("F6", 2, 18, SHUBERT_2D_PEAK, 0.5, 200_000, 2000),
    7: ("F7", 2, 36, 1.0, 0.2, 200_000, 2000),
    8: ("F6", 3, 81, SHUBERT_3D_PEAK, 0.5, 400_000, 3000),
    9: ("F7", 3, 216, 1.0, 0.2, 400_000, 4000),
    10: ("F8", 2, 12, -2.0, 0.01, 200_000, 1000),
    11: ("F9", 2, 6, 0.0, 0.01, 200_000, 1000),
    12: ("F10", 2, 8, 0.0, 0.01, 200_000, 1000),
    13: ("F11", 2, 6, 0.0, 0.01, 200_000, 1000),
    14: ("F11", 3, 6, 0.0, 0.01, 400_000, 1000),
    15: ("F12", 3, 8, 0.0, 0.01, 400_000, 1000),
    16: ("F11", 5, 6, 0.0, 0.01, 400_000, 1000),
    17: ("F12", 5, 8, 0.0, 0.01, 400_000, 2000),
    18: ("F11", 10, 6, 0.0, 0.01, 400_000, 1000),
    19: ("F12", 10, 8, 0.0, 0.01, 400_000, 1000),
    20: ("F12", 20, 8, 0.0, 0.01, 400_000, 800),
}

_CACHE: dict = {}


def problem_spec(index: int) -> ProblemSpec:
    """The benchmark row for ``index`` in 1..20."""
    if index not in _TABLE:
        raise UnknownProblem(f"problem index must be in 1..20, got {index!r}")
    if index not in _CACHE:
        fid, dim, nkp, height, r, fes, np_ = _TABLE[index]
        lo, hi = _bounds(fid, dim)
        _CACHE[index] = ProblemSpec(
            index=index,
            function_id=fid,
            dim=dim,
            lower_bounds=np.asarray(lo, dtype=np.float64),
            upper_bounds=np.asarray(hi, dtype=np.float64),
            num_known_peaks=nkp,
            peak_height=height,
            niche_radius=r,
            max_fes=fes,
            default_np=np_,
        )
    return _CACHE[index]


def all_problems():
    return [problem_spec(i) for i in range(1, 21)]
