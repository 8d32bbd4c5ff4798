"""Brute-force grid oracle: locate every global peak of a problem.

Independent of the kernel evaluation path (it scans through the
vectorized implementations) and of the optimizer itself; used to
validate the benchmark functions and to produce reference optima for
tests.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DimensionTooHigh
from .problems import ProblemSpec
from .vectorized import VectorizedObjective

_REFINE_TOL = 1e-13
_PEAK_BAND = 1e-3  # peaks reported within this fitness band of the best found


def _refine_batch(fun, x0, lo, hi, step, rng, max_iter=600, reheats=6):
    """Monotone ascent of many candidates at once: shrinking compass
    steps plus random rays, restarted at reduced scales.

    Rays matter on non-smooth landscapes (the composition components
    have Hoelder cusps at their optima, where axis-aligned steps alone
    can stall).  Step halves on failure, stays on success.  Fractal
    surfaces have genuine local maxima at every scale, so after each
    full shrink the step reheats to a fraction of the previous start:
    the rising envelope then carries the point ripple by ripple toward
    the summit.
    """
    x = np.array(x0, dtype=np.float64)
    k, dim = x.shape
    fx = fun(x)
    n_rays = 2 * dim
    n_moves = 2 * dim + n_rays
    start = float(step)
    for _ in range(reheats + 1):
        h = np.full(k, start)
        for _ in range(max_iter):
            live = np.nonzero(h > _REFINE_TOL)[0]
            if live.size == 0:
                break
            xl = x[live]
            hl = h[live]
            moves = np.zeros((live.size, n_moves, dim))
            for d in range(dim):
                moves[:, 2 * d, d] = hl
                moves[:, 2 * d + 1, d] = -hl
            rays = rng.standard_normal((live.size, n_rays, dim))
            norms = np.sqrt((rays ** 2).sum(axis=2, keepdims=True))
            norms[norms == 0.0] = 1.0
            moves[:, 2 * dim:, :] = rays / norms * hl[:, None, None]
            cand = np.clip(xl[:, None, :] + moves, lo, hi)
            vals = fun(cand.reshape(-1, dim)).reshape(live.size, n_moves)
            best = np.argmax(vals, axis=1)
            bestval = vals[np.arange(live.size), best]
            gain = bestval > fx[live]
            upd = live[gain]
            x[upd] = cand[gain, best[gain]]
            fx[upd] = bestval[gain]
            h[live[~gain]] *= 0.5
        start *= 0.25
    return x, fx


def _grid_candidates_1d(fun, lo, hi, resolution):
    # ties resolve to the earlier cell of a plateau (strict vs the left
    # neighbor, non-strict vs the right), so halfway-landing peaks are kept
    xs = np.linspace(lo[0], hi[0], resolution)
    f = fun(xs[None, :].T)
    inner = np.zeros(resolution, dtype=bool)
    inner[1:-1] = (f[1:-1] > f[:-2]) & (f[1:-1] >= f[2:])
    inner[0] = f[0] >= f[1]
    inner[-1] = f[-1] > f[-2]
    step = (hi[0] - lo[0]) / (resolution - 1)
    return [np.array([v]) for v in xs[inner]], step, float(f.max())


def _grid_candidates_2d(fun, lo, hi, resolution):
    xs = np.linspace(lo[0], hi[0], resolution)
    ys = np.linspace(lo[1], hi[1], resolution)
    grid = np.full((resolution + 2, resolution + 2), -np.inf)
    chunk = max(1, int(4e6) // resolution)
    for start in range(0, resolution, chunk):
        stop = min(resolution, start + chunk)
        gx, gy = np.meshgrid(xs[start:stop], ys, indexing="ij")
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        grid[start + 1:stop + 1, 1:-1] = fun(pts).reshape(stop - start, resolution)
    core = grid[1:-1, 1:-1]
    mask = np.ones_like(core, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = grid[1 + di:resolution + 1 + di, 1 + dj:resolution + 1 + dj]
            if (di, dj) > (0, 0):
                mask &= core >= shifted
            else:
                mask &= core > shifted
    ii, jj = np.nonzero(mask)
    step = max((hi[0] - lo[0]), (hi[1] - lo[1])) / (resolution - 1)
    return [np.array([xs[i], ys[j]]) for i, j in zip(ii, jj)], step, float(core.max())


def _grid_candidates_3d(fun, lo, hi, resolution):
    res = min(resolution, 220)
    axes = [np.linspace(lo[d], hi[d], res) for d in range(3)]
    vol = np.full((res,) * 3, -np.inf)
    for i in range(res):
        gy, gz = np.meshgrid(axes[1], axes[2], indexing="ij")
        pts = np.column_stack([np.full(gy.size, axes[0][i]), gy.ravel(), gz.ravel()])
        vol[i] = fun(pts).reshape(res, res)
    padded = np.full((res + 2,) * 3, -np.inf)
    padded[1:-1, 1:-1, 1:-1] = vol
    mask = np.ones_like(vol, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            for dk in (-1, 0, 1):
                if di == dj == dk == 0:
                    continue
                shifted = padded[1 + di:res + 1 + di, 1 + dj:res + 1 + dj, 1 + dk:res + 1 + dk]
                if (di, dj, dk) > (0, 0, 0):
                    mask &= vol >= shifted
                else:
                    mask &= vol > shifted
    idx = np.argwhere(mask)
    step = max(hi[d] - lo[d] for d in range(3)) / (res - 1)
    return [np.array([axes[d][k[d]] for d in range(3)]) for k in idx], step, float(vol.max())


def grid_oracle(spec: ProblemSpec, resolution: int):
    """Exhaustive scan + refinement; returns [(point, fitness), ...].

    Every returned entry is a distinct peak (niche-radius dedup) whose
    fitness lies within 1e-3 of the best value found anywhere on the
    grid.  Only defined up to three dimensions.
    """
    if spec.dim > 3:
        raise DimensionTooHigh("grid oracle supports dim <= 3")
    fun = VectorizedObjective(spec)
    lo = spec.lower_bounds
    hi = spec.upper_bounds
    if spec.dim == 1:
        cands, step, best_grid = _grid_candidates_1d(fun, lo, hi, resolution)
    elif spec.dim == 2:
        cands, step, best_grid = _grid_candidates_2d(fun, lo, hi, resolution)
    else:
        cands, step, best_grid = _grid_candidates_3d(fun, lo, hi, resolution)

    if not cands:
        return []
    # the grid undervalues cusp peaks badly, so every local maximum is
    # refined; no value-based pre-filter
    rng = np.random.default_rng(1_000_003 * spec.index + resolution)
    xs, fs = _refine_batch(fun, np.stack(cands), lo, hi, step, rng)
    refined = sorted(zip(xs, fs), key=lambda t: -t[1])
    peaks = []
    r = spec.niche_radius
    for x, fx in refined:
        if peaks and fx < peaks[0][1] - _PEAK_BAND:
            break
        if all(float(np.linalg.norm(x - px)) > r for px, _ in peaks):
            peaks.append((x, fx))
    return peaks
