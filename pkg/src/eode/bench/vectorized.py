"""Vectorized (numpy) objective implementations for the grid oracle.

A second, independent route to the same functions: the oracle scans
whole grids through these, and the tests cross-check them pointwise
against the scalar kernels.  Keep this module free of any kernel-backend
imports beyond the shared parameter tables.
"""

from __future__ import annotations

import numpy as np

from .. import _kernels as K
from .functions import build_objective_data
from .problems import ProblemSpec


def _trap_v(x):
    v = x[:, 0]
    conds = [
        v < 2.5,
        (v >= 2.5) & (v < 5.0),
        (v >= 5.0) & (v < 7.5),
        (v >= 7.5) & (v < 12.5),
        (v >= 12.5) & (v < 17.5),
        (v >= 17.5) & (v < 22.5),
        (v >= 22.5) & (v < 27.5),
        v >= 27.5,
    ]
    vals = [
        80.0 * (2.5 - v),
        64.0 * (v - 2.5),
        64.0 * (7.5 - v),
        28.0 * (v - 7.5),
        28.0 * (17.5 - v),
        32.0 * (v - 17.5),
        32.0 * (27.5 - v),
        80.0 * (v - 27.5),
    ]
    return np.select(conds, vals)


def _equal_maxima_v(x):
    return np.sin(5.0 * np.pi * x[:, 0]) ** 6


def _uneven_maxima_v(x):
    v = x[:, 0]
    env = np.exp(-2.0 * np.log(2.0) * ((v - 0.08) / 0.854) ** 2)
    return env * np.sin(5.0 * np.pi * (v ** 0.75 - 0.05)) ** 6


def _himmelblau_v(x):
    a = x[:, 0] ** 2 + x[:, 1] - 11.0
    b = x[:, 0] + x[:, 1] ** 2 - 7.0
    return 200.0 - a * a - b * b


def _six_hump_v(x):
    x2 = x[:, 0] ** 2
    y2 = x[:, 1] ** 2
    return -((4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x[:, 0] * x[:, 1] + (4.0 * y2 - 4.0) * y2)


def _shubert_v(x):
    prod = np.ones(x.shape[0])
    for d in range(x.shape[1]):
        acc = np.zeros(x.shape[0])
        for j in range(1, 6):
            acc += j * np.cos((j + 1) * x[:, d] + j)
        prod *= acc
    return -prod


def _vincent_v(x):
    return np.sin(10.0 * np.log(x)).sum(axis=1) / x.shape[1]


def _mod_rastrigin_v(x, kvec):
    acc = np.zeros(x.shape[0])
    for d in range(x.shape[1]):
        acc += 10.0 + 9.0 * np.cos(2.0 * np.pi * kvec[d] * x[:, d])
    return -acc


def _basic_v(func_id, z, w_c1, w_c2, w_k1):
    dim = z.shape[1]
    if func_id == K.B_GRIEWANK:
        s = (z ** 2).sum(axis=1) / 4000.0
        p = np.ones(z.shape[0])
        for d in range(dim):
            p *= np.cos(z[:, d] / np.sqrt(1.0 + d))
        return 1.0 + s - p
    if func_id == K.B_RASTRIGIN:
        return (z ** 2 - 10.0 * np.cos(2.0 * np.pi * z) + 10.0).sum(axis=1)
    if func_id == K.B_WEIERSTRASS:
        acc = np.zeros(z.shape[0])
        for d in range(dim):
            zd = z[:, d] + 0.5
            for k in range(21):
                acc += w_c1[k] * np.cos(w_c2[k] * zd)
        return acc - dim * w_k1
    if func_id == K.B_SPHERE:
        return (z ** 2).sum(axis=1)
    if func_id == K.B_EF8F2:
        acc = np.zeros(z.shape[0])
        for d in range(dim):
            a = z[:, d] + 1.0
            b = z[:, (d + 1) % dim] + 1.0
            f2 = 100.0 * (a * a - b) ** 2 + (1.0 - a) ** 2
            acc += 1.0 + f2 * f2 / 4000.0 - np.cos(f2)
        return acc
    raise ValueError(f"unknown basic function id {func_id!r}")


def _composition_v(x, p):
    n = p["n"]
    o = np.asarray(p["O"])
    w = np.empty((x.shape[0], n))
    for i in range(n):
        d2 = ((x - o[i]) ** 2).sum(axis=1)
        w[:, i] = np.exp(-d2 / p["wdenom"][i])
    maxw = w.max(axis=1)
    scale = 1.0 - maxw ** 10
    scaled = np.where(w == maxw[:, None], w, w * scale[:, None])
    totals = scaled.sum(axis=1)
    safe = np.where(totals == 0.0, 1.0, totals)
    weights = np.where(totals[:, None] == 0.0, 1.0 / n, scaled / safe[:, None])
    result = np.zeros(x.shape[0])
    for i in range(n):
        z = ((x - o[i]) / p["lambda"][i]) @ np.asarray(p["M"][i])
        fi = _basic_v(p["funcs"][i], z, p["w_c1"], p["w_c2"], p["w_k1"])
        result += weights[:, i] * (p["C"] * fi / p["fmax"][i])
    return -result


class VectorizedObjective:
    """Batch evaluator for one problem; points are (N, dim) arrays."""

    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self._data = build_objective_data(spec.function_id, spec.dim)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(points, dtype=np.float64))
        fid = self.spec.function_id
        if fid == "F1":
            return _trap_v(x)
        if fid == "F2":
            return _equal_maxima_v(x)
        if fid == "F3":
            return _uneven_maxima_v(x)
        if fid == "F4":
            return _himmelblau_v(x)
        if fid == "F5":
            return _six_hump_v(x)
        if fid == "F6":
            return _shubert_v(x)
        if fid == "F7":
            return _vincent_v(x)
        if fid == "F8":
            return _mod_rastrigin_v(x, self._data["params"]["k"])
        return _composition_v(x, self._data["params"])
