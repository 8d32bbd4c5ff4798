#!/usr/bin/env python3
"""Timing comparison of the compiled and pure kernel backends.

Measures single-point objective evaluation across representative
problems and one full DE generation on a mid-sized species, then prints
the speedup table.  Both backends compute bit-identical results (see
tests/test_backend_parity.py); this script is about speed only.
"""

import sys
import time
import pathlib

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

import numpy as np

import eode._kernels.pure as pure
from eode.bench.functions import build_objective_data
from eode.bench.problems import problem_spec

try:
    import eode._kernels._core as core
except ImportError:
    core = None


def build(mod, fid, dim):
    d = build_objective_data(fid, dim)
    return mod.make_objective(d["kind"], d["dim"], d["lower"], d["upper"], d["params"])


def time_eval(obj, pts, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for p in pts:
            obj.eval(p)
    return (time.perf_counter() - t0) / (repeat * len(pts))


def time_generation(mod, obj, n=100, gens=30):
    dim = obj.dim
    rng = mod.Rng(1)
    rs = np.random.default_rng(0)
    pop = rs.uniform(obj.lower, obj.upper, size=(n, dim))
    fit = np.array([obj.eval(r) for r in pop])
    stag = np.zeros(n, dtype=np.int64)
    f1 = rs.uniform(0.01, 1, dim)
    f2 = rs.uniform(0.01, 1, dim)
    cr = rs.uniform(0, 1, dim)
    t0 = time.perf_counter()
    for g in range(gens):
        order = np.lexsort((np.arange(n), -fit)).astype(np.int64)
        mod.evolve_generation(obj, rng, pop, fit, stag, f1, f2, cr,
                              g / gens, 0, 10**9, order)
    return (time.perf_counter() - t0) / (gens * n)


def main():
    if core is None:
        print("compiled kernels not available; build with "
              "`python3 setup.py build_ext --inplace`")
        return 1
    cases = [(1, 200000), (6, 50000), (13, 20000), (19, 4000), (20, 2000)]
    print(f"{'case':24s} {'pure':>12s} {'compiled':>12s} {'speedup':>9s}")
    rs = np.random.default_rng(42)
    for idx, repeat in cases:
        sp = problem_spec(idx)
        op = build(pure, sp.function_id, sp.dim)
        oc = build(core, sp.function_id, sp.dim)
        pts = rs.uniform(sp.lower_bounds, sp.upper_bounds, size=(20, sp.dim))
        tp = time_eval(op, pts, max(1, repeat // 20))
        tc = time_eval(oc, pts, max(1, repeat // 20))
        print(f"eval {sp.name:19s} {tp * 1e6:10.2f}us {tc * 1e6:10.2f}us {tp / tc:8.1f}x")
    for idx in (1, 13):
        sp = problem_spec(idx)
        op = build(pure, sp.function_id, sp.dim)
        oc = build(core, sp.function_id, sp.dim)
        tp = time_generation(pure, op)
        tc = time_generation(core, oc)
        print(f"generation {sp.name:13s} {tp * 1e6:10.2f}us {tc * 1e6:10.2f}us {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
