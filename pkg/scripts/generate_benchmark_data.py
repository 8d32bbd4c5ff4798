#!/usr/bin/env python3
"""Generate the composition-function data tables (shift optima and
rotation matrices) shipped under ``src/eode/bench/data/``.

The files follow the plain-text layout used by the published benchmark
suite: whitespace-separated doubles, row-major.  ``optima.dat`` holds 8
rows x 20 columns; each composition instance reads the first
``n_components`` rows and the first ``dim`` columns.  Rotation files
stack ``n_components`` orthogonal dim x dim matrices.

Deterministic: re-running reproduces the committed files byte for byte.
"""

import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "eode" / "bench" / "data"

SEED = 20130613
N_ROWS = 8
MAX_DIM = 20
BOX = 3.9          # optima stay this far inside the +-5 domain walls
MIN_SEP_2D = 2.5   # pairwise separation of the first two coordinates


def gen_optima(rng):
    """8 points whose 2-D prefixes are pairwise >= MIN_SEP_2D apart.

    Separation in a coordinate prefix carries over to every higher
    dimension, so this single constraint keeps all instances' peaks
    distinct and comfortably outside each other's niche radius.
    """
    while True:
        pts = []
        for _ in range(10_000):
            cand = rng.uniform(-BOX, BOX, size=2)
            if all(np.linalg.norm(cand - p) >= MIN_SEP_2D for p in pts):
                pts.append(cand)
                if len(pts) == N_ROWS:
                    break
        if len(pts) == N_ROWS:
            break
    head = np.stack(pts)
    tail = rng.uniform(-BOX, BOX, size=(N_ROWS, MAX_DIM - 2))
    return np.hstack([head, tail])


def random_rotation(rng, dim):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def write_matrix(path, mat):
    with open(path, "w") as fh:
        for row in np.atleast_2d(mat):
            fh.write(" ".join(f"{v:.18e}" for v in row) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    optima = gen_optima(rng)
    write_matrix(OUT / "optima.dat", optima)

    for name, n_comp in (("CF3", 6), ("CF4", 8)):
        for dim in (2, 3, 5, 10, 20):
            stacked = np.vstack([random_rotation(rng, dim) for _ in range(n_comp)])
            write_matrix(OUT / f"{name}_M_D{dim}.dat", stacked)
    print(f"wrote data tables to {OUT}")


if __name__ == "__main__":
    main()
