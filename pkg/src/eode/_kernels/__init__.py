"""Kernel backend selection.

The compiled extension (``_core``, built from ``_core.pyx``) and the
pure-Python module (``pure``) expose the same surface and produce
bit-identical results for the same seed.  The compiled one is preferred
when available; set ``EODE_BACKEND=pure`` (or ``compiled``) to force a
choice, e.g. for the parity tests.
"""

import os

from . import pure as _pure

_choice = os.environ.get("EODE_BACKEND", "").strip().lower()

if _choice == "pure":
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _pure

BACKEND = _impl.BACKEND
Rng = _impl.Rng
make_objective = _impl.make_objective
evolve_generation = _impl.evolve_generation
opposition_jump = _impl.opposition_jump

# mode / function-kind codes are defined once, in the pure module
MODE_EODE = _pure.MODE_EODE
MODE_RAND = _pure.MODE_RAND
MODE_BEST = _pure.MODE_BEST
MODE_RAND_BEST = _pure.MODE_RAND_BEST

F_TRAP = _pure.F_TRAP
F_EQUAL_MAXIMA = _pure.F_EQUAL_MAXIMA
F_UNEVEN_MAXIMA = _pure.F_UNEVEN_MAXIMA
F_HIMMELBLAU = _pure.F_HIMMELBLAU
F_SIX_HUMP = _pure.F_SIX_HUMP
F_SHUBERT = _pure.F_SHUBERT
F_VINCENT = _pure.F_VINCENT
F_MOD_RASTRIGIN = _pure.F_MOD_RASTRIGIN
F_COMPOSITION = _pure.F_COMPOSITION

B_GRIEWANK = _pure.B_GRIEWANK
B_RASTRIGIN = _pure.B_RASTRIGIN
B_WEIERSTRASS = _pure.B_WEIERSTRASS
B_SPHERE = _pure.B_SPHERE
B_EF8F2 = _pure.B_EF8F2
