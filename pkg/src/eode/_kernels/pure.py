"""Pure-Python kernels: RNG, objective evaluation, and the hot DE loops.

This module is the reference implementation of everything the compiled
extension (``_core``) accelerates.  The two backends must consume random
draws in exactly the same order and perform floating-point operations in
exactly the same sequence, so that a run produces bit-identical results
no matter which backend is active.  Keep loops scalar and sequential;
do not "vectorize" anything here without mirroring the change in
``_core.pyx``.
"""

from __future__ import annotations

import math

BACKEND = "pure"

_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53, exact
_TWO_PI = 6.283185307179586


class Rng:
    """xoshiro256++ generator seeded through SplitMix64.

    Deterministic and portable: the same seed yields the same stream on
    every platform and on both backends.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed):
        sm = seed & _MASK64
        state = []
        for _ in range(4):
            sm = (sm + 0x9E3779B97F4A7C15) & _MASK64
            z = sm
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
            z = z ^ (z >> 31)
            state.append(z)
        if state[0] == 0 and state[1] == 0 and state[2] == 0 and state[3] == 0:
            state[0] = 1
        self._s0, self._s1, self._s2, self._s3 = state

    def _next(self):
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        tmp = (s0 + s3) & _MASK64
        result = (((tmp << 23) | (tmp >> 41)) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK64
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform(self):
        """Uniform double in [0, 1)."""
        return (self._next() >> 11) * _INV_2_53

    def below(self, n):
        """Uniform integer in [0, n)."""
        j = int(self.uniform() * n)
        if j >= n:
            j = n - 1
        return j

    def gauss(self):
        """Standard normal via Box-Muller; always consumes two uniforms."""
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        return r * math.cos(_TWO_PI * u2)


# ---------------------------------------------------------------------------
# Benchmark objectives (scalar reference)
# ---------------------------------------------------------------------------

# ids shared with the compiled backend
F_TRAP = 1
F_EQUAL_MAXIMA = 2
F_UNEVEN_MAXIMA = 3
F_HIMMELBLAU = 4
F_SIX_HUMP = 5
F_SHUBERT = 6
F_VINCENT = 7
F_MOD_RASTRIGIN = 8
F_COMPOSITION = 9  # all of CF1..CF4; parameters distinguish them

B_GRIEWANK = 0
B_RASTRIGIN = 1
B_WEIERSTRASS = 2
B_SPHERE = 3
B_EF8F2 = 4


def _trap(x):
    v = x[0]
    if v < 2.5:
        return 80.0 * (2.5 - v)
    if v < 5.0:
        return 64.0 * (v - 2.5)
    if v < 7.5:
        return 64.0 * (7.5 - v)
    if v < 12.5:
        return 28.0 * (v - 7.5)
    if v < 17.5:
        return 28.0 * (17.5 - v)
    if v < 22.5:
        return 32.0 * (v - 17.5)
    if v < 27.5:
        return 32.0 * (27.5 - v)
    return 80.0 * (v - 27.5)


def _equal_maxima(x):
    s = math.sin(5.0 * math.pi * x[0])
    s2 = s * s
    return s2 * s2 * s2


def _uneven_maxima(x):
    v = x[0]
    t = (v - 0.08) / 0.854
    env = math.exp(-2.0 * math.log(2.0) * t * t)
    s = math.sin(5.0 * math.pi * (pow(v, 0.75) - 0.05))
    s2 = s * s
    return env * s2 * s2 * s2


def _himmelblau(x):
    a = x[0] * x[0] + x[1] - 11.0
    b = x[0] + x[1] * x[1] - 7.0
    return 200.0 - a * a - b * b


def _six_hump(x):
    x2 = x[0] * x[0]
    y2 = x[1] * x[1]
    e1 = (4.0 - 2.1 * x2 + (x2 * x2) / 3.0) * x2
    e2 = x[0] * x[1]
    e3 = (4.0 * y2 - 4.0) * y2
    return -(e1 + e2 + e3)


def _shubert(x, dim):
    prod = 1.0
    for d in range(dim):
        acc = 0.0
        for j in range(1, 6):
            acc += j * math.cos((j + 1) * x[d] + j)
        prod *= acc
    return -prod


def _vincent(x, dim):
    acc = 0.0
    for d in range(dim):
        acc += math.sin(10.0 * math.log(x[d]))
    return acc / dim


def _mod_rastrigin(x, dim, kvec):
    acc = 0.0
    for d in range(dim):
        acc += 10.0 + 9.0 * math.cos(_TWO_PI * kvec[d] * x[d])
    return -acc


def basic_function(func_id, z, dim, w_c1, w_c2, w_k1):
    """Component functions used inside the composition construction.

    ``w_c1``/``w_c2`` are the Weierstrass term tables (0.5**k, 2*pi*3**k)
    and ``w_k1`` the per-dimension constant sum(c1*cos(c2*0.5)).
    """
    if func_id == B_GRIEWANK:
        s = 0.0
        p = 1.0
        for d in range(dim):
            s += z[d] * z[d]
            p *= math.cos(z[d] / math.sqrt(1.0 + d))
        return 1.0 + s / 4000.0 - p
    if func_id == B_RASTRIGIN:
        s = 0.0
        for d in range(dim):
            s += z[d] * z[d] - 10.0 * math.cos(_TWO_PI * z[d]) + 10.0
        return s
    if func_id == B_WEIERSTRASS:
        s = 0.0
        for d in range(dim):
            zd = z[d] + 0.5
            for k in range(21):
                s += w_c1[k] * math.cos(w_c2[k] * zd)
        return s - dim * w_k1
    if func_id == B_SPHERE:
        s = 0.0
        for d in range(dim):
            s += z[d] * z[d]
        return s
    if func_id == B_EF8F2:
        s = 0.0
        for d in range(dim - 1):
            s += _f8f2(z[d] + 1.0, z[d + 1] + 1.0)
        s += _f8f2(z[dim - 1] + 1.0, z[0] + 1.0)
        return s
    raise ValueError("unknown basic function id %r" % (func_id,))


def _f8f2(a, b):
    f2 = 100.0 * (a * a - b) * (a * a - b) + (1.0 - a) * (1.0 - a)
    return 1.0 + (f2 * f2) / 4000.0 - math.cos(f2)


def transform_to_z(x, o_row, lam, m_mat, dim, out):
    """z = ((x - o) / lambda) @ M, sequential inner sums."""
    tmp = [0.0] * dim
    for d in range(dim):
        tmp[d] = (x[d] - o_row[d]) / lam
    for j in range(dim):
        acc = 0.0
        for d in range(dim):
            acc += tmp[d] * m_mat[d][j]
        out[j] = acc
    return out


def transform_to_z_noshift(x, lam, m_mat, dim, out):
    tmp = [0.0] * dim
    for d in range(dim):
        tmp[d] = x[d] / lam
    for j in range(dim):
        acc = 0.0
        for d in range(dim):
            acc += tmp[d] * m_mat[d][j]
        out[j] = acc
    return out


class Objective:
    """One benchmark objective at a fixed dimension (maximization)."""

    def __init__(self, kind, dim, lower, upper, params):
        self.kind = kind
        self.dim = dim
        self.lower = list(lower)
        self.upper = list(upper)
        self.params = params
        if kind == F_COMPOSITION:
            p = params
            self._n = p["n"]
            self._funcs = list(p["funcs"])
            self._o = [list(row) for row in p["O"]]
            self._m = [[list(r) for r in mat] for mat in p["M"]]
            self._lam = list(p["lambda"])
            self._wdenom = list(p["wdenom"])
            self._fmax = list(p["fmax"])
            self._c = p["C"]
            self._wc1 = list(p["w_c1"])
            self._wc2 = list(p["w_c2"])
            self._wk1 = p["w_k1"]
        elif kind == F_MOD_RASTRIGIN:
            self._kvec = list(params["k"])

    def eval(self, x):
        """Objective value at point ``x`` (sequence of dim floats)."""
        xs = [float(v) for v in x]
        kind = self.kind
        if kind == F_TRAP:
            return _trap(xs)
        if kind == F_EQUAL_MAXIMA:
            return _equal_maxima(xs)
        if kind == F_UNEVEN_MAXIMA:
            return _uneven_maxima(xs)
        if kind == F_HIMMELBLAU:
            return _himmelblau(xs)
        if kind == F_SIX_HUMP:
            return _six_hump(xs)
        if kind == F_SHUBERT:
            return _shubert(xs, self.dim)
        if kind == F_VINCENT:
            return _vincent(xs, self.dim)
        if kind == F_MOD_RASTRIGIN:
            return _mod_rastrigin(xs, self.dim, self._kvec)
        return self._eval_composition(xs)

    def _eval_composition(self, x):
        dim = self.dim
        n = self._n
        w = [0.0] * n
        for i in range(n):
            s = 0.0
            o_row = self._o[i]
            for d in range(dim):
                diff = x[d] - o_row[d]
                s += diff * diff
            w[i] = math.exp(-s / self._wdenom[i])
        maxw = w[0]
        for i in range(1, n):
            if w[i] > maxw:
                maxw = w[i]
        m2 = maxw * maxw
        m4 = m2 * m2
        m8 = m4 * m4
        m10 = m8 * m2
        total = 0.0
        for i in range(n):
            if w[i] != maxw:
                w[i] = w[i] * (1.0 - m10)
            total += w[i]
        if total == 0.0:
            for i in range(n):
                w[i] = 1.0 / n
        else:
            for i in range(n):
                w[i] = w[i] / total
        z = [0.0] * dim
        result = 0.0
        for i in range(n):
            transform_to_z(x, self._o[i], self._lam[i], self._m[i], dim, z)
            fi = basic_function(self._funcs[i], z, dim, self._wc1, self._wc2, self._wk1)
            result += w[i] * (self._c * fi / self._fmax[i])
        return -result


def make_objective(kind, dim, lower, upper, params):
    return Objective(kind, dim, lower, upper, params)


# ---------------------------------------------------------------------------
# DE generation loop
# ---------------------------------------------------------------------------

MODE_EODE = 0
MODE_RAND = 1
MODE_BEST = 2
MODE_RAND_BEST = 3

OP_RAND1 = 0
OP_RAND2 = 1
OP_MIDBEST = 2
OP_BEST3 = 3
OP_BEST1 = 4
OP_BEST2 = 5


def _better(fa, ia, fb, ib):
    return fa > fb or (fa == fb and ia < ib)


def _pick_distinct(rng, n, exclude, count, out):
    """Rejection-sample ``count`` distinct indices != exclude into out."""
    got = 0
    while got < count:
        j = rng.below(n)
        if j == exclude:
            continue
        dup = False
        for t in range(got):
            if out[t] == j:
                dup = True
                break
        if not dup:
            out[got] = j
            got += 1


def _choose_operator(mode, pr, rng):
    if mode == MODE_EODE:
        if pr <= 0.33:
            if rng.uniform() <= 0.75:
                return OP_RAND1
            return OP_RAND2
        if pr <= 0.67:
            return OP_MIDBEST
        return OP_BEST3
    if mode == MODE_RAND:
        if rng.uniform() <= 0.5:
            return OP_RAND1
        return OP_RAND2
    if mode == MODE_BEST:
        if rng.uniform() <= 0.5:
            return OP_BEST1
        return OP_BEST2
    u = rng.uniform()
    k = int(u * 4.0)
    if k > 3:
        k = 3
    return (OP_RAND1, OP_RAND2, OP_BEST1, OP_BEST2)[k]


def _donor(pop, fit, i, n, dim, pr, f1, f2, mode, rng, order, b3i, b3f, v,
           anchor=None):
    """Build the donor vector for member ``i`` into ``v``.

    ``order`` is the fitness-descending index order frozen at generation
    start (best-half pool); ``b3i``/``b3f`` the live top-3 indices and
    fitnesses.  ``anchor`` (the run's global best) replaces the species
    best in the textbook best/1 and best/2 operators of the ablation
    modes; the stage-wise operators always use species-local members.
    Consumes RNG draws in a fixed order: operator pick, member picks.
    """
    op = _choose_operator(mode, pr, rng)
    picks = [0, 0, 0, 0]
    # degrade to the strongest-exploitation operator when the species is
    # too small for the requested one
    if op == OP_RAND1 and n < 4:
        op = OP_BEST3
    elif op in (OP_RAND2, OP_BEST2) and n < 5:
        op = OP_BEST3
    elif op == OP_BEST1 and n < 3:
        op = OP_BEST3
    elif op == OP_MIDBEST and n // 2 < 2:
        op = OP_BEST3

    if op == OP_RAND1:
        _pick_distinct(rng, n, i, 3, picks)
        r1, r2, r3 = pop[picks[0]], pop[picks[1]], pop[picks[2]]
        for d in range(dim):
            v[d] = r1[d] + f1[d] * (r2[d] - r3[d])
    elif op == OP_RAND2:
        _pick_distinct(rng, n, i, 4, picks)
        r1, r2, r3, r4 = pop[picks[0]], pop[picks[1]], pop[picks[2]], pop[picks[3]]
        for d in range(dim):
            v[d] = r1[d] + f1[d] * (r2[d] - r3[d]) + f2[d] * (r3[d] - r4[d])
    elif op == OP_MIDBEST:
        half = n // 2
        k1 = rng.below(half)
        k2 = rng.below(half)
        while k2 == k1:
            k2 = rng.below(half)
        fb = pop[b3i[0]]
        x1 = pop[order[k1]]
        x2 = pop[order[k2]]
        for d in range(dim):
            v[d] = fb[d] + f1[d] * (x1[d] - x2[d])
    elif op == OP_BEST1:
        _pick_distinct(rng, n, i, 2, picks)
        fb = anchor if anchor is not None else pop[b3i[0]]
        r1, r2 = pop[picks[0]], pop[picks[1]]
        for d in range(dim):
            v[d] = fb[d] + f1[d] * (r1[d] - r2[d])
    elif op == OP_BEST2:
        _pick_distinct(rng, n, i, 4, picks)
        fb = anchor if anchor is not None else pop[b3i[0]]
        r1, r2, r3, r4 = pop[picks[0]], pop[picks[1]], pop[picks[2]], pop[picks[3]]
        for d in range(dim):
            v[d] = fb[d] + f1[d] * (r1[d] - r2[d]) + f2[d] * (r3[d] - r4[d])
    else:  # OP_BEST3: FB + F1*(SB - TB)
        fb = pop[b3i[0]]
        sb = pop[b3i[1]]
        tb = pop[b3i[2]]
        for d in range(dim):
            v[d] = fb[d] + f1[d] * (sb[d] - tb[d])
    return v


def _update_top3(b3i, b3f, i, cf):
    """Member ``i`` improved to fitness ``cf``; refresh the live top-3."""
    if i == b3i[0]:
        b3f[0] = cf
        return
    if i == b3i[1]:
        b3f[1] = cf
        if _better(b3f[1], b3i[1], b3f[0], b3i[0]):
            b3i[0], b3i[1] = b3i[1], b3i[0]
            b3f[0], b3f[1] = b3f[1], b3f[0]
        return
    if i == b3i[2]:
        b3f[2] = cf
        if _better(b3f[2], b3i[2], b3f[1], b3i[1]):
            b3i[1], b3i[2] = b3i[2], b3i[1]
            b3f[1], b3f[2] = b3f[2], b3f[1]
            if _better(b3f[1], b3i[1], b3f[0], b3i[0]):
                b3i[0], b3i[1] = b3i[1], b3i[0]
                b3f[0], b3f[1] = b3f[1], b3f[0]
        return
    if _better(cf, i, b3f[0], b3i[0]):
        b3i[2], b3f[2] = b3i[1], b3f[1]
        b3i[1], b3f[1] = b3i[0], b3f[0]
        b3i[0], b3f[0] = i, cf
    elif _better(cf, i, b3f[1], b3i[1]):
        b3i[2], b3f[2] = b3i[1], b3f[1]
        b3i[1], b3f[1] = i, cf
    elif _better(cf, i, b3f[2], b3i[2]):
        b3i[2], b3f[2] = i, cf


def evolve_generation(obj, rng, pop_arr, fit_arr, stag_arr, f1_arr, f2_arr,
                      cr_arr, pr, mode, remaining, order_arr, anchor_arr=None):
    """One DE generation over a species, in place.

    Returns ``(evals_used, delta_f_list)`` where the deltas are the
    parent-to-child fitness gains of the successful trials, in member
    order.  Stops (leaving later members untouched) once ``remaining``
    evaluations have been spent.
    """
    n = len(fit_arr)
    dim = len(f1_arr)
    pop = [list(row) for row in pop_arr.tolist()]
    fit = list(fit_arr.tolist())
    f1 = list(f1_arr.tolist())
    f2 = list(f2_arr.tolist())
    cr = list(cr_arr.tolist())
    lb = obj.lower
    ub = obj.upper
    order = list(order_arr.tolist())
    anchor = None if anchor_arr is None else [float(a) for a in anchor_arr]

    b3i = [order[0], order[min(1, n - 1)], order[min(2, n - 1)]]
    b3f = [fit[b3i[0]], fit[b3i[1]], fit[b3i[2]]]

    v = [0.0] * dim
    trial = [0.0] * dim
    used = 0
    dfs = []
    for i in range(n):
        if used >= remaining:
            break
        _donor(pop, fit, i, n, dim, pr, f1, f2, mode, rng, order, b3i, b3f, v,
               anchor)
        jrand = rng.below(dim)
        xi = pop[i]
        for d in range(dim):
            u = rng.uniform()
            if u <= cr[d] or d == jrand:
                trial[d] = v[d]
            else:
                trial[d] = xi[d]
        for d in range(dim):
            t = trial[d]
            if t < lb[d]:
                t = 2.0 * lb[d] - t
                if t > ub[d]:
                    t = ub[d]
                trial[d] = t
            elif t > ub[d]:
                t = 2.0 * ub[d] - t
                if t < lb[d]:
                    t = lb[d]
                trial[d] = t
        cf = obj.eval(trial)
        used += 1
        if cf > fit[i]:
            dfs.append(cf - fit[i])
            for d in range(dim):
                xi[d] = trial[d]
            fit[i] = cf
            stag_arr[i] = 0
            _update_top3(b3i, b3f, i, cf)
        else:
            stag_arr[i] = stag_arr[i] + 1

    pop_arr[:] = pop
    fit_arr[:] = fit
    return used, dfs


def opposition_jump(obj, rng, pop_arr, fit_arr, stag_arr, remaining):
    """Opposite-population step over the current species box, in place.

    Each member mirrors inside the box with probability 0.33, otherwise
    resamples uniformly in the box.  All opposites are evaluated, then
    the best ``n`` of the union survive.  If the budget runs out before
    every opposite is evaluated the species is left unchanged (the spent
    evaluations are still reported).
    """
    n = len(fit_arr)
    dim = pop_arr.shape[1]
    pop = [list(row) for row in pop_arr.tolist()]
    fit = list(fit_arr.tolist())
    stag = list(stag_arr.tolist())

    mn = [0.0] * dim
    mx = [0.0] * dim
    for d in range(dim):
        lo = pop[0][d]
        hi = pop[0][d]
        for i in range(1, n):
            t = pop[i][d]
            if t < lo:
                lo = t
            if t > hi:
                hi = t
        mn[d] = lo
        mx[d] = hi

    opp = [[0.0] * dim for _ in range(n)]
    for i in range(n):
        u = rng.uniform()
        if u < 0.33:
            for d in range(dim):
                opp[i][d] = mn[d] + mx[d] - pop[i][d]
        else:
            for d in range(dim):
                opp[i][d] = mn[d] + rng.uniform() * (mx[d] - mn[d])

    used = 0
    oppfit = [0.0] * n
    for i in range(n):
        if used >= remaining:
            return used, False
        oppfit[i] = obj.eval(opp[i])
        used += 1

    # truncate P u OP to the n fittest (fitness desc, insertion order on ties)
    idx = sorted(range(2 * n), key=lambda j: (-(fit[j] if j < n else oppfit[j - n]), j))
    new_pop = []
    new_fit = []
    new_stag = []
    for j in idx[:n]:
        if j < n:
            new_pop.append(pop[j])
            new_fit.append(fit[j])
            new_stag.append(stag[j])
        else:
            new_pop.append(opp[j - n])
            new_fit.append(oppfit[j - n])
            new_stag.append(0)
    pop_arr[:] = new_pop
    fit_arr[:] = new_fit
    stag_arr[:] = new_stag
    return used, True
