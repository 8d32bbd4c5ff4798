# cython: language_level=3, boundscheck=False, wraparound=False
# cython: cdivision=True, initializedcheck=False
"""Compiled kernels: RNG, objective evaluation, and the hot DE loops.

Strict mirror of ``pure.py``: identical RNG stream consumption and
identical floating-point operation order, so that a run is bit-for-bit
reproducible across the two backends.  Any change here must be made in
lockstep with the pure module.
"""

import numpy as np

from libc.math cimport cos, exp, log, pow, sin, sqrt
from libc.stdint cimport int64_t, uint64_t

BACKEND = "compiled"

cdef double INV_2_53 = 1.0 / 9007199254740992.0
cdef double TWO_PI = 6.283185307179586
DEF MAXD = 64
DEF MAXCOMP = 8
DEF MAXPICK = 4

cdef enum:
    C_TRAP = 1
    C_EQUAL_MAXIMA = 2
    C_UNEVEN_MAXIMA = 3
    C_HIMMELBLAU = 4
    C_SIX_HUMP = 5
    C_SHUBERT = 6
    C_VINCENT = 7
    C_MOD_RASTRIGIN = 8
    C_COMPOSITION = 9

cdef enum:
    CB_GRIEWANK = 0
    CB_RASTRIGIN = 1
    CB_WEIERSTRASS = 2
    CB_SPHERE = 3
    CB_EF8F2 = 4

cdef enum:
    C_MODE_EODE = 0
    C_MODE_RAND = 1
    C_MODE_BEST = 2
    C_MODE_RAND_BEST = 3

F_TRAP = C_TRAP
F_EQUAL_MAXIMA = C_EQUAL_MAXIMA
F_UNEVEN_MAXIMA = C_UNEVEN_MAXIMA
F_HIMMELBLAU = C_HIMMELBLAU
F_SIX_HUMP = C_SIX_HUMP
F_SHUBERT = C_SHUBERT
F_VINCENT = C_VINCENT
F_MOD_RASTRIGIN = C_MOD_RASTRIGIN
F_COMPOSITION = C_COMPOSITION

B_GRIEWANK = CB_GRIEWANK
B_RASTRIGIN = CB_RASTRIGIN
B_WEIERSTRASS = CB_WEIERSTRASS
B_SPHERE = CB_SPHERE
B_EF8F2 = CB_EF8F2

MODE_EODE = C_MODE_EODE
MODE_RAND = C_MODE_RAND
MODE_BEST = C_MODE_BEST
MODE_RAND_BEST = C_MODE_RAND_BEST

cdef enum:
    OP_RAND1 = 0
    OP_RAND2 = 1
    OP_MIDBEST = 2
    OP_BEST3 = 3
    OP_BEST1 = 4
    OP_BEST2 = 5


cdef class Rng:
    """xoshiro256++ seeded through SplitMix64 (see the pure mirror)."""

    cdef uint64_t s0, s1, s2, s3

    def __init__(self, seed):
        cdef uint64_t sm = <uint64_t> (int(seed) & 0xFFFFFFFFFFFFFFFF)
        cdef uint64_t z
        cdef uint64_t state[4]
        cdef int i
        for i in range(4):
            sm = sm + <uint64_t> 0x9E3779B97F4A7C15
            z = sm
            z = (z ^ (z >> 30)) * <uint64_t> 0xBF58476D1CE4E5B9
            z = (z ^ (z >> 27)) * <uint64_t> 0x94D049BB133111EB
            z = z ^ (z >> 31)
            state[i] = z
        if state[0] == 0 and state[1] == 0 and state[2] == 0 and state[3] == 0:
            state[0] = 1
        self.s0 = state[0]
        self.s1 = state[1]
        self.s2 = state[2]
        self.s3 = state[3]

    cdef inline uint64_t _next(self) nogil:
        cdef uint64_t tmp = self.s0 + self.s3
        cdef uint64_t result = ((tmp << 23) | (tmp >> 41)) + self.s0
        cdef uint64_t t = self.s1 << 17
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = (self.s3 << 45) | (self.s3 >> 19)
        return result

    cdef inline double _uniform(self) nogil:
        return <double> (self._next() >> 11) * INV_2_53

    cdef inline long _below(self, long n) nogil:
        cdef long j = <long> (self._uniform() * n)
        if j >= n:
            j = n - 1
        return j

    cdef inline double _gauss(self) nogil:
        cdef double u1 = self._uniform()
        cdef double u2 = self._uniform()
        cdef double r = sqrt(-2.0 * log(1.0 - u1))
        return r * cos(TWO_PI * u2)

    def uniform(self):
        """Uniform double in [0, 1)."""
        return self._uniform()

    def below(self, n):
        """Uniform integer in [0, n)."""
        return self._below(n)

    def gauss(self):
        """Standard normal via Box-Muller; always consumes two uniforms."""
        return self._gauss()


cdef class Objective:
    """One benchmark objective at a fixed dimension (maximization)."""

    cdef public int kind
    cdef public int dim
    cdef public object lower, upper, params
    cdef double[::1] _lb, _ub
    # composition tables
    cdef int _n
    cdef int64_t[::1] _funcs
    cdef double[:, ::1] _o
    cdef double[:, :, ::1] _m
    cdef double[::1] _lam, _wdenom, _fmax, _wc1, _wc2, _kvec
    cdef double _wk1, _c

    def __init__(self, kind, dim, lower, upper, params):
        self.kind = kind
        self.dim = dim
        self.lower = list(lower)
        self.upper = list(upper)
        self.params = params
        self._lb = np.ascontiguousarray(lower, dtype=np.float64)
        self._ub = np.ascontiguousarray(upper, dtype=np.float64)
        if kind == C_COMPOSITION:
            p = params
            self._n = p["n"]
            self._funcs = np.ascontiguousarray(p["funcs"], dtype=np.int64)
            self._o = np.ascontiguousarray(p["O"], dtype=np.float64)
            self._m = np.ascontiguousarray(p["M"], dtype=np.float64)
            self._lam = np.ascontiguousarray(p["lambda"], dtype=np.float64)
            self._wdenom = np.ascontiguousarray(p["wdenom"], dtype=np.float64)
            self._fmax = np.ascontiguousarray(p["fmax"], dtype=np.float64)
            self._wc1 = np.ascontiguousarray(p["w_c1"], dtype=np.float64)
            self._wc2 = np.ascontiguousarray(p["w_c2"], dtype=np.float64)
            self._wk1 = p["w_k1"]
            self._c = p["C"]
        elif kind == C_MOD_RASTRIGIN:
            self._kvec = np.ascontiguousarray(params["k"], dtype=np.float64)

    cdef double eval_c(self, double* x) nogil:
        cdef int kind = self.kind
        if kind == C_TRAP:
            return _trap(x[0])
        if kind == C_EQUAL_MAXIMA:
            return _equal_maxima(x[0])
        if kind == C_UNEVEN_MAXIMA:
            return _uneven_maxima(x[0])
        if kind == C_HIMMELBLAU:
            return _himmelblau(x)
        if kind == C_SIX_HUMP:
            return _six_hump(x)
        if kind == C_SHUBERT:
            return _shubert(x, self.dim)
        if kind == C_VINCENT:
            return _vincent(x, self.dim)
        if kind == C_MOD_RASTRIGIN:
            return _mod_rastrigin(x, self.dim, &self._kvec[0])
        return self._eval_composition(x)

    cdef double _eval_composition(self, double* x) nogil:
        cdef int dim = self.dim
        cdef int n = self._n
        cdef double w[MAXCOMP]
        cdef double z[MAXD]
        cdef double s, diff, maxw, m2, m4, m8, m10, total, result, fi
        cdef int i, d
        for i in range(n):
            s = 0.0
            for d in range(dim):
                diff = x[d] - self._o[i, d]
                s += diff * diff
            w[i] = exp(-s / self._wdenom[i])
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
        result = 0.0
        for i in range(n):
            self._transform(x, i, z)
            fi = _basic(<int> self._funcs[i], z, dim,
                        &self._wc1[0], &self._wc2[0], self._wk1)
            result += w[i] * (self._c * fi / self._fmax[i])
        return -result

    cdef void _transform(self, double* x, int i, double* z) nogil:
        cdef double tmp[MAXD]
        cdef double lam = self._lam[i]
        cdef int dim = self.dim
        cdef int d, j
        cdef double acc
        for d in range(dim):
            tmp[d] = (x[d] - self._o[i, d]) / lam
        for j in range(dim):
            acc = 0.0
            for d in range(dim):
                acc += tmp[d] * self._m[i, d, j]
            z[j] = acc

    def eval(self, x):
        """Objective value at point ``x`` (sequence of dim floats)."""
        cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
        return self.eval_c(&xv[0])


cdef double _trap(double v) nogil:
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


cdef double _equal_maxima(double v) nogil:
    cdef double s = sin(5.0 * 3.141592653589793 * v)
    cdef double s2 = s * s
    return s2 * s2 * s2


cdef double _uneven_maxima(double v) nogil:
    cdef double t = (v - 0.08) / 0.854
    cdef double env = exp(-2.0 * log(2.0) * t * t)
    cdef double s = sin(5.0 * 3.141592653589793 * (pow(v, 0.75) - 0.05))
    cdef double s2 = s * s
    return env * s2 * s2 * s2


cdef double _himmelblau(double* x) nogil:
    cdef double a = x[0] * x[0] + x[1] - 11.0
    cdef double b = x[0] + x[1] * x[1] - 7.0
    return 200.0 - a * a - b * b


cdef double _six_hump(double* x) nogil:
    cdef double x2 = x[0] * x[0]
    cdef double y2 = x[1] * x[1]
    cdef double e1 = (4.0 - 2.1 * x2 + (x2 * x2) / 3.0) * x2
    cdef double e2 = x[0] * x[1]
    cdef double e3 = (4.0 * y2 - 4.0) * y2
    return -(e1 + e2 + e3)


cdef double _shubert(double* x, int dim) nogil:
    cdef double prod = 1.0
    cdef double acc
    cdef int d, j
    for d in range(dim):
        acc = 0.0
        for j in range(1, 6):
            acc += j * cos((j + 1) * x[d] + j)
        prod *= acc
    return -prod


cdef double _vincent(double* x, int dim) nogil:
    cdef double acc = 0.0
    cdef int d
    for d in range(dim):
        acc += sin(10.0 * log(x[d]))
    return acc / dim


cdef double _mod_rastrigin(double* x, int dim, double* kvec) nogil:
    cdef double acc = 0.0
    cdef int d
    for d in range(dim):
        acc += 10.0 + 9.0 * cos(TWO_PI * kvec[d] * x[d])
    return -acc


cdef double _f8f2(double a, double b) nogil:
    cdef double f2 = 100.0 * (a * a - b) * (a * a - b) + (1.0 - a) * (1.0 - a)
    return 1.0 + (f2 * f2) / 4000.0 - cos(f2)


cdef double _basic(int func_id, double* z, int dim, double* w_c1,
                   double* w_c2, double w_k1) nogil:
    cdef double s, p, zd
    cdef int d, k
    if func_id == CB_GRIEWANK:
        s = 0.0
        p = 1.0
        for d in range(dim):
            s += z[d] * z[d]
            p *= cos(z[d] / sqrt(1.0 + d))
        return 1.0 + s / 4000.0 - p
    if func_id == CB_RASTRIGIN:
        s = 0.0
        for d in range(dim):
            s += z[d] * z[d] - 10.0 * cos(TWO_PI * z[d]) + 10.0
        return s
    if func_id == CB_WEIERSTRASS:
        s = 0.0
        for d in range(dim):
            zd = z[d] + 0.5
            for k in range(21):
                s += w_c1[k] * cos(w_c2[k] * zd)
        return s - dim * w_k1
    if func_id == CB_SPHERE:
        s = 0.0
        for d in range(dim):
            s += z[d] * z[d]
        return s
    # B_EF8F2
    s = 0.0
    for d in range(dim - 1):
        s += _f8f2(z[d] + 1.0, z[d + 1] + 1.0)
    s += _f8f2(z[dim - 1] + 1.0, z[0] + 1.0)
    return s


def make_objective(kind, dim, lower, upper, params):
    return Objective(kind, dim, lower, upper, params)


# ---------------------------------------------------------------------------
# DE generation loop
# ---------------------------------------------------------------------------

cdef inline bint _better(double fa, long ia, double fb, long ib) nogil:
    return fa > fb or (fa == fb and ia < ib)


cdef inline void _pick_distinct(Rng rng, long n, long exclude, int count,
                                long* out) nogil:
    cdef int got = 0
    cdef int t
    cdef long j
    cdef bint dup
    while got < count:
        j = rng._below(n)
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


cdef int _choose_operator(int mode, double pr, Rng rng) nogil:
    cdef double u
    cdef int k
    if mode == C_MODE_EODE:
        if pr <= 0.33:
            if rng._uniform() <= 0.75:
                return OP_RAND1
            return OP_RAND2
        if pr <= 0.67:
            return OP_MIDBEST
        return OP_BEST3
    if mode == C_MODE_RAND:
        if rng._uniform() <= 0.5:
            return OP_RAND1
        return OP_RAND2
    if mode == C_MODE_BEST:
        if rng._uniform() <= 0.5:
            return OP_BEST1
        return OP_BEST2
    u = rng._uniform()
    k = <int> (u * 4.0)
    if k > 3:
        k = 3
    if k == 0:
        return OP_RAND1
    if k == 1:
        return OP_RAND2
    if k == 2:
        return OP_BEST1
    return OP_BEST2


cdef void _donor(double[:, ::1] pop, long i, long n, int dim, double pr,
                 double* f1, double* f2, int mode, Rng rng, long* order,
                 long* b3i, double* b3f, double* v, double* anchor) nogil:
    cdef int op = _choose_operator(mode, pr, rng)
    cdef long picks[MAXPICK]
    cdef long half, k1, k2
    cdef int d

    if op == OP_RAND1 and n < 4:
        op = OP_BEST3
    elif (op == OP_RAND2 or op == OP_BEST2) and n < 5:
        op = OP_BEST3
    elif op == OP_BEST1 and n < 3:
        op = OP_BEST3
    elif op == OP_MIDBEST and n // 2 < 2:
        op = OP_BEST3

    if op == OP_RAND1:
        _pick_distinct(rng, n, i, 3, picks)
        for d in range(dim):
            v[d] = pop[picks[0], d] + f1[d] * (pop[picks[1], d] - pop[picks[2], d])
    elif op == OP_RAND2:
        _pick_distinct(rng, n, i, 4, picks)
        for d in range(dim):
            v[d] = (pop[picks[0], d] + f1[d] * (pop[picks[1], d] - pop[picks[2], d])
                    + f2[d] * (pop[picks[2], d] - pop[picks[3], d]))
    elif op == OP_MIDBEST:
        half = n // 2
        k1 = rng._below(half)
        k2 = rng._below(half)
        while k2 == k1:
            k2 = rng._below(half)
        for d in range(dim):
            v[d] = pop[b3i[0], d] + f1[d] * (pop[order[k1], d] - pop[order[k2], d])
    elif op == OP_BEST1:
        _pick_distinct(rng, n, i, 2, picks)
        for d in range(dim):
            v[d] = ((anchor[d] if anchor != NULL else pop[b3i[0], d])
                    + f1[d] * (pop[picks[0], d] - pop[picks[1], d]))
    elif op == OP_BEST2:
        _pick_distinct(rng, n, i, 4, picks)
        for d in range(dim):
            v[d] = ((anchor[d] if anchor != NULL else pop[b3i[0], d])
                    + f1[d] * (pop[picks[0], d] - pop[picks[1], d])
                    + f2[d] * (pop[picks[2], d] - pop[picks[3], d]))
    else:
        for d in range(dim):
            v[d] = pop[b3i[0], d] + f1[d] * (pop[b3i[1], d] - pop[b3i[2], d])


cdef void _update_top3(long* b3i, double* b3f, long i, double cf) nogil:
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
        b3i[2] = b3i[1]
        b3f[2] = b3f[1]
        b3i[1] = b3i[0]
        b3f[1] = b3f[0]
        b3i[0] = i
        b3f[0] = cf
    elif _better(cf, i, b3f[1], b3i[1]):
        b3i[2] = b3i[1]
        b3f[2] = b3f[1]
        b3i[1] = i
        b3f[1] = cf
    elif _better(cf, i, b3f[2], b3i[2]):
        b3i[2] = i
        b3f[2] = cf


def evolve_generation(Objective obj, Rng rng, double[:, ::1] pop,
                      double[::1] fit, long[::1] stag, double[::1] f1,
                      double[::1] f2, double[::1] cr, double pr, int mode,
                      long remaining, long[::1] order, anchor_arr=None):
    """One DE generation over a species, in place (see the pure mirror)."""
    cdef long n = fit.shape[0]
    cdef int dim = f1.shape[0]
    cdef double abuf[MAXD]
    cdef double* anchor = NULL
    cdef int ad
    if anchor_arr is not None:
        for ad in range(dim):
            abuf[ad] = anchor_arr[ad]
        anchor = abuf
    cdef double[::1] lb = np.ascontiguousarray(obj.lower, dtype=np.float64)
    cdef double[::1] ub = np.ascontiguousarray(obj.upper, dtype=np.float64)
    cdef double v[MAXD]
    cdef double trial[MAXD]
    cdef long b3i[3]
    cdef double b3f[3]
    cdef long used = 0, i, jrand
    cdef int d
    cdef double u, t, cf
    cdef object dfs = []

    b3i[0] = order[0]
    b3i[1] = order[1] if n > 1 else order[0]
    b3i[2] = order[2] if n > 2 else order[n - 1 if n > 1 else 0]
    b3f[0] = fit[b3i[0]]
    b3f[1] = fit[b3i[1]]
    b3f[2] = fit[b3i[2]]

    for i in range(n):
        if used >= remaining:
            break
        _donor(pop, i, n, dim, pr, &f1[0], &f2[0], mode, rng, &order[0],
               b3i, b3f, v, anchor)
        jrand = rng._below(dim)
        for d in range(dim):
            u = rng._uniform()
            if u <= cr[d] or d == jrand:
                trial[d] = v[d]
            else:
                trial[d] = pop[i, d]
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
        cf = obj.eval_c(trial)
        used += 1
        if cf > fit[i]:
            dfs.append(cf - fit[i])
            for d in range(dim):
                pop[i, d] = trial[d]
            fit[i] = cf
            stag[i] = 0
            _update_top3(b3i, b3f, i, cf)
        else:
            stag[i] = stag[i] + 1
    return used, dfs


def opposition_jump(Objective obj, Rng rng, double[:, ::1] pop,
                    double[::1] fit, long[::1] stag, long remaining):
    """Opposite-population step, in place (see the pure mirror)."""
    cdef long n = fit.shape[0]
    cdef int dim = pop.shape[1]
    cdef double mn[MAXD]
    cdef double mx[MAXD]
    cdef long i, used
    cdef int d
    cdef double t, u
    cdef double[:, ::1] opp = np.empty((n, dim), dtype=np.float64)
    cdef double[::1] oppfit = np.empty(n, dtype=np.float64)

    for d in range(dim):
        mn[d] = pop[0, d]
        mx[d] = pop[0, d]
        for i in range(1, n):
            t = pop[i, d]
            if t < mn[d]:
                mn[d] = t
            if t > mx[d]:
                mx[d] = t

    for i in range(n):
        u = rng._uniform()
        if u < 0.33:
            for d in range(dim):
                opp[i, d] = mn[d] + mx[d] - pop[i, d]
        else:
            for d in range(dim):
                opp[i, d] = mn[d] + rng._uniform() * (mx[d] - mn[d])

    used = 0
    for i in range(n):
        if used >= remaining:
            return used, False
        oppfit[i] = obj.eval_c(&opp[i, 0])
        used += 1

    # truncate P u OP to the n fittest (fitness desc, insertion order on ties)
    union_fit = np.concatenate([np.asarray(fit), np.asarray(oppfit)])
    idx = np.lexsort((np.arange(2 * n), -union_fit))[:n]
    cdef long[::1] sel = np.ascontiguousarray(idx, dtype=np.int64)
    cdef double[:, ::1] new_pop = np.empty((n, dim), dtype=np.float64)
    cdef double[::1] new_fit = np.empty(n, dtype=np.float64)
    cdef long[::1] new_stag = np.empty(n, dtype=np.int64)
    cdef long j, row
    for row in range(n):
        j = sel[row]
        if j < n:
            for d in range(dim):
                new_pop[row, d] = pop[j, d]
            new_fit[row] = fit[j]
            new_stag[row] = stag[j]
        else:
            for d in range(dim):
                new_pop[row, d] = opp[j - n, d]
            new_fit[row] = oppfit[j - n]
            new_stag[row] = 0
    pop[:, :] = new_pop
    fit[:] = new_fit
    stag[:] = new_stag
    return used, True
