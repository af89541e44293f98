"""Exact-size uniform samplers over the cycle-pointing decomposition.

This is the high-throughput path: every random choice of the critical
Boltzmann sampler is conditioned on the exact remaining size, which turns
rejection (~n^{3/2} attempts) into a single pass.  The workhorse identity is
the orbit-peeling recurrence

    b * F_L(b) = sum_{j >= 1} sum_{v >= 1} v * a_v * F_{L-j}(b - j v),

where F_L(b) counts multisets of rooted trees of total size b with component
count in L, and L - j = {x - j : x in L, x >= j}.  It follows from
d/ds_j Z_{SET_L} = (1/j) Z_{SET_{L-j}} and is exactly the marked-atom
double count: peeling draws an orbit (j identical copies of a v-sized tree,
the factor v playing the role of the pointing) and recurses on the rest.
Induction over the peel gives the uniform distribution on multisets, hence
on trees, S-objects and V-objects; uniformity is oracle-tested at small n.

All tables are doubles scaled by rho^size (a_hat[v] = a_v rho^v), keeping
every entry in a sane floating range for n up to ~10^6.  Restriction sets
are encoded as (base, t): base 0 is Omega, base 1 is Omega*, and t counts
how much has been peeled off; t saturates at T_CAP where the sets become
stationary (all of N_0, or empty).

Kernels are numba-compiled when numba is importable and plain Python
otherwise (slow but identical results).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degrees import DegreeSet
from .errors import UnsupportedSize
from .rng import RandomSource
from .singularity import radius_of_convergence

try:  # pragma: no cover - exercised implicitly everywhere
    from numba import njit
    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f
        return wrap


# ---------------------------------------------------------------------------
# xoshiro256++ primitives (mirrors rng.RandomSource bit-for-bit)

@njit(cache=True, inline="always")
def _rng_next(state):
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    x = (s0 + s3) & np.uint64(0xFFFFFFFFFFFFFFFF)
    result = (((x << np.uint64(23)) | (x >> np.uint64(41))) + s0) & np.uint64(0xFFFFFFFFFFFFFFFF)
    t = (s1 << np.uint64(17)) & np.uint64(0xFFFFFFFFFFFFFFFF)
    s2 = s2 ^ s0
    s3 = s3 ^ s1
    s1 = s1 ^ s2
    s0 = s0 ^ s3
    s2 = s2 ^ t
    s3 = ((s3 << np.uint64(45)) | (s3 >> np.uint64(19))) & np.uint64(0xFFFFFFFFFFFFFFFF)
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3
    return result


@njit(cache=True, inline="always")
def _rng_u01(state):
    return float(_rng_next(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# scaled forest table DP

@njit(cache=True)
def _forest_dp(N, cap, rho, member1, tail1):
    """Scaled DP: returns (a_hat, G) where G[m, c] = rho^m * #multisets of
    Omega*-trees with total size m and c components (c = cap column is the
    ">= cap" bucket), and a_hat[s] = a_s rho^s computed on the fly.

    member1/tail1 describe Omega* (base 1, t = 0) membership for reading
    a_s off the table while building it.
    """
    G = np.zeros((N + 1, cap + 1))  # column cap is the ">= cap" bucket
    G[0, 0] = 1.0
    a_hat = np.zeros(N + 1)
    rho_s = 1.0
    for s in range(1, N + 1):
        rho_s *= rho
        acc = 0.0  # rho^{s-1} * (multisets of total s-1, count in Omega*)
        for c in range(cap):
            if member1[c]:
                acc += G[s - 1, c]
        if tail1:
            acc += G[s - 1, cap]
        a_hat[s] = acc * rho
        if a_hat[s] <= 0.0:
            continue
        # incorporate size s: multiplicity weights C(a_s+m-1, m) rho^{sm}
        mmax = N // s
        weights = np.zeros(mmax + 1)
        w = 1.0
        for m in range(1, mmax + 1):
            w = w * (a_hat[s] + (m - 1) * rho_s) / m
            weights[m] = w
        for total in range(N, s - 1, -1):
            for m in range(1, total // s + 1):
                wm = weights[m]
                src = total - m * s
                for c in range(cap + 1):
                    x = G[src, c]
                    if x > 0.0:
                        cc = c + m
                        if cc >= cap:
                            G[total, cap] += wm * x
                        else:
                            G[total, cc] += wm * x
    return a_hat, G


# ---------------------------------------------------------------------------
# core sampling kernel

_K_FOREST = 0
_K_COPY = 1

_M_ROOTED = 0
_M_S = 1
_M_V = 2


@njit(cache=True)
def _peel_choose(b, base, t, ahat, rpow, F, tcap, u):
    """Choose (j, v) with weight v a_v rho^{(j-1)v} F_{L-j}(b - j v)."""
    nrows_t = tcap + 1
    target = u * b * F[base * nrows_t + min(t, tcap), b]
    acc = 0.0
    last_j = 0
    last_v = 0
    for j in range(1, b + 1):
        row = base * nrows_t + min(t + j, tcap)
        for v in range(1, b // j + 1):
            av = ahat[v]
            if av <= 0.0:
                continue
            w = v * av * rpow[(j - 1) * v] * F[row, b - j * v]
            if w > 0.0:
                acc += w
                last_j = j
                last_v = v
                if acc >= target:
                    return j, v
    if last_j > 0:  # float undershoot: fall back to the last feasible orbit
        return last_j, last_v
    return 0, 0


@njit(cache=True)
def _sample_kernel(mode, n, ahat, rpow, F, tcap, base0, state, parent, orbit_out):
    """Build a uniform object of the requested mode and size n.

    Returns (ok, orbit_len): ok = 1 on success; orbit_len > 0 for V-objects
    (orbit_out[:orbit_len] holds the roots of the marked orbit).
    """
    nrows_t = tcap + 1
    parent[0] = -1
    nv = 1
    # explicit stacks
    cap_stack = 4 * n + 16
    kind = np.zeros(cap_stack, dtype=np.int64)
    s_a = np.zeros(cap_stack, dtype=np.int64)  # forest: budget  | copy: src
    s_b = np.zeros(cap_stack, dtype=np.int64)  # forest: base    | copy: length
    s_c = np.zeros(cap_stack, dtype=np.int64)  # forest: t       | copy: count
    s_d = np.zeros(cap_stack, dtype=np.int64)  # attach vertex
    s_e = np.zeros(cap_stack, dtype=np.int64)  # copy: record orbit flag
    sp = 0
    orbit_len = 0

    if mode == _M_V:
        b = n - 1
        # first peel restricted to j >= 2 (the marked orbit)
        total = 0.0
        for j in range(2, b + 1):
            row = base0 * nrows_t + min(j, tcap)
            for v in range(1, b // j + 1):
                av = ahat[v]
                if av > 0.0:
                    total += v * av * rpow[(j - 1) * v] * F[row, b - j * v]
        if total <= 0.0:
            return 0, 0
        target = _rng_u01(state) * total
        acc = 0.0
        ell = 0
        vsz = 0
        for j in range(2, b + 1):
            row = base0 * nrows_t + min(j, tcap)
            for v in range(1, b // j + 1):
                av = ahat[v]
                if av > 0.0:
                    w = v * av * rpow[(j - 1) * v] * F[row, b - j * v]
                    if w > 0.0:
                        acc += w
                        ell = j
                        vsz = v
                        if acc >= target:
                            break
            if acc >= target and ell > 0:
                break
        if ell == 0:
            return 0, 0
        rest = b - ell * vsz
        # push: marked COPY, then the residual forest, then the orbit subtree
        kind[sp] = _K_COPY
        s_a[sp] = nv
        s_b[sp] = vsz
        s_c[sp] = ell - 1
        s_d[sp] = 0
        s_e[sp] = 1
        sp += 1
        kind[sp] = _K_FOREST
        s_a[sp] = rest
        s_b[sp] = base0
        s_c[sp] = min(ell, tcap)
        s_d[sp] = 0
        sp += 1
        orbit_out[orbit_len] = nv
        orbit_len += 1
        parent[nv] = 0
        r0 = nv
        nv += 1
        if vsz > 1:
            kind[sp] = _K_FOREST
            s_a[sp] = vsz - 1
            s_b[sp] = 1  # Omega* base
            s_c[sp] = 0
            s_d[sp] = r0
            sp += 1
    else:
        kind[sp] = _K_FOREST
        s_a[sp] = n - 1
        s_b[sp] = base0
        s_c[sp] = 0
        s_d[sp] = 0
        sp += 1

    while sp > 0:
        sp -= 1
        k = kind[sp]
        if k == _K_COPY:
            src = s_a[sp]
            length = s_b[sp]
            count = s_c[sp]
            att = s_d[sp]
            rec = s_e[sp]
            for _c in range(count):
                delta = nv - src
                if rec == 1:
                    orbit_out[orbit_len] = nv
                    orbit_len += 1
                for i in range(length):
                    p = parent[src + i]
                    if src + i == src:
                        parent[nv + i] = att
                    else:
                        parent[nv + i] = p + delta
                nv += length
            continue
        b = s_a[sp]
        base = s_b[sp]
        t = s_c[sp]
        att = s_d[sp]
        if b == 0:
            if F[base * nrows_t + min(t, tcap), 0] <= 0.0:
                return 0, 0  # empty forest not allowed by the count restriction
            continue
        j, v = _peel_choose(b, base, t, ahat, rpow, F, tcap, _rng_u01(state))
        if j == 0:
            return 0, 0
        if j > 1:
            kind[sp] = _K_COPY
            s_a[sp] = nv
            s_b[sp] = v
            s_c[sp] = j - 1
            s_d[sp] = att
            s_e[sp] = 0
            sp += 1
        kind[sp] = _K_FOREST
        s_a[sp] = b - j * v
        s_b[sp] = base
        s_c[sp] = min(t + j, tcap)
        s_d[sp] = att
        sp += 1
        r0 = nv
        parent[nv] = att
        nv += 1
        if v > 1:
            kind[sp] = _K_FOREST
            s_a[sp] = v - 1
            s_b[sp] = 1  # Omega* base
            s_c[sp] = 0
            s_d[sp] = r0
            sp += 1
    if nv != n:
        return 0, orbit_len
    return 1, orbit_len


@njit(cache=True)
def _v_weight(n, ahat, rpow, F, tcap, base0):
    nrows_t = tcap + 1
    b = n - 1
    total = 0.0
    for j in range(2, b + 1):
        row = base0 * nrows_t + min(j, tcap)
        for v in range(1, b // j + 1):
            av = ahat[v]
            if av > 0.0:
                total += v * av * rpow[(j - 1) * v] * F[row, b - j * v]
    return total


# ---------------------------------------------------------------------------
# tree functionals (parent-array based)

@njit(cache=True)
def _adjacency_csr(parent):
    n = parent.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        deg[v] += 1
        deg[parent[v]] += 1
    offs = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        offs[v + 1] = offs[v] + deg[v]
    nbr = np.zeros(2 * (n - 1) if n > 1 else 0, dtype=np.int64)
    fill = offs[:n].copy()
    for v in range(1, n):
        p = parent[v]
        nbr[fill[v]] = p
        fill[v] += 1
        nbr[fill[p]] = v
        fill[p] += 1
    return offs, nbr


@njit(cache=True)
def _bfs_far(offs, nbr, src, dist):
    n = dist.shape[0]
    for i in range(n):
        dist[i] = -1
    dist[src] = 0
    queue = np.zeros(n, dtype=np.int64)
    queue[0] = src
    head = 0
    tail = 1
    far = src
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(offs[u], offs[u + 1]):
            w = nbr[k]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                if dist[w] > dist[far]:
                    far = w
                queue[tail] = w
                tail += 1
    return far


@njit(cache=True)
def tree_diameter(parent):
    n = parent.shape[0]
    if n <= 1:
        return 0
    offs, nbr = _adjacency_csr(parent)
    dist = np.zeros(n, dtype=np.int64)
    a = _bfs_far(offs, nbr, 0, dist)
    b = _bfs_far(offs, nbr, a, dist)
    return dist[b]


@njit(cache=True)
def neighborhood_parent(parent, start, k):
    """Parent array (root 0 = start) of the depth-<=k neighborhood of start."""
    n = parent.shape[0]
    offs, nbr = _adjacency_csr(parent)
    dist = np.full(n, -1, dtype=np.int64)
    idx = np.full(n, -1, dtype=np.int64)
    out_parent = np.zeros(n, dtype=np.int64)
    queue = np.zeros(n, dtype=np.int64)
    dist[start] = 0
    idx[start] = 0
    out_parent[0] = -1
    queue[0] = start
    head = 0
    tail = 1
    count = 1
    while head < tail:
        u = queue[head]
        head += 1
        if dist[u] == k:
            continue
        for kk in range(offs[u], offs[u + 1]):
            w = nbr[kk]
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                idx[w] = count
                out_parent[count] = idx[u]
                count += 1
                queue[tail] = w
                tail += 1
    return out_parent[:count]


@njit(cache=True)
def root_degree_after(parent, start):
    offs, nbr = _adjacency_csr(parent)
    return offs[start + 1] - offs[start]


@njit(cache=True)
def degrees_in_set(parent, mask, has_tail, tail_min, rooted):
    """Hard assertion support: all degrees (outdegrees if rooted) in the set."""
    n = parent.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        deg[v] += 1 if not rooted else 0
        deg[parent[v]] += 1
    for v in range(n):
        d = deg[v]
        if has_tail and d >= tail_min:
            continue
        if d >= mask.shape[0] or mask[d] == 0:
            return False
    return True


@njit(cache=True)
def k2_census_hashes(parent):
    """Per-vertex FNV-1a hash of the exact depth-2 neighborhood shape.

    A radius-2 neighborhood rooted at v is determined by (deg v, multiset of
    deg(u) - 1 over neighbors u), so hashing the sorted sequence is an exact
    canonical key up to 64-bit collisions (~1e-13 for realistic supports).
    """
    n = parent.shape[0]
    offs, nbr = _adjacency_csr(parent)
    out = np.zeros(n, dtype=np.uint64)
    scratch = np.zeros(n, dtype=np.int64)
    prime = np.uint64(0x100000001B3)
    for v in range(n):
        d = offs[v + 1] - offs[v]
        for i in range(d):
            scratch[i] = offs[nbr[offs[v] + i] + 1] - offs[nbr[offs[v] + i]] - 1
        # insertion sort of the child outdegrees
        for i in range(1, d):
            key = scratch[i]
            j = i - 1
            while j >= 0 and scratch[j] > key:
                scratch[j + 1] = scratch[j]
                j -= 1
            scratch[j + 1] = key
        h = np.uint64(0xCBF29CE484222325)
        h = (h ^ np.uint64(d)) * prime
        for i in range(d):
            h = (h ^ np.uint64(scratch[i] + 1)) * prime
        out[v] = h
    return out


# ---------------------------------------------------------------------------
# table assembly (python side)

@dataclass
class SamplerTables:
    omega: DegreeSet
    omega_star: DegreeSet
    N: int
    rho: float
    a_hat: np.ndarray
    rho_pow: np.ndarray
    F: np.ndarray        # [2 * (tcap+1), N+1] scaled restricted forest counts
    tcap: int
    cap: int
    omega_mask: np.ndarray = None      # degree membership for hard assertions
    omega_tail: tuple = (False, 0)
    star_mask: np.ndarray = None
    star_tail: tuple = (False, 0)

    def f_row(self, base: int, t: int) -> np.ndarray:
        return self.F[base * (self.tcap + 1) + min(t, self.tcap)]


def _membership(lam: DegreeSet, cap: int) -> tuple[np.ndarray, bool]:
    mask = np.zeros(cap, dtype=np.uint8)
    for c in range(cap):
        if c in lam:
            mask[c] = 1
    tail = lam.tail_min is not None  # normalized sets: tail_min <= cap here
    return mask, tail


_TABLE_CACHE: dict = {}


def sampler_tables(omega: DegreeSet, N: int, precision: float = 1e-12) -> SamplerTables:
    omega.validate_as_omega()
    N = max(N, 64)
    N_round = 1 << (N - 1).bit_length()
    key = (omega.key(), N_round)
    cached = _TABLE_CACHE.get(key)
    if cached is not None:
        return cached
    omega_star = omega.shift(1)
    rho = radius_of_convergence(omega_star, precision).rho
    tcap = max(omega.max_finite(), omega_star.max_finite()) + 1
    cap = tcap + 1
    m1, t1 = _membership(omega_star, cap)
    a_hat, G = _forest_dp(N_round, cap, rho, m1, t1)
    nrows = 2 * (tcap + 1)
    F = np.zeros((nrows, N_round + 1))
    for base, base_set in ((0, omega), (1, omega_star)):
        for t in range(tcap + 1):
            lam = base_set.shift(t)
            row = base * (tcap + 1) + t
            if lam.is_empty():
                continue
            mask, tail = _membership(lam, cap)
            vec = G[:, :cap] @ mask.astype(np.float64)
            if tail:
                vec = vec + G[:, cap]
            F[row] = vec
    rho_pow = rho ** np.arange(N_round + 1, dtype=np.float64)

    def degmask(s: DegreeSet):
        mask = np.zeros(64, dtype=np.uint8)
        for d in range(64):
            if d in s:
                mask[d] = 1
        return mask, (s.tail_min is not None, s.tail_min or 0)

    om_mask, om_tail = degmask(omega)
    st_mask, st_tail = degmask(omega_star)
    tables = SamplerTables(omega, omega_star, N_round, rho, a_hat, rho_pow, F,
                           tcap, cap, om_mask, om_tail, st_mask, st_tail)
    _TABLE_CACHE[key] = tables
    return tables


# ---------------------------------------------------------------------------
# public sampling entry points

def class_weights(tables: SamplerTables, n: int) -> tuple[float, float, float]:
    """(s_n, e_n, v_n) scaled by rho^n; ratios are exact class probabilities."""
    if n < 1 or n > tables.N:
        raise UnsupportedSize(f"n = {n} outside table range")
    rho = tables.rho
    s_hat = rho * tables.f_row(0, 0)[n - 1] if n >= 2 else 0.0
    e_hat = 0.0
    if n % 2 == 0:
        h = n // 2
        e_hat = h * tables.a_hat[h] * tables.rho_pow[h]
    v_hat = rho * _v_weight(n, tables.a_hat, tables.rho_pow, tables.F,
                            tables.tcap, 0) if n >= 3 else 0.0
    return s_hat, e_hat, v_hat


def _run_kernel(tables: SamplerTables, mode: int, n: int, base0: int,
                rng: RandomSource):
    parent = np.zeros(n, dtype=np.int64)
    orbit = np.zeros(n, dtype=np.int64)
    state = rng.numba_state()
    ok, orbit_len = _sample_kernel(mode, n, tables.a_hat, tables.rho_pow,
                                   tables.F, tables.tcap, base0, state,
                                   parent, orbit)
    rng.state = [int(x) for x in state]
    if not ok:
        raise UnsupportedSize(f"no object of size {n} in this class")
    # hard structural assertion: sizes match by construction (the kernel
    # verified nv == n); degrees must lie in the degree set
    if mode == _M_ROOTED:
        assert degrees_in_set(parent, tables.star_mask, tables.star_tail[0],
                              tables.star_tail[1], True), "outdegree outside set"
    else:
        assert degrees_in_set(parent, tables.omega_mask, tables.omega_tail[0],
                              tables.omega_tail[1], False), "degree outside set"
    return parent, orbit[:orbit_len]


def sample_rooted(tables: SamplerTables, n: int, rng: RandomSource) -> np.ndarray:
    """Uniform rooted tree (outdegrees in Omega*) of size n, as a parent array."""
    if n == 1:
        return np.array([-1], dtype=np.int64)
    parent, _ = _run_kernel(tables, _M_ROOTED, n, 1, rng)
    return parent


def sample_s_class(tables: SamplerTables, n: int, rng: RandomSource) -> np.ndarray:
    """Uniform S-object of size n (root child count in Omega)."""
    if n < 2 or tables.f_row(0, 0)[n - 1] <= 0.0:
        raise UnsupportedSize(f"no S-object of size {n}")
    parent, _ = _run_kernel(tables, _M_S, n, 0, rng)
    return parent


def sample_v_class(tables: SamplerTables, n: int, rng: RandomSource):
    """Uniform V-object of size n projected to its tree, plus orbit roots."""
    return _run_kernel(tables, _M_V, n, 0, rng)


def sample_e_class(tables: SamplerTables, n: int, rng: RandomSource) -> np.ndarray:
    """Uniform E-object of size n: two identical halves joined by an edge."""
    if n % 2 != 0:
        raise UnsupportedSize("E-objects exist for even n only")
    h = n // 2
    half = sample_rooted(tables, h, rng)
    parent = np.zeros(n, dtype=np.int64)
    parent[:h] = half
    parent[h] = 0
    for v in range(1, h):
        parent[h + v] = half[v] + h
    assert degrees_in_set(parent, tables.omega_mask, tables.omega_tail[0],
                          tables.omega_tail[1], False), "degree outside set"
    return parent


def sample_unrooted(tables: SamplerTables, n: int, rng: RandomSource,
                    probs: tuple[float, float, float] | None = None) -> np.ndarray:
    """Uniform unrooted tree of size n (class mixture via scaled weights)."""
    if probs is None:
        s_hat, e_hat, v_hat = class_weights(tables, n)
        tot = s_hat + e_hat + v_hat
        if tot <= 0.0:
            raise UnsupportedSize(f"no tree of size {n} with degrees in {tables.omega}")
        probs = (s_hat / tot, e_hat / tot, v_hat / tot)
    u = rng.random()
    if u < probs[0]:
        return sample_s_class(tables, n, rng)
    if u < probs[0] + probs[1]:
        return sample_e_class(tables, n, rng)
    parent, _ = sample_v_class(tables, n, rng)
    return parent
