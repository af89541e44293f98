"""Pólya-Boltzmann samplers specialized to degree-restricted trees.

The context holds the critical parameter rho, the evaluated series values
s_i = A(rho^i) and t_i = A°(rho^i) (i >= 2; A°(rho) diverges at the
square-root singularity and is never needed), and numeric cycle-type
partial sums P_d per scale.  Samplers:

  sample_set_partition    cycle type of a SET symmetry under a size restriction
  sample_rooted_symmetry  Boltzmann-distributed rooted tree (isomorphism type)
  sample_*_exact          exact-size uniform samplers for rooted trees and the
                          S / E / V cycle-pointed classes, and the unrooted mix

Exact-size sampling has two interchangeable methods: "rejection" retries the
critical Boltzmann sampler until the target size is hit (aborting early once
the running size exceeds the target), and "recursive" conditions every draw
on the exact remaining size (see engine.py); both produce the uniform
distribution and are cross-tested.  The recursive method is the default:
rejection needs ~n^{3/2} attempts per exact sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .counting import series_family
from .degrees import DegreeSet
from .errors import InfeasibleRestriction, UnsupportedSize
from .rng import RandomSource
from .singularity import SingularData, radius_of_convergence, zset_partial_sums, zset_restricted
from .trees import RootedTree, Tree

D_MAX = 64          # cycle-type size cap per scale
EXACT_COUNT_N = 448  # exact big-integer class counts kept up to this size


@dataclass
class CyclePointedTree:
    tree: Tree
    marked_cycle: list[int]  # vertex indices forming one automorphism cycle


@dataclass
class BoltzmannContext:
    omega: DegreeSet
    omega_star: DegreeSet
    rho: float
    s_values: np.ndarray      # s_values[i] = A(rho^i), i >= 1
    t_values: np.ndarray      # t_values[i] = A°(rho^i), i >= 2
    i_max: int
    d_max: int
    tail_bound: float
    a_float: np.ndarray       # a_m as floats (exact for the small-m uses here)
    _partials: dict = field(default_factory=dict, repr=False)
    _lam_draws: dict = field(default_factory=dict, repr=False)
    _v_ell: dict = field(default_factory=dict, repr=False)

    # -- numeric cycle-type tables -------------------------------------------

    def scaled_s(self, scale: int) -> np.ndarray:
        """Arguments (s_{scale}, s_{2 scale}, ...) padded with zeros."""
        jmax = self.i_max // scale
        out = np.zeros(max(jmax, 1) + 1)
        for j in range(1, jmax + 1):
            out[j] = self.s_values[scale * j]
        return out

    def partial_sums(self, scale: int) -> np.ndarray:
        P = self._partials.get(scale)
        if P is None:
            P = zset_partial_sums(self.scaled_s(scale), self.d_max)
            self._partials[scale] = P
        return P

    def _lam_draw_table(self, lam: DegreeSet, scale: int):
        key = (lam.key(), scale)
        tab = self._lam_draws.get(key)
        if tab is None:
            P = self.partial_sums(scale)
            s = self.scaled_s(scale)
            entries = [d for d in sorted(lam.finite_part) if d <= self.d_max]
            weights = [P[d] for d in entries]
            tail_mass = 0.0
            if lam.tail_min is not None:
                z_full = math.exp(sum(s[j] / j for j in range(1, len(s))))
                below = sum(P[d] for d in range(min(lam.tail_min, len(P))))
                tail_mass = max(z_full - below, 0.0)
            cum = np.cumsum(weights + [tail_mass])
            tab = (entries, cum, tail_mass)
            self._lam_draws[key] = tab
        return tab


def build_context(omega: DegreeSet, precision: float = 1e-12) -> BoltzmannContext:
    omega.validate_as_omega()
    omega_star = omega.shift(1)
    sd: SingularData = radius_of_convergence(omega_star, precision)
    fam = series_family(omega, EXACT_COUNT_N)
    a_float = np.array([float(c) for c in fam.a.coeffs])
    return BoltzmannContext(omega, omega_star, sd.rho, sd.s_values, sd.t_values,
                            sd.i_max, D_MAX, sd.tail_bound, a_float)


# ---------------------------------------------------------------------------
# SET-symmetry cycle types

def sample_set_partition(ctx: BoltzmannContext, lam: DegreeSet, scale: int,
                         rng: RandomSource) -> list[int]:
    """Cycle lengths (with repetition) of a SET_lam symmetry at the given scale.

    P(type (m_j)) is proportional to prod_j s_{scale j}^{m_j} / (m_j! j^{m_j})
    over types with sum j m_j in lam.  The total is drawn first (finite part
    by exact partial sums, the ">= t" bucket by Poisson rejection), then
    split with the recurrence d P_d = sum_j s_j P_{d-j}.
    """
    entries, cum, tail_mass = ctx._lam_draw_table(lam, scale)
    total_mass = cum[-1] if len(cum) else 0.0
    if total_mass <= 0.0:
        raise InfeasibleRestriction(f"no feasible cycle type for {lam} at scale {scale}")
    idx = rng.choice_cumulative(cum)
    if idx < len(entries):
        return _split_total(ctx, entries[idx], scale, rng)
    # tail bucket: independent Poissons conditioned on total >= tail_min
    s = ctx.scaled_s(scale)
    while True:
        cycles = []
        total = 0
        for j in range(1, len(s)):
            if s[j] <= 0.0:
                continue
            m = rng.poisson(s[j] / j)
            cycles.extend([j] * m)
            total += j * m
        if total >= lam.tail_min:
            return sorted(cycles)


def _split_total(ctx: BoltzmannContext, d: int, scale: int,
                 rng: RandomSource) -> list[int]:
    P = ctx.partial_sums(scale)
    s = ctx.scaled_s(scale)
    cycles = []
    while d > 0:
        u = rng.random() * d * P[d]
        acc = 0.0
        chosen = None
        for j in range(1, min(d, len(s) - 1) + 1):
            w = s[j] * P[d - j]
            if w > 0.0:
                acc += w
                chosen = j
                if acc >= u:
                    break
        if chosen is None:
            raise InfeasibleRestriction("cycle-type split ran out of mass")
        cycles.append(chosen)
        d -= chosen
    return sorted(cycles)


# ---------------------------------------------------------------------------
# Boltzmann-distributed rooted trees (isomorphism types)

def sample_rooted_symmetry(ctx: BoltzmannContext, rng: RandomSource,
                           size_budget: int | None = None,
                           root_restriction: DegreeSet | None = None,
                           scale0: int = 1) -> RootedTree | None:
    """One draw of the critical Boltzmann sampler for rooted trees.

    Returns the isomorphism type; P(size = n) is proportional to a_n rho^n
    (at scale0 = j the law is that of a tree sitting on a j-cycle, i.e.
    proportional to a_n rho^{j n}).  With a size budget, returns None as
    soon as the running size (real copies included) exceeds it; the draw is
    aborted, not retried, so budgeted frequencies stay unbiased for sizes
    within the budget.
    """
    root_lam = ctx.omega_star if root_restriction is None else root_restriction
    # abstract nodes: (scale, parent index, cycle length that spawned it)
    scale = [scale0]
    parent = [-1]
    mult = [1]
    total = scale0
    stack = [0]
    if size_budget is not None and total > size_budget:
        return None
    while stack:
        idx = stack.pop()
        lam = root_lam if idx == 0 else ctx.omega_star
        for j in sample_set_partition(ctx, lam, scale[idx], rng):
            child_scale = scale[idx] * j
            total += child_scale
            if size_budget is not None and total > size_budget:
                return None
            scale.append(child_scale)
            parent.append(idx)
            mult.append(j)
            stack.append(len(scale) - 1)
    return _expand_abstract(parent, mult)


def _expand_abstract(parent: list[int], mult: list[int]) -> RootedTree:
    """Materialize the representative tree: each abstract child appears in
    `mult` identical copies under every copy of its parent."""
    kids: list[list[int]] = [[] for _ in parent]
    for i in range(1, len(parent)):
        kids[parent[i]].append(i)
    out_parent = [-1]
    stack = [(c, 0) for c in reversed(kids[0]) for _ in range(mult[c])]
    while stack:
        node, par = stack.pop()
        v = len(out_parent)
        out_parent.append(par)
        for c in reversed(kids[node]):
            for _ in range(mult[c]):
                stack.append((c, v))
    return RootedTree.from_parent(out_parent)


# ---------------------------------------------------------------------------
# exact-size samplers

_CLASS_PROB_CACHE: dict = {}


def _counts(omega: DegreeSet):
    return series_family(omega, EXACT_COUNT_N)


def sample_polya_exact(ctx: BoltzmannContext, n: int, rng: RandomSource,
                       method: str = "recursive") -> RootedTree:
    """Uniform rooted tree with n vertices and outdegrees in Omega*."""
    if n < 1:
        raise UnsupportedSize("n must be >= 1")
    if method == "recursive" or n > EXACT_COUNT_N:
        tables = engine.sampler_tables(ctx.omega, max(n + 1, 64))
        if tables.a_hat[n] <= 0.0:
            raise UnsupportedSize(f"no rooted tree of size {n} for {ctx.omega_star}")
        parent = engine.sample_rooted(tables, n, rng)
        return RootedTree.from_parent(parent)
    fam = _counts(ctx.omega)
    if fam.a[n] == 0:
        raise UnsupportedSize(f"no rooted tree of size {n} for {ctx.omega_star}")
    while True:
        t = sample_rooted_symmetry(ctx, rng, size_budget=n)
        if t is not None and t.n == n:
            return t


def sample_S_exact(ctx: BoltzmannContext, n: int, rng: RandomSource,
                   method: str = "recursive", pointed: bool = False):
    """Uniform S-object (marked fixpoint) of size n, as its unrooted tree."""
    if method == "recursive" or n > EXACT_COUNT_N:
        tables = engine.sampler_tables(ctx.omega, max(n + 1, 64))
        if n < 2 or engine.class_weights(tables, n)[0] <= 0.0:
            raise UnsupportedSize(f"no S-object of size {n}")
        parent = engine.sample_s_class(tables, n, rng)
        rt = RootedTree.from_parent(parent)
    else:
        fam = _counts(ctx.omega)
        if fam.s_counts()[n] == 0:
            raise UnsupportedSize(f"no S-object of size {n}")
        while True:
            t = sample_rooted_symmetry(ctx, rng, size_budget=n,
                                       root_restriction=ctx.omega)
            if t is not None and t.n == n:
                rt = t
                break
    tree = rt.to_tree()
    if pointed:
        return CyclePointedTree(tree, [0])
    return tree


def sample_E_exact(ctx: BoltzmannContext, n: int, rng: RandomSource,
                   method: str = "recursive", pointed: bool = False):
    """Uniform E-object (edge-centered symmetric pointing) of size n.

    An E-object is a pointed half-tree of size n/2 doubled across a central
    edge.  Every size-m tree has exactly m pointings, so projecting uniform
    E-objects to half-trees is uniform on trees; the sampler therefore draws
    a uniform half and joins two copies (oracle-tested projection argument).
    """
    if n < 2 or n % 2 != 0:
        raise UnsupportedSize("E-objects exist for even n only")
    half = sample_polya_exact(ctx, n // 2, rng, method=method)
    m = half.n
    parent = list(half.parent) + [0] * m
    for v in range(1, m):
        parent[m + v] = half.parent[v] + m
    parent[m] = 0  # central edge joins the two copy roots
    tree = RootedTree.from_parent(parent).to_tree()
    if pointed:
        return CyclePointedTree(tree, [0, m])
    return tree


def _v_ell_table(ctx: BoltzmannContext):
    tab = ctx._v_ell.get("table")
    if tab is None:
        P = ctx.partial_sums(1)
        s = ctx.scaled_s(1)
        weights = []
        for ell in range(2, ctx.i_max + 1):
            t_ell = ctx.t_values[ell] if ell < len(ctx.t_values) else 0.0
            lam = ctx.omega.shift(ell)
            w = t_ell * zset_restricted(P, s, lam) if not lam.is_empty() else 0.0
            weights.append(w)
        tab = np.cumsum(weights)
        ctx._v_ell["table"] = tab
    return tab


def sample_V_exact(ctx: BoltzmannContext, n: int, rng: RandomSource,
                   method: str = "recursive", pointed: bool = False):
    """Uniform V-object (vertex-centered symmetric pointing) of size n.

    Per-attempt procedure (rejection method): draw the marked-orbit length
    ell >= 2 with weight t_ell Z_{SET_{Omega-ell}}; draw the unmarked child
    structure under the restriction Omega-ell; draw the marked subtree size
    m with weight m a_m rho^{ell m} and a uniform size-m tree, attached as
    ell identical copies.  The subtree's internal pointing never affects the
    underlying tree, so it is discarded (oracle-tested projection argument).
    """
    if method == "recursive" or n > EXACT_COUNT_N:
        tables = engine.sampler_tables(ctx.omega, max(n + 1, 64))
        if n < 3 or engine.class_weights(tables, n)[2] <= 0.0:
            raise UnsupportedSize(f"no V-object of size {n}")
        parent, orbit = engine.sample_v_class(tables, n, rng)
        tree = RootedTree.from_parent(parent).to_tree()
        if pointed:
            return CyclePointedTree(tree, list(orbit))
        return tree
    fam = _counts(ctx.omega)
    if fam.v_counts()[n] == 0:
        raise UnsupportedSize(f"no V-object of size {n}")
    ell_cum = _v_ell_table(ctx)
    # marked-subtree size law per ell: q_m proportional to m a_m rho^{ell m}
    while True:
        ell = 2 + rng.choice_cumulative(ell_cum)
        unmarked = sample_set_partition(ctx, ctx.omega.shift(ell), 1, rng)
        kids: list[RootedTree] = []
        total = 1
        ok = True
        for j in unmarked:
            # a j-cycle carries one tree drawn at scale j, attached j times
            sub = sample_rooted_symmetry(ctx, rng, size_budget=n - total, scale0=j)
            if sub is None:
                ok = False
                break
            kids.extend([sub] * j)
            total += j * sub.n
        if not ok:
            continue
        rest = n - total
        if rest < ell or rest % ell != 0:
            continue
        m = rest // ell
        if ctx.a_float[m] <= 0:
            continue
        # accept the forced size m with the correct conditional probability
        mmax = min(len(ctx.a_float) - 1, n)
        q = np.array([t * ctx.a_float[t] * ctx.rho ** (ell * t) if t >= 1 else 0.0
                      for t in range(mmax + 1)])
        if rng.random() * q.sum() > q[m]:
            continue
        core = sample_polya_exact(ctx, m, rng, method="rejection" if m <= 24 else "recursive")
        parts = kids + [core] * ell
        parent = [-1]
        orbit = []
        for i, sub in enumerate(parts):
            base = len(parent)
            parent.append(0)
            for v in range(1, sub.n):
                parent.append(sub.parent[v] + base)
            if i >= len(kids):
                orbit.append(base)
        tree = RootedTree.from_parent(parent).to_tree()
        if pointed:
            return CyclePointedTree(tree, orbit)
        return tree


def class_probabilities(omega: DegreeSet, n: int) -> tuple[float, float, float]:
    """(s_n, e_n, v_n) / (n f_n), exact big-integer for n <= EXACT_COUNT_N."""
    if n < 2:
        raise UnsupportedSize("unrooted sampling starts at n = 2")
    key = (omega.key(), n)
    cached = _CLASS_PROB_CACHE.get(key)
    if cached is not None:
        return cached
    if n <= EXACT_COUNT_N:
        fam = _counts(omega)
        s, e, v = fam.s_counts()[n], fam.e_counts()[n], fam.v_counts()[n]
        tot = s + e + v
        if tot == 0:
            raise UnsupportedSize(f"no tree of size {n} with degrees in {omega}")
        probs = (s / tot, e / tot, v / tot)
        _CLASS_PROB_CACHE[key] = probs
        return probs
    tables = engine.sampler_tables(omega, n + 1)
    s, e, v = engine.class_weights(tables, n)
    tot = s + e + v
    if tot <= 0.0:
        raise UnsupportedSize(f"no tree of size {n} with degrees in {omega}")
    probs = (s / tot, e / tot, v / tot)
    _CLASS_PROB_CACHE[key] = probs
    return probs


def sample_unrooted_exact(ctx: BoltzmannContext, n: int, rng: RandomSource,
                          method: str = "recursive") -> Tree:
    """Uniform unlabelled unrooted tree with n vertices, degrees in Omega.

    Chooses the cycle-pointed class with probability (s_n, e_n, v_n)/(n f_n)
    and projects the class sample to its underlying tree; uniformity follows
    from the n-fold-cover property of cycle pointing.
    """
    ps, pe, pv = class_probabilities(ctx.omega, n)
    u = rng.random()
    if u < ps:
        return sample_S_exact(ctx, n, rng, method=method)
    if u < ps + pe:
        return sample_E_exact(ctx, n, rng, method=method)
    return sample_V_exact(ctx, n, rng, method=method)
