"""Exact coefficient computation for the tree generating series.

Everything here is arbitrary-precision integer arithmetic.  The central
object is the multiset ("forest") table: the number of multisets of rooted
trees with a given total size and a given number of components, where the
component count is tracked exactly up to a cap and aggregated into a single
">= cap" bucket beyond it.  That table is the coefficient array of
Z_{SET_Lambda}(A(z), A(z^2), ...) for every restriction Lambda read off it.

Series and their coefficient meanings (sizes count vertices):

  A   rooted trees, outdegrees in Omega*
  S   trees with a marked fixpoint: root child count in Omega, rest Omega*
  E   symmetric cycle-pointed trees centered at an edge: e_n = (n/2) a_{n/2}
  V   symmetric cycle-pointed trees centered at a vertex
  F   unrooted trees with degrees in Omega, via n f_n = s_n + e_n + v_n
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .degrees import DegreeSet
from .errors import IntegralityViolation, InvalidDegreeSet


@dataclass
class CoeffTable:
    series_id: str  # one of A S E V Fpointed F
    omega_key: str
    coeffs: list[int]  # coeffs[n] for n = 0..N; coeffs[0] = 0

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]


@dataclass
class SetLayerTable:
    base_key: str
    lam: DegreeSet
    coeffs: list[int]  # [z^n] Z_{SET_lam}(A(z), A(z^2), ...) for n = 0..N

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]


class ForestTable:
    """Multisets of rooted trees by (total size, component count).

    counts[m][c] for c < cap is the exact number with c components;
    bucket[m] aggregates component counts >= cap.  cap must be chosen so
    that membership in every restriction queried is constant on [cap, inf).
    """

    def __init__(self, a_coeffs: list[int], N: int, cap: int):
        self.N = N
        self.cap = max(cap, 1)
        self.counts = [[0] * self.cap for _ in range(N + 1)]
        self.bucket = [0] * (N + 1)
        self.counts[0][0] = 1
        self._incorporated = 0
        self._a = a_coeffs
        for s in range(1, min(len(a_coeffs) - 1, N) + 1):
            self.incorporate_size(s)

    @staticmethod
    def _empty(N: int, cap: int) -> "ForestTable":
        t = ForestTable.__new__(ForestTable)
        t.N = N
        t.cap = max(cap, 1)
        t.counts = [[0] * t.cap for _ in range(N + 1)]
        t.bucket = [0] * (N + 1)
        t.counts[0][0] = 1
        t._incorporated = 0
        t._a = None
        return t

    def incorporate_size(self, s: int, a_s: int | None = None) -> None:
        """Fold in trees of size s (a_s types, multiplicity weighted)."""
        if a_s is None:
            a_s = self._a[s]
        assert s == self._incorporated + 1, "sizes must be added in order"
        self._incorporated = s
        if a_s == 0:
            return
        N, cap = self.N, self.cap
        counts, bucket = self.counts, self.bucket
        # multiset-with-repetition weights C(a_s + m - 1, m), built incrementally
        w = 1
        weights = []
        m = 0
        while (m + 1) * s <= N:
            m += 1
            w = w * (a_s + m - 1) // m
            weights.append(w)
        for total in range(N, s - 1, -1):
            row = counts[total]
            buck = bucket[total]
            for m, w in enumerate(weights, start=1):
                src = total - m * s
                if src < 0:
                    break
                srow = counts[src]
                for c in range(cap):
                    x = srow[c]
                    if x:
                        cc = c + m
                        if cc >= cap:
                            buck += w * x
                        else:
                            row[cc] += w * x
                b = bucket[src]
                if b:
                    buck += w * b
            bucket[total] = buck

    def restricted(self, m: int, lam: DegreeSet) -> int:
        """Number of multisets of total size m with component count in lam."""
        if m > self.N or m < 0:
            raise IndexError(f"size {m} beyond table ({self.N})")
        total = 0
        row = self.counts[m]
        for c in range(self.cap):
            if c in lam:
                total += row[c]
        if lam.tail_min is not None:
            if lam.tail_min > self.cap:
                raise ValueError("tail threshold beyond table cap")
            total += self.bucket[m]
        elif any(v >= self.cap for v in lam.finite_part):
            raise ValueError("finite restriction beyond table cap")
        return total


def family_cap(omega: DegreeSet, omega_star: DegreeSet) -> int:
    """Component-count cap valid for Omega, Omega*, and all downward shifts."""
    return max(omega.max_finite(), omega_star.max_finite(), 0) + 1


# ---------------------------------------------------------------------------
# public operations

def rooted_counts(omega_star: DegreeSet, N: int) -> CoeffTable:
    """a_n = unlabelled rooted trees with n vertices, outdegrees in Omega*."""
    omega_star.validate_as_omega_star()
    if N < 1:
        raise InvalidDegreeSet("N must be >= 1")
    cap = omega_star.max_finite() + 1
    table = ForestTable._empty(N, cap)
    a = [0] * (N + 1)
    for s in range(1, N + 1):
        a[s] = table.restricted(s - 1, omega_star)
        if s < N:
            table.incorporate_size(s, a[s])
    return CoeffTable("A", omega_star.key(), a)


def set_layer(a: CoeffTable, lam: DegreeSet, N: int) -> SetLayerTable:
    """Coefficients of Z_{SET_lam}(A(z), A(z^2), ...) up to z^N."""
    if a.N < N:
        raise ValueError(f"base series computed to {a.N} < {N}")
    cap = (lam.tail_min if lam.tail_min is not None else lam.max_finite() + 1)
    table = ForestTable(a.coeffs, N, max(cap, 1))
    return SetLayerTable(a.omega_key, lam, [table.restricted(m, lam) for m in range(N + 1)])


class SeriesFamily:
    """All class series for one degree set, sharing a single forest table."""

    def __init__(self, omega: DegreeSet, N: int):
        omega.validate_as_omega()
        self.omega = omega
        self.omega_star = omega.shift(1)
        self.N = N
        self.a = rooted_counts(self.omega_star, N)
        self._forest = ForestTable(self.a.coeffs, N, family_cap(omega, self.omega_star))
        self._memo: dict[str, CoeffTable] = {}

    def forest_count(self, m: int, lam: DegreeSet) -> int:
        return self._forest.restricted(m, lam)

    def _cached(self, key: str, build) -> CoeffTable:
        t = self._memo.get(key)
        if t is None:
            t = build()
            self._memo[key] = t
        return t

    def s_counts(self) -> CoeffTable:
        return self._cached("S", self._build_s)

    def _build_s(self) -> CoeffTable:
        s = [0] * (self.N + 1)
        for n in range(1, self.N + 1):
            s[n] = self._forest.restricted(n - 1, self.omega)
        return CoeffTable("S", self.omega.key(), s)

    def e_counts(self) -> CoeffTable:
        return self._cached("E", self._build_e)

    def _build_e(self) -> CoeffTable:
        e = [0] * (self.N + 1)
        for n in range(2, self.N + 1, 2):
            e[n] = (n // 2) * self.a[n // 2]
        return CoeffTable("E", self.omega.key(), e)

    def v_counts(self) -> CoeffTable:
        return self._cached("V", self._build_v)

    def _build_v(self) -> CoeffTable:
        """v_n = [z^{n-1}] sum_{l>=2} Apointed(z^l) * Z_{SET_{Omega-l}}(A(z), ...).

        Uses the reduction d/ds_l Z_{SET_Lambda} = (1/l) Z_{SET_{Lambda-l}}:
        removing the marked l-cycle leaves an unrestricted forest whose
        component count budget shrank by l.
        """
        v = [0] * (self.N + 1)
        a = self.a.coeffs
        shifted = {}
        for n in range(2, self.N + 1):
            b = n - 1
            total = 0
            for ell in range(2, b + 1):
                lam = shifted.get(ell)
                if lam is None:
                    lam = self.omega.shift(ell)
                    shifted[ell] = lam
                if lam.is_empty():
                    continue
                for t in range(1, b // ell + 1):
                    at = a[t]
                    if at:
                        total += t * at * self._forest.restricted(b - ell * t, lam)
            v[n] = total
        return CoeffTable("V", self.omega.key(), v)

    def free_counts(self) -> CoeffTable:
        return self._cached("F", self._build_f)

    def _build_f(self) -> CoeffTable:
        s, e, v = self.s_counts(), self.e_counts(), self.v_counts()
        f = [0] * (self.N + 1)
        if self.N >= 1:
            f[1] = 1  # degenerate single vertex, by convention
        for n in range(2, self.N + 1):
            total = s[n] + e[n] + v[n]
            if total % n != 0:
                raise IntegralityViolation(
                    f"n={n}: class sum {total} not divisible by n (omega={self.omega})")
            f[n] = total // n
        return CoeffTable("F", self.omega.key(), f)

    def pointed_free_counts(self) -> CoeffTable:
        s, e, v = self.s_counts(), self.e_counts(), self.v_counts()
        return CoeffTable("Fpointed", self.omega.key(),
                          [s[n] + e[n] + v[n] for n in range(self.N + 1)])


@lru_cache(maxsize=32)
def _family_cached(omega_key: str, N: int) -> SeriesFamily:
    return SeriesFamily(DegreeSet.parse(omega_key), N)


def series_family(omega: DegreeSet, N: int) -> SeriesFamily:
    """Cached family; N is rounded up to limit recomputation."""
    omega.validate_as_omega()
    step = 64
    N_round = max(((N + step - 1) // step) * step, step)
    return _family_cached(omega.key(), N_round)


def s_counts(omega: DegreeSet, N: int) -> CoeffTable:
    return _truncate(series_family(omega, N).s_counts(), N)


def e_counts(omega: DegreeSet, N: int) -> CoeffTable:
    return _truncate(series_family(omega, N).e_counts(), N)


def v_counts(omega: DegreeSet, N: int) -> CoeffTable:
    return _truncate(series_family(omega, N).v_counts(), N)


def free_counts(omega: DegreeSet, N: int) -> CoeffTable:
    return _truncate(series_family(omega, N).free_counts(), N)


def _truncate(t: CoeffTable, N: int) -> CoeffTable:
    return CoeffTable(t.series_id, t.omega_key, t.coeffs[:N + 1]) if t.N > N else t
