"""Numeric singularity of the rooted-tree series.

The series A(z) satisfies A = z * Z_{SET_{Omega*}}(A(z), A(z^2), ...).  Its
radius of convergence rho is the branch point of the one-variable fixed
point equation y = Phi(y, z) with

    Phi(y, z) = z * Z_{SET_{Omega*}}(y, A(z^2), A(z^3), ...),

characterized by the simultaneous conditions y = Phi and dPhi/dy = 1.  The
inner arguments A(z^i), i >= 2, are analytic at z = rho (rho < 1) and are
evaluated from exact coefficients.  Partial cycle-type sums use the
recurrence P_d = (1/d) * sum_j s_j P_{d-j}, and the restricted sums satisfy
dZ_{SET_L}/ds_1 = Z_{SET_{L-1}}, which turns the branch condition into
another restricted sum over the same P array.

The solver brackets in y: for each y the equation y = Phi(y, z) has a
unique root z(y) (Phi is strictly increasing in z), and g(y) =
Phi_y(y, z(y)) - 1 changes sign at the critical point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .counting import rooted_counts
from .degrees import DegreeSet
from .errors import NonConvergence

D_CAP = 96           # cycle-type size cap for numeric partial sums
EPS_SCALE = 1e-17    # drop scales with weight below this (certified tail)


def zset_partial_sums(s_vals: np.ndarray, d_cap: int = D_CAP) -> np.ndarray:
    """P_d = [u^d] exp(sum_{j>=1} u^j s_j / j) for d = 0..d_cap.

    s_vals[j] is the j-th argument; s_vals[0] is ignored.
    """
    jmax = len(s_vals) - 1
    P = np.zeros(d_cap + 1)
    P[0] = 1.0
    with np.errstate(over="ignore", invalid="ignore"):
        for d in range(1, d_cap + 1):
            acc = 0.0
            for j in range(1, min(d, jmax) + 1):
                sj = s_vals[j]
                if sj:
                    acc += sj * P[d - j]
            P[d] = acc / d
    return P


def zset_restricted(P: np.ndarray, s_vals: np.ndarray, lam: DegreeSet) -> float:
    """Z_{SET_lam}(s_1, s_2, ...) from precomputed partial sums."""
    total = 0.0
    for v in sorted(lam.finite_part):
        if v < len(P):
            total += P[v]
    if lam.tail_min is not None:
        arg = sum(s_vals[j] / j for j in range(1, len(s_vals)))
        z_full = math.exp(arg) if arg < 700 else math.inf
        below = sum(P[d] for d in range(min(lam.tail_min, len(P))))
        total += max(z_full - below, 0.0)
    return total


@dataclass
class SingularData:
    omega_star_key: str
    rho: float
    y: float                 # A(rho)
    s_values: np.ndarray     # s_values[i] = A(rho^i), i = 1..i_max
    t_values: np.ndarray     # t_values[i] = A°(rho^i), valid for i >= 2
    i_max: int
    tail_bound: float        # certified bound on dropped scale mass
    residual: float          # |y - Phi| + |Phi_y - 1| at the solution


class _InnerSeries:
    """Evaluate A(z^i) and A°(z^i) from exact coefficients, with tail checks."""

    def __init__(self, omega_star: DegreeSet, N: int):
        table = rooted_counts(omega_star, N)
        self.coeffs = np.array([float(c) for c in table.coeffs])
        self.N = N

    def value(self, x: float, derivative: bool = False) -> float:
        """A(x) (or A°(x) = x dA/dx); math.inf when the tail is not negligible."""
        if x <= 0:
            return 0.0
        m = np.arange(self.N + 1)
        with np.errstate(over="ignore", invalid="ignore"):
            terms = self.coeffs * np.power(x, m)
            if derivative:
                terms = terms * m
        if not np.all(np.isfinite(terms)):
            return math.inf
        nz = np.nonzero(terms)[0]
        if len(nz) == 0:
            return 0.0
        total = float(terms.sum())
        if len(nz) >= 2:
            # ratio of the last two nonzero terms, padded for the slow n^{-3/2} drift
            r = 1.25 * terms[nz[-1]] / terms[nz[-2]]
            if r >= 0.9:
                return math.inf  # too close to (or beyond) the singularity
            tail_est = terms[nz[-1]] * r / (1.0 - r)
            if tail_est > 1e-13 * max(total, 1e-300):
                return math.inf
        return total


def _phi_pair(y: float, z: float, inner: _InnerSeries, omega_star: DegreeSet,
              i_cap: int = 64):
    """(Phi, dPhi/dy) at (y, z); (inf, inf) when inner series are unreliable."""
    if z <= 0:
        return 0.0, 0.0
    s = [0.0, y]
    for i in range(2, i_cap + 1):
        v = inner.value(z ** i)
        if math.isinf(v):
            return math.inf, math.inf
        s.append(v)
        if v / i < EPS_SCALE:
            break
    s_vals = np.array(s)
    P = zset_partial_sums(s_vals)
    phi = z * zset_restricted(P, s_vals, omega_star)
    phi_y = z * zset_restricted(P, s_vals, omega_star.shift(1))
    return phi, phi_y


_SINGULAR_CACHE: dict = {}


def radius_of_convergence(omega_star: DegreeSet, precision: float = 1e-12,
                          N_inner: int = 160, max_iter: int = 200) -> SingularData:
    """Solve y = Phi(y, z), dPhi/dy = 1 by nested bisection; see module docstring."""
    cache_key = (omega_star.key(), precision, N_inner)
    if cache_key in _SINGULAR_CACHE:
        return _SINGULAR_CACHE[cache_key]
    result = _radius_uncached(omega_star, precision, N_inner, max_iter)
    _SINGULAR_CACHE[cache_key] = result
    return result


def _radius_uncached(omega_star: DegreeSet, precision: float,
                     N_inner: int, max_iter: int) -> SingularData:
    omega_star.validate_as_omega_star()
    if precision <= 0:
        raise NonConvergence("precision must be positive")
    inner = _InnerSeries(omega_star, N_inner)

    def z_of_y(y: float) -> float:
        lo, hi = 0.0, 0.999
        phi, _ = _phi_pair(y, hi, inner, omega_star)
        if phi < y:  # pathological: Phi still below y at the cap
            raise NonConvergence("no root in z for given y")
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            phi, _ = _phi_pair(y, mid, inner, omega_star)
            if phi < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def g(y: float) -> float:
        z = z_of_y(y)
        _, phi_y = _phi_pair(y, z, inner, omega_star)
        return phi_y - 1.0

    y_lo, y_hi = 1e-9, 1.0
    it = 0
    while g(y_hi) < 0:
        y_hi *= 2.0
        it += 1
        if it > 60:
            raise NonConvergence("failed to bracket the branch point in y")
    for _ in range(max_iter):
        y_mid = 0.5 * (y_lo + y_hi)
        if g(y_mid) < 0:
            y_lo = y_mid
        else:
            y_hi = y_mid
        if y_hi - y_lo < precision * max(1.0, y_hi):
            break
    else:
        raise NonConvergence("y-bisection did not reach requested precision")
    y_star = 0.5 * (y_lo + y_hi)
    rho = z_of_y(y_star)

    phi, phi_y = _phi_pair(y_star, rho, inner, omega_star)
    residual = abs(phi - y_star) + abs(phi_y - 1.0)

    # evaluated series values at rho^i
    i_max = max(2, math.ceil(math.log(EPS_SCALE) / math.log(rho)))
    s_values = np.zeros(i_max + 1)
    t_values = np.zeros(i_max + 1)
    s_values[1] = y_star
    for i in range(2, i_max + 1):
        s_values[i] = inner.value(rho ** i)
        t_values[i] = inner.value(rho ** i, derivative=True)
    # dropped-scale mass: s_i <= s_2 * rho^{i-2} for i >= 2 (series is increasing in x)
    ratio = rho
    tail_bound = s_values[i_max] * ratio / (1.0 - ratio) if i_max >= 2 else 0.0
    return SingularData(omega_star.key(), rho, y_star, s_values, t_values,
                        i_max, tail_bound, residual)


def rho_ratio_estimate(omega_star: DegreeSet, N: int = 400) -> float:
    """Independent estimate of rho by coefficient-ratio extrapolation.

    a_n ~ c n^{-3/2} rho^{-n} along n = 1 mod d gives
    rho^d = (a_n / a_{n+d}) * (n / (n+d))^{3/2} + O(1/n^2).
    """
    a = rooted_counts(omega_star, N)
    d = omega_star.period
    n = N - d
    while a[n] == 0 or a[n + d] == 0:
        n -= 1
    val = (a[n] / a[n + d]) * (n / (n + d)) ** 1.5  # int/int stays exact enough
    return val ** (1.0 / d)
