"""Closed-form law of the continuum-random-tree diameter.

Tail:    P(D > x) = sum_{k>=1} (k^2-1) ((2/3) k^4 x^4 - 4 k^2 x^2 + 2) exp(-k^2 x^2 / 2)
Moments: E[D]   = (4/3) sqrt(pi/2)
         E[D^2] = (2/3) (1 + pi^2/3)
         E[D^3] = 2 sqrt(2 pi)
         E[D^k] = (2^{k/2}/3) k (k-1) (k-3) Gamma(k/2) (zeta(k-2) - zeta(k)),   k >= 4

The tail series is valid for x > 0 only (termwise divergent at 0), so x = 0
is special-cased to 1.  The series has heavy cancellation at small x; terms
are accumulated with math.fsum and the evaluation carries a certified bound
combining the Gaussian truncation remainder with a float rounding estimate.
Whenever value + bound >= 1 the result snaps to exactly 1.0 (the true tail
is <= 1), which keeps the small-x plateau monotone.

All special functions are local: Gamma at half-integers by recursion from
Gamma(1) = 1 and Gamma(1/2) = sqrt(pi); zeta by direct summation with an
Euler-Maclaurin tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgument, InvalidTolerance


@dataclass
class TailEvaluation:
    x: float
    value: float
    terms_used: int
    truncation_bound: float


@dataclass
class MomentValue:
    k: int
    value: float


def gamma_half(k: int) -> float:
    """Gamma(k/2) for integer k >= 1."""
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    if k % 2 == 0:
        return float(math.factorial(k // 2 - 1))
    val = math.sqrt(math.pi)
    j = 1
    while j < k:  # Gamma(z+1) = z Gamma(z) starting at z = 1/2
        val *= j / 2.0
        j += 2
    return val


def zeta(m: int, tol: float = 1e-14) -> float:
    """Riemann zeta at integer m >= 2, direct sum + Euler-Maclaurin tail."""
    if m < 2:
        raise InvalidArgument("zeta requires m >= 2")
    if tol <= 0:
        raise InvalidTolerance("tol must be positive")
    J = 64
    # error term scale m^5 J^{-m-5}; J = 64 is far below 1e-16 for all m >= 2
    head = math.fsum(j ** (-float(m)) for j in range(1, J))
    Jf = float(J)
    tail = (Jf ** (1 - m) / (m - 1) + 0.5 * Jf ** (-m)
            + m / 12.0 * Jf ** (-m - 1)
            - m * (m + 1) * (m + 2) / 720.0 * Jf ** (-m - 3))
    return head + tail


def crt_diameter_tail(x: float, tol: float = 1e-12) -> TailEvaluation:
    """P(D(CRT) > x) with a certified truncation + rounding bound."""
    if tol <= 0:
        raise InvalidTolerance("tol must be positive")
    if x < 0:
        raise InvalidArgument("x must be >= 0")
    if x == 0.0:
        return TailEvaluation(0.0, 1.0, 0, 0.0)
    # cutoff: terms decay like k^6 exp(-k^2 x^2 / 2)
    k_guess = math.ceil(math.sqrt(2.0 * math.log(1.0 / min(tol, 0.5))) / x) + 8
    terms = []
    majorant = 0.0  # bounds the absolute values fed into each cancellation
    k = 1
    while True:
        k2 = float(k * k)
        e = math.exp(-0.5 * k2 * x * x)
        poly = (2.0 / 3.0) * k2 * k2 * x ** 4 - 4.0 * k2 * x * x + 2.0
        t = (k2 - 1.0) * poly * e
        terms.append(t)
        majorant += (k2 - 1.0) * ((2.0 / 3.0) * k2 * k2 * x ** 4
                                  + 4.0 * k2 * x * x + 2.0) * e
        if k >= k_guess:
            # geometric remainder bound: consecutive term ratio
            q = ((k + 1.0) / k) ** 6 * math.exp(-(2 * k + 1) * x * x / 2.0)
            bound_term = (k2 + 2 * k) * ((2.0 / 3.0) * (k + 1.0) ** 4 * x ** 4
                                         + 4.0 * (k + 1.0) ** 2 * x * x + 2.0) \
                * math.exp(-0.5 * (k + 1.0) ** 2 * x * x)
            if q < 0.5 and bound_term / (1.0 - q) < tol:
                remainder = bound_term / (1.0 - q)
                break
        k += 1
        if k > 10_000_000:
            raise InvalidTolerance("tolerance unreachable")
    value = math.fsum(terms)
    rounding = 2e-15 * majorant + 1e-300
    bound = remainder + rounding
    if value + bound >= 1.0:
        return TailEvaluation(x, 1.0, len(terms), bound)
    value = min(max(value, 0.0), 1.0)
    return TailEvaluation(x, value, len(terms), bound)


def crt_diameter_cdf(x: float, tol: float = 1e-12) -> float:
    return 1.0 - crt_diameter_tail(x, tol).value


def crt_diameter_moment(k: int) -> MomentValue:
    """E[D(CRT)^k] by the closed forms."""
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    if k == 1:
        v = (4.0 / 3.0) * math.sqrt(math.pi / 2.0)
    elif k == 2:
        v = (2.0 / 3.0) * (1.0 + math.pi ** 2 / 3.0)
    elif k == 3:
        v = 2.0 * math.sqrt(2.0 * math.pi)
    else:
        v = (2.0 ** (k / 2.0) / 3.0) * k * (k - 1) * (k - 3) * gamma_half(k) \
            * (zeta(k - 2) - zeta(k))
    return MomentValue(k, v)


def broutin_flajolet_c(r: int) -> float:
    """Constants c_r in E[D(tau_n)^r] ~ c_r lambda^{-r} n^{r/2} for cubic trees."""
    if r < 1:
        raise InvalidArgument("r must be >= 1")
    if r == 1:
        return (8.0 / 3.0) * math.sqrt(math.pi)
    if r == 2:
        return (16.0 / 3.0) * (1.0 + math.pi ** 2 / 3.0)
    if r == 3:
        return 64.0 * math.sqrt(math.pi)
    return (4.0 ** r / 3.0) * r * (r - 1) * (r - 3) * gamma_half(r) \
        * (zeta(r - 2) - zeta(r))


def crt_diameter_quantile(p: float, tol: float = 1e-10) -> float:
    """Inverse CDF of the diameter law by bisection (0 < p < 1)."""
    if not 0.0 < p < 1.0:
        raise InvalidArgument("p must lie in (0, 1)")
    lo, hi = 0.0, 1.0
    while crt_diameter_cdf(hi) < p:
        hi *= 2.0
        if hi > 64:
            raise InvalidArgument("quantile out of range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if crt_diameter_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)
