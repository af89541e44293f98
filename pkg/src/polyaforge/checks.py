"""Invariant and proxy checks shared by the CLI `verify` command and the
acceptance test suite.  Each check returns CheckResult(name, ok, detail);
thresholds are fixed here, not tuned per call site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chisquare

from . import engine, oracle, stats
from .boltzmann import class_probabilities
from .counting import series_family
from .crt import broutin_flajolet_c, crt_diameter_moment, crt_diameter_tail
from .degrees import DegreeSet
from .rng import RandomSource
from .trees import RootedTree, canonical_code, free_canonical_code

TEST_OMEGAS = ("1+", "1,3", "1,2,4")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail}"


# ---------------------------------------------------------------------------
# exact algebraic checks

def check_identity(omega: DegreeSet, N: int = 200) -> CheckResult:
    """n f_n = s_n + e_n + v_n exactly for every supported n <= N."""
    fam = series_family(omega, N)
    s, e, v, f = fam.s_counts(), fam.e_counts(), fam.v_counts(), fam.free_counts()
    bad = [n for n in range(2, N + 1) if n * f[n] != s[n] + e[n] + v[n]]
    return CheckResult(f"cycle-pointing identity ({omega})", not bad,
                       f"n f_n = s_n + e_n + v_n exact for n = 2..{N}" if not bad
                       else f"violated at n = {bad[:5]}")


def check_periodicity(omega: DegreeSet, N: int = 200) -> CheckResult:
    fam = series_family(omega, N)
    d = fam.omega_star.period
    f = fam.free_counts()
    bad_a = [n for n in range(1, N + 1) if (fam.a[n] > 0) != (n % d == 1 % d)]
    bad_f = [n for n in range(2, N + 1) if f[n] > 0 and n % d != 2 % d]
    ok = not bad_a and not bad_f
    return CheckResult(f"periodicity ({omega})", ok,
                       f"d = {d}; a_n on n = 1 mod d, f_n on n = 2 mod d" if ok
                       else f"bad a at {bad_a[:3]}, bad f at {bad_f[:3]}")


def check_oracle_equivalence(omega: DegreeSet, n_max: int = 12) -> CheckResult:
    fam = series_family(omega, max(n_max, 2))
    s, e, v, f = fam.s_counts(), fam.e_counts(), fam.v_counts(), fam.free_counts()
    mismatches = []
    for n in range(1, n_max + 1):
        counts = {
            "rooted": fam.a[n],
            "free": f[n],
            "S": s[n],
            "E": e[n],
            "V": v[n],
        }
        for kind, expect in counts.items():
            got = len(oracle.brute_force_enumerate(omega, n, kind))
            if got != expect:
                mismatches.append((kind, n, expect, got))
    return CheckResult(f"oracle equivalence ({omega}, n <= {n_max})", not mismatches,
                       "DP counts equal brute-force enumeration for rooted/free/S/E/V"
                       if not mismatches else f"mismatch: {mismatches[:4]}")


def check_e_decay(omega: DegreeSet, N: int = 200, gamma_max: float = 1.0) -> CheckResult:
    """e_n/(n f_n) <= C gamma^n with gamma fitted on the log-ratios.

    gamma_max = 1 is the module invariant (exponential decay); the Omega = N
    acceptance criterion tightens it to 0.7.  C is taken as the smallest
    constant making the bound hold for every computed n, so the content of
    the check is the fitted rate plus eventual monotonicity of the ratios.
    """
    fam = series_family(omega, N)
    e, f = fam.e_counts(), fam.free_counts()
    pts = [(n, e[n] / (n * f[n])) for n in range(2, N + 1)
           if f[n] > 0 and e[n] > 0]
    if len(pts) < 8:
        return CheckResult(f"E-class decay ({omega})", False, "too few even sizes")
    ns = np.array([p[0] for p in pts], dtype=float)
    logs = np.array([math.log(p[1]) for p in pts])
    sel = ns >= 20
    slope, _ = np.polyfit(ns[sel], logs[sel], 1)
    gamma = math.exp(slope)
    c_fit = max(r / gamma ** n for n, r in pts)
    monotone = all(b < a for (_, a), (_, b) in zip(pts[8:], pts[9:]))
    ok = gamma < gamma_max and monotone
    return CheckResult(f"E-class decay ({omega})", ok,
                       f"gamma = {gamma:.4f} (< {gamma_max}), C = {c_fit:.3f}, "
                       f"ratios eventually monotone: {monotone}")


def check_asymptotics_sanity(N: int = 400) -> CheckResult:
    """a_n rho^n n^{3/2} stabilizes for Omega* = N_0 (relative drift < 1%)."""
    from .singularity import radius_of_convergence
    omega = DegreeSet.parse("1+")
    fam = series_family(omega, N)
    rho = radius_of_convergence(omega.shift(1)).rho
    def norm(n):
        return math.exp(math.log(float(fam.a[n])) + n * math.log(rho) + 1.5 * math.log(n))
    x300, x400 = norm(300), norm(400)
    drift = abs(x400 - x300) / x400
    return CheckResult("coefficient asymptotics sanity", drift < 0.01,
                       f"a_n rho^n n^1.5: {x300:.6f} (n=300) vs {x400:.6f} (n=400), "
                       f"drift {drift * 100:.3f}% < 1%")


def check_known_sequences() -> CheckResult:
    nat = DegreeSet.parse("1+")
    fam = series_family(nat, 12)
    a = [fam.a[n] for n in range(1, 11)]
    f = [fam.free_counts()[n] for n in range(1, 11)]
    ok = (a == [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]
          and f == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
          and f[4] == 3 and f[5] == 6)
    return CheckResult("known sequences", ok,
                       f"a_1..10 = {a}; f_1..10 = {f} (f_5 = {f[4]}, f_6 = {f[5]})")


def check_crt_internal() -> CheckResult:
    probs = []
    ok = True
    details = []
    for r in range(1, 11):
        lhs = crt_diameter_moment(r).value
        rhs = broutin_flajolet_c(r) * (2.0 * math.sqrt(2.0)) ** (-r)
        if abs(lhs - rhs) > 1e-12 * abs(rhs):
            ok = False
            details.append(f"ratio identity fails at r={r}")
    closed = {1: (4.0 / 3.0) * math.sqrt(math.pi / 2.0),
              2: (2.0 / 3.0) * (1.0 + math.pi ** 2 / 3.0),
              3: 2.0 * math.sqrt(2.0 * math.pi)}
    for k, v in closed.items():
        if abs(crt_diameter_moment(k).value - v) > 1e-12 * v:
            ok = False
            details.append(f"closed form fails at k={k}")
    # integral of the tail equals the mean (adaptive quadrature)
    from scipy.integrate import quad
    integral, _ = quad(lambda x: crt_diameter_tail(x).value, 0.0, 12.0, limit=300)
    if abs(integral - closed[1]) > 1e-8:
        ok = False
        details.append(f"tail integral {integral} != mean")
    return CheckResult("CRT law internal consistency", ok,
                       "moment/ratio identities to 1e-12, tail integral to 1e-8"
                       if ok else "; ".join(details))


# ---------------------------------------------------------------------------
# sampling checks

def check_sampler_uniformity(omega: DegreeSet, sizes, draws: int, seed: int,
                             p_min: float = 1e-3) -> CheckResult:
    """Chi-square of sample_unrooted against uniform on the enumerated classes."""
    tables = engine.sampler_tables(omega, max(sizes) + 1)
    worst = (1.0, None)
    for n in sizes:
        codes = oracle.brute_force_enumerate(omega, n, "free")
        probs = class_probabilities(omega, n)
        counts = {c: 0 for c in codes}
        for i in range(draws):
            rng = RandomSource(seed + n, i)
            parent = engine.sample_unrooted(tables, n, rng, probs)
            code = free_canonical_code(RootedTree.from_parent([int(x) for x in parent]).to_tree())
            counts[code] += 1
        obs = np.array(list(counts.values()))
        if len(obs) == 1:
            p = 1.0
        else:
            _, p = chisquare(obs)
        if p < worst[0]:
            worst = (p, n)
    ok = worst[0] > p_min
    return CheckResult(f"sampler uniformity ({omega}, n in {list(sizes)})", ok,
                       f"worst chi-square p = {worst[0]:.2e} at n = {worst[1]} "
                       f"({draws} draws each); threshold {p_min}")


def check_class_frequencies(omega: DegreeSet, n: int, draws: int, seed: int) -> CheckResult:
    """Empirical class mixture vs (s_n, e_n, v_n)/(n f_n) within 3 sigma."""
    ps, pe, pv = class_probabilities(omega, n)
    rng = RandomSource(seed, 0)
    got = [0, 0, 0]
    for _ in range(draws):
        u = rng.random()
        got[0 if u < ps else (1 if u < ps + pe else 2)] += 1
    ok = True
    det = []
    for idx, p in enumerate((ps, pe, pv)):
        se = math.sqrt(max(p * (1 - p) * draws, 1e-12))
        dev = abs(got[idx] - p * draws)
        det.append(f"{'SEV'[idx]}: {got[idx]} vs {p * draws:.0f}")
        if dev > 3 * se + 1:
            ok = False
    return CheckResult(f"class frequencies ({omega}, n = {n})", ok,
                       "; ".join(det))


# ---------------------------------------------------------------------------
# statistical proxies (heavy)

def diameter_study(omega: DegreeSet, n_list, count: int, seed: int,
                   threads: int = 1) -> dict[int, stats.DiameterSample]:
    samples = {}
    for idx, n in enumerate(sorted(n_list)):
        samples[n] = stats.collect_diameters(omega, n, count, seed,
                                             stream_base=idx * count,
                                             threads=threads)
    return samples


def check_scaling_proxy(samples: dict[int, stats.DiameterSample],
                        omega: DegreeSet) -> list[CheckResult]:
    """sqrt(2) mean ratio at (2000, 4000); calibrated KS < 0.03 at 4000.

    The KS statistic uses mean-matching at the tested size: the scaling
    constant e_Omega is estimated by E[D_CRT] sqrt(n) / mean D(T_n) at n = 4000, so
    the distance measures pure shape mismatch against the closed-form law.
    Pooling the calibration over smaller sizes would import their real
    O(n^{-1/2}) bias (the per-n estimates drift by several Monte Carlo
    standard errors, which is the expected finite-size behaviour, not
    noise).  The moment match below deliberately keeps the pooled
    calibration, making it sensitive to exactly that drift.
    """
    out = []
    m2000 = float(np.mean(samples[2000].values))
    m4000 = float(np.mean(samples[4000].values))
    ratio = m4000 / m2000
    dev = abs(ratio / math.sqrt(2.0) - 1.0)
    out.append(CheckResult(f"scaling mean ratio ({omega})", dev < 0.02,
                           f"mean D(4000)/mean D(2000) = {ratio:.4f} vs sqrt(2) "
                           f"(dev {dev * 100:.2f}% < 2%)"))
    calib_self = stats.calibrate_scaling(omega, [4000], 0, 0, samples=samples)
    ks = stats.ks_distance(samples[4000], calib_self)
    calib_all = stats.calibrate_scaling(omega, sorted(samples), 0, 0,
                                        samples=samples)
    drift = " ".join(f"e({n})={v:.4f}" for n, v in
                     sorted(calib_all.per_n_estimates.items()))
    out.append(CheckResult(f"scaling KS ({omega})", ks < 0.03,
                           f"mean-matched KS at n = 4000: {ks:.4f} < 0.03 "
                           f"(per-n calibration {drift})"))
    # moment match k = 1, 2 at n = 4000, pooled calibration
    resc = samples[4000].values * (calib_all.e_hat / math.sqrt(4000))
    ok_m = True
    mdetail = [f"pooled e_hat = {calib_all.e_hat:.4f}"]
    for k in (1, 2):
        emp = float(np.mean(resc ** k))
        ref = crt_diameter_moment(k).value
        rel = abs(emp / ref - 1.0)
        mdetail.append(f"k={k}: {emp:.4f} vs {ref:.4f} ({rel * 100:.2f}%)")
        if rel > 0.05:
            ok_m = False
    out.append(CheckResult(f"moment match ({omega})", ok_m, "; ".join(mdetail)))
    return out


def check_tail_proxy(samples: dict[int, stats.DiameterSample]) -> CheckResult:
    """R^2 > 0.95 and c_hat stable within +-20% across n in {1000, 2000, 4000}."""
    fits = {n: stats.fit_tail(samples[n]) for n in (1000, 2000, 4000) if n in samples}
    r2_ok = all(f.r2 > 0.95 for f in fits.values())
    cs = [f.c_hat for f in fits.values()]
    mid = float(np.mean(cs))
    stable = all(abs(c / mid - 1.0) <= 0.20 for c in cs)
    detail = "; ".join(f"n={n}: c={f.c_hat:.3f} R2={f.r2:.4f}" for n, f in fits.items())
    return CheckResult("tail-bound proxy", r2_ok and stable, detail)


def check_bs_cauchy(omega: DegreeSet, count: int, seed: int, k: int = 2,
                    base_sizes=(250, 500, 1000, 2000),
                    threads: int = 1, estimator: str = "one-vertex") -> CheckResult:
    """TV distance between censuses at n and 2n strictly decreasing in n.

    estimator "one-vertex" is the plain census (one uniform vertex per
    sampled tree); "all-vertex" is the Rao-Blackwellized estimate of the
    same law (k = 2 only), whose noise floor is low enough to expose the
    Cauchy decay at desk-scale sample counts.
    """
    sizes = sorted(set(base_sizes) | {2 * n for n in base_sizes})
    census = {}
    for idx, n in enumerate(sizes):
        if estimator == "all-vertex":
            census[n] = stats.neighborhood_census_all_vertices(
                omega, n, count, seed, stream_base=idx * count)
        else:
            census[n] = stats.neighborhood_census(omega, n, k, count, seed,
                                                  stream_base=idx * count,
                                                  threads=threads)
    tvs = [stats.tv_distance(census[n], census[2 * n]) for n in base_sizes]
    ok = all(tvs[i + 1] < tvs[i] for i in range(len(tvs) - 1))
    detail = ", ".join(f"tv({n},{2 * n})={tv:.5f}" for n, tv in zip(base_sizes, tvs))
    return CheckResult(f"Benjamini-Schramm Cauchy ({omega}, k={k}, {estimator})",
                       ok, detail)


def check_degree_law_13(count: int, seed: int, n: int = 1000) -> CheckResult:
    """For {1,3}: census root degree in {1,3}, leaf fraction (n+2)/(2n) +- 3 sigma."""
    omega = DegreeSet.parse("1,3")
    dist = stats.neighborhood_census(omega, n, 1, count, seed)
    leaf = 0
    bad = 0
    for code, cnt in dist.counts.items():
        deg = code[0]
        if deg == 1:
            leaf += cnt
        elif deg != 3:
            bad += cnt
    p = (n + 2) / (2 * n)
    se = math.sqrt(p * (1 - p) * count)
    dev = abs(leaf - p * count)
    ok = bad == 0 and dev <= 3 * se
    return CheckResult("degree law ({1,3})", ok,
                       f"leaf count {leaf} vs {p * count:.0f} (3sigma = {3 * se:.0f}), "
                       f"out-of-set degrees: {bad}")
