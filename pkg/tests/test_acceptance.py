"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria are exact algebraic identities, oracle equivalence, and statistical
proxies at the tolerances fixed below.  POLYAFORGE_FAST=1 shrinks the heavy
sample counts for development; the full suite runs by default.
"""

import math
import time

import numpy as np
import pytest
from scipy.stats import chisquare

from polyaforge import boltzmann as bz
from polyaforge import checks, engine, oracle, stats
from polyaforge.degrees import DegreeSet
from polyaforge.rng import RandomSource
from polyaforge.trees import RootedTree, free_canonical_code

from conftest import FAST

SEED = 20260809
OMEGAS = ("1+", "1,3", "1,2,4")


def _report(idx, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {idx} ({name}): {detail}"
    print(line)
    assert ok, line


# -- 1 ----------------------------------------------------------------------

def test_criterion_1_exact_identity():
    t0 = time.time()
    all_ok = True
    for key in OMEGAS:
        r = checks.check_identity(DegreeSet.parse(key), 200)
        all_ok = all_ok and r.ok
    elapsed = time.time() - t0
    _report(1, "exact identity", all_ok and elapsed < 10.0,
            f"n f_n = s_n + e_n + v_n exact for n <= 200, all three degree sets, "
            f"{elapsed:.1f}s (< 10s)")


# -- 2 ----------------------------------------------------------------------

def test_criterion_2_oracle_equivalence():
    t0 = time.time()
    all_ok = True
    for key in OMEGAS:
        r = checks.check_oracle_equivalence(DegreeSet.parse(key), 12)
        all_ok = all_ok and r.ok
    elapsed = time.time() - t0
    _report(2, "oracle equivalence", all_ok and elapsed < 60.0,
            f"DP counts = brute force for rooted/free/S/E/V, n <= 12, "
            f"three degree sets, {elapsed:.1f}s (< 60s)")


# -- 3 ----------------------------------------------------------------------

def test_criterion_3_known_sequences():
    r = checks.check_known_sequences()
    _report(3, "known sequences", r.ok, r.detail)


# -- 4 ----------------------------------------------------------------------

@pytest.mark.parametrize("key,sizes", [("1+", (5, 6, 7, 8, 9)),
                                       ("1,3", (4, 6, 8, 10))])
def test_criterion_4_sampler_uniformity(key, sizes):
    draws = 2000 if FAST else 100_000
    omega = DegreeSet.parse(key)
    tables = engine.sampler_tables(omega, 16)
    t0 = time.time()
    worst = (1.0, None)
    for n in sizes:
        codes = oracle.brute_force_enumerate(omega, n, "free")
        probs = bz.class_probabilities(omega, n)
        counts = {c: 0 for c in codes}
        for i in range(draws):
            rng = RandomSource(SEED + 13 * n, i)
            parent = engine.sample_unrooted(tables, n, rng, probs)
            code = free_canonical_code(
                RootedTree.from_parent([int(x) for x in parent]).to_tree())
            counts[code] += 1
        obs = np.array(list(counts.values()))
        p = 1.0 if len(obs) == 1 else chisquare(obs)[1]
        if p < worst[0]:
            worst = (p, n)
    elapsed = time.time() - t0
    _report(4, f"sampler uniformity ({key})", worst[0] > 1e-3 and elapsed < 300,
            f"{draws} draws per size, worst chi-square p = {worst[0]:.3g} "
            f"at n = {worst[1]} (> 1e-3), {elapsed:.0f}s (< 300s)")


# -- 5 ----------------------------------------------------------------------

def test_criterion_5_crt_internal_consistency():
    t0 = time.time()
    from polyaforge.crt import broutin_flajolet_c, crt_diameter_moment
    ok = True
    details = []
    scale = 2.0 * math.sqrt(2.0)
    for r in range(1, 11):
        lhs = crt_diameter_moment(r).value
        rhs = broutin_flajolet_c(r) * scale ** (-r)
        if abs(lhs - rhs) > 1e-12 * abs(rhs):
            ok = False
            details.append(f"ratio r={r}")
    closed = {1: (4.0 / 3.0) * math.sqrt(math.pi / 2.0),
              2: (2.0 / 3.0) * (1.0 + math.pi ** 2 / 3.0),
              3: 2.0 * math.sqrt(2.0 * math.pi)}
    for k, v in closed.items():
        if abs(crt_diameter_moment(k).value - v) > 1e-12 * v:
            ok = False
            details.append(f"moment k={k}")
    if abs(crt_diameter_moment(1).value - 1.6710855) > 1e-7:
        ok = False
        details.append("E[D] decimal")
    # integral check is the slow part; run it but keep the 1s budget honest
    from scipy.integrate import quad
    integral, _ = quad(lambda x: __import__("polyaforge.crt", fromlist=["crt_diameter_tail"])
                       .crt_diameter_tail(x).value, 0.0, 12.0, limit=200)
    if abs(integral - closed[1]) > 1e-8:
        ok = False
        details.append("tail integral")
    elapsed = time.time() - t0
    _report(5, "CRT internal consistency", ok and elapsed < 1.0,
            f"moment/ratio identities to 1e-12, integral tail = mean to 1e-8, "
            f"{elapsed:.2f}s (< 1s)" + ("" if ok else "; " + ",".join(details)))


# -- shared heavy samples for 6 and 7 ----------------------------------------

@pytest.fixture(scope="module")
def diameter_samples():
    count = 600 if FAST else 10_000
    omega = DegreeSet.parse("1+")
    return checks.diameter_study(omega, (1000, 2000, 4000), count, SEED)


# -- 6 ----------------------------------------------------------------------

def test_criterion_6_scaling_proxy(diameter_samples):
    t0 = time.time()
    results = checks.check_scaling_proxy(diameter_samples, DegreeSet.parse("1+"))
    elapsed = time.time() - t0
    ok = all(r.ok for r in results[:2])  # ratio + KS are the stated criterion
    detail = "; ".join(r.detail for r in results)
    _report(6, "scaling proxy", ok, detail + f" ({elapsed:.0f}s)")
    # moment match is a module invariant at the same tolerance
    assert results[2].ok, results[2].detail


# -- 7 ----------------------------------------------------------------------

def test_criterion_7_tail_proxy(diameter_samples):
    r = checks.check_tail_proxy(diameter_samples)
    _report(7, "tail proxy", r.ok, r.detail)


# -- 8 ----------------------------------------------------------------------

def test_criterion_8_e_class_decay():
    r = checks.check_e_decay(DegreeSet.parse("1+"), 200, gamma_max=0.7)
    _report(8, "E-class decay", r.ok, r.detail)


# -- 9 ----------------------------------------------------------------------
#
# The literal criterion draws ONE uniform vertex per sampled tree and asks
# the empirical TV distances between censuses at n and 2n to decrease
# strictly.  The empirical-TV estimator has a positive noise floor of
# E Sigma_c |p1_c - p2_c| / 2 ~ sum_c sqrt(p_c / (pi m)); at m = 2e4 that
# floor is ~0.05 for Omega = N (hundreds of distinct 2-neighborhoods) and
# ~0.005 for {1,3} (4 shapes), while the true Cauchy signal measured by the
# Rao-Blackwellized census (all vertices of the same trees, identical target
# law) is 0.005 -> 0.001 over the size range.  The literal statistic is
# therefore noise-dominated and its ordering is essentially random: the
# criterion is not attainable as stated at the pinned sample count.  It is
# asserted faithfully below (expected red), followed by the companion
# all-vertex check that verifies the substance (strict Cauchy decay) at the
# same tree budget.  See the decisions ledger for the full analysis.

@pytest.mark.parametrize("key", ["1+", "1,3"])
def test_criterion_9_bs_proxy_literal(key):
    count = 1500 if FAST else 20_000
    t0 = time.time()
    r = checks.check_bs_cauchy(DegreeSet.parse(key), count, SEED + 7,
                               estimator="one-vertex")
    companion = checks.check_bs_cauchy(DegreeSet.parse(key), count, SEED + 7,
                                       estimator="all-vertex")
    elapsed = time.time() - t0
    print(companion.line())
    _report(9, f"Benjamini-Schramm proxy ({key}, literal one-vertex census)",
            r.ok, r.detail + f" strictly decreasing; {elapsed:.0f}s "
            f"[companion all-vertex estimator: "
            f"{'PASS' if companion.ok else 'FAIL'}: {companion.detail}]")


@pytest.mark.parametrize("key", ["1+", "1,3"])
def test_criterion_9_bs_substance_rao_blackwell(key):
    """Same tree budget, variance-reduced estimator of the same census law."""
    count = 1500 if FAST else 20_000
    r = checks.check_bs_cauchy(DegreeSet.parse(key), count, SEED + 7,
                               estimator="all-vertex")
    print(r.line())
    assert r.ok, r.detail


# -- module invariants that ride along the acceptance run --------------------

def test_degree_law_13():
    count = 2000 if FAST else 20_000
    r = checks.check_degree_law_13(count, SEED + 11)
    print(r.line())
    assert r.ok, r.detail


def test_class_frequencies():
    r = checks.check_class_frequencies(DegreeSet.parse("1+"), 12,
                                       2000 if FAST else 100_000, SEED + 5)
    print(r.line())
    assert r.ok, r.detail
