import math

import numpy as np
import pytest

from polyaforge import stats
from polyaforge.degrees import DegreeSet
from polyaforge.errors import (EmptySample, InsufficientData, RadiusMismatch)
from polyaforge.rng import RandomSource


def test_collect_diameters_trivial(omega_nat):
    ds = stats.collect_diameters(omega_nat, 2, 50, seed=1)
    assert np.all(ds.values == 1)
    ds = stats.collect_diameters(omega_nat, 3, 50, seed=1)
    assert np.all(ds.values == 2)


def test_collect_diameters_n4(omega_nat):
    # f_4 = 2 (path D=3, star D=2) each with probability 1/2: mean 2.5
    ds = stats.collect_diameters(omega_nat, 4, 10000, seed=2)
    mean = float(np.mean(ds.values))
    se = float(np.std(ds.values)) / 100
    assert abs(mean - 2.5) < 3 * se


def test_ks_single_point():
    calib = stats.ScalingCalibration("x", 1.0, {}, {}, 0.0)
    from polyaforge.crt import crt_diameter_quantile
    median = crt_diameter_quantile(0.5)
    sample = stats.DiameterSample("x", 1, np.array([median]), 0)
    assert abs(stats.ks_distance(sample, calib) - 0.5) < 1e-6


def test_ks_self_test_inverse_transform():
    rng = RandomSource(3, 0)
    vals = np.array([stats.sample_crt_diameter(rng) for _ in range(10000)])
    sample = stats.DiameterSample("x", 1, vals, 3)
    calib = stats.ScalingCalibration("x", 1.0, {}, {}, 0.0)
    ks = stats.ks_distance(sample, calib)
    assert ks < 1.63 / math.sqrt(10000)  # 1% KS quantile


def test_ks_empty():
    calib = stats.ScalingCalibration("x", 1.0, {}, {}, 0.0)
    with pytest.raises(EmptySample):
        stats.ks_distance(stats.DiameterSample("x", 1, np.array([]), 0), calib)


def test_calibrate_synthetic():
    samples = {}
    for idx, n in enumerate((1000, 2000)):
        samples[n] = stats.synthetic_diameters(n, 4000, 100 + idx, e_omega=2.0)
    calib = stats.calibrate_scaling(DegreeSet.parse("1+"), [1000, 2000], 0, 0,
                                    samples=samples)
    assert abs(calib.e_hat - 2.0) < 6 * calib.stderr + 0.02
    assert set(calib.per_n_estimates) == {1000, 2000}


def test_calibrate_single_n():
    samples = {500: stats.synthetic_diameters(500, 2000, 7, e_omega=1.5)}
    calib = stats.calibrate_scaling(DegreeSet.parse("1+"), [500], 0, 0,
                                    samples=samples)
    assert calib.e_hat == calib.per_n_estimates[500]


def test_fit_tail_gaussian_square():
    ds = stats.synthetic_gaussian_square(1000, 200000, 11, c=2.0)
    fit = stats.fit_tail(ds)
    assert abs(fit.c_hat - 2.0) < 0.1  # 5%
    assert fit.r2 > 0.99


def test_fit_tail_degenerate():
    with pytest.raises(InsufficientData):
        stats.fit_tail(stats.DiameterSample("x", 10, np.full(5000, 3), 0))
    with pytest.raises(InsufficientData):
        stats.fit_tail(stats.DiameterSample("x", 10, np.arange(100), 0))


def test_census_trivial(omega_nat):
    dist = stats.neighborhood_census(omega_nat, 2, 1, 200, seed=5)
    assert dist.total == 200
    assert len(dist.counts) == 1
    assert list(dist.counts.values()) == [200]


def test_census_n4_root_degree(omega_nat):
    # P(deg 1) = (2/4 + 3/4)/2 = 5/8 over the two trees on 4 vertices
    dist = stats.neighborhood_census(omega_nat, 4, 1, 20000, seed=6)
    leaf = sum(c for code, c in dist.counts.items() if code[0] == 1)
    p = 5 / 8
    se = math.sqrt(p * (1 - p) * 20000)
    assert abs(leaf - p * 20000) < 4 * se


def test_tv_distance():
    d1 = stats.NeighborhoodDist(2, {"a": 1, "b": 1}, 2)
    d2 = stats.NeighborhoodDist(2, {"a": 2}, 2)
    assert stats.tv_distance(d1, d2) == 0.5
    assert stats.tv_distance(d1, d1) == 0.0
    d3 = stats.NeighborhoodDist(2, {"c": 5}, 5)
    assert stats.tv_distance(d1, d3) == 1.0
    with pytest.raises(RadiusMismatch):
        stats.tv_distance(d1, stats.NeighborhoodDist(3, {"a": 1}, 1))


def test_threads_give_identical_results(omega_nat):
    a = stats.collect_diameters(omega_nat, 12, 300, seed=9, threads=1)
    b = stats.collect_diameters(omega_nat, 12, 300, seed=9, threads=2)
    assert np.array_equal(a.values, b.values)
