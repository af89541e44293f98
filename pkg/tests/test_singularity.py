import math

import pytest

from polyaforge.degrees import DegreeSet
from polyaforge.errors import NonConvergence
from polyaforge.singularity import (radius_of_convergence, rho_ratio_estimate,
                                    zset_partial_sums)
import numpy as np


def test_otter_constant():
    sd = radius_of_convergence(DegreeSet.parse("0+"), precision=1e-13)
    # rho by coefficient-ratio extrapolation (independent oracle)
    assert abs(sd.rho - rho_ratio_estimate(DegreeSet.parse("0+"), 400)) < 1e-4
    assert abs(sd.rho - 0.3383219) < 2e-7
    # at the branch point of y = z exp(y + ...) the critical value is exactly 1
    assert abs(sd.y - 1.0) < 1e-10


def test_binary_constant():
    sd = radius_of_convergence(DegreeSet.parse("0,2"), precision=1e-13)
    assert abs(sd.rho - rho_ratio_estimate(DegreeSet.parse("0,2"), 400)) < 1e-4
    # vertex-indexed radius; its square is the classical per-leaf constant
    assert abs(sd.rho ** 2 - 0.4026975) < 2e-7


def test_series_values_positive_and_decreasing():
    sd = radius_of_convergence(DegreeSet.parse("0+"))
    assert sd.s_values[1] >= sd.rho  # the single vertex contributes
    for i in range(2, sd.i_max):
        assert sd.s_values[i + 1] < sd.s_values[i]
        assert sd.t_values[i] > 0.0
    assert sd.tail_bound < 1e-14
    assert sd.residual < 1e-9


def test_invalid_precision():
    with pytest.raises(NonConvergence):
        radius_of_convergence(DegreeSet.parse("0+"), precision=-1.0)


def test_partial_sums_match_exponential():
    # with a single nonzero argument s_1 = c: P_d = c^d / d!
    c = 0.7
    s = np.array([0.0, c])
    P = zset_partial_sums(s, 12)
    for d in range(13):
        assert abs(P[d] - c ** d / math.factorial(d)) < 1e-14
