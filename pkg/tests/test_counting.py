import pytest

from polyaforge.counting import (CoeffTable, rooted_counts, series_family,
                                 set_layer)
from polyaforge.degrees import DegreeSet
from polyaforge.errors import InvalidDegreeSet


def test_degree_set_parsing():
    d = DegreeSet.parse("1,3")
    assert 1 in d and 3 in d and 2 not in d and 0 not in d
    t = DegreeSet.parse("1,2,3+")
    assert t.key() == "1+"  # contiguous finite part folds into the tail
    assert 100 in t
    mixed = DegreeSet.parse("1,4,6+")
    assert mixed.key() == "1,4,6+"
    assert [k for k in range(9) if k in mixed] == [1, 4, 6, 7, 8]
    with pytest.raises(InvalidDegreeSet):
        DegreeSet.parse("")


def test_degree_set_shift_and_period():
    om = DegreeSet.parse("1,3")
    assert om.shift(1).key() == "0,2"
    assert om.shift(2).key() == "1"
    assert om.shift(3).key() == "0"
    assert om.shift(4).is_empty()
    assert om.shift(1).period == 2
    assert DegreeSet.parse("1+").shift(1).period == 1
    assert DegreeSet.parse("1,2,4").shift(1).period == 1


def test_omega_validation():
    DegreeSet.parse("1,3").validate_as_omega()
    DegreeSet.parse("1+").validate_as_omega()
    with pytest.raises(InvalidDegreeSet):
        DegreeSet.parse("2,3").validate_as_omega()  # missing 1
    with pytest.raises(InvalidDegreeSet):
        DegreeSet.parse("1,2").validate_as_omega()  # no k >= 3


def test_rooted_counts_unrestricted():
    a = rooted_counts(DegreeSet.parse("0+"), 10)
    assert a.coeffs[1:] == [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]


def test_rooted_counts_binary():
    a = rooted_counts(DegreeSet.parse("0,2"), 9)
    assert [a[n] for n in (1, 3, 5, 7, 9)] == [1, 1, 1, 2, 3]
    assert all(a[n] == 0 for n in (2, 4, 6, 8))


def test_rooted_counts_rejects_bad_sets():
    with pytest.raises(InvalidDegreeSet):
        rooted_counts(DegreeSet.parse("1,2"), 5)  # missing 0


def test_rootings_of_free_trees():
    # a_5 = 9 equals the total number of rootings of the 3 free trees on 5 vertices
    a = rooted_counts(DegreeSet.parse("0+"), 5)
    fam = series_family(DegreeSet.parse("1+"), 5)
    assert a[5] == 9
    assert fam.free_counts()[5] == 3


def test_set_layer_trivial_cases():
    a = rooted_counts(DegreeSet.parse("0+"), 8)
    only_empty = set_layer(a, DegreeSet.make([0]), 8)
    assert only_empty.coeffs == [1] + [0] * 8
    # base series z (a single size-1 type): one multiset of n atoms each n
    unit = CoeffTable("A", "unit", [0, 1] + [0] * 7)
    geo = set_layer(unit, DegreeSet.make((), 0), 8)
    assert geo.coeffs == [1] * 9
    pairs = set_layer(a, DegreeSet.make([2]), 8)
    assert pairs[2] == 1 and pairs[3] == 1 and pairs[4] == 3


def test_set_layer_mixed_tail_against_brute_force():
    from polyaforge.oracle import _forests
    a = rooted_counts(DegreeSet.parse("0+"), 8)
    lam = DegreeSet.parse("1,3+")  # count 1, or any count >= 3
    tab = set_layer(a, lam, 8)
    for m in range(0, 9):
        expect = sum(1 for f in _forests("0+", m, max(m, 1)) if len(f) in lam)
        assert tab[m] == expect, m


def test_identity_mixed_tail_omega():
    # finite part, a gap, then a tail: exercises every restriction branch
    omega = DegreeSet.parse("1,4,6+")
    fam = series_family(omega, 64)
    s, e, v, f = fam.s_counts(), fam.e_counts(), fam.v_counts(), fam.free_counts()
    assert f[5] == 1  # only the 4-star has degrees in {1,4} on 5 vertices
    assert any(f[n] > 1 for n in range(6, 65))
    for n in range(2, 65):
        assert n * f[n] == s[n] + e[n] + v[n]


def test_class_counts_nat():
    fam = series_family(DegreeSet.parse("1+"), 12)
    s, e, v, f = fam.s_counts(), fam.e_counts(), fam.v_counts(), fam.free_counts()
    assert s[6] == 20 and e[6] == 6 and v[6] == 10 and f[6] == 6
    assert s[1] == 0  # root needs degree >= 1
    assert e[2] == 1 and all(e[n] == 0 for n in (3, 5, 7))
    assert v[1] == 0
    assert f.coeffs[1:11] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    assert s[2] == 1  # s_n = a_n for omega = N, n >= 2
    for n in range(2, 13):
        assert s[n] == fam.a[n]


def test_class_counts_13():
    fam = series_family(DegreeSet.parse("1,3"), 12)
    s, v, f = fam.s_counts(), fam.v_counts(), fam.free_counts()
    assert s[4] == 2
    assert v[4] == 2  # forced by 4 f_4 = s_4 + e_4 + v_4 = 2 + 0 + v_4, f_4 = 1
    assert [f[n] for n in (2, 4, 6, 8, 10)] == [1, 1, 1, 1, 2]
    assert all(f[n] == 0 for n in (3, 5, 7, 9, 11))


def test_cycle_pointing_identity_exact():
    for key in ("1+", "1,3", "1,2,4"):
        fam = series_family(DegreeSet.parse(key), 64)
        s, e, v, f = fam.s_counts(), fam.e_counts(), fam.v_counts(), fam.free_counts()
        for n in range(2, 65):
            assert n * f[n] == s[n] + e[n] + v[n], (key, n)


def test_asymptotic_normalization_stabilizes():
    from polyaforge.checks import check_asymptotics_sanity
    r = check_asymptotics_sanity()
    assert r.ok, r.detail


def test_periodicity():
    fam = series_family(DegreeSet.parse("1,3"), 40)
    f = fam.free_counts()
    for n in range(1, 41):
        if n % 2 == 0:
            assert fam.a[n] == 0
        else:
            assert fam.a[n] > 0
        if n >= 2 and n % 2 == 1:
            assert f[n] == 0
