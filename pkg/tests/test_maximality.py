import pytest

from gklab.curves import CurveParams, Family, family_tuples
from gklab.maximality import (BOUND_EXCEEDED, FORMULA_ONLY, MAXIMAL, REDUCIBLE, MaximalityReport,
                              hasse_weil_bound, verify_maximal)


def test_hasse_weil_bound():
    assert hasse_weil_bound(8, 10) == 225
    assert hasse_weil_bound(27, 99) == 6076
    for q in (2, 8, 27):
        assert hasse_weil_bound(q, 0) == q * q + 1


def test_gk_n2():
    r = verify_maximal(CurveParams(Family.GK_X, 2))
    assert (r.verdict, r.genus, r.genus_oracle, r.N1) == (MAXIMAL, 10, 10, 225)


def test_elliptic_quotient():
    r = verify_maximal(CurveParams(Family.C3, 2, 1, 1, 1, 3))
    assert (r.verdict, r.genus, r.N1) == (MAXIMAL, 1, 81)


def test_gk_n3():
    r = verify_maximal(CurveParams(Family.GK_X, 3))
    assert (r.verdict, r.genus, r.N1) == (MAXIMAL, 99, 6076)


def test_every_n2_tuple_maximal_for_every_e():
    for fam in (Family.C1, Family.C2, Family.C3, Family.XK):
        for params in family_tuples(2, fam, full_e_only=False):
            r = verify_maximal(params)
            assert r.verdict == MAXIMAL and r.consistent, r


def test_reducible_tuple_is_flagged():
    r = verify_maximal(CurveParams(Family.C3, 3, 2, 4, 2, 7))
    assert r.verdict == REDUCIBLE
    # a reducible system counts points of several components
    assert r.N1 > r.bound


def test_formula_only_when_not_counting():
    r = verify_maximal(CurveParams(Family.C1, 5, 2, 3, 6, 21), count=False)
    assert r.verdict == FORMULA_ONLY and r.N1 is None


def test_budget_exceeded_falls_back():
    r = verify_maximal(CurveParams(Family.GK_X, 5), budget_ms=0)
    assert r.verdict == FORMULA_ONLY


def test_report_roundtrip():
    r = verify_maximal(CurveParams(Family.XK, 2, c=1, d=3))
    assert MaximalityReport.from_dict(r.to_dict()) == r


def test_consistency_flags():
    r = verify_maximal(CurveParams(Family.GK_X, 2), count=False)
    r.verdict = BOUND_EXCEEDED
    assert not r.consistent
    r.verdict, r.genus_oracle = MAXIMAL, 11
    assert not r.consistent


@pytest.mark.parametrize('params', [
    CurveParams(Family.C1, 5, 2, 3, 6, 21),
    CurveParams(Family.XK, 5, c=3, d=7),
    CurveParams(Family.C2, 5, 6, 1, 1, 21),
])
def test_n5_quotients_maximal(params):
    assert verify_maximal(params).verdict == MAXIMAL
