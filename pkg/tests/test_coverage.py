from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gklab.coverage import (PUBLISHED_TABLE, admissible_64, check_published_table, cover_bounds,
                            exceeds_unique_degree_threshold, galois_cert_63, galois_cert_64,
                            galois_cert_65, hermitian_bounds, obstruction, scan_table)
from gklab.genus import HypothesisError


def test_gk_n2_bounds():
    b = cover_bounds(513, 225, 28, 10)
    assert b.L == Fraction(513, 225) and b.U == 3
    assert (b.ceilL, b.floorU) == (3, 3)
    assert not obstruction(b)
    assert hermitian_bounds(8, 10) == b


def test_integer_interval_not_obstructed():
    assert not obstruction(cover_bounds(10, 5, 5, 3))    # L = U = 2


def test_small_genus_rejected():
    with pytest.raises(ValueError):
        cover_bounds(513, 81, 28, 1)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10 ** 12), st.integers(1, 10 ** 9), st.integers(2, 10 ** 9), st.integers(2, 10 ** 6))
def test_ceil_floor_exact(N_H, N_Y, g_H, g_Y):
    b = cover_bounds(N_H, N_Y, g_H, g_Y)
    assert b.ceilL - 1 < b.L <= b.ceilL
    assert b.floorU <= b.U < b.floorU + 1


def test_unique_degree_threshold():
    assert not exceeds_unique_degree_threshold(8, 0)
    assert exceeds_unique_degree_threshold(27, 99)
    # f(8) = (sqrt(41553) - 65)/16 is about 8.68
    assert not exceeds_unique_degree_threshold(8, 8)
    assert exceeds_unique_degree_threshold(8, 9)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([8, 27, 64, 125, 343, 512, 729]), st.integers(2, 10 ** 5))
def test_threshold_means_interval_shorter_than_one(q, g):
    b = hermitian_bounds(q, g)
    assert exceeds_unique_degree_threshold(q, g) == (b.U - b.L < 1)


def test_published_table_reproduced():
    checks = check_published_table()
    assert len(checks) == sum(len(row[2]) for row in PUBLISHED_TABLE)
    for c in checks:
        assert c.reproduced, c


def test_scan_n17_contains_table_rows():
    rows = scan_table(17)
    seen = {(r.genus, r.params.d1, r.params.d2, r.params.d3) for r in rows}
    for genus, n, triples, _ in PUBLISHED_TABLE:
        if n == 17:
            for t in triples:
                assert (genus, *t) in seen
    assert all(r.obstructed for r in rows)


def test_scan_n2_empty():
    assert scan_table(2) == []


def test_cert_63():
    for n, k in ((7, 2), (8, 3)):
        cert = galois_cert_63(n, k)
        assert cert.all_fail and cert.degree_forced
        assert cert.verdict == 'not-Galois-covered'
    assert len(galois_cert_63(8, 3).tests) == 4


def test_cert_65():
    cert = galois_cert_65(5, 2, 1)
    assert [(t.v, t.w) for t in cert.tests] == [(0, 1), (1, 0)]
    assert cert.all_fail and cert.verdict == 'not-Galois-covered'
    cert = galois_cert_65(7, 1, 1)
    assert cert.all_fail and cert.verdict == 'not-covered'


@pytest.mark.parametrize('fn,args', [
    (galois_cert_64, (23, 8)), (galois_cert_64, (23, 4)), (galois_cert_64, (11, 4)),
    (galois_cert_64, (11, 2)), (galois_cert_63, (5, 2)), (galois_cert_63, (7, 3)),
    (galois_cert_65, (7, 3, 1)), (galois_cert_65, (5, 1, 1)),
])
def test_hypothesis_violations(fn, args):
    with pytest.raises(HypothesisError):
        fn(*args)


def test_cert_64_admissible_pairs():
    pairs = admissible_64(32)
    assert (13, 2) in pairs and (23, 8) not in pairs
    for n, k in pairs:
        cert = galois_cert_64(n, k)
        assert cert.all_fail, (n, k)
        assert cert.verdict in ('not-Galois-covered', 'not-covered', 'inconclusive')


def test_certificate_serialises():
    d = galois_cert_63(7, 2).to_dict()
    assert d['verdict'] == 'not-Galois-covered' and d['tests']
