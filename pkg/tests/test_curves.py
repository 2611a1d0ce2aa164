from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from gklab.curves import (CurveParams, CurveSystem, Family, ParameterError, compute_D, compute_M,
                          covering_degree, divisors, emit_system, family_tuples, hexagon,
                          identity_matrix, kummer_power_factor, m_identity_holds,
                          projectivity_check, validate)
from gklab.ffield import field_for_power, dth_roots

C1, C2, C3, XK = Family.C1, Family.C2, Family.C3, Family.XK


def test_validate_examples():
    validate(CurveParams(C1, 5, 2, 3, 6, 21))
    validate(CurveParams(XK, 5, c=3, d=7))
    with pytest.raises(ParameterError) as err:
        validate(CurveParams(C1, 5, 4, 3, 6, 21))
    assert any('4' in v for v in err.value.violations)


def test_validate_collects_every_violation():
    with pytest.raises(ParameterError) as err:
        validate(CurveParams(C1, 5, 4, 5, 6, 2))
    assert len(err.value.violations) == 3


def test_validate_rejects_composite_n():
    with pytest.raises(ParameterError):
        validate(CurveParams(C1, 6, 1, 1, 1, 31))


def test_xh_forces_full_e():
    assert validate(CurveParams(Family.XH, 5, 2, 3, 6)).e == 21
    with pytest.raises(ParameterError):
        validate(CurveParams(Family.XH, 5, 2, 3, 6, 1))


def test_compute_D_examples():
    assert compute_D(17, 18, 9) == 9
    assert compute_D(5, 6, 6) == 6
    for n in (2, 3, 5, 7):
        assert compute_D(n, 1, 1) == 1


def test_compute_M_examples():
    assert compute_M(17, 18, 9, 2) == 3
    assert compute_M(2, 3, 3, 3) == 3
    assert compute_M(5, 1, 6, 6) == 1


@pytest.mark.parametrize('n', [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17])
def test_m_identity(n):
    ds = divisors(n + 1)
    for d1 in ds:
        for d2 in ds:
            for d3 in ds:
                assert m_identity_holds(n, d1, d2, d3)


def test_covering_degree_examples():
    assert covering_degree(CurveParams(C1, 2, 3, 3, 3, 3)) == 1
    assert covering_degree(CurveParams(XK, 2, c=3, d=3)) == 1
    assert covering_degree(CurveParams(XK, 5, c=1, d=1)) == 126


@pytest.mark.parametrize('n', [2, 3, 4, 5, 7, 8])
def test_degree_times_genus_respects_hurwitz_bound(n):
    # 2g(GK) - 2 >= deg * (2g(Y) - 2) for any covering GK -> Y
    from gklab.genus import closed_form_genus, genus_c1
    g_gk = genus_c1(n, n + 1, n + 1, n + 1)
    for fam in (C1, C2, C3, XK):
        for params in family_tuples(n, fam):
            g = closed_form_genus(params)
            deg = covering_degree(params)
            assert 2 * g_gk - 2 >= deg * (2 * g - 2)


def test_family_tuples_sorted_and_valid():
    rows = family_tuples(5, C1)
    assert rows == sorted(rows, key=lambda p: (p.d1, p.d2, p.d3, p.e))
    assert all(p.e == 21 for p in rows)
    every_e = family_tuples(5, C1, full_e_only=False)
    assert {p.e for p in every_e} <= {1, 3, 7, 21} and len(every_e) > len(rows)


def test_kummer_power_factor_matches_gcd_rule():
    for n in (2, 3, 4, 5, 7, 8):
        for fam in (C2, C3):
            for params in family_tuples(n, fam):
                M = compute_M(n, params.d1, params.d2, params.d3)
                h, k = (params.d1 // M, params.d2) if fam == C2 else (params.d1, params.d2 // M)
                assert kummer_power_factor(params) == gcd(h, k, n + 1, params.d3 * params.e)
        for params in family_tuples(n, C1):
            assert kummer_power_factor(params) == 1


def test_reducible_examples():
    assert kummer_power_factor(CurveParams(C2, 17, 9, 18, 2, hexagon(17))) == 3
    assert kummer_power_factor(CurveParams(C3, 3, 2, 4, 2, 7)) > 1


def _tower_points(system: CurveSystem, ctx, limit=400):
    """Affine points (u, v, s) of the tower with nonzero g, h values."""
    tower = system.tower
    pts = []
    for u in range(ctx.order):
        gv = tower.eval_g(ctx, u)
        if gv == 0:
            continue
        for v in dth_roots(ctx.elem(gv), tower.b):
            hv = tower.eval_h(ctx, u, v.value)
            if hv == 0:
                continue
            for s in dth_roots(ctx.elem(hv), tower.m):
                pts.append((u, v.value, s.value))
                if len(pts) >= limit:
                    return pts
    return pts


@pytest.mark.parametrize('params', [
    CurveParams(C1, 2, 1, 1, 1, 3), CurveParams(C1, 3, 2, 4, 1, 7),
    CurveParams(C2, 3, 2, 2, 4, 7), CurveParams(C3, 2, 1, 1, 1, 3),
    CurveParams(XK, 3, c=2, d=7), CurveParams(C1, 4, 5, 1, 5, 13),
])
def test_tower_points_satisfy_displayed_equations(params):
    system = emit_system(params)
    ctx = field_for_power(params.n, 6)
    pts = _tower_points(system, ctx)
    assert pts
    for pt in pts:
        for eq in system.equations:
            assert eq.holds(ctx, pt[:len(system.variables)]) is not False


def test_system_serialisation_roundtrip():
    system = emit_system(CurveParams(C2, 5, 2, 3, 6, 21))
    again = CurveSystem.from_dict(system.to_dict())
    assert again == system
    assert system.pretty()


def test_xk_equation_prints_cleanly():
    lines = emit_system(CurveParams(XK, 2, c=1, d=3)).pretty()
    assert not any('*1' in line for line in lines)


@pytest.mark.parametrize('n', [2, 3])
def test_projectivity(n):
    assert projectivity_check(n)


def test_identity_projectivity():
    from gklab.curves import Family as F
    assert projectivity_check(2, identity_matrix(), source=F.GK_X, target=F.GK_X)
    assert not projectivity_check(2, identity_matrix(), source=F.GK_C, target=F.GK_X)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11]), st.data())
def test_params_dict_roundtrip(n, data):
    ds = divisors(n + 1)
    params = CurveParams(data.draw(st.sampled_from([C1, C2, C3])), n,
                         data.draw(st.sampled_from(ds)), data.draw(st.sampled_from(ds)),
                         data.draw(st.sampled_from(ds)), data.draw(st.sampled_from(divisors(hexagon(n)))))
    assert CurveParams.from_dict(params.as_dict()) == params
