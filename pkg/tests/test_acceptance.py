"""The eight acceptance criteria, each at its stated tolerance and time limit.

Each test records one PASS/FAIL line (printed in the terminal summary).
Criteria that fail on the current data are marked ``xfail(strict=True)``
with the reason; they are implemented faithfully, not weakened.
"""

import time

import pytest

from gklab.coverage import (PUBLISHED_TABLE, check_published_table, galois_cert_63, galois_cert_64,
                            galois_cert_65, hermitian_bounds)
from gklab.curves import CurveParams, Family, divisors, emit_system, family_tuples
from gklab.ffield import prime_power
from gklab.genus import (HypothesisError, TameGroupData, case_42_group_data, closed_form_genus,
                         genus_c1, genus_case_2, genus_case_A, genus_case_B, genus_hermitian,
                         genus_prop_fg)
from gklab.maximality import MAXIMAL, REDUCIBLE, verify_maximal
from gklab.places import (ReducibleTowerError, displayed_divisor_alpha, genus_via_hurwitz,
                          principal_divisor_alpha)
from gklab.spectrum import enumerate_genera

SPECTRUM_N5 = [37, 74, 109, 121, 148, 220, 242, 361, 442, 484, 724, 1450,
               160, 233, 469, 478, 496, 737, 1477, 1486]

KUMMER = (Family.C1, Family.C2, Family.C3, Family.XK)


@pytest.mark.xfail(strict=True, reason='eight listed genera (160, 233, 469, 478, 496, 737, 1477, '
                   '1486) are not realised by any tuple at n=5; 1477 and 1486 exceed g(GK) = 1450')
def test_1_spectrum_n5(verdict):
    start = time.perf_counter()
    report = enumerate_genera(5)
    elapsed = time.perf_counter() - start
    missing = [g for g in SPECTRUM_N5 if g not in report.genera or not report.realizers(g)]
    ok = not missing and elapsed < 10
    top = genus_c1(5, 6, 6, 6)
    verdict(1, 'spectrum n=5', ok,
            f'{len(SPECTRUM_N5) - len(missing)}/20 listed genera realised in {elapsed:.2f}s; '
            f'missing {missing} (g(GK) = {top}; above it: {[g for g in missing if g > top]})')
    assert ok


def test_2_published_table(verdict):
    start = time.perf_counter()
    checks = check_published_table()
    elapsed = time.perf_counter() - start
    bad = [c for c in checks if not c.reproduced]
    reducible = sorted({(c.genus, c.triple, c.power_factor) for c in checks
                        if c.power_factor and c.power_factor > 1})
    ok = not bad and elapsed < 30
    verdict(2, 'published genus table', ok,
            f'{len(checks) - len(bad)}/{len(checks)} triples give the listed genus with '
            f'ceil L > floor U in {elapsed:.2f}s; not reproduced: '
            f'{[(c.genus, c.triple, c.computed) for c in bad]}; '
            f'finding: rows matched only by reducible C2/C3 equations {reducible}')
    assert len(checks) == sum(len(r[2]) for r in PUBLISHED_TABLE)
    assert ok


def _sweep(n, full_e_only):
    out = {}
    for fam in KUMMER:
        out[fam] = [verify_maximal(p) for p in family_tuples(n, fam, full_e_only=full_e_only)]
    return out


def test_3_maximality(verdict):
    notes, ok = [], True
    # n = 2: every tuple of every family, every divisor e
    start = time.perf_counter()
    gk = verify_maximal(CurveParams(Family.GK_X, 2))
    herm = verify_maximal(CurveParams(Family.HERMITIAN_BIG, 2))
    sweep = _sweep(2, full_e_only=False)
    t2 = time.perf_counter() - start
    reports = [r for rs in sweep.values() for r in rs]
    ok &= gk.N1 == 225 == gk.bound and gk.genus == 10 and herm.N1 == 513
    ok &= all(r.verdict == MAXIMAL for r in reports) and t2 < 1
    notes.append(f'n=2: GK N1={gk.N1}, Hermitian N1={herm.N1}, '
                 f'{sum(r.verdict == MAXIMAL for r in reports)}/{len(reports)} tuples maximal '
                 f'in {t2:.2f}s')
    # n = 3: GK plus every tuple (all e) of every family
    start = time.perf_counter()
    gk3 = verify_maximal(CurveParams(Family.GK_X, 3))
    sweep = _sweep(3, full_e_only=False)
    t3 = time.perf_counter() - start
    ok &= gk3.N1 == 6076 and gk3.genus == 99 and gk3.verdict == MAXIMAL and t3 < 60
    parts = []
    for fam, rs in sweep.items():
        maximal = sum(r.verdict == MAXIMAL for r in rs)
        reducible = sum(r.verdict == REDUCIBLE for r in rs)
        other = len(rs) - maximal - reducible
        ok &= other == 0 and maximal >= min(10, len(rs) - reducible)
        parts.append(f'{fam.value} {maximal}/{len(rs)}' + (f' ({reducible} reducible)' if reducible else ''))
    notes.append(f'n=3: GK N1={gk3.N1} g={gk3.genus}; maximal per family: {", ".join(parts)} '
                 f'in {t3:.2f}s')
    # n = 5: GK and several quotients
    start = time.perf_counter()
    picks = [CurveParams(Family.GK_X, 5), CurveParams(Family.C1, 5, 2, 3, 6, 21),
             CurveParams(Family.C2, 5, 6, 1, 1, 21), CurveParams(Family.C3, 5, 1, 6, 3, 21),
             CurveParams(Family.XK, 5, c=3, d=7)]
    rs5 = [verify_maximal(p) for p in picks]
    t5 = time.perf_counter() - start
    ok &= all(r.verdict == MAXIMAL for r in rs5) and t5 < 300
    notes.append(f'n=5: GK N1={rs5[0].N1} g={rs5[0].genus} and {len(rs5) - 1} quotients '
                 f'{"all maximal" if all(r.verdict == MAXIMAL for r in rs5) else "NOT all maximal"} '
                 f'in {t5:.2f}s')
    verdict(3, 'maximality by enumeration', ok, '; '.join(notes))
    assert ok


@pytest.mark.xfail(strict=True, reason='32 C2/C3 tuples (n=3: 4, n=7: 21, n=8: 7) have emitted '
                   'equations whose right side is a perfect power, so Riemann-Hurwitz has no '
                   'curve to apply to; the formal values all agree')
def test_4_oracle_equivalence(verdict):
    start = time.perf_counter()
    total, mismatches, reducible = 0, [], []
    for n in (2, 3, 4, 5, 7, 8):
        for fam in KUMMER:
            for params in family_tuples(n, fam):
                total += 1
                formula = closed_form_genus(params)
                try:
                    oracle = genus_via_hurwitz(emit_system(params))
                except ReducibleTowerError as exc:
                    reducible.append((params.label(), exc.ell))
                    continue
                if oracle != formula:
                    mismatches.append((params.label(), formula, oracle))
    elapsed = time.perf_counter() - start
    by_n = {}
    for label, _ in reducible:
        n = int(label.split('n=')[1].split(',')[0].rstrip(')'))
        by_n[n] = by_n.get(n, 0) + 1
    ok = not mismatches and not reducible and elapsed < 120
    verdict(4, 'Hurwitz oracle equals closed form', ok,
            f'{total} tuples, {len(mismatches)} value mismatches, {len(reducible)} with reducible '
            f'equations (no genus) by n: {by_n}, e.g. {reducible[:3]}; {elapsed:.1f}s')
    assert ok


def test_5_cross_formula(verdict):
    checked, bad = 0, []
    for n in (2, 3, 4, 5, 7, 8, 11):
        ds = divisors(n + 1)
        for d1 in ds:
            for d2 in ds:
                for d3 in ds:
                    ref = genus_c1(n, d1, d2, d3)
                    for fn in (genus_case_A, genus_case_B, genus_case_2):
                        try:
                            g = fn(n, d1, d2, d3)
                        except HypothesisError:
                            continue
                        checked += 1
                        if g != ref:
                            bad.append((fn.__name__, n, d1, d2, d3, g, ref))
                    try:
                        data = case_42_group_data(n, d1, d2, d3)
                    except HypothesisError:
                        continue
                    checked += 1
                    if genus_prop_fg(data, n) != ref:
                        bad.append(('group data', n, d1, d2, d3))
    trivial = {n: genus_prop_fg(TameGroupData(1, 1, genus_hermitian(n)), n) == genus_c1(n, n + 1, n + 1, n + 1)
               for n in (2, 3, 4, 5, 7, 8, 11)}
    ok = not bad and all(trivial.values())
    verdict(5, 'cross-formula consistency', ok,
            f'{checked} case evaluations agree with gC1, mismatches {bad}; '
            f'trivial group data gives the GK genus for n in {sorted(k for k, v in trivial.items() if v)}')
    assert ok


@pytest.mark.xfail(strict=True, reason='the printed divisor has gcd(d2, 2 d1) places at infinity; '
                   'the computed divisor has gcd(d1, d2), as the accompanying proof uses')
def test_6_divisor(verdict):
    total, nonzero, differ = 0, [], []
    for n in (2, 3, 4, 5):
        for d1 in divisors(n + 1):
            for d2 in divisors(n + 1):
                total += 1
                div = principal_divisor_alpha(n, d1, d2)
                if div.degree() != 0:
                    nonzero.append((n, d1, d2, div.degree()))
                got, shown = div.by_label(), displayed_divisor_alpha(n, d1, d2)
                if got != shown:
                    differ.append(((n, d1, d2), {k: (got.get(k), shown.get(k))
                                                 for k in set(got) | set(shown)
                                                 if got.get(k) != shown.get(k)}))
    ok = not nonzero and not differ
    verdict(6, 'principal divisor of alpha', ok,
            f'degree 0 for {total - len(nonzero)}/{total} (n, d1, d2); multiplicities differ from '
            f'the printed divisor in {len(differ)} cases (computed, printed): {differ}')
    assert ok


def test_7_certificates(verdict):
    results, ok = [], True
    for fn, args in ((galois_cert_63, (7, 2)), (galois_cert_63, (8, 3)),
                     (galois_cert_65, (5, 2, 1)), (galois_cert_65, (7, 1, 1))):
        start = time.perf_counter()
        cert = fn(*args)
        elapsed = time.perf_counter() - start
        u = prime_power(args[0])[1]
        exhaustive = len(cert.tests) == u + 1
        good = exhaustive and cert.all_fail and cert.verdict != 'inconclusive' and elapsed < 1
        ok &= good
        results.append(f'{fn.__name__}{args}: {len(cert.tests)} splits all fail={cert.all_fail}, '
                       f'{cert.verdict}')
    errors = 0
    for fn, args in ((galois_cert_64, (23, 8)), (galois_cert_65, (7, 3, 1))):
        try:
            fn(*args)
        except HypothesisError:
            errors += 1
    ok &= errors == 2
    verdict(7, 'non-coverage certificates', ok,
            '; '.join(results) + f'; {errors}/2 hypothesis violations rejected with an error')
    assert ok


def test_8_negative_control(verdict):
    b = hermitian_bounds(8, 10)
    ok = b.ceilL == b.floorU == 3 and not b.obstructed
    verdict(8, 'GK n=2 negative control', ok,
            f'L={b.L}, U={b.U}, ceil L={b.ceilL}, floor U={b.floorU}, obstructed={b.obstructed}')
    assert ok
