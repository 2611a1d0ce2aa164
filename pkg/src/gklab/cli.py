"""Command-line entry point: ``gklab <command> ...`` or ``python3 -m gklab``.

Exit codes: 0 success, 2 invalid parameters or hypotheses, 3 internal
consistency failure (formula and engine disagree, a bound is violated).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .coverage import (check_published_table, cover_bounds, galois_cert_63, galois_cert_64,
                       galois_cert_65, hermitian_bounds, scan_table)
from .curves import (KUMMER_FAMILIES, CurveParams, Family, ParameterError, emit_system,
                     family_tuples, hexagon, validate)
from .ffield import FieldError
from .genus import GenusError, HypothesisError, closed_form_genus
from .maximality import BOUND_EXCEEDED, MAXIMAL, NOT_MAXIMAL, verify_maximal
from .places import (ReducibleTowerError, TowerError, displayed_divisor_alpha, hurwitz,
                     principal_divisor_alpha)
from .spectrum import ALL_DIVISORS, FULL, enumerate_genera

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT = 0, 2, 3
SAFE_INT = 1 << 53

SCAN_COLUMNS = ['n', 'family', 'd1', 'd2', 'd3', 'e', 'genus', 'ceilL', 'floorU', 'obstructed', 'power_factor']


def jsonable(obj):
    """Big ints become strings, Fractions become 'p/q', tuples become lists."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, Fraction):
        return f'{obj.numerator}/{obj.denominator}'
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def emit(payload, out: str | None, text: str | None = None, rows: list[dict] | None = None,
         columns: list[str] | None = None):
    """Write JSON or CSV to ``out`` (by extension), else print text or JSON."""
    if out:
        path = Path(out)
        if path.suffix.lower() == '.csv':
            if rows is None:
                raise ValueError('this command has no tabular output; use a .json path')
            buf = io.StringIO()
            fields = columns or (list(rows[0]) if rows else [])
            writer = csv.DictWriter(buf, fieldnames=fields, extrasaction='ignore')
            writer.writeheader()
            writer.writerows(rows)
            path.write_text(buf.getvalue())
        else:
            path.write_text(json.dumps(jsonable(payload), indent=2) + '\n')
    if text is not None:
        print(text)
    elif not out:
        print(json.dumps(jsonable(payload), indent=2))


def _params(args) -> CurveParams:
    family = Family(args.family)
    e = args.e
    if e is None and family in KUMMER_FAMILIES:
        e = hexagon(args.n)
    return validate(CurveParams(family, args.n, args.d1, args.d2, args.d3, e, args.c, args.d))


def _add_params(p: argparse.ArgumentParser, required_family=True):
    p.add_argument('--family', required=required_family, choices=[f.value for f in Family])
    p.add_argument('--n', type=int, required=True)
    for name in ('d1', 'd2', 'd3', 'c', 'd'):
        p.add_argument(f'--{name}', type=int)
    p.add_argument('--e', type=int, help='divisor of n^2-n+1 (default: n^2-n+1 itself)')


# -- commands -----------------------------------------------------------------

def cmd_genus(args) -> int:
    params = _params(args)
    formula = closed_form_genus(params)
    payload = {'params': params.as_dict(), 'genus': formula}
    if args.oracle or formula is None:
        try:
            oracle = hurwitz(emit_system(params)).genus
        except ReducibleTowerError as exc:
            payload['reducible'] = str(exc)
            emit(payload, args.out, text=None if args.json else f'reducible: {exc}')
            return EXIT_INCONSISTENT
        payload['genus_oracle'] = oracle
        if formula is not None and oracle != formula:
            emit(payload, args.out)
            return EXIT_INCONSISTENT
    g = formula if formula is not None else payload['genus_oracle']
    emit(payload, args.out, text=None if args.json else str(g))
    return EXIT_OK


def cmd_equations(args) -> int:
    system = emit_system(_params(args))
    emit(system.to_dict(), args.out, text=None if args.json else '\n'.join(system.pretty()))
    return EXIT_OK


def _verify_one(params_dict: dict, count: bool) -> dict:
    return verify_maximal(CurveParams.from_dict(params_dict), count=count).to_dict()


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def cmd_verify(args) -> int:
    if args.all:
        families = [Family(args.family)] if args.family else list(Family)
        todo = [(p.as_dict(), args.count) for f in families
                for p in family_tuples(args.n, f, full_e_only=not args.all_e)]
    else:
        todo = [(_params(args).as_dict(), args.count)]
    reports = _map(_verify_one, todo, args.jobs)
    bad = [r for r in reports
           if r['verdict'] in (NOT_MAXIMAL, BOUND_EXCEEDED)
           or (r['genus_oracle'] is not None and r['genus_oracle'] != r['genus'])]
    if args.all:
        text = None
        if not args.json:
            lines = [f"{CurveParams.from_dict(r['params']).label()}: {r['verdict']} "
                     f"g={r['genus']} N1={r['N1']} bound={r['bound']}" for r in reports]
            maximal = sum(r['verdict'] == MAXIMAL for r in reports)
            lines.append(f'{maximal}/{len(reports)} maximal, {len(bad)} inconsistent')
            text = '\n'.join(lines)
        emit(reports, args.out, text=text,
             rows=[{**r, 'params': json.dumps(r['params'])} for r in reports])
    else:
        r = reports[0]
        text = None if args.json else (f"{r['verdict']}, g={r['genus']}, N1={r['N1']}, "
                                       f"bound={r['bound']}")
        emit(r, args.out, text=text)
    return EXIT_INCONSISTENT if bad else EXIT_OK


def cmd_spectrum(args) -> int:
    families = args.families.split(',') if args.families else None
    kw = {'families': families} if families else {}
    report = enumerate_genera(args.n, e_policy=args.e_policy, **kw)
    text = None
    if not args.json:
        text = ' '.join(map(str, report.genera))
    rows = [{'genus': g, **p} for p, g in report.records]
    emit(report.to_dict(), args.out, text=text, rows=rows,
         columns=['genus', 'family', 'n', 'd1', 'd2', 'd3', 'e', 'c', 'd'])
    return EXIT_OK


def cmd_coverage(args) -> int:
    if args.table:
        checks = check_published_table()
        rows = [{'genus': c.genus, 'n': c.n, 'triple': list(c.triple), 'matches': c.matches,
                 'computed': c.computed, 'obstructed': c.obstructed,
                 'reducible_power': c.power_factor, 'reproduced': c.reproduced} for c in checks]
        text = None
        if not args.json:
            text = '\n'.join(f"g={r['genus']} n={r['n']} {tuple(r['triple'])}: "
                             f"{'reproduced' if r['reproduced'] else 'NOT reproduced'} via "
                             f"{','.join(r['matches']) or '-'}"
                             + (f" (equations are a {r['reducible_power']}-th power)"
                                if r['reducible_power'] and r['reducible_power'] > 1 else '')
                             for r in rows)
        emit(rows, args.out, text=text)
        return EXIT_OK if all(c.reproduced for c in checks) else EXIT_INCONSISTENT
    if args.scan:
        rows = scan_table(args.n, obstructed_only=not args.all_rows)
        data = [r.csv_fields() for r in rows]
        text = None
        if not args.json and not args.out:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS)
            w.writeheader()
            w.writerows(data)
            text = buf.getvalue().rstrip('\n')
        emit(data, args.out, text=text, rows=data, columns=SCAN_COLUMNS)
        return EXIT_OK
    if args.g is None:
        raise HypothesisError('coverage needs --table, --scan or --g')
    q = args.q or args.n ** 3
    if args.N_Y is not None or args.N_H is not None or args.g_H is not None:
        b = cover_bounds(args.N_H if args.N_H is not None else q ** 3 + 1,
                         args.N_Y if args.N_Y is not None else q * q + 1 + 2 * args.g * q,
                         args.g_H if args.g_H is not None else q * (q - 1) // 2, args.g)
    else:
        b = hermitian_bounds(q, args.g)
    payload = {'L': b.L, 'U': b.U, 'ceilL': b.ceilL, 'floorU': b.floorU, 'obstructed': b.obstructed}
    emit(payload, args.out)
    return EXIT_OK


def cmd_galois_cert(args) -> int:
    needed = ('k',) if args.theorem in ('6.3', '6.4') else ('gamma', 'delta')
    missing = [name for name in needed if getattr(args, name) is None]
    if missing:
        raise HypothesisError('missing ' + ', '.join('--' + m for m in missing))
    if args.theorem == '6.3':
        cert = galois_cert_63(args.n, args.k)
    elif args.theorem == '6.4':
        cert = galois_cert_64(args.n, args.k)
    else:
        cert = galois_cert_65(args.n, args.gamma, args.delta)
    emit(cert.to_dict(), args.out, text=None if args.json else
         f'{cert.verdict} (tested {len(cert.tests)} splits, all fail: {cert.all_fail}, '
         f'ceilL={cert.ceilL}, floorU={cert.floorU}, degree {cert.candidate_degree})')
    return EXIT_OK


def cmd_divisor(args) -> int:
    div = principal_divisor_alpha(args.n, args.d1, args.d2)
    engine = div.by_label()
    printed = displayed_divisor_alpha(args.n, args.d1, args.d2)
    payload = {'n': args.n, 'd1': args.d1, 'd2': args.d2, 'degree': div.degree(),
               'engine': engine, 'printed': printed, 'agree': engine == printed}
    emit(payload, args.out)
    return EXIT_OK if div.degree() == 0 else EXIT_INCONSISTENT


def cmd_selftest(args) -> int:
    failures = []

    def check(name, ok):
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    r = verify_maximal(CurveParams(Family.GK_X, 2))
    check('GK n=2 has 225 rational places and genus 10', r.N1 == 225 and r.genus == 10)
    r = verify_maximal(CurveParams(Family.HERMITIAN_BIG, 2))
    check('Hermitian over GF(64) has 513 rational places', r.N1 == 513)
    r = verify_maximal(CurveParams(Family.GK_C, 3))
    check('GK n=3 (cone model) has 6076 rational places', r.N1 == 6076 and r.genus_oracle == 99)
    b = hermitian_bounds(8, 10)
    check('GK n=2 is not obstructed', b.ceilL == b.floorU == 3)
    check('n=17 table genus', closed_form_genus(CurveParams(Family.C1, 17, 1, 18, 6, 273)) == 233416)
    return EXIT_INCONSISTENT if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog='gklab', description='Subcovers of the GK curve: '
                                 'equations, genera, point counts and coverage tests.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help='write JSON or CSV (chosen by extension)')
    common.add_argument('--json', action='store_true', help='print JSON instead of text')
    common.add_argument('--jobs', type=int, default=1, help='worker processes for sweeps')
    sub = ap.add_subparsers(dest='command', required=True)

    p = sub.add_parser('genus', parents=[common], help='closed-form genus of one curve')
    _add_params(p)
    p.add_argument('--oracle', action='store_true', help='also run Riemann-Hurwitz on the tower')
    p.set_defaults(fn=cmd_genus)

    p = sub.add_parser('equations', parents=[common], help='defining equations of one curve')
    _add_params(p)
    p.set_defaults(fn=cmd_equations)

    p = sub.add_parser('verify', parents=[common], help='maximality by exhaustive counting')
    _add_params(p, required_family=False)
    p.add_argument('--count', action='store_true', default=True)
    p.add_argument('--no-count', dest='count', action='store_false')
    p.add_argument('--all', action='store_true', help='every validated tuple at this n')
    p.add_argument('--all-e', action='store_true', help='with --all, every divisor e')
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser('spectrum', parents=[common], help='genera realised at one n')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--families', help='comma-separated family names')
    p.add_argument('--e-policy', choices=[FULL, ALL_DIVISORS], default=FULL)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser('coverage', parents=[common], help='Hermitian covering degree bounds')
    p.add_argument('--scan', action='store_true', help='scan all tuples at --n')
    p.add_argument('--all-rows', action='store_true', help='with --scan, keep unobstructed rows')
    p.add_argument('--table', action='store_true', help='check the published table')
    p.add_argument('--n', type=int)
    p.add_argument('--q', type=int)
    p.add_argument('--g', type=int, help='genus of the candidate subcover')
    p.add_argument('--N-Y', dest='N_Y', type=int)
    p.add_argument('--N-H', dest='N_H', type=int)
    p.add_argument('--g-H', dest='g_H', type=int)
    p.set_defaults(fn=cmd_coverage)

    p = sub.add_parser('galois-cert', parents=[common], help='certificate against Galois covers')
    p.add_argument('--theorem', choices=['6.3', '6.4', '6.5'], required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int)
    p.add_argument('--gamma', type=int)
    p.add_argument('--delta', type=int)
    p.set_defaults(fn=cmd_galois_cert)

    p = sub.add_parser('divisor', parents=[common], help='divisor of alpha on v^d2 = u^d1 - 1')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--d1', type=int, required=True)
    p.add_argument('--d2', type=int, required=True)
    p.set_defaults(fn=cmd_divisor)

    p = sub.add_parser('selftest', parents=[common], help='quick end-to-end checks')
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterError, HypothesisError, FieldError, ValueError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_INVALID
    except (GenusError, TowerError) as exc:
        print(f'consistency failure: {exc}', file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == '__main__':
    sys.exit(main())
