"""Degree bounds for coverings by the Hermitian curve, and the certificates
ruling out Galois coverings.

If the Hermitian curve H over GF(q^2) covers Y with degree d, then
N_H / N_Y <= d <= (2g_H - 2)/(2g_Y - 2).  Everything here is exact: ceil and
floor come from integer division of Fractions, square-root hypotheses are
compared after squaring.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd

from .curves import CurveParams, Family, family_tuples, hexagon, kummer_power_factor
from .ffield import FieldError, prime_power
from .genus import HypothesisError, genus_c1, genus_c2, genus_c3, genus_hermitian, genus_xk
from .maximality import hasse_weil_bound


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


@dataclass(frozen=True)
class CoverBounds:
    L: Fraction
    U: Fraction
    ceilL: int
    floorU: int

    @property
    def obstructed(self) -> bool:
        return self.ceilL > self.floorU


def cover_bounds(N_H: int, N_Y: int, g_H: int, g_Y: int) -> CoverBounds:
    if N_Y < 1:
        raise ValueError('N_Y must be positive')
    if g_Y <= 1:
        raise ValueError(f'upper bound undefined for genus {g_Y} <= 1')
    L = Fraction(N_H, N_Y)
    U = Fraction(2 * g_H - 2, 2 * g_Y - 2)
    return CoverBounds(L, U, _ceil(L), _floor(U))


def obstruction(bounds: CoverBounds) -> bool:
    """True when no integer degree fits, so Y is not covered by H."""
    return bounds.ceilL > bounds.floorU


def hermitian_bounds(q: int, g_Y: int, N_Y: int | None = None) -> CoverBounds:
    """Bounds against H over GF(q^2), with N_Y from maximality unless given."""
    N_Y = hasse_weil_bound(q, g_Y) if N_Y is None else N_Y
    return cover_bounds(q ** 3 + 1, N_Y, genus_hermitian(q), g_Y)


def exceeds_unique_degree_threshold(q: int, g: int) -> bool:
    """g > f(q), i.e. the covering degree (if any) is forced to be unique."""
    if g <= 0:
        return False
    return (2 * q * g + q * q + 1) ** 2 > q ** 5 + 2 * q ** 4 + q ** 3 + q * q + 2 * q + 1


# -- scans --------------------------------------------------------------------

_GENUS_BY_FAMILY = {Family.C1: genus_c1, Family.C2: genus_c2, Family.C3: genus_c3}


@dataclass(frozen=True)
class ScanRow:
    params: CurveParams
    genus: int
    bounds: CoverBounds
    power_factor: int       # > 1 when the emitted equations are reducible

    @property
    def obstructed(self) -> bool:
        return self.bounds.obstructed

    def csv_fields(self) -> dict:
        p = self.params
        return {'n': p.n, 'family': p.family.value, 'd1': p.d1, 'd2': p.d2, 'd3': p.d3,
                'e': p.e, 'genus': self.genus, 'ceilL': self.bounds.ceilL,
                'floorU': self.bounds.floorU, 'obstructed': self.obstructed,
                'power_factor': self.power_factor}


def scan_row(params: CurveParams) -> ScanRow | None:
    """Genus and bounds for one tuple (None when g <= 1 leaves U undefined)."""
    g = _GENUS_BY_FAMILY[params.family](params.n, params.d1, params.d2, params.d3)
    if g <= 1:
        return None
    return ScanRow(params, g, hermitian_bounds(params.q, g), kummer_power_factor(params))


def scan_table(n: int, families=(Family.C1, Family.C2, Family.C3),
               obstructed_only: bool = True) -> list[ScanRow]:
    """All tuples with e = n^2-n+1, sorted by family then tuple."""
    rows = []
    for fam in families:
        for params in family_tuples(n, fam):
            row = scan_row(params)
            if row is not None and (row.obstructed or not obstructed_only):
                rows.append(row)
    return rows


# Rows of the published table: genus, n, triples, formulas cited.
PUBLISHED_TABLE = (
    (233416, 17, ((1, 18, 6), (2, 9, 6), (2, 18, 3), (2, 18, 6), (3, 18, 6),
                  (6, 9, 6), (6, 18, 3), (6, 18, 6), (9, 2, 6), (9, 6, 6),
                  (9, 18, 2), (9, 18, 6), (18, 1, 6), (18, 2, 3), (18, 2, 6),
                  (18, 3, 6), (18, 6, 3), (18, 6, 6), (18, 9, 2), (18, 9, 6)), ('c1', 'ci')),
    (233398, 17, ((9, 18, 2),), ('ci',)),
    (1064701, 23, ((1, 24, 8), (8, 3, 8), (24, 8, 1), (24, 1, 8), (2, 24, 8),
                   (3, 8, 8), (3, 24, 8), (4, 24, 8), (6, 8, 8), (6, 24, 8),
                   (8, 3, 8), (8, 6, 8), (8, 12, 8), (8, 24, 1), (8, 24, 2)), ('c1', 'ci')),
    (1064689, 23, ((2, 24, 8), (4, 24, 8), (6, 8, 8), (6, 24, 8), (8, 6, 8), (8, 12, 8)), ('ci',)),
    (3206257, 23, ((2, 24, 24), (4, 24, 24), (6, 24, 24), (8, 6, 24), (8, 12, 24)), ('ci',)),
    (3402406, 29, ((30, 10, 1), (10, 30, 1), (10, 15, 2), (30, 2, 5), (10, 6, 5), (10, 3, 10)), ('c1',)),
    (5570731, 32, ((33, 11, 1), (11, 33, 1), (11, 3, 11)), ('c1',)),
)

_CITED = {'c1': (Family.C1,), 'ci': (Family.C2, Family.C3)}


@dataclass
class TableCheck:
    genus: int
    n: int
    triple: tuple[int, int, int]
    matches: list[str]                       # families whose formula gives the listed genus
    computed: dict[str, int]                 # family -> formula genus
    obstructed: bool | None                  # for the first matching family
    power_factor: int | None

    @property
    def reproduced(self) -> bool:
        return bool(self.matches) and bool(self.obstructed)


def check_table_row(genus: int, n: int, triple, cited) -> TableCheck:
    d1, d2, d3 = triple
    computed, matches = {}, []
    for tag in cited:
        for fam in _CITED[tag]:
            g = _GENUS_BY_FAMILY[fam](n, d1, d2, d3)
            computed[fam.value] = g
            if g == genus:
                matches.append(fam.value)
    obstructed = power = None
    if matches:
        params = CurveParams(Family(matches[0]), n, d1, d2, d3, hexagon(n))
        obstructed = hermitian_bounds(params.q, genus).obstructed
        power = kummer_power_factor(params)
    return TableCheck(genus, n, tuple(triple), matches, computed, obstructed, power)


def check_published_table() -> list[TableCheck]:
    return [check_table_row(g, n, t, cited) for g, n, triples, cited in PUBLISHED_TABLE for t in triples]


# -- Galois certificates ------------------------------------------------------

@dataclass
class SplitTest:
    v: int
    w: int
    holds: bool               # the equation a covering would force is satisfied
    detail: str


@dataclass
class GaloisCertificate:
    theorem: str
    n: int
    params: dict
    hypotheses: list[tuple[str, bool]]
    candidate_degree: int
    genus: int
    ceilL: int
    floorU: int
    tests: list[SplitTest] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def degree_forced(self) -> bool:
        return self.ceilL == self.floorU == self.candidate_degree

    @property
    def all_fail(self) -> bool:
        return bool(self.tests) and not any(t.holds for t in self.tests)

    @property
    def obstructed(self) -> bool:
        return self.ceilL > self.floorU

    @property
    def verdict(self) -> str:
        # an empty degree interval rules out every covering, Galois or not
        if self.obstructed:
            return 'not-covered'
        if self.degree_forced and self.all_fail:
            return 'not-Galois-covered'
        return 'inconclusive'

    def to_dict(self) -> dict:
        out = asdict(self)
        out['degree_forced'] = self.degree_forced
        out['all_fail'] = self.all_fail
        out['verdict'] = self.verdict
        return out


def _require(hyps: list[tuple[str, bool]]):
    failed = [name for name, ok in hyps if not ok]
    if failed:
        raise HypothesisError('hypothesis violated: ' + '; '.join(failed))


def _below_sqrt_plus_one(k: int, x: int) -> bool:
    # k < sqrt(x) + 1
    return k <= 1 or (k - 1) ** 2 < x


def _splits(u: int):
    return [(v, u - v) for v in range(u + 1)]


def _c1_certificate(tag: str, n: int, params: CurveParams, hyps, degree: int) -> GaloisCertificate:
    g = genus_c1(n, params.d1, params.d2, params.d3)
    b = hermitian_bounds(params.q, g)
    return GaloisCertificate(tag, n, params.as_dict(), hyps, degree, g, b.ceilL, b.floorU)


def galois_cert_63(n: int, k: int) -> GaloisCertificate:
    """C1 with d = ((n+1)/k, 1, n+1) is not a quotient of H by a group of order kn."""
    p, u = prime_power(n)
    hyps = [('n >= 7', n >= 7), ('k | n+1', k >= 1 and (n + 1) % k == 0),
            ('k < sqrt(n+1) + 1', _below_sqrt_plus_one(k, n + 1))]
    _require(hyps)
    params = CurveParams(Family.C1, n, (n + 1) // k, 1, n + 1, hexagon(n))
    cert = _c1_certificate('6.3', n, params, hyps, k * n)
    h = n + 2 if k % 2 == 0 else 1
    expected = Fraction(n ** 5 - 2 * n ** 3 + n * n + 2 * k - 1 - h, 2 * k)
    if expected != cert.genus:
        cert.notes.append(f'reduced genus expression gives {expected}, formula gives {cert.genus}')
    if k == 1:
        cert.notes.append('k = 1: the curve is the GK curve itself')
    P3 = p ** (3 * u)
    for v, w in _splits(u):
        num = 2 * P3 + p ** (3 * u - w) - p ** (3 * u - v) - p ** (2 * u) + h
        den = p ** (3 * u - w) + 1
        cert.tests.append(SplitTest(v, w, num % den == 0, f'{den} | {num}: {num % den == 0}'))
    return cert


def galois_cert_64(n: int, k: int) -> GaloisCertificate:
    """C1 with d = ((n+1)/k, n+1, 1) is not a quotient of H by a group of order kn."""
    p, u = prime_power(n)
    ok_div = k >= 1 and (n + 1) % k == 0
    hyps = [('n > 3', n > 3), ('k | n+1', ok_div),
            ('3 does not divide (n+1)/k', ok_div and ((n + 1) // k) % 3 != 0),
            ('k < sqrt(n+1) + 1', _below_sqrt_plus_one(k, n + 1)),
            ('n >= 23 when 3 | n+1', (n + 1) % 3 != 0 or n >= 23)]
    _require(hyps)
    params = CurveParams(Family.C1, n, (n + 1) // k, n + 1, 1, hexagon(n))
    cert = _c1_certificate('6.4', n, params, hyps, k * n)
    g3 = gcd(3, k)
    P3 = p ** (3 * u)
    for v, w in _splits(u):
        num = (1 + g3) * P3 + p ** (3 * u - w) - p ** (3 * u - v) - p ** (2 * u) - g3 * p ** u
        den = p ** (3 * u - w) - p ** u - 2
        if den == 0:
            cert.notes.append(f'(v, w) = ({v}, {w}): zero denominator, no value of k')
            cert.tests.append(SplitTest(v, w, False, 'zero denominator'))
            continue
        val = Fraction(num, den)
        cert.tests.append(SplitTest(v, w, val == k, f'fraction = {val}'))
    return cert


def galois_cert_65(n: int, gamma: int, delta: int) -> GaloisCertificate:
    """X/K with c = (n+1)/gamma, d = (n^2-n+1)/delta is not a quotient of H."""
    p, u = prime_power(n)
    hyps = [('gamma | n+1', gamma >= 1 and (n + 1) % gamma == 0),
            ('delta | n^2-n+1', delta >= 1 and hexagon(n) % delta == 0)]
    branch1 = n == 5 and gamma == 2 and delta == 1
    branch2 = n >= 7 and gamma <= 2 and (2 * delta + 1) ** 2 <= 2 * gamma * n + 1
    branch3 = n >= 7 and gamma > 2 and gamma * delta * (gamma * delta - delta - 1) < n
    hyps.append(('one of the three admissible ranges', branch1 or branch2 or branch3))
    _require(hyps)
    c, d = (n + 1) // gamma, hexagon(n) // delta
    params = CurveParams(Family.XK, n, c=c, d=d)
    g = genus_xk(n, c, d)
    b = hermitian_bounds(params.q, g)
    cert = GaloisCertificate('6.5', n, params.as_dict(), hyps, gamma * delta * n, g, b.ceilL, b.floorU)
    g2 = gcd(2, gamma)
    P3 = p ** (3 * u)
    for v, w in _splits(u):
        lhs = delta * (P3 - gamma * p ** (3 * u - w) + (g2 - 1) * p ** u - gamma + g2)
        rhs = -P3 + p ** (3 * u - v) - p ** (3 * u - w) + p ** (2 * u)
        cert.tests.append(SplitTest(v, w, lhs == rhs, f'{lhs} == {rhs}: {lhs == rhs}'))
    return cert


def admissible_64(limit: int) -> list[tuple[int, int]]:
    """(n, k) pairs up to n <= limit meeting the hypotheses of galois_cert_64."""
    out = []
    n = 4
    while n <= limit:
        try:
            prime_power(n)
        except FieldError:
            n += 1
            continue
        for k in range(1, n + 2):
            try:
                galois_cert_64(n, k)
                out.append((n, k))
            except HypothesisError:
                pass
        n += 1
    return out
