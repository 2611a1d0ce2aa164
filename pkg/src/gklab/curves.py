"""Curve families covered by the GK curve, and their defining equations.

Every family is given in two forms:

* ``equations``: the flat system as it is usually written, a list of
  identities ``lhs = rhs`` where each side is a product of powers of sparse
  polynomials (negative powers are denominators);
* ``tower``: the same curve as two Kummer steps over the rational function
  field, ``V^b = g(U)`` followed by ``S^m = V^beta * prod f_j(U)^gamma_j``.
  The places engine only ever looks at the tower.

Polynomials inside the tower are named after the points where they vanish:
``"0"`` is U itself, ``"alpha"`` the factor ``U^a - 1`` (or its analogue)
and ``"beta"`` the geometric sum ``(U^(a(n-1)) - 1)/(U^a - 1)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from math import gcd

from . import poly as P
from .ffield import FieldCtx, FieldElem, dth_roots, embed, field_for_power, prime_power, solve_rho
from .poly import SparsePoly

log = logging.getLogger(__name__)


class Family(str, Enum):
    GK_C = 'gk_c'
    GK_X = 'gk'
    C1 = 'c1'
    C2 = 'c2'
    C3 = 'c3'
    XH = 'xh'
    XK = 'xk'
    HERMITIAN_SMALL = 'hermitian_small'
    HERMITIAN_BIG = 'hermitian'


KUMMER_FAMILIES = (Family.C1, Family.C2, Family.C3, Family.XH)


class ParameterError(ValueError):
    """Raised by :func:`validate`; ``violations`` lists every failed constraint."""

    def __init__(self, violations: list[str]):
        super().__init__('; '.join(violations))
        self.violations = violations


@dataclass(frozen=True)
class CurveParams:
    family: Family
    n: int
    d1: int | None = None
    d2: int | None = None
    d3: int | None = None
    e: int | None = None
    c: int | None = None
    d: int | None = None

    @property
    def q(self) -> int:
        return self.n ** 3

    def as_dict(self) -> dict:
        out = {'family': self.family.value, 'n': self.n}
        for key in ('d1', 'd2', 'd3', 'e', 'c', 'd'):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out

    @classmethod
    def from_dict(cls, data: dict) -> CurveParams:
        kw = {k: data[k] for k in ('d1', 'd2', 'd3', 'e', 'c', 'd') if data.get(k) is not None}
        return cls(Family(data['family']), int(data['n']), **kw)

    def label(self) -> str:
        parts = [f'{k}={v}' for k, v in self.as_dict().items() if k not in ('family', 'n')]
        return f"{self.family.value}(n={self.n}{', ' if parts else ''}{', '.join(parts)})"


def divisors(m: int) -> list[int]:
    small = [i for i in range(1, int(m ** 0.5) + 1) if m % i == 0]
    return sorted(set(small + [m // i for i in small]))


def hexagon(n: int) -> int:
    """n^2 - n + 1, the other factor of n^3 + 1."""
    return n * n - n + 1


def compute_D(n: int, d1: int, d2: int) -> int:
    return gcd(d1, d2, n + 1, d1 * d2 * n * (n - 1) // gcd(d2, 2 * d1))


def compute_M(n: int, d1: int, d2: int, d3: int) -> int:
    M = gcd(d1, d2, d3 * hexagon(n))
    alt = gcd(compute_D(n, d1, d2), d3 * hexagon(n))
    if alt != M:
        log.warning('gcd(D, d3(n^2-n+1)) = %d differs from gcd(d1, d2, d3(n^2-n+1)) = %d '
                    'for n=%d d=(%d,%d,%d)', alt, M, n, d1, d2, d3)
    return M


def m_identity_holds(n: int, d1: int, d2: int, d3: int) -> bool:
    return gcd(compute_D(n, d1, d2), d3 * hexagon(n)) == gcd(d1, d2, d3 * hexagon(n))


_REQUIRED = {
    Family.C1: ('d1', 'd2', 'd3', 'e'),
    Family.C2: ('d1', 'd2', 'd3', 'e'),
    Family.C3: ('d1', 'd2', 'd3', 'e'),
    Family.XH: ('d1', 'd2', 'd3'),
    Family.XK: ('c', 'd'),
}


def validate(params: CurveParams) -> CurveParams:
    """Check every constraint; return the (completed) params or raise ParameterError."""
    bad = []
    n = params.n
    try:
        prime_power(n)
    except ValueError:
        raise ParameterError([f'n={n} is not a prime power']) from None
    fam = params.family
    if fam == Family.XH:
        if params.e is not None and params.e != hexagon(n):
            bad.append(f'XH requires e = n^2-n+1 = {hexagon(n)}, got {params.e}')
        params = replace(params, e=hexagon(n))
    for key in _REQUIRED.get(fam, ()):
        val = getattr(params, key)
        if val is None:
            bad.append(f'missing parameter {key}')
        elif val < 1:
            bad.append(f'{key}={val} must be positive')
    if bad:
        raise ParameterError(bad)
    if fam in KUMMER_FAMILIES:
        for key in ('d1', 'd2', 'd3'):
            val = getattr(params, key)
            if (n + 1) % val:
                bad.append(f'{key}={val} does not divide n+1={n + 1}')
        if hexagon(n) % params.e:
            bad.append(f'e={params.e} does not divide n^2-n+1={hexagon(n)}')
        if not bad and fam in (Family.C1, Family.XH):
            M = compute_M(n, params.d1, params.d2, params.d3)
            if (params.d3 * params.e) % M:
                bad.append(f'M={M} does not divide d3*e={params.d3 * params.e}')
    elif fam == Family.XK:
        if (n + 1) % params.c:
            bad.append(f'c={params.c} does not divide n+1={n + 1}')
        if hexagon(n) % params.d:
            bad.append(f'd={params.d} does not divide n^2-n+1={hexagon(n)}')
    if bad:
        raise ParameterError(bad)
    if fam not in (Family.HERMITIAN_SMALL, Family.HERMITIAN_BIG):
        num, den = _degree_fraction(params)
        if num % den:
            raise ParameterError([f'covering degree {num}/{den} is not an integer'])
    return params


def _degree_fraction(params: CurveParams) -> tuple[int, int]:
    n = params.n
    fam = params.family
    if fam in (Family.GK_C, Family.GK_X):
        return 1, 1
    if fam == Family.XK:
        return n ** 3 + 1, params.c * params.d
    d1, d2, d3, e = params.d1, params.d2, params.d3, params.e
    M = compute_M(n, d1, d2, d3)
    if fam == Family.XH:
        return M * (n + 1) ** 2, d1 * d2 * d3
    if fam == Family.C2:
        return hexagon(n) * (n + 1) ** 2, e * d1 * d2 * d3
    return hexagon(n) * M * (n + 1) ** 2, e * d1 * d2 * d3


def covering_degree(params: CurveParams) -> int:
    """Degree of the covering GK -> curve."""
    if params.family in (Family.HERMITIAN_SMALL, Family.HERMITIAN_BIG):
        raise ValueError('the Hermitian curves are not subcovers of the GK curve')
    params = validate(params)
    num, den = _degree_fraction(params)
    return num // den


# -- polynomial systems -----------------------------------------------------

@dataclass(frozen=True)
class MPoly:
    """Multivariate sparse polynomial: ``((exponent_vector, coeff), ...)``."""

    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def lift(cls, f: SparsePoly, var: int, nvars: int) -> MPoly:
        terms = []
        for e, c in f.terms:
            ev = [0] * nvars
            ev[var] = e
            terms.append((tuple(ev), c))
        return cls(tuple(terms))

    @classmethod
    def var(cls, var: int, nvars: int) -> MPoly:
        return cls.lift(P.MONOMIAL_U, var, nvars)

    def evaluate(self, ctx: FieldCtx, point: tuple[int, ...]) -> int:
        acc = 0
        for ev, c in self.terms:
            c %= ctx.p
            if not c:
                continue
            t = c
            for x, e in zip(point, ev):
                if e:
                    t = ctx.mul(t, ctx.pow(x, e))
            acc = ctx.add(acc, t)
        return acc


Product = tuple[tuple[MPoly, int], ...]


@dataclass(frozen=True)
class Equation:
    """``prod lhs = prod rhs``; each side a product of polynomial powers."""

    lhs: Product
    rhs: Product

    @staticmethod
    def _side(ctx: FieldCtx, side: Product, point) -> int | None:
        acc = 1
        for f, k in side:
            val = f.evaluate(ctx, point)
            if val == 0 and k < 0:
                return None
            acc = ctx.mul(acc, ctx.pow(val, k))
        return acc

    def holds(self, ctx: FieldCtx, point: tuple[int, ...]) -> bool | None:
        """True/False at the point; None where a denominator vanishes."""
        left = self._side(ctx, self.lhs, point)
        right = self._side(ctx, self.rhs, point)
        if left is None or right is None:
            return None
        return left == right


@dataclass(frozen=True)
class Tower:
    """``V^b = prod g_j(U)^k_j`` then ``S^m = V^v_power * prod h_j(U)^k_j``."""

    b: int
    g: tuple[tuple[str, int], ...]
    m: int
    v_power: int
    h: tuple[tuple[str, int], ...]
    polys: tuple[tuple[str, SparsePoly], ...]

    def poly(self, name: str) -> SparsePoly:
        return dict(self.polys)[name]

    def eval_g(self, ctx: FieldCtx, u: int) -> int:
        acc = 1
        for name, k in self.g:
            acc = ctx.mul(acc, ctx.pow(ctx.eval_poly(self.poly(name), u), k))
        return acc

    def eval_h(self, ctx: FieldCtx, u: int, v: int) -> int:
        acc = ctx.pow(v, self.v_power)
        for name, k in self.h:
            acc = ctx.mul(acc, ctx.pow(ctx.eval_poly(self.poly(name), u), k))
        return acc


@dataclass(frozen=True)
class CurveSystem:
    params: CurveParams
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]
    tower: Tower

    def to_dict(self) -> dict:
        def side(prod):
            return [{'poly': [[list(ev), c] for ev, c in f.terms], 'power': k} for f, k in prod]

        t = self.tower
        polys = dict(t.polys)
        return {
            'family': self.params.family.value,
            'params': self.params.as_dict(),
            'variables': list(self.variables),
            'equations': [{'lhs': side(eq.lhs), 'rhs': side(eq.rhs)} for eq in self.equations],
            'tower': {
                'b': t.b,
                'g': [{'name': nm, 'poly': [list(tm) for tm in polys[nm].terms], 'power': k}
                      for nm, k in t.g],
                'm': t.m,
                'h': {'v_power': t.v_power,
                      'factors': [{'name': nm, 'poly': [list(tm) for tm in polys[nm].terms],
                                   'power': k} for nm, k in t.h]},
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> CurveSystem:
        def side(items):
            return tuple((MPoly(tuple((tuple(ev), c) for ev, c in it['poly'])), it['power'])
                         for it in items)

        tw = data['tower']
        polys = {}
        for it in tw['g'] + tw['h']['factors']:
            polys[it['name']] = SparsePoly(tuple((e, c) for e, c in it['poly']))
        tower = Tower(
            b=tw['b'], g=tuple((it['name'], it['power']) for it in tw['g']),
            m=tw['m'], v_power=tw['h']['v_power'],
            h=tuple((it['name'], it['power']) for it in tw['h']['factors']),
            polys=tuple(sorted(polys.items())))
        eqs = tuple(Equation(side(e['lhs']), side(e['rhs'])) for e in data['equations'])
        return cls(CurveParams.from_dict(data['params']), tuple(data['variables']), eqs, tower)

    def pretty(self) -> list[str]:
        out = []
        for eq in self.equations:
            out.append(f'{_fmt_side(eq.lhs, self.variables)} = {_fmt_side(eq.rhs, self.variables)}')
        return out


def _fmt_mpoly(f: MPoly, names) -> str:
    parts = []
    for ev, c in f.terms:
        mono = '*'.join(n if e == 1 else f'{n}^{e}' for n, e in zip(names, ev) if e)
        if not mono:
            mono = str(abs(c))
        elif abs(c) != 1:
            mono = f'{abs(c)}*{mono}'
        parts.append(('-' if c < 0 else '+', mono))
    s = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, mono in parts[1:]:
        s += f' {sign} {mono}'
    return s


def _fmt_side(prod: Product, names) -> str:
    nums, dens = [], []
    for f, k in prod:
        if f.terms == ((tuple(0 for _ in names), 1),):
            continue
        txt = _fmt_mpoly(f, names)
        if len(f.terms) > 1:
            txt = f'({txt})'
        (nums if k > 0 else dens).append(txt if abs(k) == 1 else f'{txt}^{abs(k)}')
    s = '*'.join(nums) or '1'
    if dens:
        s += ' / ' + ('*'.join(dens) if len(dens) == 1 else f"({'*'.join(dens)})")
    return s


def _exact_quotient(num: SparsePoly, den: SparsePoly, p: int) -> SparsePoly:
    q, r = P.pdivmod(num.dense(p), den.dense(p), p)
    if r:
        raise ArithmeticError('inexact polynomial division')
    return SparsePoly.from_dense(q, p)


def kummer_power_factor(params: CurveParams) -> int:
    """g such that the second-step right-hand side is a g-th power (1 for a sound system).

    For C2 and C3 that right-hand side equals U^h V^k beta^(n+1) with
    (h, k) as in the genus formula, so it is a perfect g-th power whenever
    g = gcd(h, k, n+1, d3*e) exceeds 1.  C1 divides the common factor M out
    beforehand and never has one.
    """
    if params.family not in (Family.C2, Family.C3):
        return 1
    n, d1, d2, d3, e = params.n, params.d1, params.d2, params.d3, params.e
    M = compute_M(n, d1, d2, d3)
    h, k = (d1 // M, d2) if params.family == Family.C2 else (d1, d2 // M)
    return gcd(h, k, n + 1, d3 * e)


def _kummer_pieces(n: int, a: int):
    """U, U^a - 1, the geometric sum, and U^(a(n-1)) - 1."""
    return (P.MONOMIAL_U, P.binomial_minus_one(a), P.geometric_sum(a, n - 1),
            P.binomial_minus_one(a * (n - 1)))


def emit_system(params: CurveParams) -> CurveSystem:
    params = validate(params)
    n, fam = params.n, params.family
    p, _ = prime_power(n)
    if fam in (Family.C1, Family.XH):
        return _system_c1(params)
    if fam in (Family.C2, Family.C3):
        return _system_c23(params)
    if fam == Family.XK:
        return _system_xk(params)
    if fam in (Family.GK_C, Family.GK_X):
        return _system_gk(params, p)
    return _system_hermitian(params)


def _system_c1(params: CurveParams) -> CurveSystem:
    n, d1, d2, d3, e = params.n, params.d1, params.d2, params.d3, params.e
    M = compute_M(n, d1, d2, d3)
    m = d3 * e // M
    u, alpha, beta, big = _kummer_pieces(n, d1)
    names = ('U', 'V', 'W' if params.family == Family.XH else 'S')
    U, V, S = (MPoly.var(i, 3) for i in range(3))
    L = lambda f: MPoly.lift(f, 0, 3)  # noqa: E731
    eq1 = Equation(((S, m),),
                   ((U, d1 // M), (V, d2 // M), (L(big), (n + 1) // M), (L(alpha), -((n + 1) // M))))
    eq2 = Equation(((V, d2),), ((L(alpha), 1),))
    tower = Tower(b=d2, g=(('alpha', 1),), m=m, v_power=d2 // M,
                  h=(('0', d1 // M), ('beta', (n + 1) // M)),
                  polys=(('0', u), ('alpha', alpha), ('beta', beta)))
    return CurveSystem(params, names, (eq1, eq2), tower)


def _system_c23(params: CurveParams) -> CurveSystem:
    n, d1, d2, d3, e = params.n, params.d1, params.d2, params.d3, params.e
    M = compute_M(n, d1, d2, d3)
    a, b = (d1 // M, d2) if params.family == Family.C2 else (d1, d2 // M)
    r = d3 * e
    u, alpha, beta, big = _kummer_pieces(n, a)
    U, V, S = (MPoly.var(i, 3) for i in range(3))
    L = lambda f: MPoly.lift(f, 0, 3)  # noqa: E731
    eq1 = Equation(((S, r),), ((U, a), (L(big), 1), (L(big), n), (L(alpha), -n)))
    eq2 = Equation(((V, b),), ((L(alpha), 1),))
    # (U^(a(n-1)) - 1)^(n+1) / (U^a - 1)^n = (U^a - 1) * beta^(n+1)
    tower = Tower(b=b, g=(('alpha', 1),), m=r, v_power=0,
                  h=(('0', a), ('alpha', 1), ('beta', n + 1)),
                  polys=(('0', u), ('alpha', alpha), ('beta', beta)))
    return CurveSystem(params, ('U', 'V', 'S'), (eq1, eq2), tower)


def _system_xk(params: CurveParams) -> CurveSystem:
    n, c, d = params.n, params.c, params.d
    u = P.MONOMIAL_U
    alpha = P.binomial_minus_one(c)
    beta = P.geometric_sum(c, n - 1)
    U, V, W = (MPoly.var(i, 3) for i in range(3))
    L = lambda f: MPoly.lift(f, 0, 3)  # noqa: E731
    eq1 = Equation(((W, d),), ((V, 1), (L(beta), 1)))
    eq2 = Equation(((V, n + 1),), ((L(SparsePoly.from_terms([(2 * c, 1), (c, -1)])), 1),))
    tower = Tower(b=n + 1, g=(('0', c), ('alpha', 1)), m=d, v_power=1, h=(('beta', 1),),
                  polys=(('0', u), ('alpha', alpha), ('beta', beta)))
    return CurveSystem(params, ('U', 'V', 'W'), (eq1, eq2), tower)


def _system_gk(params: CurveParams, p: int) -> CurveSystem:
    n = params.n
    m = hexagon(n)
    X, Y, Z = (MPoly.var(i, 3) for i in range(3))
    L = lambda f: MPoly.lift(f, 0, 3)  # noqa: E731
    frob = SparsePoly.from_terms([(n * n, 1), (1, -1)])
    if params.family == Family.GK_X:
        cone = P.binomial_minus_one(n + 1)
        tower = Tower(b=n + 1, g=(('alpha', 1),), m=m, v_power=1,
                      h=(('0', 1), ('beta', 1)),
                      polys=(('0', P.MONOMIAL_U), ('alpha', cone),
                             ('beta', P.geometric_sum(n + 1, n - 1))))
    else:
        cone = SparsePoly.from_terms([(n, 1), (1, 1)])
        rest = SparsePoly.from_terms([(n - 1, 1), (0, 1)])
        tower = Tower(b=n + 1, g=(('0', 1), ('alpha', 1)), m=m, v_power=1,
                      h=(('beta', 1),),
                      polys=(('0', P.MONOMIAL_U), ('alpha', rest),
                             ('beta', _exact_quotient(frob, cone, p))))
    eq1 = Equation(((Z, m),), ((Y, 1), (L(frob), 1), (L(cone), -1)))
    eq2 = Equation(((Y, n + 1),), ((L(cone), 1),))
    return CurveSystem(params, ('X', 'Y', 'Z'), (eq1, eq2), tower)


def _system_hermitian(params: CurveParams) -> CurveSystem:
    n = params.n
    Y = MPoly.var(1, 2)
    if params.family == Family.HERMITIAN_SMALL:
        rhs = P.binomial_minus_one(n + 1)
        tower = Tower(b=n + 1, g=(('alpha', 1),), m=1, v_power=0, h=(),
                      polys=(('alpha', rhs),))
    else:
        # norm = trace form Y^(q+1) = X^q + X
        q = n ** 3
        rhs = SparsePoly.from_terms([(q, 1), (1, 1)])
        tower = Tower(b=q + 1, g=(('0', 1), ('alpha', 1)), m=1, v_power=0, h=(),
                      polys=(('0', P.MONOMIAL_U),
                             ('alpha', SparsePoly.from_terms([(q - 1, 1), (0, 1)]))))
    eq = Equation(((Y, tower.b),), ((MPoly.lift(rhs, 0, 2), 1),))
    return CurveSystem(params, ('X', 'Y'), (eq,), tower)


def gk_degree_one_tuples(n: int) -> list[CurveParams]:
    """Parameter tuples whose covering degree is 1, i.e. models of the GK curve."""
    out = [CurveParams(Family.C1, n, n + 1, n + 1, n + 1, hexagon(n)),
           CurveParams(Family.XK, n, c=n + 1, d=hexagon(n))]
    return [validate(p) for p in out]


def family_tuples(n: int, family: Family, full_e_only: bool = True) -> list[CurveParams]:
    """Every validated parameter tuple of a family, sorted."""
    out = []
    if family in KUMMER_FAMILIES:
        es = [hexagon(n)] if (full_e_only or family == Family.XH) else divisors(hexagon(n))
        for d1 in divisors(n + 1):
            for d2 in divisors(n + 1):
                for d3 in divisors(n + 1):
                    for e in es:
                        cand = CurveParams(family, n, d1, d2, d3, e)
                        try:
                            out.append(validate(cand))
                        except ParameterError:
                            pass
    elif family == Family.XK:
        for c in divisors(n + 1):
            for d in divisors(hexagon(n)):
                out.append(validate(CurveParams(family, n, c=c, d=d)))
    else:
        out.append(validate(CurveParams(family, n)))
    return out


# -- the projectivity between the two GK models -------------------------------

def gk_matrix(n: int, ctx: FieldCtx) -> list[list[int]]:
    """The matrix A over GF(n^2), embedded in ctx."""
    small = field_for_power(n, 2)
    rho = embed(solve_rho(n, small), ctx).value
    one = 1
    return [[one, 0, 0, ctx.sub(1, rho)],
            [0, one, 0, 0],
            [0, 0, ctx.neg(1), 0],
            [one, 0, 0, ctx.neg(rho)]]


def mat_inverse(ctx: FieldCtx, A: list[list[int]]) -> list[list[int]]:
    size = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(size)] for i, row in enumerate(A)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError('singular matrix')
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ctx.inv(aug[col][col])
        aug[col] = [ctx.mul(x, inv) for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _apply(ctx: FieldCtx, A, pt):
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, pt):
            if a and x:
                acc = ctx.add(acc, ctx.mul(a, x))
        out.append(acc)
    return tuple(out)


@dataclass
class _GKModel:
    """Homogeneous equations of a GK model in (X, Y, Z, T)."""

    cone: list[int]      # dense coefficients of the cone polynomial in X
    tail: list[int]      # dense coefficients of the polynomial P(X) with Z^m = Y*P(X)
    tail_degree: int     # degree P is homogenised to (the rest is a power of T)
    n: int

    def affine_points(self, ctx: FieldCtx):
        m = hexagon(self.n)
        for x in range(ctx.order):
            c = ctx.eval_dense(self.cone, x)
            for y in dth_roots(FieldElem(ctx, c), self.n + 1):
                rhs = ctx.mul(y.value, ctx.eval_dense(self.tail, x))
                for z in dth_roots(FieldElem(ctx, rhs), m):
                    yield (x, y.value, z.value, 1)

    def _hom(self, ctx, coeffs, deg, X, T):
        acc = 0
        for i, c in enumerate(coeffs):
            if c:
                acc = ctx.add(acc, ctx.mul(c, ctx.mul(ctx.pow(X, i), ctx.pow(T, deg - i))))
        return acc

    def satisfied(self, ctx: FieldCtx, pt) -> bool:
        X, Y, Z, T = pt
        n = self.n
        if ctx.pow(Y, n + 1) != self._hom(ctx, self.cone, n + 1, X, T):
            return False
        rhs = ctx.mul(Y, self._hom(ctx, self.tail, self.tail_degree, X, T))
        return ctx.pow(Z, hexagon(n)) == rhs


def _gk_model(n: int, family: Family) -> _GKModel:
    p, _ = prime_power(n)
    frob = P.trim([0, p - 1] + [0] * (n * n - 2) + [1])
    if family == Family.GK_C:
        cone = P.trim([0, 1] + [0] * (n - 2) + [1])
    else:
        cone = P.trim([p - 1] + [0] * n + [1])
    tail, rem = P.pdivmod(frob, cone, p)
    assert not rem
    return _GKModel(cone, tail, n * n - n, n)


def projectivity_check(n: int, matrix: list[list[int]] | None = None,
                       source: Family = Family.GK_C, target: Family = Family.GK_X) -> bool:
    """Does the projectivity map the affine GF(n^6)-points of ``source`` into ``target``
    and, through its inverse, those of ``target`` into ``source``?"""
    ctx = field_for_power(n, 6)
    A = gk_matrix(n, ctx) if matrix is None else matrix
    Ainv = mat_inverse(ctx, A)
    src, dst = _gk_model(n, source), _gk_model(n, target)
    for pt in src.affine_points(ctx):
        if not dst.satisfied(ctx, _apply(ctx, A, pt)):
            return False
    for pt in dst.affine_points(ctx):
        if not src.satisfied(ctx, _apply(ctx, Ainv, pt)):
            return False
    return True


def identity_matrix(size: int = 4) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]
