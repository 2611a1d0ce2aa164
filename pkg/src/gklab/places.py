"""Ramification and rational places of the two-step Kummer towers.

A curve is handled through its tower ``V^b = g(U)``, ``S^m = h(U, V)``
(see :mod:`gklab.curves`).  Over a base place ``a`` of the rational function
field, write ``t = U - a`` (or ``1/U`` at infinity), ``r = ord_a(g)`` and
``d = gcd(b, r)``.  Then ``a`` splits into ``d`` places of ``K(u, v)``, each
with ramification ``e1 = b/d``; they are rational exactly when the unit part
of ``g`` at ``a`` is a d-th power.  On such a branch the uniformiser is
``tau = t^j V^i`` with ``j*e1 + i*(r/d) = 1``, and every function has a
leading coefficient computable from the branch residue ``c`` alone.  The
second step is the same Kummer analysis with ``(m, v_tau(h), residue)``.

Nothing in here uses the closed-form genus expressions: the genus comes from
Riemann-Hurwitz applied twice, and point counts from explicit residues.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .curves import CurveParams, CurveSystem, Tower, emit_system
from .ffield import FieldCtx, FieldElem, dth_roots, field_for_power, find_roots, is_dth_power
from . import poly as P

INF = None


class SplittingError(RuntimeError):
    """A tower polynomial does not split over the working field."""


class TowerError(RuntimeError):
    """The tower is wild, reducible, or otherwise outside the engine's contract."""


class BudgetExceeded(RuntimeError):
    pass


class ReducibleTowerError(TowerError):
    """h is a constant times an l-th power on the first step, so S^m = h splits."""

    def __init__(self, ell: int, m: int):
        super().__init__(f'second Kummer step is reducible: h is a constant times a {ell}-th power (m={m})')
        self.ell = ell
        self.m = m


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


# -- local data -------------------------------------------------------------

@dataclass(frozen=True)
class BasePoint:
    value: int | None               # encoded field element, None for infinity
    label: str                      # names of the vanishing factors, 'inf' or 'generic'
    orders: tuple[tuple[str, int], ...]
    units: tuple[tuple[str, int], ...]

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def order(self, name: str) -> int:
        return dict(self.orders)[name]

    def unit(self, name: str) -> int:
        return dict(self.units)[name]


def _ord_and_unit(ctx: FieldCtx, f: P.SparsePoly, a: int) -> tuple[int, int]:
    coeffs = [c % ctx.p for c in f.dense(ctx.p)]
    k = 0
    while True:
        # synthetic division by (U - a)
        acc, quot = 0, []
        for c in reversed(coeffs):
            acc = ctx.add(ctx.mul(acc, a), c)
            quot.append(acc)
        rem = quot.pop()
        if rem:
            return k, rem
        coeffs = quot[::-1]
        k += 1


def local_data(tower: Tower, ctx: FieldCtx, a: int | None) -> BasePoint:
    orders, units, vanish = [], [], []
    for name, f in tower.polys:
        if a is None:
            o, u = -f.degree, f.leading() % ctx.p
        else:
            o, u = _ord_and_unit(ctx, f, a)
        orders.append((name, o))
        units.append((name, u))
        if o > 0:
            vanish.append(name)
    if a is None:
        label = 'inf'
    else:
        label = '+'.join(vanish) if vanish else 'generic'
    return BasePoint(a, label, tuple(orders), tuple(units))


def special_base_points(system: CurveSystem | Tower, ctx: FieldCtx) -> list[BasePoint]:
    """Zeros of every tower polynomial (all must lie in ctx) followed by infinity."""
    tower = system.tower if isinstance(system, CurveSystem) else system
    roots: set[int] = set()
    for name, f in tower.polys:
        if f.is_constant():
            continue
        found = find_roots(ctx, f.dense(ctx.p))
        total = sum(_ord_and_unit(ctx, f, a)[0] for a in found)
        if total != f.degree:
            raise SplittingError(f'factor {name} = {f} does not split over {ctx!r}')
        roots.update(found)
    out = [local_data(tower, ctx, a) for a in sorted(roots)]
    out.append(local_data(tower, ctx, INF))
    return out


# -- Kummer fibres ----------------------------------------------------------

def kummer_fiber(m: int, v: int, u0: FieldElem, ctx: FieldCtx | None = None) -> tuple[int, int, int]:
    """Fibre of ``S^m = u0 * tau^v * (1 + O(tau))`` over a rational place.

    Returns ``(d, rational_count, e2)``: ``d = gcd(m, v)`` places over the
    algebraic closure, each with ramification ``m/d``; all of them are rational
    when ``u0`` is a d-th power and none otherwise.
    """
    ctx = ctx or u0.ctx
    if m % ctx.p == 0:
        raise TowerError(f'wild Kummer step: p={ctx.p} divides m={m}')
    if ctx.unit_order % m:
        raise TowerError(f'{m}-th roots of unity are not in {ctx!r}')
    if u0.is_zero():
        raise TowerError('branch residue is zero')
    d = gcd(m, v)
    count = d if is_dth_power(u0, d) else 0
    return d, count, m // d


@dataclass(frozen=True)
class BranchRecord:
    index: int
    e1: int
    v: int                   # valuation of h along the branch
    u0: int | None           # leading coefficient of h (None if the branch is not rational)
    rational_count: int      # rational places of the full curve above this branch
    e2: int
    places: int              # places above this branch over the algebraic closure


@dataclass
class FiberProfile:
    base: BasePoint
    r: int                   # ord of g
    d: int                   # step-1 places over the closure
    e1: int
    v: int
    places: int              # step-2 places above each step-1 place, over the closure
    e2: int
    branches: list[BranchRecord]

    @property
    def rational_places(self) -> int:
        return sum(br.rational_count for br in self.branches)


def fiber_profile(system: CurveSystem | Tower, base: BasePoint, ctx: FieldCtx,
                  residues: bool = True) -> FiberProfile:
    """Ramification above ``base``; ``residues=False`` skips the rationality analysis."""
    tower = system.tower if isinstance(system, CurveSystem) else system
    b, m = tower.b, tower.m
    r = sum(k * base.order(name) for name, k in tower.g)
    H = sum(k * base.order(name) for name, k in tower.h)
    d = gcd(b, r)
    e1 = b // d
    r1 = r // d
    g_unit = 1
    for name, k in tower.g:
        g_unit = ctx.mul(g_unit, ctx.pow(base.unit(name), k))
    h_unit = 1
    for name, k in tower.h:
        h_unit = ctx.mul(h_unit, ctx.pow(base.unit(name), k))
    v = tower.v_power * r1 + e1 * H
    places = gcd(m, v)
    e2 = m // places
    # tau = t^j * V^i with j*e1 + i*r1 = 1
    _, j, i = _egcd(e1, r1)
    assert j * e1 + i * r1 == 1
    branches = []
    if not residues:
        return FiberProfile(base, r, d, e1, v, places, e2, branches)
    if ctx.unit_order % d:
        raise TowerError(f'{d}-th roots of unity are not in {ctx!r}')
    roots = dth_roots(FieldElem(ctx, g_unit), d)
    if not roots:
        for idx in range(d):
            branches.append(BranchRecord(idx, e1, v, None, 0, e2, places))
    for idx, c in enumerate(roots):
        theta0 = ctx.pow(c.value, -i)
        psi0 = ctx.pow(c.value, j)
        u0 = ctx.mul(ctx.mul(ctx.pow(psi0, tower.v_power), ctx.pow(theta0, H)), h_unit)
        if u0 == 0:
            raise TowerError(f'zero branch residue at {base.label}')
        _, count, _ = kummer_fiber(m, v, FieldElem(ctx, u0))
        branches.append(BranchRecord(idx, e1, v, u0, count, e2, places))
    return FiberProfile(base, r, d, e1, v, places, e2, branches)


# -- genus ------------------------------------------------------------------

@dataclass
class HurwitzResult:
    genus: int
    genus_step1: int
    b: int
    m: int
    profiles: list[FiberProfile] = field(repr=False)


def splitting_field(system: CurveSystem) -> FieldCtx:
    """Smallest of GF(n^2), GF(n^6) over which every tower polynomial splits."""
    n = system.params.n
    last = None
    for t in (2, 6):
        ctx = field_for_power(n, t)
        try:
            special_base_points(system, ctx)
            return ctx
        except SplittingError as exc:
            last = exc
    raise last


def _prime_factors(x: int) -> list[int]:
    out, f = [], 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out.append(x)
    return out


def kummer_power_defect(system: CurveSystem, shared: int, ctx: FieldCtx | None = None) -> int | None:
    """Smallest prime l | shared with h = const * (l-th power) on the first step, else None.

    Used only when every valuation of h is divisible by ``shared``.  The values
    of h at the generic rational points of ``V^b = g(U)`` are sorted into
    cosets of the l-th powers.  Two distinct cosets prove h is not a constant
    times an l-th power (the implication needs only that l-th roots of unity
    are rational).  A single coset over the whole of GF(n^6) is taken as
    reducibility; the unramified l-cover would otherwise have points in every
    coset once q^2 is large against its genus.
    """
    tower = system.tower
    ctx = ctx or field_for_power(system.params.n, 6)
    if not ctx.has_tables:
        raise TowerError(f'cannot decide irreducibility over {ctx!r}: field too large')
    N = ctx.unit_order
    special = {bp.value for bp in special_base_points(tower, ctx) if bp.value is not None}
    xs = np.array([x for x in range(ctx.order) if x not in special], dtype=np.int64)
    polys = dict(tower.polys)
    lg = np.zeros(len(xs), dtype=np.int64)
    for name, k in tower.g:
        lg = (lg + k * ctx.vlog(ctx.veval_poly(polys[name], xs))) % N
    lh = np.zeros(len(xs), dtype=np.int64)
    for name, k in tower.h:
        lh = (lh + k * ctx.vlog(ctx.veval_poly(polys[name], xs))) % N
    ok = lg % tower.b == 0
    lg, lh = lg[ok], lh[ok]
    for ell in _prime_factors(shared):
        if N % ell:
            raise TowerError(f'{ell}-th roots of unity are not in {ctx!r}')
        residues = set()
        for t in range(tower.b):
            lv = (lg // tower.b + t * (N // tower.b)) % N
            residues.update(np.unique((tower.v_power * lv + lh) % ell).tolist())
            if len(residues) > 1:
                break
        if len(residues) <= 1:
            return ell
    return None


def genus_via_hurwitz(system: CurveSystem, ctx: FieldCtx | None = None) -> int:
    return hurwitz(system, ctx).genus


def hurwitz(system: CurveSystem, ctx: FieldCtx | None = None,
            check_irreducible: bool = True) -> HurwitzResult:
    """Genus of the tower by Riemann-Hurwitz over K(u), then over K(u, v).

    With ``check_irreducible=False`` the second step is evaluated from the
    ramification data alone, which for a reducible step is the formal value
    the Kummer formula would assign, not the genus of any curve.
    """
    tower = system.tower
    ctx = ctx or splitting_field(system)
    if tower.b % ctx.p == 0 or tower.m % ctx.p == 0:
        raise TowerError('wild tower')
    bases = special_base_points(system, ctx)
    profiles = [fiber_profile(tower, base, ctx, residues=False) for base in bases]
    b, m = tower.b, tower.m
    if b > 1 and gcd(b, *[pr.r for pr in profiles]) != 1:
        raise TowerError('first Kummer step is reducible')
    shared = gcd(m, *[pr.v for pr in profiles]) if m > 1 else 1
    if shared != 1 and check_irreducible:
        bad = kummer_power_defect(system, shared)
        if bad is not None:
            raise ReducibleTowerError(bad, m)
    diff1 = sum(b - pr.d for pr in profiles)
    twice1 = -2 * b + diff1 + 2
    if twice1 % 2:
        raise TowerError('odd Riemann-Hurwitz bracket in step 1')
    g1 = twice1 // 2
    diff2 = sum(pr.d * (m - pr.places) for pr in profiles)
    twice = m * (2 * g1 - 2) + diff2 + 2
    if twice % 2:
        raise TowerError('odd Riemann-Hurwitz bracket in step 2')
    return HurwitzResult(twice // 2, g1, b, m, profiles)


# -- counting ---------------------------------------------------------------

def _budget_ms() -> float | None:
    raw = os.environ.get('GKLAB_BUDGET_MS')
    return float(raw) if raw else None


@dataclass
class PlaceCount:
    total: int
    generic: int
    special: int
    at_infinity: int
    elapsed_ms: float


def count_degree_one_places(system: CurveSystem, ctx: FieldCtx | None = None,
                            budget_ms: float | None = None, chunk: int = 1 << 15) -> int:
    return count_places(system, ctx, budget_ms, chunk).total


def count_places(system: CurveSystem, ctx: FieldCtx | None = None,
                 budget_ms: float | None = None, chunk: int = 1 << 15) -> PlaceCount:
    """Degree-one places over GF(q^2), q = n^3 unless another ctx is given."""
    start = time.perf_counter()
    budget_ms = budget_ms if budget_ms is not None else _budget_ms()
    tower = system.tower
    ctx = ctx or field_for_power(system.params.n, 6)
    if not ctx.has_tables:
        raise BudgetExceeded(f'{ctx!r} is too large to enumerate')
    N = ctx.unit_order
    b, m = tower.b, tower.m
    if N % b or N % m:
        raise TowerError('Kummer exponents do not divide q^2 - 1')
    specials = special_base_points(tower, ctx)
    special_set = np.array([bp.value for bp in specials if bp.value is not None], dtype=np.int64)

    mask = np.ones(ctx.order, dtype=bool)
    mask[special_set] = False
    generic = np.flatnonzero(mask)
    polys = dict(tower.polys)
    step_root = N // b
    generic_total = 0
    for lo in range(0, len(generic), chunk):
        if budget_ms is not None and (time.perf_counter() - start) * 1000 > budget_ms:
            raise BudgetExceeded(f'counting exceeded {budget_ms} ms')
        xs = generic[lo:lo + chunk]
        lg = np.zeros(len(xs), dtype=np.int64)
        for name, k in tower.g:
            lg = (lg + k * ctx.vlog(ctx.veval_poly(polys[name], xs))) % N
        lh = np.zeros(len(xs), dtype=np.int64)
        for name, k in tower.h:
            lh = (lh + k * ctx.vlog(ctx.veval_poly(polys[name], xs))) % N
        ok = lg % b == 0
        lg, lh = lg[ok], lh[ok]
        if m == 1:
            generic_total += b * len(lg)
            continue
        base = lg // b
        for t in range(b):
            lv = (base + t * step_root) % N
            hit = (tower.v_power * lv + lh) % m == 0
            generic_total += m * int(np.count_nonzero(hit))

    special_total = inf_total = 0
    for bp in specials:
        c = fiber_profile(tower, bp, ctx).rational_places
        if bp.is_infinite:
            inf_total += c
        else:
            special_total += c
    total = generic_total + special_total + inf_total
    elapsed = (time.perf_counter() - start) * 1000
    return PlaceCount(total, generic_total, special_total, inf_total, elapsed)


# -- divisors ---------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    base: int | None
    label: str
    branch1: int
    e1: int
    branch2: int | None = None
    e2: int | None = None
    rational: bool = True


@dataclass
class Divisor:
    entries: dict[Place, int]

    def degree(self) -> int:
        # places over the algebraic closure all have degree one
        return sum(self.entries.values())

    def by_label(self) -> dict[str, tuple[int, int]]:
        """label -> (number of places, common multiplicity)."""
        out: dict[str, list[int]] = {}
        for pl, k in self.entries.items():
            out.setdefault(pl.label, []).append(k)
        summary = {}
        for label, ks in out.items():
            if len(set(ks)) != 1:
                raise ValueError(f'non-uniform multiplicities over {label}')
            summary[label] = (len(ks), ks[0])
        return summary


def alpha_tower(n: int, d1: int, d2: int) -> Tower:
    """K(u, v) with v^d2 = u^d1 - 1 together with the factors of alpha."""
    return Tower(b=d2, g=(('alpha', 1),), m=1, v_power=0,
                 h=(('0', d1), ('alpha', 1), ('beta', n + 1)),
                 polys=(('0', P.MONOMIAL_U), ('alpha', P.binomial_minus_one(d1)),
                        ('beta', P.geometric_sum(d1, n - 1))))


def principal_divisor_alpha(n: int, d1: int, d2: int) -> Divisor:
    """div(u^d1 (u^d1 - 1) ((u^(d1(n-1)) - 1)/(u^d1 - 1))^(n+1)) on v^d2 = u^d1 - 1."""
    if (n + 1) % d1 or (n + 1) % d2:
        raise ValueError('d1 and d2 must divide n+1')
    tower = alpha_tower(n, d1, d2)
    ctx = field_for_power(n, 2)
    entries = {}
    for bp in special_base_points(tower, ctx):
        prof = fiber_profile(tower, bp, ctx, residues=False)
        ordv = sum(k * bp.order(name) for name, k in tower.h)
        if ordv == 0:
            continue
        for idx in range(prof.d):
            entries[Place(bp.value, bp.label, idx, prof.e1)] = prof.e1 * ordv
    return Divisor(entries)


def displayed_divisor_alpha(n: int, d1: int, d2: int) -> dict[str, tuple[int, int]]:
    """The divisor of alpha exactly as printed: label -> (places, multiplicity)."""
    out = {'0': (d2, d1), 'alpha': (d1, d2)}
    if n > 2:
        out['beta'] = (d1 * (n - 2) * d2, n + 1)
    k = gcd(d2, 2 * d1)
    out['inf'] = (k, -(d1 * d2 * n * (n - 1)) // k)
    return out


def count_for(params: CurveParams, **kw) -> int:
    return count_degree_one_places(emit_system(params), **kw)
