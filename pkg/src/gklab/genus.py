"""Closed-form genera of the GK subcovers, in exact integer arithmetic.

Every halving (or division by 2|L|) checks exactness first, so a mistyped
gcd term fails loudly instead of rounding.  ``(a, b)`` in the usual notation
is ``gcd(a, b)`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curves import CurveParams, Family, compute_M, hexagon, validate


class GenusError(ArithmeticError):
    pass


class HypothesisError(ValueError):
    """Parameters outside the hypotheses of a formula."""


def _half(bracket: int, what: str) -> int:
    if bracket % 2:
        raise GenusError(f'odd bracket {bracket} in {what}')
    return bracket // 2


def _exact(num: int, den: int, what: str) -> int:
    if num % den:
        raise GenusError(f'{what}: {num}/{den} is not an integer')
    return num // den


def genus_base(a: int, b: int) -> int:
    """Genus of v^b = u^a - 1."""
    if a < 1 or b < 1:
        raise ValueError('a, b must be positive')
    return 1 + _half(a * b - a - b - gcd(a, b), 'genus_base')


def genus_c1(n: int, d1: int, d2: int, d3: int) -> int:
    M = gcd(d1, d2, d3 * hexagon(n))
    m = d3 * hexagon(n) // M
    bracket = (d1 * d2 * m * (n - 1)
               - d2 * gcd(d1 // M, m)
               - d1 * gcd(d2 // M, m)
               - d1 * d2 * (n - 2) * gcd(m, (n + 1) // M)
               - gcd(gcd(d1, d2) * m, 2 * d1 * d2 // M))
    return 1 + _half(bracket, 'genus_c1')


def genus_c23(n: int, h: int, k: int, d3: int) -> int:
    r = d3 * hexagon(n)
    bracket = (h * k * r * (n - 1)
               - k * gcd(h, r)
               - h * gcd(k, r)
               - h * k * (n - 2) * gcd(r, n + 1)
               - gcd(gcd(h, k) * r, 2 * h * k))
    return 1 + _half(bracket, 'genus_c23')


def genus_c2(n: int, d1: int, d2: int, d3: int) -> int:
    M = compute_M(n, d1, d2, d3)
    return genus_c23(n, d1 // M, d2, d3)


def genus_c3(n: int, d1: int, d2: int, d3: int) -> int:
    M = compute_M(n, d1, d2, d3)
    return genus_c23(n, d1, d2 // M, d3)


def genus_xk(n: int, c: int, d: int) -> int:
    if (n + 1) % c or hexagon(n) % d:
        raise HypothesisError('need c | n+1 and d | n^2-n+1')
    bracket = c * ((d - 1) * n * n + n - d - gcd(2, (n + 1) // c))
    return 1 + _half(bracket, 'genus_xk')


def genus_hermitian(q: int) -> int:
    return q * (q - 1) // 2


# -- the group-theoretic route ------------------------------------------------

@dataclass(frozen=True)
class TameGroupData:
    order_L: int
    order_L_Lambda: int
    genus_bar: int


def genus_prop_fg(data: TameGroupData, n: int) -> int:
    """g(X/L) from |L|, |L meet Lambda| and the genus of H/bar L."""
    lam = data.order_L_Lambda
    if hexagon(n) % lam or data.order_L % lam:
        raise HypothesisError('|L_Lambda| must divide both n^2-n+1 and |L|')
    num = (n ** 3 + 1) * (n * n - lam - 1) - lam * (n * n - n - 2)
    if num < 0:
        raise HypothesisError('negative ramification contribution')
    return data.genus_bar + _exact(num, 2 * data.order_L, 'ramification term')


def _check_case_42(n: int, d1: int, d2: int, d3: int):
    for x in (d1, d2, d3):
        if (n + 1) % x:
            raise HypothesisError(f'{x} does not divide n+1')
    if (3 * d3) % d1 or gcd(d1, d2) != 1:
        raise HypothesisError('need d1 | 3*d3 and gcd(d1, d2) = 1')


def genus_bar_case_42(n: int, d1: int, d2: int, d3: int) -> int:
    """Genus of the Hermitian quotient H/bar H in Case 4.2 (A or B)."""
    _check_case_42(n, d1, d2, d3)
    three = (n + 1) // d3 % 3 == 0
    scale = d1 * d2 * d3 * (3 if three else 1)
    t = (n + 1) // (d3 * (3 if three else 1))
    s = (n + 1) // (d1 * d2)
    bracket = scale * (n - 2 - t - gcd(s, t) - gcd(s, 2 * t) + 3)
    return 1 + _exact(bracket, 2 * (n + 1), 'genus_bar_case_42')


def genus_case_A(n: int, d1: int, d2: int, d3: int) -> int:
    _check_case_42(n, d1, d2, d3)
    if (n + 1) // d3 % 3 == 0:
        raise HypothesisError('case A needs 3 not dividing (n+1)/d3')
    t = (n + 1) // d3
    s = (n + 1) // (d1 * d2)
    D = d1 * d2 * d3
    first = _exact(D * (n + 1 - t - gcd(s, t) - gcd(s, 2 * t)), 2 * (n + 1), 'case A')
    second = _half(D * (n ** 3 - 2 * n * n + n), 'case A')
    return 1 + first + second


def genus_case_B(n: int, d1: int, d2: int, d3: int) -> int:
    _check_case_42(n, d1, d2, d3)
    if (n + 1) // d3 % 3:
        raise HypothesisError('case B needs 3 | (n+1)/d3')
    t = (n + 1) // (3 * d3)
    s = (n + 1) // (d1 * d2)
    D = d1 * d2 * d3
    first = _exact(3 * D * (n + 1 - t - gcd(s, t) - gcd(s, 2 * t)), 2 * (n + 1), 'case B')
    second = _half(D * (n ** 3 - 2 * n * n - n + 2), 'case B')
    return 1 + first + second


def case_42_group_data(n: int, d1: int, d2: int, d3: int) -> TameGroupData:
    _check_case_42(n, d1, d2, d3)
    return TameGroupData(order_L=(n + 1) ** 2 // (d1 * d2 * d3),
                         order_L_Lambda=gcd(3, (n + 1) // d3),
                         genus_bar=genus_bar_case_42(n, d1, d2, d3))


def genus_case_2(n: int, d1: int, d2: int, d3: int) -> int:
    for x in (d1, d2, d3):
        if (n + 1) % x:
            raise HypothesisError(f'{x} does not divide n+1')
    if d2 % d1 or gcd(d1, d3 * hexagon(n)) != 1:
        raise HypothesisError('need d1 | d2 and gcd(d1, d3(n^2-n+1)) = 1')
    if (n + 1) % (d1 * d3):
        raise HypothesisError('d1*d3 must divide n+1')
    m = gcd(3, (n + 1) // (d1 * d3))
    t = (n + 1) // (d1 * d3 * m)
    s = (n + 1) // d2
    D = d1 * d2 * d3
    first = _exact(D * m * (n + 1 - t - gcd(s, t) - gcd(s, 2 * t)), 2 * (n + 1), 'case 2')
    second = _half(D * (n ** 3 - 2 * n * n + (2 - m) * n + m - 1), 'case 2')
    return 1 + first + second


def genus_gsx(p: int, u: int, v: int, w: int, k: int) -> Fraction:
    """Genus of H/N for a group N fixing the point at infinity; may be non-integral."""
    if u != v + w or v < 0 or w < 0:
        raise ValueError('need u = v + w with v, w >= 0')
    if k < 1:
        raise ValueError('k must be positive')
    num = p ** (5 * u) - p ** (3 * u - v) - (k - 1) * p ** (3 * u - w) + k - 1
    return Fraction(num, 2 * k)


# -- dispatch -----------------------------------------------------------------

def closed_form_genus(params: CurveParams) -> int | None:
    """Genus from the formulas, or None when no formula applies (e < n^2-n+1)."""
    params = validate(params)
    n, fam = params.n, params.family
    if fam in (Family.C1, Family.XH, Family.C2, Family.C3):
        if params.e != hexagon(n):
            return None
        fn = {Family.C1: genus_c1, Family.XH: genus_c1, Family.C2: genus_c2, Family.C3: genus_c3}[fam]
        return fn(n, params.d1, params.d2, params.d3)
    if fam == Family.XK:
        return genus_xk(n, params.c, params.d)
    if fam in (Family.GK_C, Family.GK_X):
        # degree-one tuple of the first family
        return genus_c1(n, n + 1, n + 1, n + 1)
    if fam == Family.HERMITIAN_SMALL:
        return genus_hermitian(n)
    return genus_hermitian(n ** 3)
