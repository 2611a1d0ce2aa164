"""Polynomials over GF(p) and sparse integer-coefficient polynomials.

Dense polynomials over GF(p) are coefficient lists, lowest degree first,
trimmed so that the last entry is nonzero; the zero polynomial is ``[]``.
They are only used for modulus selection and exact division, so plain lists
are fast enough.

Sparse polynomials carry small integer coefficients (the curve families only
need 0 and +-1) and are reduced modulo p at evaluation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] = (r[i] + c) % p
    return trim(r)


def psub(a: list[int], b: list[int], p: int) -> list[int]:
    return padd(a, [(-c) % p for c in b], p)


def pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return trim([c % p for c in r])


def pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError('polynomial division by zero')
    r = [c % p for c in a]
    trim(r)
    db = len(b) - 1
    inv_lc = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv_lc % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * y) % p
    return trim(q), trim(r[:db])


def pmod(a: list[int], b: list[int], p: int) -> list[int]:
    return pdivmod(a, b, p)[1]


def pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = trim([c % p for c in a]), trim([c % p for c in b])
    while b:
        a, b = b, pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = pmod(a, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = pmod(pmul(base, base, p), m, p)
    return result


def is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or test: gcd(x^(p^i) - x, f) = 1 for all i <= deg(f)/2."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(k // 2):
        h = ppowmod(h, p, f, p)
        if len(pgcd(psub(h, x, p), f, p)) != 1:
            return False
    return True


@dataclass(frozen=True)
class SparsePoly:
    """Univariate polynomial as ``((exponent, coeff), ...)``, exponents descending."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> SparsePoly:
        acc: dict[int, int] = {}
        for e, c in terms:
            if e < 0:
                raise ValueError('negative exponent in polynomial')
            acc[e] = acc.get(e, 0) + c
        return cls(tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True)))

    @classmethod
    def from_dense(cls, coeffs: list[int], p: int) -> SparsePoly:
        # lift to the symmetric residue range so -1 stays -1
        half = p // 2
        terms = []
        for e, c in enumerate(coeffs):
            c %= p
            if c > half:
                c -= p
            if c:
                terms.append((e, c))
        return cls.from_terms(terms)

    @property
    def degree(self) -> int:
        return self.terms[0][0] if self.terms else -1

    def leading(self) -> int:
        return self.terms[0][1]

    def dense(self, p: int) -> list[int]:
        if not self.terms:
            return []
        r = [0] * (self.degree + 1)
        for e, c in self.terms:
            r[e] = c % p
        return trim(r)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __str__(self) -> str:
        return format_terms(self.terms, 'U')


def format_terms(terms, var: str) -> str:
    if not terms:
        return '0'
    out = []
    for e, c in terms:
        if e == 0:
            mono = str(abs(c))
        else:
            mono = var if e == 1 else f'{var}^{e}'
            if abs(c) != 1:
                mono = f'{abs(c)}*{mono}'
        sign = '-' if c < 0 else '+'
        out.append((sign, mono))
    s = ('-' if out[0][0] == '-' else '') + out[0][1]
    for sign, mono in out[1:]:
        s += f' {sign} {mono}'
    return s


def geometric_sum(step: int, count: int) -> SparsePoly:
    """1 + U^step + ... + U^((count-1)*step); the constant 1 when count == 1."""
    return SparsePoly.from_terms((i * step, 1) for i in range(count))


def binomial_minus_one(e: int) -> SparsePoly:
    return SparsePoly.from_terms([(e, 1), (0, -1)])


MONOMIAL_U = SparsePoly(((1, 1),))
