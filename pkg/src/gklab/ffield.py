"""Exact arithmetic in GF(p^k).

An element is stored as the integer ``sum(c_i * p**i)`` of its coefficient
vector ``(c_0, ..., c_{k-1})`` modulo the field's defining polynomial.  That
integer is also the element's position in the canonical enumeration, so
"the first element with property P" simply means the smallest such integer.

Fields up to ``LOG_TABLE_LIMIT`` elements carry exp/log tables over a fixed
primitive element; multiplication, power-residue tests and root extraction
then reduce to index arithmetic, and the ``v*`` methods evaluate whole numpy
arrays of elements at once.  Larger fields fall back to polynomial
multiplication and Pohlig-Hellman discrete logarithms.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

from . import poly as P
from .poly import SparsePoly

LOG_TABLE_LIMIT = 1 << 18


class FieldError(ValueError):
    pass


class FieldCtx:
    """The field GF(p^k) with a fixed modulus.  Immutable once built."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not isprime(p):
            raise FieldError(f'{p} is not prime')
        if k < 1:
            raise FieldError(f'extension degree must be >= 1, got {k}')
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError('modulus must be monic of degree k')
        if not P.is_irreducible(list(modulus), p):
            raise FieldError(f'modulus {modulus} is reducible over GF({p})')
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p ** k
        self.unit_order = self.order - 1
        self._pw = [p ** i for i in range(k)]
        self._unit_factors = sorted(factorint(self.unit_order)) if self.unit_order > 1 else []
        self.generator = self._find_generator()
        self.has_tables = self.order <= LOG_TABLE_LIMIT
        if self.has_tables:
            self._build_tables()

    # -- encoding ---------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = P.pmod(coeffs, list(self.modulus), self.p)
        return sum((c % self.p) * w for c, w in zip(coeffs, self._pw))

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            self._check(value)
            return value
        if isinstance(value, int):
            # an int is read as an element of the prime field
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.encode(value))

    def elem(self, index: int) -> FieldElem:
        """The element at position ``index`` of the canonical enumeration."""
        if not 0 <= index < self.order:
            raise FieldError(f'index {index} out of range')
        return FieldElem(self, index)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self):
        for i in range(self.order):
            yield FieldElem(self, i)

    def same_field(self, other: FieldCtx) -> bool:
        return self is other or (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def _check(self, x: FieldElem):
        if not self.same_field(x.ctx):
            raise FieldError('operands belong to different fields')

    def __repr__(self):
        return f'GF({self.p}^{self.k})'

    # -- scalar arithmetic on encoded ints --------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        r = 0
        for w in self._pw:
            r += ((a // w + b // w) % self.p) * w
        return r

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        r = 0
        for w in self._pw:
            r += ((-(a // w)) % self.p) * w
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return self._exp_list[(self._log_list[a] + self._log_list[b]) % self.unit_order]
        return self._slow_mul(a, b)

    def _slow_mul(self, a: int, b: int) -> int:
        prod = P.pmul(self.digits(a), self.digits(b), self.p)
        return self.encode(P.pmod(prod, list(self.modulus), self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError('inverse of zero in ' + repr(self))
        if self.has_tables:
            return self._exp_list[(-self._log_list[a]) % self.unit_order]
        return self.pow(a, self.unit_order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError('negative power of zero')
            return 0
        if self.has_tables:
            return self._exp_list[(self._log_list[a] * e) % self.unit_order]
        if e < 0:
            a, e = self.inv(a), -e
        e %= self.unit_order
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def log(self, a: int) -> int:
        """Discrete logarithm to the base ``self.generator``."""
        if a == 0:
            raise FieldError('logarithm of zero')
        if self.has_tables:
            return self._log_list[a]
        return self._pohlig_hellman(a)

    def exp(self, i: int) -> int:
        if self.has_tables:
            return self._exp_list[i % self.unit_order]
        return self.pow(self.generator, i)

    def scalar(self, c: int) -> int:
        """Encoding of the prime-field element c mod p."""
        return c % self.p

    def eval_poly(self, f: SparsePoly, x: int) -> int:
        acc = 0
        for e, c in f.terms:
            c %= self.p
            if c:
                acc = self.add(acc, self.mul(c, self.pow(x, e)))
        return acc

    def eval_dense(self, coeffs: list[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c % self.p)
        return acc

    # -- generator and tables ---------------------------------------------

    def _is_primitive(self, a: int) -> bool:
        if a == 0:
            return False
        return all(self.pow(a, self.unit_order // ell) != 1 for ell in self._unit_factors)

    def _find_generator(self) -> int:
        self.has_tables = False
        for a in range(1, self.order):
            if self._is_primitive(a):
                return a
        raise FieldError('no primitive element found')  # unreachable for a field

    def _vmul_const(self, arr: np.ndarray, c: int) -> np.ndarray:
        p, k = self.p, self.k
        cd = self.digits(c)
        D = np.empty((len(arr), k), dtype=np.int64)
        rest = arr.astype(np.int64)
        for i in range(k):
            rest, D[:, i] = np.divmod(rest, p)
        R = np.zeros((len(arr), 2 * k - 1), dtype=np.int64)
        for j, cj in enumerate(cd):
            if cj:
                R[:, j:j + k] += cj * D
        R %= p
        low = np.array(self.modulus[:k], dtype=np.int64)
        for deg in range(2 * k - 2, k - 1, -1):
            coef = R[:, deg]
            R[:, deg - k:deg] = (R[:, deg - k:deg] - coef[:, None] * low) % p
            R[:, deg] = 0
        weights = np.array(self._pw, dtype=np.int64)
        return R[:, :k] @ weights

    def _build_tables(self):
        N = self.unit_order
        exp = np.empty(N, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < N:
            step = min(filled, N - filled)
            shift = self._slow_pow(self.generator, filled)
            exp[filled:filled + step] = self._vmul_const(exp[:step], shift)
            filled += step
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any():
            raise FieldError('generator does not span the multiplicative group')
        self._exp = exp
        self._log = log
        self._exp_list = exp.tolist()
        self._log_list = log.tolist()

    def _slow_pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def _pohlig_hellman(self, a: int) -> int:
        N = self.unit_order
        residues, moduli = [], []
        for ell, mult in factorint(N).items():
            pe = ell ** mult
            g0 = self.pow(self.generator, N // pe)
            h0 = self.pow(a, N // pe)
            gamma = self.pow(g0, pe // ell)
            x = 0
            for j in range(mult):
                hk = self.pow(self.mul(self.pow(g0, -x), h0), pe // ell ** (j + 1))
                dk = _bsgs(self, gamma, hk, ell)
                x += dk * ell ** j
            residues.append(x)
            moduli.append(pe)
        x, mod = 0, 1
        for r, m in zip(residues, moduli):
            # incremental CRT
            t = ((r - x) * pow(mod, -1, m)) % m
            x += mod * t
            mod *= m
        return x % N

    # -- vectorised helpers (table fields only) -----------------------------

    def _need_tables(self):
        if not self.has_tables:
            raise FieldError(f'{self!r} exceeds the table budget of {LOG_TABLE_LIMIT} elements')

    def all_elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pw:
            r += ((a // w + b // w) % self.p) * w
        return r

    def vlog(self, a: np.ndarray) -> np.ndarray:
        """Logs of the entries; -1 marks zero."""
        self._need_tables()
        return self._log[a]

    def vexp(self, i: np.ndarray) -> np.ndarray:
        self._need_tables()
        return self._exp[np.mod(i, self.unit_order)]

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self._need_tables()
        la, lb = self._log[a], self._log[b]
        out = self._exp[(la + lb) % self.unit_order]
        return np.where((la < 0) | (lb < 0), 0, out)

    def veval_poly(self, f: SparsePoly, xs: np.ndarray) -> np.ndarray:
        self._need_tables()
        N = self.unit_order
        lx = self._log[xs]
        zero = lx < 0
        acc = np.zeros(len(xs), dtype=np.int64)
        for e, c in f.terms:
            c %= self.p
            if not c:
                continue
            if e == 0:
                term = np.full(len(xs), c, dtype=np.int64)
            else:
                idx = ((e % N) * lx + self._log_list[c]) % N
                term = np.where(zero, 0, self._exp[idx])
            acc = self.vadd(acc, term)
        return acc


def _bsgs(F: FieldCtx, g: int, h: int, n: int) -> int:
    """Solve g^x = h for 0 <= x < n by baby-step giant-step."""
    m = math.isqrt(n) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = F.mul(cur, g)
    factor = F.pow(g, -m)
    gamma = h
    for i in range(m + 1):
        if gamma in table:
            return (i * m + table[gamma]) % n
        gamma = F.mul(gamma, factor)
    raise FieldError('discrete logarithm does not exist')


class FieldElem:
    """An element of a FieldCtx; supports the usual arithmetic operators."""

    __slots__ = ('ctx', 'value')

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.ctx.digits(self.value))

    def _other(self, y) -> int:
        if isinstance(y, FieldElem):
            self.ctx._check(y)
            return y.value
        if isinstance(y, int):
            return y % self.ctx.p
        return NotImplemented

    def __add__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.sub(b, self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, y):
        if isinstance(y, FieldElem):
            return self.ctx.same_field(y.ctx) and self.value == y.value
        if isinstance(y, int):
            return self.value == y % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f'{self.ctx!r}({self.value})'


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (c_0 compared first)."""
    # c_0 = 0 means x divides f, so start at c_0 = 1 once k > 1
    for low in itertools.product(range(1 if k > 1 else 0, p), *[range(p)] * (k - 1)):
        f = list(low) + [1]
        # a root in GF(p) means a linear factor; cheap pre-filter
        if k > 1 and any(sum(c * pow(t, i, p) for i, c in enumerate(f)) % p == 0 for t in range(p)):
            continue
        if P.is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f'no irreducible polynomial of degree {k} over GF({p})')


@lru_cache(maxsize=None)
def build_field(p: int, k: int) -> FieldCtx:
    if not isprime(p):
        raise FieldError(f'{p} is not prime')
    if k < 1:
        raise FieldError(f'extension degree must be >= 1, got {k}')
    return FieldCtx(p, k, smallest_irreducible(p, k))


def prime_power(n: int) -> tuple[int, int]:
    """Return (p, u) with n = p^u, or raise."""
    f = factorint(n) if n > 1 else {}
    if len(f) != 1:
        raise FieldError(f'{n} is not a prime power')
    ((p, u),) = f.items()
    return p, u


def field_for_power(n: int, t: int) -> FieldCtx:
    """GF(n^t) for a prime power n."""
    p, u = prime_power(n)
    return build_field(p, u * t)


def is_dth_power(x: FieldElem, d: int) -> bool:
    F = x.ctx
    if d < 1 or F.unit_order % d:
        raise FieldError(f'{d} does not divide {F.unit_order}')
    if x.is_zero():
        raise FieldError('power-residue test of zero')
    if F.has_tables:
        return F.log(x.value) % d == 0
    return F.pow(x.value, F.unit_order // d) == 1


def dth_roots(x: FieldElem, d: int) -> list[FieldElem]:
    """All c with c^d = x, in canonical order."""
    F = x.ctx
    if x.is_zero() and d >= 1:
        return [F.zero]
    if d < 1 or F.unit_order % d:
        raise FieldError(f'{d} does not divide {F.unit_order}')
    L = F.log(x.value)
    if L % d:
        return []
    step = F.unit_order // d
    return sorted((FieldElem(F, F.exp(L // d + i * step)) for i in range(d)), key=int)


def multiplicative_order(x: FieldElem) -> int:
    F = x.ctx
    if x.is_zero():
        raise FieldError('zero has no multiplicative order')
    order = F.unit_order
    for ell in F._unit_factors:
        while order % ell == 0 and F.pow(x.value, order // ell) == 1:
            order //= ell
    return order


def solve_rho(n: int, ctx: FieldCtx) -> FieldElem:
    """First element rho of GF(n^2), canonically, with rho + rho^n = 1."""
    if ctx.order != n * n:
        raise FieldError(f'{ctx!r} does not have {n}^2 elements')
    for r in range(ctx.order):
        if ctx.add(r, ctx.pow(r, n)) == 1:
            return FieldElem(ctx, r)
    raise FieldError('no solution of rho + rho^n = 1')  # unreachable: the map is onto GF(n)


def find_roots(ctx: FieldCtx, coeffs: list[int]) -> list[int]:
    """Roots in ctx of a dense GF(p) polynomial, as encoded ints in canonical order."""
    if ctx.has_tables:
        f = SparsePoly.from_dense(coeffs, ctx.p)
        vals = ctx.veval_poly(f, ctx.all_elements())
        return np.flatnonzero(vals == 0).tolist()
    return [a for a in range(ctx.order) if ctx.eval_dense(coeffs, a) == 0]


_EMBED_CACHE: dict = {}


def embedding_image(source: FieldCtx, target: FieldCtx) -> int:
    """Image in ``target`` of the generator x of ``source`` (smallest root of its modulus)."""
    if source.p != target.p or target.k % source.k:
        raise FieldError(f'{source!r} is not a subfield of {target!r}')
    key = (source.p, source.k, source.modulus, target.k, target.modulus)
    if key not in _EMBED_CACHE:
        if source.k == 1:
            root = 0
        else:
            # roots of the modulus lie in the subfield {z : z^(p^a) = z}
            roots = find_roots(target, list(source.modulus))
            if not roots:
                raise FieldError('subfield modulus has no root in target')
            root = roots[0]
        _EMBED_CACHE[key] = root
    return _EMBED_CACHE[key]


def embed(x: FieldElem, target: FieldCtx) -> FieldElem:
    source = x.ctx
    r = embedding_image(source, target)
    if source.k == 1:
        return FieldElem(target, x.value % target.p)
    acc, power = 0, 1
    for c in x.coeffs:
        if c:
            acc = target.add(acc, target.mul(c, power))
        power = target.mul(power, r)
    return FieldElem(target, acc)
