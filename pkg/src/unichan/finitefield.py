"""Arithmetic in GF(2^s) and in polynomial rings over it.

Field elements are ints whose bits are the coefficients of the residue
polynomial; the modulus is stored as a bit mask including the leading term.
Polynomials over GF(2^s) are coefficient tuples, lowest degree first, with no
trailing zeros.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

MAX_S = 64
_TABLE_LIMIT = 16


class FieldMismatchError(ValueError):
    pass


# ---------------------------------------------------------------- GF(2)[x] on ints

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def gf2_mulmod(a: int, b: int, m: int) -> int:
    return gf2_mod(clmul(a, b), m)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gf2_is_irreducible(f: int) -> bool:
    """Rabin's test: f | x^(2^d) - x and gcd(f, x^(2^(d/p)) - x) = 1 for primes p | d."""
    d = f.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if not f & 1:
        return False

    def frob(j: int) -> int:
        x = 0b10
        for _ in range(j):
            x = gf2_mulmod(x, x, f)
        return x

    if frob(d) != 0b10:
        return False
    for p in _prime_factors(d):
        if gf2_gcd(f, frob(d // p) ^ 0b10) != 1:
            return False
    return True


# ---------------------------------------------------------------- GF(2^s)

@dataclass(frozen=True)
class FieldContext:
    s: int
    modulus: int
    _exp: tuple[int, ...] = field(default=(), compare=False, repr=False)
    _log: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not 1 <= self.s <= MAX_S:
            raise ValueError(f"extension degree must be in 1..{MAX_S}, got {self.s}")
        if self.modulus.bit_length() - 1 != self.s:
            raise ValueError("modulus degree does not match s")
        if not gf2_is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is reducible")
        if self.s <= _TABLE_LIMIT and not self._exp:
            exp, log = _build_tables(self.s, self.modulus)
            object.__setattr__(self, "_exp", exp)
            object.__setattr__(self, "_log", log)

    @property
    def order(self) -> int:
        return 1 << self.s

    def __repr__(self) -> str:
        return f"FieldContext(s={self.s}, modulus={self.modulus:#x})"

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp:
            return self._exp[self._log[a] + self._log[b]]
        return _shift_xor_mul(a, b, self.modulus, self.s)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not a:
            return 1 if e == 0 else 0
        if self._exp:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def frobenius(self, a: int, k: int) -> int:
        """a^(2^k) by k squarings."""
        for _ in range(k):
            a = self.mul(a, a)
        return a

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        if self._exp:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)


def _shift_xor_mul(a: int, b: int, modulus: int, s: int) -> int:
    out = 0
    top = 1 << s
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return out


def _build_tables(s: int, modulus: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    q = 1 << s
    if q == 2:
        return (1, 1), (0, 0)
    factors = _prime_factors(q - 1)
    for g in range(2, q):
        if all(_slow_pow(g, (q - 1) // p, modulus, s) != 1 for p in factors):
            break
    exp = [0] * (2 * (q - 1))
    log = [0] * q
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = _shift_xor_mul(x, g, modulus, s)
    for i in range(q - 1, 2 * (q - 1)):
        exp[i] = exp[i - (q - 1)]
    return tuple(exp), tuple(log)


def _slow_pow(a: int, e: int, modulus: int, s: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _shift_xor_mul(out, a, modulus, s)
        a = _shift_xor_mul(a, a, modulus, s)
        e >>= 1
    return out


@lru_cache(maxsize=None)
def gf(s: int) -> FieldContext:
    """The field GF(2^s) built on the smallest irreducible modulus."""
    return FieldContext(s, find_irreducible(s))


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.order:
            raise ValueError(f"{self.value} is not an element of GF(2^{self.ctx.s})")

    def _check(self, other: "FieldElement") -> None:
        if other.ctx != self.ctx:
            raise FieldMismatchError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return field_mul(self, other)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self.ctx.div(self.value, other.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.ctx, a.ctx.mul(a.value, b.value))


# ---------------------------------------------------------------- GF(2^s)[Z]

def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class FieldPoly:
    ctx: FieldContext
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = _trim(tuple(int(c) for c in self.coeffs))
        if any(not 0 <= c < self.ctx.order for c in coeffs):
            raise ValueError("coefficient outside the field")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, c) for c in self.coeffs]

    def _check(self, other: "FieldPoly") -> None:
        if other.ctx != self.ctx:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return FieldPoly(self.ctx, poly_add(self.coeffs, other.coeffs))

    __sub__ = __add__

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return FieldPoly(self.ctx, poly_mul(self.ctx, self.coeffs, other.coeffs))

    def __mod__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return FieldPoly(self.ctx, poly_divmod(self.ctx, self.coeffs, other.coeffs)[1])

    def __floordiv__(self, other: "FieldPoly") -> "FieldPoly":
        self._check(other)
        return FieldPoly(self.ctx, poly_divmod(self.ctx, self.coeffs, other.coeffs)[0])

    def __call__(self, y: int) -> int:
        return _horner(self.ctx, self.coeffs, y)


def poly_add(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] ^= c
    return _trim(out)


def poly_mul(ctx: FieldContext, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    mul = ctx.mul
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] ^= mul(a, b)
    return _trim(out)


def poly_scale(ctx: FieldContext, f: Sequence[int], c: int) -> tuple[int, ...]:
    return _trim([ctx.mul(a, c) for a in f])


def poly_divmod(ctx: FieldContext, f: Sequence[int], g: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    g = _trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(_trim(f))
    dg = len(g) - 1
    if len(rem) - 1 < dg:
        return (), tuple(rem)
    lead_inv = ctx.inv(g[-1])
    quot = [0] * (len(rem) - dg)
    mul = ctx.mul
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if not c:
            continue
        c = mul(c, lead_inv)
        quot[i - dg] = c
        for j, b in enumerate(g):
            if b:
                rem[i - dg + j] ^= mul(c, b)
    return _trim(quot), _trim(rem[:dg])


def poly_square(ctx: FieldContext, f: Sequence[int]) -> tuple[int, ...]:
    """Square in characteristic 2: cross terms cancel."""
    if not f:
        return ()
    out = [0] * (2 * len(f) - 1)
    for i, a in enumerate(f):
        out[2 * i] = ctx.mul(a, a)
    return tuple(out)


def poly_gcd(ctx: FieldContext, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, poly_divmod(ctx, f, g)[1]
    if f:
        f = poly_scale(ctx, f, ctx.inv(f[-1]))
    return f


def _horner(ctx: FieldContext, coeffs: Sequence[int], y: int) -> int:
    acc = 0
    mul = ctx.mul
    for c in reversed(coeffs):
        acc = mul(acc, y) ^ c
    return acc


def poly_eval(f: FieldPoly, y: FieldElement) -> FieldElement:
    if y.ctx != f.ctx:
        raise FieldMismatchError("evaluation point from a different field")
    return FieldElement(f.ctx, _horner(f.ctx, f.coeffs, y.value))


def _pow2k_mod(ctx: FieldContext, f: Sequence[int], k: int, E: Sequence[int]) -> tuple[int, ...]:
    r = poly_divmod(ctx, f, E)[1]
    for _ in range(k):
        r = poly_divmod(ctx, poly_square(ctx, r), E)[1]
    return r


def poly_mod_pow2k(f: FieldPoly, k: int, E: FieldPoly) -> FieldPoly:
    """f^(2^k) mod E by k rounds of square-then-reduce."""
    f._check(E)
    if not E.is_monic() or E.degree < 1:
        raise ValueError("modulus must be monic of degree >= 1")
    return FieldPoly(f.ctx, _pow2k_mod(f.ctx, f.coeffs, k, E.coeffs))


def is_irreducible_over(ctx: FieldContext, f: Sequence[int]) -> bool:
    """Rabin's test over GF(q), q = 2^s, using x^(q^j) mod f."""
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if not f[0]:
        return False
    if f[-1] != 1:
        f = poly_scale(ctx, f, ctx.inv(f[-1]))
    x = (0, 1)

    def frob(j: int) -> tuple[int, ...]:
        return _pow2k_mod(ctx, x, ctx.s * j, f)

    if frob(d) != x:
        return False
    for p in _prime_factors(d):
        if poly_gcd(ctx, f, poly_add(frob(d // p), x)) != (1,):
            return False
    return True


def find_irreducible(degree: int, over: FieldContext | None = None):
    """Lexicographically smallest monic irreducible of the given degree.

    The key is the coefficient tuple read from the constant term upward.  Over
    GF(2) the result is a bit mask; over a FieldContext it is a FieldPoly.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if over is None:
        # tuple order (c0, ..., c_{d-1}) is numeric order with c0 as the top bit
        # c0 = 0 means x divides f, so start where the top bit is set
        start = 0 if degree == 1 else 1 << (degree - 1)
        for r in range(start, 1 << degree):
            low = 0
            for i in range(degree):
                if (r >> (degree - 1 - i)) & 1:
                    low |= 1 << i
            f = low | (1 << degree)
            if gf2_is_irreducible(f):
                return f
        raise AssertionError("unreachable: irreducibles exist in every degree")
    for low in itertools.product(range(over.order), repeat=degree):
        if degree > 1 and low[0] == 0:
            continue
        f = low + (1,)
        if is_irreducible_over(over, f):
            return FieldPoly(over, f)
    raise AssertionError("unreachable: irreducibles exist in every degree")
