"""Reed-Solomon over GF(2^k) used as the outer code of the concatenated schemes.

A message of S symbols is the coefficient list of a polynomial of degree < S;
the codeword is its value at the points 0, 1, ..., D-1 (field elements by bit
pattern).  Decoding is Gao's: interpolate, run the extended Euclidean algorithm
on (prod (x - a_i), interpolant) until the remainder degree drops below
(D + S)/2, then divide.  Up to floor((D - S)/2) symbol errors are corrected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..finitefield import FieldContext, gf, poly_add, poly_divmod, poly_mul
from .base import DecodeFailure


@dataclass(frozen=True)
class RSCode:
    S: int
    D: int
    k_inner: int
    gf_ctx: FieldContext = field(init=False, repr=False, compare=False)
    _g0: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _lagrange: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.S < self.D:
            raise ValueError(f"need 1 <= S < D, got S = {self.S}, D = {self.D}")
        if self.D > (1 << self.k_inner):
            raise ValueError(f"D = {self.D} exceeds the field size 2^{self.k_inner}")
        F = gf(self.k_inner)
        object.__setattr__(self, "gf_ctx", F)
        g0: tuple[int, ...] = (1,)
        for a in range(self.D):
            g0 = poly_mul(F, g0, (a, 1))
        object.__setattr__(self, "_g0", g0)
        # L_i = prod_{j != i} (x - a_j) / (a_i - a_j); interpolant is sum y_i L_i
        basis = []
        for i in range(self.D):
            q, _ = poly_divmod(F, g0, (i, 1))
            w = _eval(F, q, i)
            w_inv = F.inv(w)
            basis.append(tuple(F.mul(c, w_inv) for c in q))
        object.__setattr__(self, "_lagrange", tuple(basis))

    @property
    def beta(self) -> float:
        return (self.D - self.S) / (2 * self.D)

    @property
    def radius(self) -> int:
        return (self.D - self.S) // 2

    def encode(self, symbols: Sequence[int]) -> list[int]:
        if len(symbols) != self.S:
            raise ValueError(f"expected {self.S} symbols, got {len(symbols)}")
        q = 1 << self.k_inner
        if any(not 0 <= s < q for s in symbols):
            raise ValueError("symbol outside the field")
        return [_eval(self.gf_ctx, symbols, a) for a in range(self.D)]

    def interpolate(self, received: Sequence[int]) -> tuple[int, ...]:
        F = self.gf_ctx
        acc = [0] * self.D
        mul = F.mul
        for y, L in zip(received, self._lagrange):
            if y:
                for j, c in enumerate(L):
                    if c:
                        acc[j] ^= mul(y, c)
        return poly_add(acc, ())

    def decode(self, received: Sequence[int]) -> list[int]:
        if len(received) != self.D:
            raise ValueError(f"expected {self.D} symbols, got {len(received)}")
        F = self.gf_ctx
        g1 = self.interpolate(received)
        if len(g1) <= self.S:
            return list(g1) + [0] * (self.S - len(g1))
        stop = (self.D + self.S) / 2
        r0, r1 = self._g0, g1
        v0, v1 = (), (1,)
        while r1 and len(r1) - 1 >= stop:
            q, r = poly_divmod(F, r0, r1)
            r0, r1 = r1, r
            v0, v1 = v1, poly_add(v0, poly_mul(F, q, v1))
        if not v1:
            raise DecodeFailure("outer decoding failed")
        f, rem = poly_divmod(F, r1, v1)
        if rem or len(f) > self.S:
            raise DecodeFailure("too many symbol errors for the outer code")
        return list(f) + [0] * (self.S - len(f))


def _eval(F: FieldContext, coeffs: Sequence[int], y: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.mul(acc, y) ^ c
    return acc


def rs_outer_code(S: int, D: int, k_inner: int) -> RSCode:
    return RSCode(S, D, k_inner)
