"""Seeded linear fingerprints F(x, rho) = H_rho x and their inverters.

Two families share the ``LinearFingerprinter`` interface:

* ``RandomLinearFingerprinter`` expands an integer seed into a uniform bit
  matrix with Philox4x64-10 keyed directly by the seed (counter starting at 0).
  Row ``i`` is the little-endian concatenation of raw output words
  ``i*W .. i*W+W-1`` (``W = ceil(n/64)``), truncated to ``n`` bits.
* ``GuvFingerprinter`` evaluates the Reed-Solomon style condenser
  ``f_x(y), (f_x^h mod E)(y), ...`` over GF(2^s) and optionally stacks the low
  bits of a field product ``a*x`` underneath.

Inversion scans a suspect list for the single element with the observed
fingerprint.  Anything other than exactly one match is an error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bitlinalg import BitMatrix, BitVector, DimensionError
from .finitefield import FieldContext, FieldPoly, find_irreducible, gf, poly_mod_pow2k

SEED_BITS = 128


class InversionError(Exception):
    pass


class NotFound(InversionError):
    pass


class Ambiguous(InversionError):
    def __init__(self, matches: Sequence[int]):
        super().__init__(f"{len(matches)} suspects share the fingerprint")
        self.matches = tuple(matches)


def log2_inv(epsilon: float) -> int:
    """ceil(log2(1/epsilon)), exact for powers of two."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    m, e = math.frexp(epsilon)
    if m == 0.5:
        return 1 - e
    return math.ceil(-math.log2(epsilon))


# ---------------------------------------------------------------- suspect lists

@dataclass(frozen=True)
class SuspectList:
    n: int
    elements: tuple[int, ...]
    _array: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise ValueError("suspect list is empty")
        if len(set(elems)) != len(elems):
            raise ValueError("suspect list has repeated elements")
        limit = 1 << self.n
        if any(e < 0 or e >= limit for e in elems):
            raise DimensionError(f"element does not fit in {self.n} bits")
        if self.n <= 64:
            object.__setattr__(self, "_array", np.array(elems, dtype=np.uint64))

    @classmethod
    def of(cls, vectors: Iterable[BitVector]) -> "SuspectList":
        vectors = list(vectors)
        return cls(vectors[0].n, tuple(v.value for v in vectors))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._index

    @property
    def _index(self) -> dict[int, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, x: int) -> int:
        return self._index[x]

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.n, e) for e in self.elements]


# ---------------------------------------------------------------- fingerprinters

class LinearFingerprinter:
    """Interface: ``n``, ``out_len``, ``d`` and a deterministic ``matrix_of``."""

    n: int
    out_len: int
    d: int

    def matrix_of(self, rho) -> BitMatrix:
        raise NotImplementedError

    def sample_seed(self, rng: np.random.Generator):
        raise NotImplementedError

    def fingerprint(self, x: BitVector, rho) -> BitVector:
        if x.n != self.n:
            raise DimensionError(f"expected {self.n} bits, got {x.n}")
        return BitVector(self.out_len, self.matrix_of(rho).apply(x.value))

    def describe(self) -> dict:
        raise NotImplementedError


def syndromes(H: BitMatrix, S: SuspectList) -> np.ndarray:
    """H x for every x in S, as integers; vectorised when n <= 64."""
    if S._array is None:
        return np.array([H.apply(x) for x in S.elements], dtype=object)
    arr = S._array
    out = np.zeros(len(arr), dtype=np.uint64)
    for i, row in enumerate(H.rows):
        bits = np.bitwise_count(arr & np.uint64(row)) & np.uint64(1)
        out |= bits << np.uint64(i)
    return out


def invert(fp: LinearFingerprinter, S: SuspectList, p: BitVector, rho) -> BitVector:
    if p.n != fp.out_len:
        raise DimensionError(f"fingerprint has {p.n} bits, expected {fp.out_len}")
    if S.n != fp.n:
        raise DimensionError("suspect list length does not match the fingerprinter")
    return BitVector(fp.n, invert_matrix(fp.matrix_of(rho), S, p.value))


def invert_matrix(H: BitMatrix, S: SuspectList, p: int) -> int:
    syn = syndromes(H, S)
    matches = np.flatnonzero(syn == p) if S._array is not None else [
        i for i, v in enumerate(syn) if v == p]
    if len(matches) == 0:
        raise NotFound("no suspect has this fingerprint")
    if len(matches) > 1:
        raise Ambiguous([S.elements[i] for i in matches])
    return S.elements[int(matches[0])]


def unique_fingerprint_mask(H: BitMatrix, S: SuspectList) -> np.ndarray:
    """Boolean array: True where the element's fingerprint is not shared within S."""
    syn = syndromes(H, S)
    _, inverse, counts = np.unique(syn, return_inverse=True, return_counts=True)
    return counts[inverse] == 1


@dataclass(frozen=True)
class RandomLinearFingerprinter(LinearFingerprinter):
    n: int
    out_len: int

    @property
    def d(self) -> int:
        return self.out_len * self.n

    def matrix_of(self, rho: int) -> BitMatrix:
        return BitMatrix(philox_rows(rho, self.out_len, self.n), self.n)

    def sample_seed(self, rng: np.random.Generator) -> int:
        hi, lo = rng.integers(0, 1 << 64, size=2, dtype=np.uint64)
        return (int(hi) << 64) | int(lo)

    def describe(self) -> dict:
        return {"kind": "random-linear", "n": self.n, "out_len": self.out_len}


def philox_rows(key: int, rows: int, n: int) -> tuple[int, ...]:
    words = (n + 63) // 64
    gen = np.random.Philox(key=key & ((1 << SEED_BITS) - 1), counter=0)
    raw = gen.random_raw(rows * words)
    mask = (1 << n) - 1
    out = []
    for i in range(rows):
        v = 0
        for w in range(words):
            v |= int(raw[i * words + w]) << (64 * w)
        out.append(v & mask)
    return tuple(out)


def random_linear_fingerprinter(n: int, t: int, epsilon: float, seed=None) -> RandomLinearFingerprinter:
    """Fingerprint length t + ceil(log2(1/epsilon)).

    ``seed`` is accepted for interface symmetry; the matrix is a function of the
    per-use seed ``rho`` passed to ``matrix_of``.
    """
    out_len = t + log2_inv(epsilon)
    if t < 0 or out_len >= n:
        raise ValueError(f"t + log2(1/eps) = {out_len} must be below n = {n}")
    return RandomLinearFingerprinter(n, out_len)


# ---------------------------------------------------------------- GUV condenser

@dataclass(frozen=True)
class GuvParams:
    s: int
    h_log: int
    m_blocks: int
    hash_bits: int = 0

    def __post_init__(self):
        if self.h_log < 1:
            raise ValueError("h = 2^h_log must be at least 2")
        if self.m_blocks < 0 or self.hash_bits < 0:
            raise ValueError("block and hash counts must be nonnegative")

    def out_len(self) -> int:
        return self.s * (self.m_blocks + 1) + self.hash_bits

    def to_json(self) -> str:
        return json.dumps({"s": self.s, "h_log": self.h_log, "m_blocks": self.m_blocks,
                           "hash_bits": self.hash_bits})

    @classmethod
    def from_json(cls, text: str | dict) -> "GuvParams":
        obj = json.loads(text) if isinstance(text, str) else text
        return cls(int(obj["s"]), int(obj["h_log"]), int(obj["m_blocks"]), int(obj.get("hash_bits", 0)))


class GuvCondenser:
    """x in {0,1}^n read as f_x of degree < L over GF(2^s), L = ceil(n/s).

    Block i of the output is (f_x^(h^i) mod E)(y) for i = 0..m_blocks, with E
    the smallest monic irreducible of degree L over GF(2^s).
    """

    def __init__(self, n: int, params: GuvParams):
        self.n = n
        self.params = params
        self.field: FieldContext = gf(params.s)
        s = params.s
        self.L = -(-n // s)
        self.E: FieldPoly = find_irreducible(self.L, over=self.field)
        # f -> f^(h^i) mod E is additive, so only unit inputs need powering
        self._unit_images = [
            [poly_mod_pow2k(self._unit_poly(j), params.h_log * i, self.E).coeffs
             for i in range(params.m_blocks + 1)]
            for j in range(n)
        ]

    @property
    def rows(self) -> int:
        return self.params.s * (self.params.m_blocks + 1)

    def _unit_poly(self, j: int) -> FieldPoly:
        s = self.params.s
        coeffs = [0] * (j // s + 1)
        coeffs[j // s] = 1 << (j % s)
        return FieldPoly(self.field, coeffs)

    def poly_of(self, x: int) -> FieldPoly:
        s = self.params.s
        mask = (1 << s) - 1
        return FieldPoly(self.field, [(x >> (s * i)) & mask for i in range(self.L)])

    def evaluate(self, x: int, y: int) -> int:
        """Direct evaluation, block 0 in the low s bits."""
        f = self.poly_of(x)
        out = 0
        for i in range(self.params.m_blocks + 1):
            g = poly_mod_pow2k(f, self.params.h_log * i, self.E)
            out |= g(y) << (self.params.s * i)
        return out

    def matrix(self, y: int) -> BitMatrix:
        s = self.params.s
        columns = []
        for images in self._unit_images:
            col = 0
            for i, coeffs in enumerate(images):
                col |= _horner_int(self.field, coeffs, y) << (s * i)
            columns.append(col)
        return BitMatrix.from_columns(columns, self.rows)


def _horner_int(ctx: FieldContext, coeffs: Sequence[int], y: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.mul(acc, y) ^ c
    return acc


_CONDENSERS: dict[tuple[int, GuvParams], GuvCondenser] = {}


def _condenser(n: int, params: GuvParams) -> GuvCondenser:
    key = (n, params)
    if key not in _CONDENSERS:
        _CONDENSERS[key] = GuvCondenser(n, params)
    return _CONDENSERS[key]


def guv_condenser_matrix(params: GuvParams, y: int, n: int) -> BitMatrix:
    if not 0 <= y < (1 << params.s):
        raise ValueError("y is not an element of GF(2^s)")
    return _condenser(n, params).matrix(y)


@dataclass(frozen=True)
class GuvFingerprinter(LinearFingerprinter):
    """Seed is ``(y, a)``: condenser point and hash multiplier.

    The hash rows are the low ``hash_bits`` bits of ``a*x`` in GF(2^n).  An
    additive offset ``b`` would cancel in every syndrome comparison, so it is
    not part of the seed.
    """

    n: int
    params: GuvParams

    def __post_init__(self):
        if self.params.out_len() > self.n:
            raise ValueError(f"fingerprint length {self.params.out_len()} exceeds n = {self.n}")
        if self.params.hash_bits and self.n > 64:
            raise ValueError("hash augmentation needs n <= 64")

    @property
    def out_len(self) -> int:
        return self.params.out_len()

    @property
    def d(self) -> int:
        return self.params.s + (self.n if self.params.hash_bits else 0)

    def matrix_of(self, rho: tuple[int, int]) -> BitMatrix:
        y, a = rho
        A = _condenser(self.n, self.params).matrix(y)
        if not self.params.hash_bits:
            return A
        F = gf(self.n)
        mask = (1 << self.params.hash_bits) - 1
        cols = [F.mul(a, 1 << j) & mask for j in range(self.n)]
        return A.vstack(BitMatrix.from_columns(cols, self.params.hash_bits))

    def sample_seed(self, rng: np.random.Generator) -> tuple[int, int]:
        y = int(rng.integers(0, 1 << self.params.s, dtype=np.uint64))
        a = int(rng.integers(0, 1 << self.n, dtype=np.uint64)) if self.params.hash_bits else 0
        return (y, a)

    def describe(self) -> dict:
        return {"kind": "guv", "n": self.n, **json.loads(self.params.to_json())}


def guv_fingerprinter(n: int, t: int, epsilon: float, params: GuvParams) -> GuvFingerprinter:
    return GuvFingerprinter(n, params)


def unique_neighbor_rate(fp: LinearFingerprinter, S: SuspectList, seeds: Iterable) -> float:
    """Average fraction of S with an unshared fingerprint."""
    total = 0.0
    count = 0
    for rho in seeds:
        total += float(unique_fingerprint_mask(fp.matrix_of(rho), S).mean())
        count += 1
    return total / count
