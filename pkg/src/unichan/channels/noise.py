"""Oblivious channels: explicit noise sets and the ways a noise vector is picked."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..bitlinalg import BitVector, DimensionError, span
from ..fingerprint import SuspectList

MAX_SET_SIZE = 1 << 26


@dataclass(frozen=True)
class NoiseSet(SuspectList):
    """A set E of noise vectors; its noise level is t = ceil(log2 |E|)."""

    @property
    def t(self) -> int:
        return math.ceil(math.log2(len(self.elements))) if len(self.elements) > 1 else 0

    @property
    def size(self) -> int:
        return len(self.elements)

    def describe(self) -> dict:
        return {"n": self.n, "size": self.size, "t": self.t}


def _guard(count: int) -> None:
    if count > MAX_SET_SIZE:
        raise ValueError(f"noise set of {count} elements exceeds the 2^26 limit")


def ball_offsets(n: int, w: int) -> list[int]:
    """All vectors of weight <= w, ordered by weight then by support."""
    if not 0 <= w <= n:
        raise ValueError(f"radius {w} outside 0..{n}")
    _guard(sum(math.comb(n, i) for i in range(w + 1)))
    out = []
    for weight in range(w + 1):
        for support in itertools.combinations(range(n), weight):
            out.append(sum(1 << i for i in support))
    return out


def hamming_ball(n: int, w: int) -> NoiseSet:
    return NoiseSet(n, tuple(ball_offsets(n, w)))


def burst(n: int, length: int) -> NoiseSet:
    if not 1 <= length <= n:
        raise ValueError(f"burst length {length} outside 1..{n}")
    _guard((n - length + 1) << length)
    seen = {}
    for start in range(n - length + 1):
        for pattern in range(1 << length):
            seen.setdefault(pattern << start, None)
    return NoiseSet(n, tuple(sorted(seen)))


def random_subset(n: int, size: int, seed: int, include_zero: bool = True) -> NoiseSet:
    if size < 1:
        raise ValueError("size must be at least 1")
    if size > (1 << n):
        raise ValueError(f"cannot draw {size} distinct vectors of {n} bits")
    _guard(size)
    rng = np.random.default_rng(seed)
    chosen: dict[int, None] = {0: None} if include_zero else {}
    words = (n + 63) // 64
    mask = (1 << n) - 1
    while len(chosen) < size:
        raw = rng.integers(0, 1 << 64, size=words, dtype=np.uint64, endpoint=False)
        v = 0
        for i, w in enumerate(raw):
            v |= int(w) << (64 * i)
        chosen.setdefault(v & mask, None)
    return NoiseSet(n, tuple(chosen))


def span_set(n: int, vectors: Sequence[int]) -> NoiseSet:
    if len(vectors) > 26:
        raise ValueError("span of more than 26 vectors exceeds the 2^26 limit")
    return NoiseSet(n, tuple(span(vectors)))


def noise_set_family(kind: str, n: int, **params) -> NoiseSet:
    """Build a named noise-set family; ``kind`` uses the JSON spelling."""
    if kind == "hamming-ball":
        return hamming_ball(n, int(params["w"]))
    if kind == "burst":
        return burst(n, int(params.get("len", params.get("length"))))
    if kind == "random-subset":
        return random_subset(n, int(params["size"]), int(params.get("seed", 0)),
                             bool(params.get("include_zero", True)))
    if kind == "span":
        vecs = [_parse_vec(v, n) for v in params["vectors"]]
        return span_set(n, vecs)
    raise ValueError(f"unknown noise-set kind {kind!r}")


def _parse_vec(v, n: int) -> int:
    if isinstance(v, int):
        return v
    bv = BitVector.from_hex(v)
    if bv.n != n:
        raise DimensionError("span vector length mismatch")
    return bv.value


def noise_set_from_json(obj: dict) -> NoiseSet:
    params = {k: v for k, v in obj.items() if k not in ("kind", "n")}
    return noise_set_family(obj["kind"], int(obj["n"]), **params)


# ---------------------------------------------------------------- picking e

@dataclass(frozen=True)
class PickIndex:
    index: int


@dataclass(frozen=True)
class PickUniform:
    seed: int


@dataclass(frozen=True)
class PickWorst:
    """Choose the e with the most decoder failures on a seed sample fixed in advance.

    ``failures(e)`` must only look at seeds chosen before the evaluation seeds,
    so e stays independent of the randomness it is later tested against.
    """
    failures: Callable[[int], int]


def choose_noise(E: NoiseSet, pick) -> int:
    if isinstance(pick, PickIndex):
        return E.elements[pick.index]
    if isinstance(pick, PickUniform):
        rng = np.random.default_rng(pick.seed)
        return E.elements[int(rng.integers(len(E)))]
    if isinstance(pick, PickWorst):
        best, best_score = E.elements[0], -1
        for e in E.elements:
            score = pick.failures(e)
            if score > best_score:
                best, best_score = e, score
        return best
    raise TypeError(f"unknown pick strategy {pick!r}")


def oblivious_transmit(x: BitVector, E: NoiseSet, pick) -> BitVector:
    if x.n != E.n:
        raise DimensionError(f"codeword has {x.n} bits, noise set {E.n}")
    return BitVector(x.n, x.value ^ choose_noise(E, pick))
