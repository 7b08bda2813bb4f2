"""Executable lower-bound adversaries against codes with little shared randomness.

Both attacks work on two messages ``a`` and ``b`` and enumerate every seed, so
their verdicts are exact rather than sampled.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..bitlinalg import BitVector
from .graphs import ChannelFunction, ExplicitGraph
from .noise import NoiseSet, span_set

MAX_EXHAUSTIVE_D = 20


# ---------------------------------------------------------------- oblivious scenario

@dataclass
class ObliviousAttackReport:
    E: NoiseSet
    message: int
    noise: int
    successes: int
    D: int
    exhaustive: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def failure(self) -> Fraction:
        return Fraction(self.D - self.successes, self.D)

    @property
    def confirmed(self) -> bool:
        return self.failure >= Fraction(1, 2)

    def to_json(self) -> dict:
        return {
            "attack": "oblivious",
            "D": self.D,
            "span_size": len(self.E),
            "message": self.message,
            "noise": BitVector(self.E.n, self.noise).to_hex(),
            "failure": float(self.failure),
            "failure_exact": str(self.failure),
            "exhaustive": self.exhaustive,
            "confirmed": self.confirmed,
            "warnings": self.warnings,
        }


def _span_table(vs: Sequence[int]) -> list[int]:
    """Entry c is the combination of vs selected by the bits of c."""
    table = [0]
    for v in vs:
        table = table + [e ^ v for e in table]
    return table


def _decode_all(decode, decode_many, words, rho):
    if decode_many is not None:
        return np.asarray(decode_many(np.asarray(words, dtype=np.uint64), rho))
    out = []
    for w in words:
        try:
            out.append(decode(int(w), rho))
        except Exception:
            out.append(None)
    return np.array(out, dtype=object)


def lb_attack_oblivious(encode: Callable[[int, object], int], messages: tuple[int, int],
                        seeds: Sequence, n: int, decode: Callable[[int, object], int] | None = None,
                        decode_many: Callable[[np.ndarray, object], np.ndarray] | None = None,
                        decoder_for: Callable[[NoiseSet], Callable] | None = None,
                        samples: int = 4096, rng_seed: int = 0) -> ObliviousAttackReport:
    """Span attack: E = span{Enc_i(a) + Enc_i(b)} over all D seeds.

    For each selector c the noise is e_c = sum c_i v_i.  Under seed i the words
    Enc_i(a)+e_c and Enc_i(b)+e_{c+u_i} coincide, so the decoder is right on
    at most one of them; averaging, some (m, c) fails on at least half the seeds.
    The search returns the worst (m, c) found.  ``decode`` returns a message or
    raises; ``decode_many`` is an optional vectorised form returning -1 on failure.
    ``decoder_for(E)`` builds the decoder once the span E is known, for
    decoders that are allowed to depend on the channel.
    """
    a, b = messages
    D = len(seeds)
    cw = {m: [encode(m, rho) for rho in seeds] for m in messages}
    vs = [cw[a][i] ^ cw[b][i] for i in range(D)]
    E = span_set(n, vs)
    if decoder_for is not None:
        decode = decoder_for(E)
    if decode is None and decode_many is None:
        raise ValueError("need a decoder to attack")
    warnings = []
    exhaustive = D <= MAX_EXHAUSTIVE_D
    if exhaustive:
        noises = _span_table(vs)
    else:
        warnings.append(f"D = {D} > {MAX_EXHAUSTIVE_D}: sampled {samples} selectors instead of all 2^D")
        gen = np.random.default_rng(rng_seed)
        selectors = [int.from_bytes(gen.bytes((D + 7) // 8), "little") & ((1 << D) - 1)
                     for _ in range(samples)]
        noises = [_combine(vs, c) for c in selectors]
    noise_arr = np.array(noises, dtype=np.uint64) if n <= 64 else None
    succ = {}
    for m in messages:
        counts = np.zeros(len(noises), dtype=np.int64)
        for i, rho in enumerate(seeds):
            words = [cw[m][i] ^ e for e in noises] if noise_arr is None else noise_arr ^ np.uint64(cw[m][i])
            got = _decode_all(decode, decode_many, words, rho)
            counts += np.array([g == m for g in got], dtype=bool)
        succ[m] = counts
    best_m, best_j = min(((m, int(np.argmin(succ[m]))) for m in messages), key=lambda p: succ[p[0]][p[1]])
    e = noises[best_j]
    return ObliviousAttackReport(E, best_m, int(e), int(succ[best_m][best_j]), D, exhaustive, warnings)


def _combine(vs: Sequence[int], c: int) -> int:
    e = 0
    for i, v in enumerate(vs):
        if (c >> i) & 1:
            e ^= v
    return e


# ---------------------------------------------------------------- Hamming scenario

@dataclass
class HammingAttackReport:
    case: int
    graph: ExplicitGraph
    channel: ChannelFunction
    hits: int
    seeds: int
    T: int
    pointers: tuple[int, ...] = ()

    @property
    def probability(self) -> Fraction:
        return Fraction(self.hits, self.seeds)

    @property
    def degrees_ok(self) -> bool:
        return (self.graph.max_left_degree() <= 2 * self.T
                and self.graph.max_right_degree() <= 2 * self.T)

    @property
    def confirmed(self) -> bool:
        return self.probability >= Fraction(1, 3) and self.degrees_ok

    def to_json(self) -> dict:
        return {
            "attack": "hamming",
            "case": self.case,
            "T": self.T,
            "seeds": self.seeds,
            "common_neighbor_probability": float(self.probability),
            "common_neighbor_exact": str(self.probability),
            "max_left_degree": self.graph.max_left_degree(),
            "max_right_degree": self.graph.max_right_degree(),
            "pointers": list(self.pointers),
            "confirmed": self.confirmed,
        }


def lb_attack_hamming(encode: Callable[[int, int], int], T: int, N: int,
                      messages: tuple[int, int] = (0, 1)) -> HammingAttackReport:
    """Graph on [N] x [N] with degrees <= 2T on which Enc(a, rho) and Enc(b, rho)
    share a right neighbour for at least a third of the T^2 seeds.

    Count matrix M[x, y] = #{rho : Enc(a, rho) = x, Enc(b, rho) = y}; rows and
    columns of weight >= T are heavy.  Heavy columns carrying a third of the
    mass are handled by swapping a and b, heavy rows by pointers, and the rest
    by connecting left u to right v when u = v or M[v, u] > 0.
    """
    if N < 2 * T:
        raise ValueError(f"need N >= 2T, got N = {N}, T = {T}")
    R = T * T
    a, b = messages
    xs = [encode(a, r) for r in range(R)]
    ys = [encode(b, r) for r in range(R)]
    if any(not 0 <= v < N for v in xs + ys):
        raise ValueError("encoder output outside [N]")
    M = Counter(zip(xs, ys))
    rw, cw = Counter(xs), Counter(ys)
    heavy_rows = {x for x, w in rw.items() if w >= T}
    heavy_cols = {y for y, w in cw.items() if w >= T}
    col_mass = sum(cw[y] for y in heavy_cols)
    row_mass = sum(rw[x] for x in heavy_rows)

    pointers: tuple[int, ...] = ()
    if 3 * col_mass >= R:
        case = 1
        adjacency, pointers = _pointer_graph(Counter(zip(ys, xs)), heavy_cols, T, N)
    elif 3 * row_mass >= R:
        case = 2
        adjacency, pointers = _pointer_graph(M, heavy_rows, T, N)
    else:
        case = 3
        adjacency = _light_graph(M, heavy_rows, heavy_cols, N)
    graph = ExplicitGraph(N, adjacency)
    hits = sum(1 for x, y in zip(xs, ys) if set(adjacency[x]) & set(adjacency[y]))
    return HammingAttackReport(case, graph, ChannelFunction(graph, "fixed-index", 0), hits, R, T, pointers)


def _pointer_graph(M: Counter, heavy_rows: set[int], T: int, N: int):
    nonzero_cols = sorted({y for (x, y), c in M.items() if x in heavy_rows and c > 0})
    pointers = tuple([v for v in range(N) if v not in heavy_rows][:T])
    pointer_of = {y: pointers[j % T] for j, y in enumerate(nonzero_cols)}
    pset = set(pointers)
    fallback = next(v for v in range(N) if v not in pset)
    adjacency = []
    for x in range(N):
        nbrs = []
        if x in pointer_of:
            nbrs.append(pointer_of[x])
        if x in heavy_rows:
            nbrs += [p for p in pointers if p not in nbrs]
        if not nbrs:
            # every left node needs a neighbour; these extra edges stay off the pointers
            nbrs = [x if x not in pset else fallback]
        adjacency.append(tuple(nbrs))
    return tuple(adjacency), pointers


def _light_graph(M: Counter, heavy_rows: set[int], heavy_cols: set[int], N: int):
    adjacency = [[u] for u in range(N)]
    for (v, u), c in sorted(M.items()):
        if c > 0 and v not in heavy_rows and u not in heavy_cols and u != v:
            adjacency[u].append(v)
    return tuple(tuple(a) for a in adjacency)
