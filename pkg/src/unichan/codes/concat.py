"""Concatenated codes: Reed-Solomon outside, D short inner codes inside.

The message (S*k_inner bits) is split into S outer symbols, little-endian; the
outer codeword's D symbols are each encoded by an inner code; block i of the
codeword occupies bits [i*n_inner, (i+1)*n_inner).  A failed inner block hands
the outer decoder the symbol 0, which it then treats as an ordinary error.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..channels.graphs import ChannelGraph
from ..fingerprint import SuspectList
from .base import CodeInstance, DecodeFailure
from .hashcode import HammingHashCode
from .reedsolomon import RSCode
from .syndrome import SyndromeCode, random_linear_code

DEFAULT_LABEL = "unichan/concat"


@dataclass(frozen=True)
class ConcatSpec:
    outer: RSCode
    inner: CodeInstance
    inner_seeds: tuple = ()

    @property
    def k_inner(self) -> int:
        return self.outer.k_inner

    @property
    def rate(self) -> float:
        return (self.outer.S * self.k_inner) / (self.outer.D * self.inner.n)


def schedule_seed(label: str, i: int) -> int:
    """Public 128-bit inner seed for block i, derived from (label, i)."""
    entropy = int.from_bytes(hashlib.sha256(label.encode()).digest()[:16], "little")
    words = np.random.SeedSequence(entropy, spawn_key=(i,)).generate_state(2, np.uint64)
    return int(words[0]) | (int(words[1]) << 64)


class _Concat(CodeInstance):
    def __init__(self, inner: CodeInstance, S: int, D: int, epsilon: float):
        self.outer = RSCode(S, D, inner.k)
        self.inner = inner
        self.S, self.D = S, D
        self.n = D * inner.n
        self.k = S * inner.k
        self.t = D * inner.t
        self.epsilon = epsilon

    def _split(self, m: int) -> list[int]:
        kin = self.inner.k
        mask = (1 << kin) - 1
        return [(m >> (kin * i)) & mask for i in range(self.S)]

    def _join(self, symbols: Sequence[int]) -> int:
        kin = self.inner.k
        m = 0
        for i, s in enumerate(symbols):
            m |= s << (kin * i)
        return m

    def blocks(self, x: int) -> list[int]:
        nin = self.inner.n
        mask = (1 << nin) - 1
        return [(x >> (nin * i)) & mask for i in range(self.D)]

    def join_blocks(self, blocks: Sequence[int]) -> int:
        nin = self.inner.n
        x = 0
        for i, b in enumerate(blocks):
            x |= b << (nin * i)
        return x

    def _symbol_to_inner(self, s: int) -> int:
        return s

    def _inner_to_symbol(self, m: int) -> int:
        return m

    def _inner_seeds(self, rho) -> Sequence:
        raise NotImplementedError

    def encode(self, m: int, rho=None) -> int:
        self.check_message(m)
        seeds = self._inner_seeds(rho)
        outer = self.outer.encode(self._split(m))
        return self.join_blocks(self.inner.encode(self._symbol_to_inner(s), r)
                                for s, r in zip(outer, seeds))

    def _decode_with(self, decoders: Sequence, x_tilde: int, rho) -> tuple[int, int]:
        seeds = self._inner_seeds(rho)
        symbols = []
        failed = 0
        for dec, y, r in zip(decoders, self.blocks(x_tilde), seeds):
            try:
                symbols.append(self._inner_to_symbol(dec(y, r)))
            except DecodeFailure:
                symbols.append(0)
                failed += 1
        return self._join(self.outer.decode(symbols)), failed


class ConcatMemoryless(_Concat):
    """No shared randomness: inner seeds follow the public schedule (label, i)."""

    scheme = "concat-memoryless"

    def __init__(self, inner: SyndromeCode, S: int, D: int, epsilon: float = 0.01,
                 label: str = DEFAULT_LABEL):
        super().__init__(inner, S, D, epsilon)
        self.label = label
        self.d = 0
        self.seeds = tuple(schedule_seed(label, i) for i in range(D))
        self.spec = ConcatSpec(self.outer, inner, self.seeds)
        self._check_bound()

    def _inner_seeds(self, rho) -> Sequence:
        return self.seeds

    def decoder_for(self, E: SuspectList, with_stats: bool = False):
        inner_decode = self.inner.decoder_for(E)
        decoders = [inner_decode] * self.D

        def decode(x_tilde: int, rho=None):
            m, failed = self._decode_with(decoders, x_tilde, rho)
            return (m, failed) if with_stats else m

        return decode

    def sample_seed(self, rng: np.random.Generator):
        return None

    def describe(self) -> dict:
        return {"scheme": self.scheme, "inner": self.inner.describe(), "S": self.S, "D": self.D,
                "epsilon": self.epsilon, "label": self.label}


class ConcatPiecewise(_Concat):
    """Shared randomness is one (a_i, b_i) pair per block: 2*n_inner*D bits."""

    scheme = "concat-piecewise"

    def __init__(self, inner: HammingHashCode, S: int, D: int, epsilon: float = 0.02):
        # outer symbols are k-bit; the hash code numbers its messages from 1
        super().__init__(inner, S, D, epsilon)
        self.d = inner.d * D
        self.spec = ConcatSpec(self.outer, inner)
        self._check_bound()

    def _symbol_to_inner(self, s: int) -> int:
        return s + 1

    def _inner_to_symbol(self, m: int) -> int:
        return m - 1

    def _inner_seeds(self, rho) -> Sequence:
        if rho is None or len(rho) != self.D:
            raise ValueError(f"need {self.D} inner seeds")
        return rho

    def decoder_for(self, graphs: ChannelGraph | Sequence[ChannelGraph], with_stats: bool = False):
        if isinstance(graphs, ChannelGraph):
            graphs = [graphs] * self.D
        if len(graphs) != self.D:
            raise ValueError(f"need {self.D} block graphs")
        cache: dict[int, object] = {}
        decoders = [cache.setdefault(id(g), self.inner.decoder_for(g)) for g in graphs]

        def decode(x_tilde: int, rho):
            m, failed = self._decode_with(decoders, x_tilde, rho)
            return (m, failed) if with_stats else m

        return decode

    def sample_seed(self, rng: np.random.Generator) -> tuple:
        return tuple(self.inner.sample_seed(rng) for _ in range(self.D))

    def describe(self) -> dict:
        return {"scheme": self.scheme, "inner": self.inner.describe(), "S": self.S, "D": self.D,
                "epsilon": self.epsilon}


def concat_code_memoryless(inner_params: dict, outer_params: dict) -> ConcatMemoryless:
    inner = random_linear_code(int(inner_params["n"]), int(inner_params["t"]), float(inner_params["epsilon"]))
    return ConcatMemoryless(inner, int(outer_params["S"]), int(outer_params["D"]),
                            float(outer_params.get("epsilon", 0.01)),
                            str(outer_params.get("label", DEFAULT_LABEL)))


def concat_code_piecewise(inner_params: dict, outer_params: dict) -> ConcatPiecewise:
    inner = HammingHashCode(int(inner_params["n"]), int(inner_params["t"]), float(inner_params["epsilon"]))
    return ConcatPiecewise(inner, int(outer_params["S"]), int(outer_params["D"]),
                           float(outer_params.get("epsilon", 0.02)))
