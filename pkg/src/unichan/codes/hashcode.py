"""Hamming-channel code from the pairwise-independent family h_{a,b}(m) = a*m + b."""

from __future__ import annotations

import numpy as np

from ..channels.graphs import ChannelGraph
from ..finitefield import gf
from ..fingerprint import log2_inv
from .base import CodeInstance, DecodeFailure


class HammingHashCode(CodeInstance):
    """Messages 1..K (K = 2^k) embedded in GF(2^n) bit for bit; rho = (a, b)."""

    scheme = "hash"

    def __init__(self, n: int, t: int, epsilon: float):
        if n > 64:
            raise ValueError("field size is capped at 2^64")
        c = log2_inv(epsilon)
        if 2.0 ** -c != epsilon:
            raise ValueError(f"epsilon must be a power of two, got {epsilon}")
        k = n - t - c
        if k < 1:
            raise ValueError(f"n - t - log2(1/eps) = {k} leaves no message bits")
        self.n, self.k, self.t, self.epsilon = n, k, t, epsilon
        self.d = 2 * n
        self.field = gf(n)
        self._check_bound()

    @property
    def K(self) -> int:
        return 1 << self.k

    @property
    def message_range(self) -> tuple[int, int]:
        return 1, self.K

    def encode(self, m: int, rho: tuple[int, int]) -> int:
        self.check_message(m)
        a, b = rho
        return self.field.mul(a, m) ^ b

    def candidates(self, x_tilde: int, rho: tuple[int, int], graph: ChannelGraph) -> list[int]:
        """Messages whose codeword is a left neighbour of x_tilde, with multiplicity."""
        a, b = rho
        lefts = graph.left_neighbors(x_tilde)
        if a == 0:
            return list(range(1, self.K + 1)) if b in lefts else []
        a_inv = self.field.inv(a)
        mul = self.field.mul
        K = self.K
        out = []
        for z in lefts:
            m = mul(z ^ b, a_inv)
            if 1 <= m <= K:
                out.append(m)
        return out

    def decoder_for(self, graph: ChannelGraph):
        if graph.n != self.n:
            raise ValueError("graph length differs from n")

        def decode(x_tilde: int, rho) -> int:
            found = self.candidates(x_tilde, rho, graph)
            if len(found) != 1:
                raise DecodeFailure(f"{len(found)} candidate messages")
            return found[0]

        return decode

    def sample_seed(self, rng: np.random.Generator) -> tuple[int, int]:
        a, b = rng.integers(0, 1 << self.n, size=2, dtype=np.uint64)
        return int(a), int(b)

    def describe(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "t": self.t, "epsilon": self.epsilon}


def hamming_hash_code(n: int, t: int, epsilon: float) -> HammingHashCode:
    return HammingHashCode(n, t, epsilon)
