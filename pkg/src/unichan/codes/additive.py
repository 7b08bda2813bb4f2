"""Masking wrapper: shift every codeword by a shared uniform z.

With z uniform the transmitted word is uniform whatever rho is, so a channel
that sees it and then adds some e from E learns nothing about rho.
"""

from __future__ import annotations

import numpy as np

from .base import CodeInstance


class AdditiveWrap(CodeInstance):
    scheme = "additive"

    def __init__(self, inner: CodeInstance):
        self.inner = inner
        self.n, self.k, self.t, self.epsilon = inner.n, inner.k, inner.t, inner.epsilon
        self.d = inner.d + inner.n
        self._check_bound()

    @property
    def message_range(self) -> tuple[int, int]:
        return self.inner.message_range

    def encode(self, m: int, rho) -> int:
        inner_rho, z = rho
        return self.inner.encode(m, inner_rho) ^ z

    def decoder_for(self, channel):
        inner_decode = self.inner.decoder_for(channel)

        def decode(x_tilde: int, rho) -> int:
            inner_rho, z = rho
            return inner_decode(x_tilde ^ z, inner_rho)

        return decode

    def sample_seed(self, rng: np.random.Generator):
        inner_rho = self.inner.sample_seed(rng)
        raw = int.from_bytes(rng.bytes((self.n + 7) // 8), "little")
        return inner_rho, raw & ((1 << self.n) - 1)

    def describe(self) -> dict:
        return {"scheme": self.scheme, "inner": self.inner.describe()}


def additive_hamming_wrap(inner: CodeInstance) -> AdditiveWrap:
    return AdditiveWrap(inner)
