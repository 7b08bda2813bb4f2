"""Shared pieces of every code: the instance interface, typed failures, the rate bound."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..bitlinalg import BitVector


class DecodeFailure(Exception):
    """The decoder could not single out a message.  Never replaced by a guess."""


class RateBoundViolation(ValueError):
    pass


def rate_bound(n: int, t: float, epsilon: float) -> float:
    """Largest admissible k/n: 1 - t/n + (1 + log2(1/(1-eps)))/n."""
    return 1 - t / n + (1 + math.log2(1 / (1 - epsilon))) / n


def assert_rate_bound(n: int, k: int, t: float, epsilon: float) -> None:
    limit = n - t + 1 + math.log2(1 / (1 - epsilon))
    if k > limit + 1e-9:
        raise RateBoundViolation(f"k = {k} exceeds n - t + 1 + log2(1/(1-eps)) = {limit:.4f}")


Decoder = Callable[[int, object], int]


class CodeInstance:
    """(n, k, t, epsilon, d) plus encoder and per-channel decoders.

    ``encode(m, rho)`` returns the codeword as an int of ``n`` bits.
    ``decoder_for(channel)`` returns ``decode(x_tilde, rho) -> m`` which raises
    ``DecodeFailure`` instead of guessing.
    """

    scheme: str
    n: int
    k: int
    t: float
    epsilon: float
    d: int

    def _check_bound(self) -> None:
        assert_rate_bound(self.n, self.k, self.t, self.epsilon)

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def message_range(self) -> tuple[int, int]:
        """Inclusive range of valid messages."""
        return 0, (1 << self.k) - 1

    def messages(self) -> range:
        lo, hi = self.message_range
        return range(lo, hi + 1)

    def random_message(self, rng: np.random.Generator) -> int:
        lo, hi = self.message_range
        size = hi - lo + 1
        # eight spare bytes make the modulo bias negligible; powers of two are exact
        raw = int.from_bytes(rng.bytes((size.bit_length() + 7) // 8 + 8), "little")
        return lo + raw % size

    def check_message(self, m: int) -> None:
        lo, hi = self.message_range
        if not lo <= m <= hi:
            raise ValueError(f"message {m} outside {lo}..{hi}")

    def encode(self, m: int, rho) -> int:
        raise NotImplementedError

    def encode_vec(self, m: int, rho) -> BitVector:
        return BitVector(self.n, self.encode(m, rho))

    def decoder_for(self, channel) -> Decoder:
        raise NotImplementedError

    def sample_seed(self, rng: np.random.Generator):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def summary(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "k": self.k, "t": self.t,
                "epsilon": self.epsilon, "d": self.d, "rate": self.rate}
