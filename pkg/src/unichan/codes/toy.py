"""Toy random code with a decoder that ignores the seed and searches greedily.

Enc_rho(m) is an independent uniform n-bit word for each (m, rho) in
[M] x [R].  The decoder returns m' from the first triple (rho', m', e') in
lexicographic order with Enc_rho'(m') + e' equal to the received word.
Only meant for n <= 20, k <= 4, t <= 6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..fingerprint import SuspectList
from .base import CodeInstance, DecodeFailure


@dataclass(frozen=True)
class OverlapReport:
    worst: int
    limit: float
    per_pair: dict

    @property
    def ok(self) -> bool:
        return self.worst <= self.limit


class RandomToyCode(CodeInstance):
    scheme = "random-toy"

    def __init__(self, n: int, t: int, k: int, epsilon: float, R: int = 64, seed: int = 0):
        if n > 20 or k > 4 or t > 6:
            raise ValueError("toy scale only: n <= 20, k <= 4, t <= 6")
        self.n, self.t, self.k, self.epsilon = n, t, k, epsilon
        self.R = R
        self.seed = seed
        self.d = max(0, (R - 1).bit_length())
        rng = np.random.default_rng(seed)
        rows = []
        while len(rows) < R:
            row = rng.integers(0, 1 << n, size=1 << k, dtype=np.int64)
            if len(set(row.tolist())) == len(row):  # keep Enc_rho injective
                rows.append(row)
        self.table = np.array(rows)
        self._check_bound()

    def encode(self, m: int, rho: int) -> int:
        self.check_message(m)
        return int(self.table[rho, m])

    def decoder_for(self, E: SuspectList):
        first: dict[int, int] = {}
        M = 1 << self.k
        for rho in range(self.R):
            for m in range(M):
                c = int(self.table[rho, m])
                for e in E.elements:
                    first.setdefault(c ^ e, m)

        def decode(x_tilde: int, rho=None) -> int:
            try:
                return first[x_tilde]
            except KeyError:
                raise DecodeFailure("no (rho', m', e') explains the received word") from None

        return decode

    def overlap(self, E: SuspectList) -> OverlapReport:
        """#{rho : Enc_rho(m) + e in Enc_R(M - {m}) + E} for every (m, e), against eps*R."""
        M = 1 << self.k
        per_pair = {}
        for m in range(M):
            others = {int(self.table[r, m2]) ^ e2
                      for r in range(self.R) for m2 in range(M) if m2 != m for e2 in E.elements}
            for e in E.elements:
                per_pair[(m, e)] = sum(1 for r in range(self.R) if int(self.table[r, m]) ^ e in others)
        return OverlapReport(max(per_pair.values()), self.epsilon * self.R, per_pair)

    def calibrated_epsilon(self, E_size: int) -> float:
        """eps at which N = 2 R M T / eps for this (n, R, M, T)."""
        return 2 * self.R * (1 << self.k) * E_size / (1 << self.n)

    def sample_seed(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.R))

    def describe(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "t": self.t, "k": self.k, "epsilon": self.epsilon,
                "R": self.R, "seed": self.seed}


def random_code_no_shared(n: int, t: int, k: int, epsilon: float, seed: int = 0, R: int = 64) -> RandomToyCode:
    return RandomToyCode(n, t, k, epsilon, R, seed)
