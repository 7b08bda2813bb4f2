"""Syndrome codes: codewords are kernel elements of H_rho, decoding inverts the syndrome."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..bitlinalg import BitMatrix, BitVector, NullSpaceBasis, message_of_codeword, null_space, nullspace_codeword
from ..fingerprint import (GuvFingerprinter, GuvParams, InversionError, LinearFingerprinter, SuspectList,
                           invert_matrix, random_linear_fingerprinter, unique_fingerprint_mask)
from .base import CodeInstance, DecodeFailure


class SyndromeCode(CodeInstance):
    scheme = "syndrome"

    def __init__(self, fp: LinearFingerprinter, n: int, t: float, epsilon: float):
        if fp.n != n:
            raise ValueError("fingerprinter length differs from n")
        if fp.out_len > n or n - fp.out_len < 1:
            raise ValueError(f"fingerprint of {fp.out_len} bits leaves no room for a message at n = {n}")
        self.fp = fp
        self.n = n
        self.k = n - fp.out_len
        self.t = t
        self.epsilon = epsilon
        self.d = fp.d
        self._check_bound()
        self._setup = lru_cache(maxsize=256)(self._setup_uncached)

    def _setup_uncached(self, rho) -> tuple[BitMatrix, NullSpaceBasis]:
        H = self.fp.matrix_of(rho)
        return H, null_space(H)

    def encode(self, m: int, rho) -> int:
        self.check_message(m)
        _, basis = self._setup(rho)
        return nullspace_codeword(basis, m, self.k).value

    def decoder_for(self, E: SuspectList):
        if E.n != self.n:
            raise ValueError("noise set length differs from n")

        def decode(x_tilde: int, rho) -> int:
            H, basis = self._setup(rho)
            try:
                e = invert_matrix(H, E, H.apply(x_tilde))
            except InversionError as exc:
                raise DecodeFailure(str(exc)) from exc
            x = x_tilde ^ e
            m = message_of_codeword(basis, BitVector(self.n, x))
            if m >> self.k:
                raise DecodeFailure("recovered word lies outside the message subspace")
            return m

        return decode

    def failure_mask(self, E: SuspectList, rho) -> np.ndarray:
        """For every e in E at once: does decoding fail when e is the noise?

        The code is linear for fixed rho, so the answer does not depend on the message.
        """
        H, _ = self._setup(rho)
        return ~unique_fingerprint_mask(H, E)

    def sample_seed(self, rng: np.random.Generator):
        return self.fp.sample_seed(rng)

    def describe(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "t": self.t, "epsilon": self.epsilon,
                "fingerprinter": self.fp.describe()}


def syndrome_code(fp: LinearFingerprinter, n: int, t: float, epsilon: float) -> SyndromeCode:
    return SyndromeCode(fp, n, t, epsilon)


def random_linear_code(n: int, t: int, epsilon: float) -> SyndromeCode:
    """Rate 1 - t/n - ceil(log2(1/eps))/n."""
    return SyndromeCode(random_linear_fingerprinter(n, t, epsilon), n, t, epsilon)


def guv_code(n: int, t: int, epsilon: float, params: GuvParams) -> SyndromeCode:
    return SyndromeCode(GuvFingerprinter(n, params), n, t, epsilon)
