"""Block channels: a word of D blocks, distorted block by block."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..bitlinalg import BitVector, DimensionError
from .graphs import ChannelFunction, ChannelGraph
from .noise import NoiseSet

MEMORYLESS = "memoryless-random"
PIECEWISE = "piecewise-adversarial"


@dataclass(frozen=True)
class BlockChannelSpec:
    D: int
    mode: str
    noise: NoiseSet | None = None
    graphs: tuple[ChannelGraph, ...] = ()
    functions: tuple[ChannelFunction, ...] = ()

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("need at least one block")
        if self.mode == MEMORYLESS:
            if self.noise is None:
                raise ValueError("memoryless mode needs a noise set")
        elif self.mode == PIECEWISE:
            object.__setattr__(self, "graphs", tuple(self.graphs))
            object.__setattr__(self, "functions", tuple(self.functions))
            if len(self.functions) != self.D:
                raise ValueError("piecewise mode needs one channel function per block")
            if self.graphs and len(self.graphs) != self.D:
                raise ValueError("piecewise mode needs one graph per block")
            ns = {g.n for g in self.graphs}
            if len(ns) > 1:
                raise DimensionError("blocks must share one length")
        else:
            raise ValueError(f"unknown block mode {self.mode!r}")


def memoryless_noise(spec: BlockChannelSpec, rng: np.random.Generator) -> list[int]:
    idx = rng.integers(0, len(spec.noise), size=spec.D)
    return [spec.noise.elements[int(i)] for i in idx]


def block_transmit(xs: Sequence[BitVector], spec: BlockChannelSpec, seed) -> list[BitVector]:
    if len(xs) != spec.D:
        raise DimensionError(f"expected {spec.D} blocks, got {len(xs)}")
    if spec.mode == MEMORYLESS:
        if any(x.n != spec.noise.n for x in xs):
            raise DimensionError("block length does not match the noise set")
        errs = memoryless_noise(spec, np.random.default_rng(seed))
        return [BitVector(x.n, x.value ^ e) for x, e in zip(xs, errs)]
    return [BitVector(x.n, ch(x.value)) for x, ch in zip(xs, spec.functions)]
