"""Hamming channels as bipartite-graph oracles, plus channel functions on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .noise import ball_offsets


class ChannelGraph:
    """Oracle interface: ``neighbors(x)`` and ``left_neighbors(y)`` as ordered lists."""

    n: int
    n_tilde: int
    T: int

    def neighbors(self, x: int) -> list[int]:
        raise NotImplementedError

    def left_neighbors(self, y: int) -> list[int]:
        raise NotImplementedError

    def audit(self, lefts: Iterable[int], rights: Iterable[int]) -> bool:
        """Degree audit on sampled nodes, plus consistency of the two oracles."""
        for x in lefts:
            nb = self.neighbors(x)
            if not nb:
                return False
            if any(x not in self.left_neighbors(y) for y in nb):
                return False
        for y in rights:
            if len(self.left_neighbors(y)) > self.T:
                return False
        return True


@dataclass(frozen=True)
class BallGraph(ChannelGraph):
    n: int
    w: int
    offsets: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if not self.offsets:
            object.__setattr__(self, "offsets", tuple(ball_offsets(self.n, self.w)))

    @property
    def n_tilde(self) -> int:
        return self.n

    @property
    def T(self) -> int:
        return len(self.offsets)

    def neighbors(self, x: int) -> list[int]:
        return [x ^ o for o in self.offsets]

    left_neighbors = neighbors

    def describe(self) -> dict:
        return {"kind": "hamming-ball", "n": self.n, "w": self.w}


def hamming_ball_graph(n: int, w: int) -> BallGraph:
    return BallGraph(n, w)


@dataclass(frozen=True)
class ExplicitGraph(ChannelGraph):
    """Finite graph on left nodes 0..N-1 given by adjacency lists."""

    N: int
    adjacency: tuple[tuple[int, ...], ...]
    T: int = 0
    _right: Mapping[int, tuple[int, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.adjacency) != self.N:
            raise ValueError("need one adjacency list per left node")
        right: dict[int, list[int]] = {}
        for x, ys in enumerate(self.adjacency):
            for y in ys:
                right.setdefault(y, []).append(x)
        object.__setattr__(self, "_right", {y: tuple(xs) for y, xs in right.items()})
        if not self.T:
            object.__setattr__(self, "T", max((len(v) for v in right.values()), default=0))

    @property
    def n(self) -> int:
        return max(1, (self.N - 1).bit_length())

    n_tilde = n

    def neighbors(self, x: int) -> list[int]:
        return list(self.adjacency[x])

    def left_neighbors(self, y: int) -> list[int]:
        return list(self._right.get(y, ()))

    def max_left_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def max_right_degree(self) -> int:
        return max((len(v) for v in self._right.values()), default=0)


@dataclass(frozen=True)
class ChannelFunction:
    """Maps a left node to one of its neighbours.

    Strategies: ``fixed-index`` takes neighbour number ``index``;
    ``random`` draws the neighbour from a generator keyed by (seed, x);
    ``adversarial-bruteforce`` is a fixed index picked by ``adversarial_channel_function``.
    """

    graph: ChannelGraph
    strategy: str = "fixed-index"
    index: int = 0
    seed: int = 0

    def __call__(self, x: int) -> int:
        nb = self.graph.neighbors(x)
        if self.strategy in ("fixed-index", "adversarial-bruteforce"):
            return nb[self.index % len(nb)]
        if self.strategy == "random":
            rng = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(x,)))
            return nb[int(rng.integers(len(nb)))]
        raise ValueError(f"unknown channel-function strategy {self.strategy!r}")


def adversarial_channel_function(graph: ChannelGraph, failures: Callable[[int], int],
                                 candidates: Sequence[int] | None = None) -> ChannelFunction:
    """Brute force over neighbour indices, keeping the one with most decoder failures.

    ``failures(j)`` scores the channel function "take neighbour j" against the
    decoder on seeds drawn before the evaluation run.  For ball graphs every
    channel function is a per-word choice of offset, and when the codeword is
    uniform given the message (as for the hash code) the best such choice is
    one fixed offset, so this search is exact over the enumerated offsets.
    """
    if candidates is None:
        candidates = range(graph.T)
    best, best_score = 0, -1
    for j in candidates:
        score = failures(j)
        if score > best_score:
            best, best_score = j, score
    return ChannelFunction(graph, "adversarial-bruteforce", best)


def graph_from_json(obj: dict) -> ChannelGraph:
    if obj.get("kind") == "hamming-ball":
        return hamming_ball_graph(int(obj["n"]), int(obj["w"]))
    raise ValueError(f"unknown graph kind {obj.get('kind')!r}")
