import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unichan.bitlinalg import BitVector, DimensionError
from unichan.channels import (MEMORYLESS, PIECEWISE, BlockChannelSpec, ChannelFunction, ExplicitGraph,
                              PickIndex, PickUniform, PickWorst, block_transmit, choose_noise, hamming_ball,
                              hamming_ball_graph, lb_attack_hamming, lb_attack_oblivious, noise_set_family,
                              oblivious_transmit)
from unichan.channels.graphs import adversarial_channel_function, graph_from_json
from unichan.channels.noise import ball_offsets, burst, noise_set_from_json, random_subset, span_set


def test_ball_sizes_and_order():
    E = hamming_ball(10, 2)
    assert E.size == 1 + 10 + 45
    assert E.elements[:3] == (0, 1, 2)
    assert [bin(e).count("1") for e in E.elements] == sorted(bin(e).count("1") for e in E.elements)
    assert E.t == math.ceil(math.log2(56))


def test_burst_family():
    E = burst(8, 3)
    for e in E.elements:
        if e:
            low = (e & -e).bit_length() - 1
            assert e.bit_length() - low <= 3
    assert 0 in E and 0b111 << 5 in E and 0b1001 not in E


def test_random_subset_reproducible_with_zero_first():
    a = random_subset(20, 100, seed=4)
    assert a == random_subset(20, 100, seed=4)
    assert a.elements[0] == 0 and a.size == 100
    assert 0 not in random_subset(20, 100, seed=4, include_zero=False)
    with pytest.raises(ValueError):
        random_subset(3, 9, seed=0)


def test_span_family_from_hex():
    E = noise_set_family("span", 8, vectors=["8:03", "8:05"])
    assert E.elements == (0, 3, 5, 6)
    assert span_set(8, [1, 1, 2]).size == 4


def test_family_errors_and_json():
    with pytest.raises(ValueError):
        noise_set_family("gaussian", 8)
    with pytest.raises(ValueError):
        ball_offsets(40, 10)               # more than 2^26 elements
    E = noise_set_from_json({"kind": "hamming-ball", "n": 6, "w": 1})
    assert E.size == 7


def test_pick_strategies():
    E = hamming_ball(6, 1)
    assert choose_noise(E, PickIndex(3)) == 4
    assert choose_noise(E, PickUniform(9)) == choose_noise(E, PickUniform(9))
    assert choose_noise(E, PickWorst(lambda e: -abs(e - 16))) == 16


def test_oblivious_transmit():
    E = hamming_ball(6, 1)
    y = oblivious_transmit(BitVector(6, 0b101010), E, PickIndex(1))
    assert y.value == 0b101011
    with pytest.raises(DimensionError):
        oblivious_transmit(BitVector(7, 0), E, PickIndex(0))


@given(st.integers(0, (1 << 12) - 1), st.integers(0, 2))
def test_ball_graph_neighbourhoods_are_symmetric(x, w):
    g = hamming_ball_graph(12, w)
    nb = g.neighbors(x)
    assert len(nb) == g.T == sum(math.comb(12, i) for i in range(w + 1))
    assert all(x in g.left_neighbors(y) for y in nb)


def test_ball_graph_audit():
    g = hamming_ball_graph(10, 1)
    assert g.audit(range(50), range(50))


def test_explicit_graph_degrees():
    g = ExplicitGraph(4, ((0, 1), (1,), (1, 2), (3,)))
    assert g.left_neighbors(1) == [0, 1, 2]
    assert g.max_left_degree() == 2
    assert g.max_right_degree() == 3 == g.T
    assert g.audit(range(4), range(4))
    with pytest.raises(ValueError):
        ExplicitGraph(3, ((0,),))


def test_channel_functions_stay_on_edges():
    g = hamming_ball_graph(10, 1)
    for strategy in ("fixed-index", "random"):
        f = ChannelFunction(g, strategy, index=4, seed=8)
        for x in range(0, 1024, 37):
            assert f(x) in g.neighbors(x)
    f = ChannelFunction(g, "random", seed=8)
    assert f(5) == f(5)
    with pytest.raises(ValueError):
        ChannelFunction(g, "psychic")(0)


def test_adversarial_picks_highest_score():
    g = hamming_ball_graph(8, 1)
    f = adversarial_channel_function(g, lambda j: (j * 5) % 9)
    assert f.index == 7 and f.strategy == "adversarial-bruteforce"


def test_graph_from_json():
    assert graph_from_json({"kind": "hamming-ball", "n": 8, "w": 1}).T == 9
    with pytest.raises(ValueError):
        graph_from_json({"kind": "expander"})


def test_memoryless_blocks_draw_from_the_set():
    E = hamming_ball(8, 1)
    spec = BlockChannelSpec(16, MEMORYLESS, noise=E)
    xs = [BitVector(8, i) for i in range(16)]
    ys = block_transmit(xs, spec, seed=3)
    assert all((x.value ^ y.value) in E for x, y in zip(xs, ys))
    assert ys == block_transmit(xs, spec, seed=3)


def test_piecewise_blocks_apply_their_own_function():
    g = hamming_ball_graph(8, 1)
    funcs = [ChannelFunction(g, "fixed-index", index=i) for i in range(3)]
    spec = BlockChannelSpec(3, PIECEWISE, graphs=(g, g, g), functions=funcs)
    ys = block_transmit([BitVector(8, 0)] * 3, spec, seed=0)
    assert [y.value for y in ys] == [0, 1, 2]
    with pytest.raises(ValueError):
        BlockChannelSpec(2, PIECEWISE, functions=funcs)


def test_oblivious_attack_small_table():
    # D = 2 seeds, 4-bit words; the decoder always answers 0
    table = {0: [0b0001, 0b0010], 1: [0b0100, 0b1000]}
    rep = lb_attack_oblivious(lambda m, r: table[m][r], (0, 1), [0, 1], 4, decode=lambda y, r: 0)
    assert rep.exhaustive and rep.message == 1 and rep.failure == 1
    assert len(rep.E) == 4


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2 ** 32))
def test_oblivious_attack_beats_any_deterministic_decoder(D, seed):
    rng = np.random.default_rng(seed)
    table = rng.integers(0, 1 << 10, size=(2, D)).tolist()
    lookup = rng.integers(0, 2, size=1 << 10)
    rep = lb_attack_oblivious(lambda m, r: table[m][r], (0, 1), list(range(D)), 10,
                              decode=lambda y, r: int(lookup[y ^ r]))
    assert rep.confirmed


def test_oblivious_attack_samples_when_d_is_large():
    rng = np.random.default_rng(5)
    table = rng.integers(0, 1 << 30, size=(2, 24)).tolist()
    rep = lb_attack_oblivious(lambda m, r: table[m][r], (0, 1), list(range(24)), 30,
                              decode=lambda y, r: 0, samples=64)
    assert not rep.exhaustive and rep.warnings


@pytest.mark.parametrize("case_table", ["light", "heavy-row", "heavy-col"])
def test_hamming_attack_cases(case_table):
    T, N = 4, 16
    R = T * T
    if case_table == "light":
        table = [list(range(R)), [(3 * r + 1) % N for r in range(R)]]
    elif case_table == "heavy-row":
        table = [[0] * R, list(range(R))]
    else:
        table = [list(range(R)), [0] * R]
    rep = lb_attack_hamming(lambda m, r: table[m][r], T, N)
    assert rep.confirmed and rep.degrees_ok
    assert rep.graph.max_left_degree() <= 2 * T and rep.graph.max_right_degree() <= 2 * T


def test_hamming_attack_needs_room():
    with pytest.raises(ValueError):
        lb_attack_hamming(lambda m, r: 0, 4, 7)
    with pytest.raises(ValueError):
        lb_attack_hamming(lambda m, r: 99, 2, 8)
