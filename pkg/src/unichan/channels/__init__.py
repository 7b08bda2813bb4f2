from .attacks import HammingAttackReport, ObliviousAttackReport, lb_attack_hamming, lb_attack_oblivious
from .blocks import MEMORYLESS, PIECEWISE, BlockChannelSpec, block_transmit
from .graphs import (BallGraph, ChannelFunction, ChannelGraph, ExplicitGraph,
                     adversarial_channel_function, graph_from_json, hamming_ball_graph)
from .noise import (NoiseSet, PickIndex, PickUniform, PickWorst, choose_noise, hamming_ball,
                    noise_set_family, noise_set_from_json, oblivious_transmit)
