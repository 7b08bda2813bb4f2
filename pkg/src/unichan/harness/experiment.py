"""Seeded Monte Carlo runs: pick the channel's move first, then sample seeds.

Every random choice comes from ``SeedSequence(master_seed, spawn_key=...)``:

* ``(0, i)``: the shared seed rho of trial i
* ``(1, i)``: channel-side randomness of trial i (uniform picks, memoryless noise)
* ``(2, j)``: probe seeds used to choose a worst-case noise or channel function
* ``(3,)``:   construction of a random noise set

The worst-case choice for a message is made once, from probe seeds only, and
is frozen before the first evaluation seed is drawn.  Transmitters take the
codeword and channel-side randomness but never rho.
"""

from __future__ import annotations

import json
import math
import re
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from fractions import Fraction
from typing import Callable

import jsonschema
import numpy as np

from ..bitlinalg import BitVector
from ..channels.attacks import lb_attack_hamming, lb_attack_oblivious
from ..channels.graphs import (ChannelFunction, ChannelGraph, adversarial_channel_function,
                               hamming_ball_graph)
from ..channels.noise import NoiseSet, noise_set_family, random_subset
from ..codes.additive import AdditiveWrap
from ..codes.base import CodeInstance, DecodeFailure, RateBoundViolation
from ..codes.concat import ConcatMemoryless, ConcatPiecewise
from ..codes.descriptors import code_from_descriptor
from ..codes.hashcode import HammingHashCode
from ..codes.syndrome import SyndromeCode
from .bounds import check_rate_bound
from .stats import wilson

DEFAULT_SEED = 0xC0DEC0DE
NOISE_POLICIES = ("worst-fixed", "uniform", "per-strategy")
MODELS = ("oblivious", "hamming", "additive", "memoryless", "piecewise")
MAX_ALL_MESSAGES = 4096


class ConfigError(ValueError):
    pass


def substream(master: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master, spawn_key=key))


@dataclass(frozen=True)
class ExperimentSpec:
    code: dict
    channel: dict = field(default_factory=dict)
    messages: object = "random(1)"
    noise_policy: str = "worst-fixed"
    trials: int = 1000
    master_seed: int = DEFAULT_SEED
    epsilon_target: float | None = None
    slack: float | None = None
    selection_trials: int = 1000
    cross_check: int = 200
    attack: dict | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.noise_policy not in NOISE_POLICIES:
            raise ConfigError(f"noise_policy must be one of {NOISE_POLICIES}")
        if not 0 <= self.master_seed < (1 << 64):
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        message_policy(self.messages)

    @classmethod
    def from_json(cls, obj: dict | str) -> "ExperimentSpec":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"spec is not valid JSON: {exc}") from exc
        try:
            jsonschema.validate(obj, spec_schema())
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"spec does not match the schema: {exc.message}") from exc
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown spec fields: {sorted(unknown)}")
        if "code" not in obj:
            raise ConfigError("spec needs a code descriptor")
        data = dict(obj)
        if isinstance(data.get("master_seed"), str):
            data["master_seed"] = int(data["master_seed"], 0)
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def to_json(self) -> dict:
        return asdict(self)


@lru_cache(maxsize=1)
def spec_schema() -> dict:
    text = resources.files("unichan.harness").joinpath("experiment_spec.schema.json").read_text()
    return json.loads(text)


def message_policy(policy) -> tuple[str, int]:
    if policy == "all":
        return "all", 0
    if isinstance(policy, dict) and "random" in policy:
        return "random", int(policy["random"])
    if isinstance(policy, str):
        m = re.fullmatch(r"random\((\d+)\)", policy.strip())
        if m:
            return "random", int(m.group(1))
    raise ConfigError(f"bad message policy {policy!r}; use 'all' or 'random(N)'")


@dataclass
class TrialReport:
    failures: int
    trials: int
    wilson_interval: tuple[float, float]
    rate: float
    bound_rate: float
    epsilon_target: float
    slack: float
    seconds: float
    master_seed: int
    n: int = 0
    k: int = 0
    t: float = 0
    verdict: str = ""
    details: dict = field(default_factory=dict)

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials

    @property
    def failure_exact(self) -> Fraction:
        return Fraction(self.failures, self.trials)

    @property
    def margin(self) -> float:
        return self.bound_rate - self.rate

    @property
    def passed(self) -> bool:
        return self.verdict in ("PASS", "ATTACK-CONFIRMED")

    def to_json(self) -> dict:
        lo, hi = self.wilson_interval
        return {
            "verdict": self.verdict, "failures": self.failures, "trials": self.trials,
            "failure_rate": self.failure_rate, "failure_exact": str(self.failure_exact),
            "wilson_lo": lo, "wilson_hi": hi, "confidence": 0.99,
            "n": self.n, "k": self.k, "t": self.t,
            "rate": self.rate, "bound_rate": self.bound_rate, "margin": self.margin,
            "epsilon_target": self.epsilon_target, "slack": self.slack,
            "seconds": self.seconds, "master_seed": self.master_seed, "details": self.details,
        }


# ---------------------------------------------------------------- channel setup

Transmitter = Callable[[int, np.random.Generator], int]


def default_model(code: CodeInstance) -> str:
    if isinstance(code, HammingHashCode):
        return "hamming"
    if isinstance(code, AdditiveWrap):
        return "additive"
    if isinstance(code, ConcatMemoryless):
        return "memoryless"
    if isinstance(code, ConcatPiecewise):
        return "piecewise"
    return "oblivious"


def _block_params(code: CodeInstance) -> tuple[int, float]:
    if isinstance(code, (ConcatMemoryless, ConcatPiecewise)):
        return code.inner.n, code.inner.t
    return code.n, code.t


def build_noise_set(channel: dict, code: CodeInstance, master: int) -> NoiseSet:
    n, t = _block_params(code)
    desc = dict(channel.get("noise") or {"kind": "random-subset", "size": 1 << int(t)})
    desc.setdefault("n", n)
    if desc["kind"] == "random-subset":
        desc.setdefault("seed", int(substream(master, 3).integers(1 << 62)))
    kind = desc.pop("kind")
    nn = int(desc.pop("n"))
    if nn != n:
        raise ConfigError(f"noise set has {nn} bits but the code's blocks have {n}")
    try:
        return noise_set_family(kind, nn, **desc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad noise set: {exc}") from exc


def widest_ball(n: int, t: float) -> int:
    w, size = 0, 1
    while w < n and size + math.comb(n, w + 1) <= 2 ** t:
        w += 1
        size += math.comb(n, w)
    return w


def build_graph(channel: dict, code: CodeInstance) -> ChannelGraph:
    n, t = _block_params(code)
    desc = channel.get("graph") or {"kind": "hamming-ball", "w": widest_ball(n, t)}
    if desc.get("kind", "hamming-ball") != "hamming-ball":
        raise ConfigError(f"unknown graph kind {desc.get('kind')!r}")
    g = hamming_ball_graph(int(desc.get("n", n)), int(desc["w"]))
    if g.n != n:
        raise ConfigError("graph length differs from the code's block length")
    if g.T > 2 ** t:
        raise ConfigError(f"graph degree {g.T} exceeds 2^t = {2 ** t}")
    return g


def _failed(decode, y: int, rho, m: int) -> bool:
    try:
        return decode(y, rho) != m
    except DecodeFailure:
        return True


class Prepared:
    """Channel, decoder and per-message channel choices, all fixed before any rho."""

    def __init__(self, spec: ExperimentSpec, code: CodeInstance):
        self.spec = spec
        self.code = code
        self.model = spec.channel.get("model", default_model(code))
        if self.model not in MODELS:
            raise ConfigError(f"channel model must be one of {MODELS}")
        master = spec.master_seed
        self.E: NoiseSet | None = None
        self.graph: ChannelGraph | None = None
        if self.model in ("oblivious", "additive", "memoryless"):
            self.E = build_noise_set(spec.channel, code, master)
            self.decode = code.decoder_for(self.E)
        else:
            self.graph = build_graph(spec.channel, code)
            self.decode = code.decoder_for(self.graph)
        self.fast = (self.model in ("oblivious", "additive")
                     and spec.noise_policy in ("worst-fixed", "per-strategy")
                     and isinstance(_inner_syndrome(code), SyndromeCode))

    @cached_property
    def probe_seeds(self) -> list:
        master = self.spec.master_seed
        return [self.code.sample_seed(substream(master, 2, j)) for j in range(self.spec.selection_trials)]

    # each returns (transmitter, choice) where choice is what the channel fixed
    def transmitter(self, m: int) -> tuple[Transmitter, object]:
        return getattr(self, "_tx_" + self.model)(m)

    def _pick_noise(self, m: int) -> int:
        E, policy = self.E, self.spec.noise_policy
        if policy == "per-strategy":
            return E.elements[int(self.spec.channel.get("index", 0)) % len(E)]
        inner = _inner_syndrome(self.code)
        if isinstance(inner, SyndromeCode):
            # all e scored at once on the probe seeds; linear codes fail independently of m
            counts = np.zeros(len(E), dtype=np.int64)
            for rho in self.probe_seeds:
                counts += inner.failure_mask(E, rho if inner is self.code else rho[0])
            return E.elements[int(np.argmax(counts))]
        best, best_score = E.elements[0], -1
        for e in E.elements:
            score = sum(_failed(self.decode, self.code.encode(m, r) ^ e, r, m) for r in self.probe_seeds)
            if score > best_score:
                best, best_score = e, score
        return best

    def _tx_oblivious(self, m: int):
        if self.spec.noise_policy == "uniform":
            E = self.E
            return (lambda x, rng: x ^ E.elements[int(rng.integers(len(E)))]), "uniform"
        e = self._pick_noise(m)
        return (lambda x, rng: x ^ e), e

    def _tx_additive(self, m: int):
        E = self.E
        if self.spec.noise_policy == "uniform":
            # depends on the transmitted word, which is uniform because of the mask z
            return (lambda x, rng: x ^ E.elements[x % len(E)]), "word-indexed"
        e = self._pick_noise(m)
        return (lambda x, rng: x ^ e), e

    def _tx_hamming(self, m: int):
        g = self.graph
        policy = self.spec.noise_policy
        if policy == "uniform":
            ch = ChannelFunction(g, "random", seed=int(substream(self.spec.master_seed, 4).integers(1 << 62)))
        elif policy == "per-strategy":
            ch = ChannelFunction(g, "fixed-index", int(self.spec.channel.get("index", 0)))
        else:
            code, dec, probes = self.code, self.decode, self.probe_seeds

            def score(j: int) -> int:
                return sum(_failed(dec, g.neighbors(code.encode(m, r))[j], r, m) for r in probes)

            ch = adversarial_channel_function(g, score)
        return (lambda x, rng: ch(x)), ch.index if ch.strategy != "random" else "random"

    def _tx_memoryless(self, m: int):
        code: ConcatMemoryless = self.code
        E = self.E
        resample = bool(self.spec.channel.get("resample", False))
        D, nin = code.D, code.inner.n

        def tx(x: int, rng: np.random.Generator) -> int:
            noise = E
            if resample:
                noise = random_subset(nin, len(E), int(rng.integers(1 << 62)))
            idx = rng.integers(0, len(noise), size=D)
            err = 0
            for i, j in enumerate(idx):
                err |= noise.elements[int(j)] << (nin * i)
            if resample:
                # the receiver knows the channel, so it decodes against this trial's set
                return x ^ err, code.decoder_for(noise)
            return x ^ err

        return tx, "resample" if resample else "fixed-set"

    def _tx_piecewise(self, m: int):
        code: ConcatPiecewise = self.code
        g = self.graph
        inner = code.inner
        dec = inner.decoder_for(g)
        policy = self.spec.noise_policy
        symbols = code.outer.encode(code._split(m))
        funcs = []
        for i, s in enumerate(symbols):
            mi = s + 1
            if policy == "uniform":
                funcs.append(ChannelFunction(g, "random", seed=int(substream(self.spec.master_seed, 4, i).integers(1 << 62))))
            elif policy == "per-strategy":
                funcs.append(ChannelFunction(g, "fixed-index", int(self.spec.channel.get("index", 0))))
            else:
                probes = [r[i] for r in self.probe_seeds]

                def score(j: int, mi=mi, probes=probes) -> int:
                    return sum(_failed(dec, g.neighbors(inner.encode(mi, r))[j], r, mi) for r in probes)

                funcs.append(adversarial_channel_function(g, score))

        def tx(x: int, rng) -> int:
            return code.join_blocks(f(b) for f, b in zip(funcs, code.blocks(x)))

        return tx, [f.index for f in funcs]


def _inner_syndrome(code: CodeInstance):
    if isinstance(code, AdditiveWrap):
        return code.inner
    return code


def _fast_failed(prep: Prepared, e: int, rho) -> bool:
    inner = _inner_syndrome(prep.code)
    r = rho if inner is prep.code else rho[0]
    return bool(inner.failure_mask(prep.E, r)[prep.E.index(e)])


def choose_messages(spec: ExperimentSpec, code: CodeInstance) -> list[int]:
    kind, count = message_policy(spec.messages)
    if kind == "all":
        msgs = list(code.messages())
        if len(msgs) > MAX_ALL_MESSAGES:
            raise ConfigError(f"'all' would enumerate {len(msgs)} messages; use random(N)")
        return msgs
    rng = substream(spec.master_seed, 5)
    return [code.random_message(rng) for _ in range(max(1, count))]


def load_code(desc: dict) -> CodeInstance:
    """Descriptor to code; a rate-bound violation propagates, other problems are config errors."""
    try:
        return code_from_descriptor(desc)
    except RateBoundViolation:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad code descriptor: {exc}") from exc


def run_experiment(spec: ExperimentSpec) -> TrialReport:
    start = time.perf_counter()
    if spec.attack:
        return run_attack(spec)
    code = load_code(spec.code)
    try:
        prep = Prepared(spec, code)
        msgs = choose_messages(spec, code)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad channel spec: {exc}") from exc
    txs = {m: prep.transmitter(m) for m in dict.fromkeys(msgs)}
    master = spec.master_seed
    failures = 0
    for i in range(spec.trials):
        m = msgs[i % len(msgs)]
        tx, choice = txs[m]
        rho = code.sample_seed(substream(master, 0, i))
        if prep.fast and i >= spec.cross_check:
            failures += _fast_failed(prep, choice, rho)
            continue
        y = tx(code.encode(m, rho), substream(master, 1, i))
        decode = prep.decode
        if isinstance(y, tuple):
            y, decode = y
        failed = _failed(decode, y, rho, m)
        if prep.fast and failed != _fast_failed(prep, choice, rho):
            raise RuntimeError(f"trial {i}: full decode and collision count disagree")
        failures += failed
    return _finish(spec, code, failures, spec.trials, start, {
        "model": prep.model,
        "messages": len(msgs),
        "choices": {str(m): _fmt_choice(c, prep) for m, (_, c) in list(txs.items())[:8]},
        "noise_set_size": len(prep.E) if prep.E is not None else None,
        "graph_T": prep.graph.T if prep.graph is not None else None,
        "code": code.summary(),
    })


def _fmt_choice(c, prep: Prepared):
    if isinstance(c, int) and prep.E is not None and prep.model in ("oblivious", "additive"):
        return BitVector(prep.E.n, c).to_hex()
    return c


def _finish(spec: ExperimentSpec, code: CodeInstance | None, failures: int, trials: int,
            start: float, details: dict, verdict: str | None = None) -> TrialReport:
    eps = spec.epsilon_target if spec.epsilon_target is not None else (code.epsilon if code else 0.5)
    slack = spec.slack if spec.slack is not None else 0.5 * eps
    lo, hi = wilson(failures, trials)
    if code is not None:
        b = check_rate_bound(code)
        rate, bound, n, k, t = b.rate, b.bound_rate, code.n, code.k, code.t
    else:
        rate = bound = math.nan
        n = k = t = 0
    if verdict is None:
        verdict = "PASS" if hi <= eps + slack else "FAIL"
    return TrialReport(failures, trials, (lo, hi), rate, bound, eps, slack,
                       time.perf_counter() - start, spec.master_seed, n, k, t, verdict, details)


# ---------------------------------------------------------------- attacks

def run_attack(spec: ExperimentSpec) -> TrialReport:
    start = time.perf_counter()
    attack = dict(spec.attack)
    kind = attack.get("kind")
    master = spec.master_seed
    if kind == "oblivious":
        code = load_code(spec.code)
        D = int(attack.get("D", attack.get("seeds", 4)))
        if D < 1:
            raise ConfigError("attack needs at least one seed")
        seeds = [code.sample_seed(substream(master, 2, j)) for j in range(D)]
        msgs = attack.get("messages") or list(code.messages())[:2]
        a, b = int(msgs[0]), int(msgs[1])
        rep = lb_attack_oblivious(code.encode, (a, b), seeds, code.n, decoder_for=code.decoder_for)
        failures = rep.D - rep.successes
        verdict = "ATTACK-CONFIRMED" if rep.confirmed else "ATTACK-FAILED"
        return _finish(spec, code, failures, rep.D, start, rep.to_json(), verdict)
    if kind == "hamming":
        T = int(attack.get("T", 4))
        N = int(attack.get("N", 4 * T))
        encoder = attack.get("encoder", "random")
        R = T * T
        if encoder == "random":
            rng = substream(master, 6)
            table = rng.integers(0, N, size=(2, R)).tolist()
        elif encoder == "constant":
            table = [[0] * R, [1 % N] * R]
        elif encoder == "code":
            code = load_code(spec.code)
            seeds = [code.sample_seed(substream(master, 2, j)) for j in range(R)]
            msgs = list(code.messages())[:2]
            words = [[code.encode(m, r) for r in seeds] for m in msgs]
            labels = {w: i for i, w in enumerate(dict.fromkeys(words[0] + words[1]))}
            N = max(N, len(labels))
            table = [[labels[w] for w in row] for row in words]
        else:
            raise ConfigError(f"unknown encoder {encoder!r}")
        rep = lb_attack_hamming(lambda m, r: table[m][r], T, N)
        verdict = "ATTACK-CONFIRMED" if rep.confirmed else "ATTACK-FAILED"
        return _finish(spec, None, rep.hits, rep.seeds, start, rep.to_json(), verdict)
    raise ConfigError(f"attack kind must be oblivious or hamming, got {kind!r}")
