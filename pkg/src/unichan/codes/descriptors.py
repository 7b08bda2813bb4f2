"""JSON code descriptors: {"scheme": ..., params...} to CodeInstance."""

from __future__ import annotations

from ..fingerprint import GuvFingerprinter, GuvParams, random_linear_fingerprinter
from .additive import AdditiveWrap
from .base import CodeInstance
from .concat import DEFAULT_LABEL, ConcatMemoryless, ConcatPiecewise
from .hashcode import HammingHashCode
from .syndrome import SyndromeCode, random_linear_code
from .toy import RandomToyCode

SCHEMES = ("syndrome", "hash", "additive", "concat-memoryless", "concat-piecewise", "random-toy")


def code_from_descriptor(desc: dict) -> CodeInstance:
    scheme = desc.get("scheme")
    if scheme == "syndrome":
        n, t, eps = int(desc["n"]), int(desc["t"]), float(desc["epsilon"])
        fp = desc.get("fingerprinter", {"kind": "random-linear"})
        if fp.get("kind", "random-linear") == "random-linear":
            return SyndromeCode(random_linear_fingerprinter(n, t, eps), n, t, eps)
        if fp["kind"] == "guv":
            return SyndromeCode(GuvFingerprinter(n, GuvParams.from_json(fp)), n, t, eps)
        raise ValueError(f"unknown fingerprinter kind {fp['kind']!r}")
    if scheme == "hash":
        return HammingHashCode(int(desc["n"]), int(desc["t"]), float(desc["epsilon"]))
    if scheme == "additive":
        return AdditiveWrap(code_from_descriptor(desc["inner"]))
    if scheme == "concat-memoryless":
        inner = desc["inner"]
        code = random_linear_code(int(inner["n"]), int(inner["t"]), float(inner["epsilon"]))
        return ConcatMemoryless(code, int(desc["S"]), int(desc["D"]), float(desc.get("epsilon", 0.01)),
                                str(desc.get("label", DEFAULT_LABEL)))
    if scheme == "concat-piecewise":
        inner = desc["inner"]
        code = HammingHashCode(int(inner["n"]), int(inner["t"]), float(inner["epsilon"]))
        return ConcatPiecewise(code, int(desc["S"]), int(desc["D"]), float(desc.get("epsilon", 0.02)))
    if scheme == "random-toy":
        return RandomToyCode(int(desc["n"]), int(desc["t"]), int(desc["k"]), float(desc["epsilon"]),
                             int(desc.get("R", 64)), int(desc.get("seed", 0)))
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
