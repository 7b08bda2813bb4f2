"""Confidence intervals for failure counts."""

from __future__ import annotations

from scipy.stats import binomtest

CONFIDENCE = 0.99


def wilson(failures: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Two-sided Wilson score interval (no continuity correction)."""
    if trials < 1 or not 0 <= failures <= trials:
        raise ValueError(f"bad counts: {failures}/{trials}")
    ci = binomtest(failures, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)
