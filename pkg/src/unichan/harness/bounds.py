"""Rate bound k/n <= 1 - t/n + (1 + log2(1/(1-eps)))/n as a checker."""

from __future__ import annotations

from dataclasses import dataclass

from ..codes.base import CodeInstance, rate_bound


@dataclass(frozen=True)
class BoundReport:
    scheme: str
    n: int
    k: int
    t: float
    epsilon: float
    rate: float
    bound_rate: float

    @property
    def margin(self) -> float:
        return self.bound_rate - self.rate

    @property
    def ok(self) -> bool:
        return self.margin >= -1e-12

    def to_json(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "k": self.k, "t": self.t, "epsilon": self.epsilon,
                "rate": self.rate, "bound_rate": self.bound_rate, "margin": self.margin,
                "violation": not self.ok}


def check_rate_bound(code: CodeInstance) -> BoundReport:
    return check_params(code.n, code.k, code.t, code.epsilon, code.scheme)


def check_params(n: int, k: int, t: float, epsilon: float, scheme: str = "hypothetical") -> BoundReport:
    """Bound report for raw parameters, e.g. a code that was never built."""
    return BoundReport(scheme, n, k, t, epsilon, k / n, rate_bound(n, t, epsilon))
