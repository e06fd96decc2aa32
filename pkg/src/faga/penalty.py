"""Static penalty function for constrained problems."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import ConfigurationError


@dataclass
class PenaltyConfig:
    """Constant penalty weight; theta = 0 disables penalization."""

    theta: float = 1e6

    def __post_init__(self):
        if self.theta < 0:
            raise ConfigurationError("theta must be non-negative")


def violation_sum(g_values: Sequence[float], h_values: Sequence[float] = ()) -> float:
    """Total violation: positive parts of inequalities plus |equality residuals|."""
    total = 0.0
    for g in g_values:
        if g > 0:
            total += g
    for h in h_values:
        total += abs(h)
    return total


def penalize(raw: float, g_values: Sequence[float], h_values: Sequence[float],
             config: PenaltyConfig, sense: str = "min") -> float:
    """Penalized objective: raw +/- theta * violation, sign chosen so that
    violations always worsen the value under the problem's sense."""
    pf = config.theta * violation_sum(g_values, h_values)
    return raw - pf if sense == "max" else raw + pf
