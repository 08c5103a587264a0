"""Triangular fuzzification of continuous levels over the five level classes.

A level x in [0, 4] is spread over the two neighbouring integer classes
with weights (1 - frac, frac); centroid defuzzification makes the pair an
exact inverse, which is the property the tests pin down. Memberships
produced elsewhere (e.g. softmax over classifier scores) may occupy all
five classes; defuzzification only requires non-negative weights summing
to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .emotions import check_level
from .errors import InvalidMembershipError

SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Membership:
    """Weights over the five level classes; non-negative, summing to one."""

    weights: tuple[float, float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.weights) != 5:
            raise InvalidMembershipError(f"expected 5 weights, got {len(self.weights)}")
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if any(v < 0.0 or not math.isfinite(v) for v in w):
            raise InvalidMembershipError(f"weights must be finite and non-negative: {w}")
        total = sum(w)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise InvalidMembershipError(f"weights sum to {total!r}, expected 1")

    def is_triangular(self) -> bool:
        """True when at most two adjacent classes carry weight."""
        nonzero = [c for c, v in enumerate(self.weights) if v > 0.0]
        if len(nonzero) > 2:
            return False
        return len(nonzero) < 2 or nonzero[1] - nonzero[0] == 1

    def argmax_class(self) -> int:
        # ties break toward the lower class
        best = 0
        for c in range(1, 5):
            if self.weights[c] > self.weights[best]:
                best = c
        return best


def fuzzify(level: float) -> Membership:
    """Triangular membership with unit-spaced peaks at the integer classes."""
    x = check_level(level)
    lo = math.floor(x)
    weights = [0.0] * 5
    if lo == x:
        weights[int(x)] = 1.0
    else:
        frac = x - lo
        weights[lo] = 1.0 - frac
        weights[lo + 1] = frac
    return Membership(tuple(weights))


def defuzzify(m) -> float:
    """Centroid of the membership weights, a level in [0, 4]."""
    weights = m.weights if isinstance(m, Membership) else tuple(float(v) for v in m)
    if len(weights) != 5:
        raise InvalidMembershipError(f"expected 5 weights, got {len(weights)}")
    if any(v < 0.0 or not math.isfinite(v) for v in weights):
        raise InvalidMembershipError(f"weights must be finite and non-negative: {weights}")
    total = sum(weights)
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InvalidMembershipError(f"weights sum to {total!r}, expected 1")
    return sum(c * w for c, w in enumerate(weights))


def fuzzify_profile(profile: dict[str, float]) -> dict[str, Membership]:
    """Element-wise fuzzification of an emotion-to-level map."""
    return {name: fuzzify(level) for name, level in profile.items()}
