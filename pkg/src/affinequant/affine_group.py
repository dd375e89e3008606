"""The affine group of the half-plane: composition, inverse, left action."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterDomainError

__all__ = ["GroupElement", "identity", "compose", "inverse", "left_translate"]


@dataclass(frozen=True)
class GroupElement:
    """Point (q, p) of the open half-plane q > 0, read as a group element."""

    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ParameterDomainError(f"coordinates must be finite: {self}")
        if self.q <= 0.0:
            raise ParameterDomainError(f"scale coordinate must be positive: {self}")


def identity():
    return GroupElement(1.0, 0.0)


def compose(g, g0):
    """Group law: (q, p)(q0, p0) = (q q0, p0/q + p)."""
    return GroupElement(g.q * g0.q, g0.p / g.q + g.p)


def inverse(g):
    """Group inverse: (q, p)^(-1) = (1/q, -q p)."""
    return GroupElement(1.0 / g.q, -g.q * g.p)


def left_translate(g0, f):
    """Left regular action on functions: returns (q,p) -> f(q/q0, q0(p - p0))."""
    q0, p0 = g0.q, g0.p

    def translated(q, p):
        return f(q / q0, q0 * (p - p0))

    return translated
