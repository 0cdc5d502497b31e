"""Mixtures of two aligned product pairs and their closed-form discord.

``theta`` is the angle each aligned direction makes with the bisector; the
pair states here use the bisector direction as ``|0>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .pair_state import XState, xstate_from_elements

Parity = Literal["+", "-"]

_INV_LN2 = 1.0 / math.log(2.0)
LOG2E = _INV_LN2


def _h(x: float) -> float:
    return -x * math.log(x) * _INV_LN2 if x > 0.0 else 0.0


@dataclass(frozen=True)
class MixtureParams:
    theta: float
    epsilon: float = 0.0
    n: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.theta <= 0.5 * math.pi + 1e-12:
            raise ValueError(f"theta={self.theta!r} outside [0, pi/2]")
        if abs(self.epsilon) > 1.0:
            raise ValueError(f"|epsilon|={abs(self.epsilon)!r} exceeds 1")


def _check(theta: float, epsilon: float = 0.0) -> None:
    MixtureParams(theta, epsilon)


def mixture_state(theta: float) -> XState:
    """Equal-weight mixture of ``|theta,theta>`` and ``|-theta,-theta>``."""
    _check(theta)
    cos, sin2 = math.cos(theta), math.sin(theta) ** 2
    a = 0.25 * (1.0 + cos) ** 2
    b = 0.25 * (1.0 - cos) ** 2
    off = 0.25 * sin2
    return xstate_from_elements(a, b, off, off, off, off)


def mixture_state_coherent(theta: float, epsilon: float) -> XState:
    """Aligned mixture with a cross term of relative weight ``epsilon``."""
    _check(theta, epsilon)
    cos, sin2 = math.cos(theta), math.sin(theta) ** 2
    norm = 4.0 * (1.0 + epsilon * cos * cos)
    a = (1.0 + epsilon) * (1.0 + cos) ** 2 / norm
    b = (1.0 + epsilon) * (1.0 - cos) ** 2 / norm
    alpha = (1.0 + epsilon) * sin2 / norm
    beta = (1.0 - epsilon) * sin2 / norm
    return xstate_from_elements(a, b, beta, beta, alpha, beta)


def measured_conditional_entropy(theta: float) -> float:
    """S(rho'_ij) - S(rho'_j) for a measurement along x on the incoherent mixture."""
    root = math.sqrt(1.0 - 0.25 * math.sin(2.0 * theta) ** 2)
    return sum(2.0 * _h((1.0 + mu * root) / 4.0) - _h(0.5) for mu in (1, -1))


def unmeasured_conditional_entropy(theta: float) -> float:
    """S(rho_ij) - S(rho_j) for the incoherent mixture."""
    cos = math.cos(theta)
    return sum(_h((1.0 + mu * cos * cos) / 2.0) - _h((1.0 + mu * cos) / 2.0) for mu in (1, -1))


def discord_closed_form(theta: float) -> float:
    """Discord of :func:`mixture_state` (bits)."""
    _check(theta)
    return measured_conditional_entropy(theta) - unmeasured_conditional_entropy(theta)


def discord_closed_form_coherent(theta: float, epsilon: float) -> float:
    """Discord of :func:`mixture_state_coherent` (bits)."""
    _check(theta, epsilon)
    cos, sin = math.cos(theta), math.sin(theta)
    norm = 1.0 + epsilon * cos * cos
    root = math.sqrt(cos * cos * (1.0 + epsilon) ** 2 + sin**4)
    total = 0.0
    for mu in (1, -1):
        total += 2.0 * _h(0.25 + mu * root / (4.0 * norm)) - _h(0.5)
        total -= _h((1.0 + mu * cos * cos) * (1.0 + mu * epsilon) / (2.0 * norm))
        total += _h((1.0 + mu * cos) * (1.0 + mu * epsilon * cos) / (2.0 * norm))
    return total


def concurrence_coherent(theta: float, epsilon: float) -> float:
    _check(theta, epsilon)
    return abs(epsilon) * math.sin(theta) ** 2 / (1.0 + epsilon * math.cos(theta) ** 2)


def epsilon_overlap(theta: float, n: int, parity: Parity) -> float:
    """Cross-term weight left on a pair by a definite-parity state of ``n`` spins.

    Negative parity (field just below the factorizing field) gives the minus sign.
    """
    if n < 3:
        raise ValueError(f"n={n} must be at least 3")
    if parity not in ("+", "-"):
        raise ValueError(f"parity must be '+' or '-', got {parity!r}")
    sign = 1.0 if parity == "+" else -1.0
    return sign * math.cos(theta) ** (n - 2)


def asymptote_small_theta(theta: float) -> float:
    return 0.5 * theta * theta


def asymptote_near_half_pi(theta: float) -> float:
    x = 0.5 * math.pi - theta
    if x == 0.0:
        return 0.0
    x2 = x * x
    return -0.25 * x2 * (math.log2(x2) + LOG2E - 2.0)
