"""Quantum discord of X states under projective measurement of the second spin.

The measured spin is the second one of the pair. The measurement axis is
``(gamma, phi)``; ``phi`` enters only through ``alpha**2 + beta**2 +
2*alpha*beta*cos(2*phi)``, and the conditional entropy decreases as that
quantity grows, so the azimuthal optimum is taken analytically and only
``gamma`` is searched numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pair_state import XState, entropy, reduce, spectrum

GRID_POINTS = 129
GAMMA_TOL = 1e-10
CLAMP_TOL = 1e-9

_INV_LN2 = 1.0 / math.log(2.0)
_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class MeasurementAxis:
    gamma: float
    phi: float = 0.0


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    gamma_star: float
    phi_star: float
    mutual_information: float
    classical_correlations: float


def _coherence_weight(state: XState, phi: float) -> float:
    a, b = state.alpha, state.beta
    return a * a + b * b + 2.0 * a * b * math.cos(2.0 * phi)


def _outcome_blocks(state: XState, cosg, sin2g, weight):
    """Trace, population difference and off-diagonal weight of the two
    conditional 2x2 blocks left on the first spin after measuring the second."""
    up = 0.5 * (1.0 + cosg)
    dn = 0.5 * (1.0 - cosg)
    off2 = sin2g * weight
    blocks = []
    for w0, w1 in ((up, dn), (dn, up)):
        p00 = w0 * state.a + w1 * state.c
        p11 = w0 * state.cp + w1 * state.b
        blocks.append((p00 + p11, p00 - p11, off2))
    return blocks


def measured_spectrum(state: XState, axis: MeasurementAxis) -> tuple[np.ndarray, np.ndarray]:
    """Joint eigenvalues after the measurement and the measured-spin marginal.

    The joint eigenvalues are ordered ``(nu, mu) = (+,+), (+,-), (-,+), (-,-)``
    where ``nu`` labels the outcome and ``mu`` the branch of the square root.
    """
    cosg = math.cos(axis.gamma)
    sin2g = math.sin(axis.gamma) ** 2
    weight = _coherence_weight(state, axis.phi)
    joint, marginal = [], []
    for trace, diff, off2 in _outcome_blocks(state, cosg, sin2g, weight):
        rad = math.sqrt(diff * diff + off2)
        joint += [0.5 * (trace + rad), 0.5 * (trace - rad)]
        marginal.append(trace)
    return np.array(joint), np.array(marginal)


def _h(x: float) -> float:
    return -x * math.log(x) * _INV_LN2 if x > 0.0 else 0.0


def _measured_conditional_entropy(state: XState, gamma: float, weight: float) -> float:
    """S(rho'_ij) - S(rho'_j) at polar angle ``gamma``."""
    cosg = math.cos(gamma)
    sin2g = 1.0 - cosg * cosg
    total = 0.0
    for trace, diff, off2 in _outcome_blocks(state, cosg, sin2g, weight):
        rad = math.sqrt(diff * diff + off2)
        total += _h(0.5 * (trace + rad)) + _h(0.5 * (trace - rad)) - _h(trace)
    return total


def _unmeasured_conditional_entropy(state: XState) -> float:
    return entropy(spectrum(state)) - entropy(reduce(state, "second").probabilities())


def conditional_gap(state: XState, axis: MeasurementAxis) -> float:
    """Measured minus unmeasured conditional entropy for one axis (bits)."""
    weight = _coherence_weight(state, axis.phi)
    return _measured_conditional_entropy(state, axis.gamma, weight) - _unmeasured_conditional_entropy(state)


def _golden_section(f, lo: float, hi: float, tol: float = GAMMA_TOL) -> tuple[float, float]:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x)


def minimize_gamma(state: XState, weight: float, grid_points: int = GRID_POINTS) -> tuple[float, float]:
    """Minimize the measured conditional entropy over ``gamma in [0, pi/2]``.

    Dense grid to bracket the minimum, then golden-section refinement inside
    the two grid cells around the best grid point.
    """
    f = lambda g: _measured_conditional_entropy(state, g, weight)  # noqa: E731
    grid = np.linspace(0.0, 0.5 * math.pi, grid_points)
    values = [f(g) for g in grid]
    i = int(np.argmin(values))
    best_g, best_v = float(grid[i]), values[i]
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid_points - 1)]
    g, v = _golden_section(f, float(lo), float(hi))
    if v < best_v:
        best_g, best_v = g, v
    return best_g, best_v


def mutual_information(state: XState) -> float:
    value = (
        entropy(reduce(state, "first").probabilities())
        + entropy(reduce(state, "second").probabilities())
        - entropy(spectrum(state))
    )
    return max(value, 0.0) if value > -1e-10 else value


def discord(state: XState) -> DiscordResult:
    """Discord with measurement on the second spin, minimized over all axes."""
    phi_star = 0.0 if state.alpha * state.beta >= 0.0 else 0.5 * math.pi
    weight = (abs(state.alpha) + abs(state.beta)) ** 2
    gamma_star, measured = minimize_gamma(state, weight)
    value = measured - _unmeasured_conditional_entropy(state)
    if -CLAMP_TOL <= value < 0.0:
        value = 0.0
    mi = mutual_information(state)
    return DiscordResult(
        discord=value,
        gamma_star=gamma_star,
        phi_star=phi_star,
        mutual_information=mi,
        classical_correlations=mi - value,
    )
