"""Two-qubit X-state densities: validation, spectra, marginals and entanglement.

Basis ordering is ``|00>, |01>, |10>, |11>`` with the first label belonging to
the first spin of the pair and ``|0>`` the spin-up state (``s_z = +1/2``)::

    [[a,     0,     0,     alpha],
     [0,     c,     beta,  0    ],
     [0,     beta,  cp,    0    ],
     [alpha, 0,     0,     b    ]]

All coherences are real, as they are for ground states of real Hamiltonians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import entr

from .errors import NegativeEigenvalue, PositivityViolation, TraceError

POP_TOL = 1e-12
COHERENCE_TOL = 1e-10
TRACE_TOL = 1e-9
EIG_TOL = 1e-12

Site = Literal["first", "second"]
ConcurrenceKind = Literal["parallel", "antiparallel", "none"]


@dataclass(frozen=True)
class XState:
    a: float
    b: float
    c: float
    cp: float
    alpha: float
    beta: float

    def elements(self) -> tuple[float, float, float, float, float, float]:
        return (self.a, self.b, self.c, self.cp, self.alpha, self.beta)

    def matrix(self) -> np.ndarray:
        """Dense 4x4 representation in the standard basis."""
        rho = np.zeros((4, 4))
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = self.a, self.c, self.cp, self.b
        rho[0, 3] = rho[3, 0] = self.alpha
        rho[1, 2] = rho[2, 1] = self.beta
        return rho

    def flipped(self) -> "XState":
        """Same state after a spin flip of both qubits (``|0> <-> |1>``).

        Discord, concurrence and all entropies are unchanged by this map.
        """
        return XState(self.b, self.a, self.cp, self.c, self.alpha, self.beta)

    def swapped(self) -> "XState":
        """Same state with the roles of the two spins exchanged."""
        return XState(self.a, self.b, self.cp, self.c, self.alpha, self.beta)


@dataclass(frozen=True)
class QubitState:
    p0: float
    p1: float

    def probabilities(self) -> tuple[float, float]:
        return (self.p0, self.p1)


def xstate_from_elements(
    a: float, b: float, c: float, cp: float, alpha: float, beta: float
) -> XState:
    """Validate raw matrix elements and return an :class:`XState`.

    Populations within ``1e-12`` below zero are clamped to zero and a trace
    within ``1e-9`` of one is renormalized; anything worse raises.
    """
    vals = [float(v) for v in (a, b, c, cp, alpha, beta)]
    if not all(math.isfinite(v) for v in vals):
        raise PositivityViolation(f"non-finite element in {vals}")
    pops = vals[:4]
    for name, p in zip(("a", "b", "c", "cp"), pops):
        if p < -POP_TOL:
            raise PositivityViolation(f"population {name}={p!r} is negative")
    pops = [max(p, 0.0) for p in pops]
    trace = sum(pops)
    if abs(trace - 1.0) >= TRACE_TOL:
        raise TraceError(f"trace {trace!r} differs from 1")
    a, b, c, cp = (p / trace for p in pops)
    alpha, beta = vals[4] / trace, vals[5] / trace
    if abs(alpha) > math.sqrt(a * b) + COHERENCE_TOL:
        raise PositivityViolation(f"|alpha|={abs(alpha)!r} exceeds sqrt(a*b)={math.sqrt(a * b)!r}")
    if abs(beta) > math.sqrt(c * cp) + COHERENCE_TOL:
        raise PositivityViolation(f"|beta|={abs(beta)!r} exceeds sqrt(c*cp)={math.sqrt(c * cp)!r}")
    return XState(a, b, c, cp, alpha, beta)


def xstate_from_correlators(
    sz_i: float, sz_j: float, szsz: float, alpha: float, beta: float
) -> XState:
    """Build a pair density from ``<s_iz>``, ``<s_jz>``, ``<s_iz s_jz>``,
    ``alpha = <s_i- s_j->`` and ``beta = <s_i- s_j+>``."""
    a = 0.25 + 0.5 * (sz_i + sz_j) + szsz
    b = 0.25 - 0.5 * (sz_i + sz_j) + szsz
    c = 0.25 + 0.5 * (sz_i - sz_j) - szsz
    cp = 0.25 - 0.5 * (sz_i - sz_j) - szsz
    return xstate_from_elements(a, b, c, cp, alpha, beta)


def _block_eigs(p: float, q: float, off: float) -> tuple[float, float]:
    mean = 0.5 * (p + q)
    rad = math.hypot(0.5 * (p - q), off)
    return mean + rad, mean - rad


def spectrum(state: XState) -> np.ndarray:
    """Eigenvalues of the pair density, sorted in descending order."""
    eigs = _block_eigs(state.a, state.b, state.alpha) + _block_eigs(state.c, state.cp, state.beta)
    return np.sort(np.array(eigs))[::-1]


def reduce(state: XState, site: Site = "second") -> QubitState:
    """Single-spin marginal of the pair."""
    if site == "first":
        return QubitState(state.a + state.c, state.cp + state.b)
    if site == "second":
        return QubitState(state.a + state.cp, state.c + state.b)
    raise ValueError(f"site must be 'first' or 'second', got {site!r}")


def entropy(probabilities) -> float:
    """Shannon/von Neumann entropy in bits of an eigenvalue list."""
    p = np.asarray(probabilities, dtype=float)
    if np.any(p < -EIG_TOL):
        raise NegativeEigenvalue(f"negative probability {p.min()!r}")
    if p.sum() > 1.0 + TRACE_TOL:
        raise NegativeEigenvalue(f"probabilities sum to {p.sum()!r} > 1")
    return float(entr(np.clip(p, 0.0, None)).sum() / math.log(2.0))


def concurrence(state: XState) -> tuple[float, ConcurrenceKind]:
    """Wootters concurrence of an X state and the type of entanglement.

    ``parallel`` when the ``|00>,|11>`` coherence dominates, ``antiparallel``
    when the ``|01>,|10>`` one does.
    """
    first = abs(state.alpha) - math.sqrt(state.c * state.cp)
    second = abs(state.beta) - math.sqrt(state.a * state.b)
    value = 2.0 * max(first, second, 0.0)
    if value == 0.0:
        return 0.0, "none"
    kind: ConcurrenceKind = "parallel" if first > second else "antiparallel"
    return min(value, 1.0), kind


def eof(c: float) -> float:
    """Entanglement of formation (bits) from the concurrence."""
    c = min(max(float(c), 0.0), 1.0)
    root = math.sqrt(max(1.0 - c * c, 0.0))
    return entropy([0.5 * (1.0 + root), 0.5 * (1.0 - root)])
