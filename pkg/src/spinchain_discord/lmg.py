"""Fully connected XY array (LMG model) in the maximal total-spin multiplet.

``H = B S_z - (J_x (S_x**2 - n/4) + J_y (S_y**2 - n/4)) / (n - 1)``, i.e. every
pair coupled with the same strength so that the critical field is ``J_x`` and
the factorizing field is ``sqrt(J_x J_y)``. The Hamiltonian only connects
``M`` values differing by 0 or 2, so the ``S = n/2`` block splits by the
parity of the number of up spins ``M + n/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .pair_state import XState, xstate_from_correlators


@dataclass(frozen=True)
class CollectiveState:
    n: int
    amplitudes: np.ndarray  # over M = -n/2, ..., n/2
    parity: int
    energy: float

    @property
    def ms(self) -> np.ndarray:
        return np.arange(self.n + 1) - 0.5 * self.n


def _ladder(n: int) -> tuple[np.ndarray, np.ndarray]:
    """``S_z`` diagonal and the ``S_+`` matrix in the ``|n/2, M>`` basis."""
    s = 0.5 * n
    ms = np.arange(n + 1) - s
    splus = np.zeros((n + 1, n + 1))
    for k, m in enumerate(ms[:-1]):
        splus[k + 1, k] = math.sqrt(s * (s + 1.0) - m * (m + 1.0))
    return ms, splus


def lmg_hamiltonian(n: int, jx: float, jy: float, b: float) -> np.ndarray:
    ms, splus = _ladder(n)
    sminus = splus.T
    sx = 0.5 * (splus + sminus)
    sy_sq = -0.25 * (splus - sminus) @ (splus - sminus)
    ident = np.eye(n + 1)
    coupling = jx * (sx @ sx - 0.25 * n * ident) + jy * (sy_sq - 0.25 * n * ident)
    return b * np.diag(ms) - coupling / (n - 1)


def lmg_sectors(n: int, jx: float, jy: float, b: float) -> dict[int, CollectiveState]:
    """Lowest state in each spin-parity sector of the collective block."""
    ham = lmg_hamiltonian(n, jx, jy, b)
    ups = np.arange(n + 1)
    out = {}
    for parity in (1, -1):
        idx = np.flatnonzero((ups % 2 == 0) == (parity == 1))
        w, v = eigh(ham[np.ix_(idx, idx)])
        vec = np.zeros(n + 1)
        vec[idx] = v[:, 0] * np.sign(v[np.argmax(np.abs(v[:, 0])), 0])
        out[parity] = CollectiveState(n, vec, parity, float(w[0]))
    return out


def lmg_ground(n: int, jx: float, jy: float, b: float) -> CollectiveState:
    if n < 3:
        raise ValueError(f"n={n} must be at least 3")
    sectors = lmg_sectors(n, jx, jy, b)
    return sectors[1] if sectors[1].energy <= sectors[-1].energy else sectors[-1]


def lmg_pair_density(state: CollectiveState) -> XState:
    """Pair density of any two spins of a permutation-symmetric state.

    With ``N = n (n - 1)``:
    ``<s_iz s_jz> = (<S_z^2> - n/4)/N``, ``<s_i- s_j-> = <S_-^2>/N`` and
    ``<s_i- s_j+> = (n^2/4 - <S_z^2>)/N``.
    """
    n = state.n
    ms, splus = _ladder(n)
    psi = state.amplitudes
    sz = float(psi @ (ms * psi))
    sz2 = float(psi @ (ms**2 * psi))
    sminus2 = float(psi @ (splus.T @ splus.T @ psi))
    pairs = n * (n - 1.0)
    return xstate_from_correlators(
        sz / n,
        sz / n,
        (sz2 - 0.25 * n) / pairs,
        sminus2 / pairs,
        (0.25 * n * n - sz2) / pairs,
    )
