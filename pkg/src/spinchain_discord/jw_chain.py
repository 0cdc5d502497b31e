"""Parity-resolved exact ground states of the cyclic first-neighbour XY chain.

After the Jordan-Wigner mapping ``c_i^dag = s_i^+ exp(-i pi sum_{j<i} n_j)``
each spin-parity sector is a quadratic fermion problem with momenta
``omega_k = 2 pi k / n``: half-integer ``k`` for positive parity
(antiperiodic fermions), integer ``k`` for negative parity (periodic).
Pairs ``(k, -k)`` are solved by a BCS rotation; the unpaired momenta
``omega = 0`` and ``omega = pi`` are either empty or filled, whichever the
sector parity and energy require.

Pair correlators follow from Wick's theorem with the Majorana operators
``A_i = c_i^dag + c_i`` and ``B_i = c_i^dag - c_i``, whose only non-trivial
contraction is ``<B_i A_{i+r}> = 2 (f_r + g_r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (
    AnisotropyOutOfRange,
    FieldAboveCritical,
    ModelUnsupported,
    SeparationOutOfRange,
)
from .pair_state import XState, xstate_from_correlators

Topology = Literal["nearest_neighbor_cyclic", "fully_connected"]

CROSSING_REL_TOL = 1e-11


@dataclass(frozen=True)
class ChainSpec:
    n: int
    jx: float
    jy: float
    b: float
    topology: Topology = "nearest_neighbor_cyclic"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"n={self.n} must be at least 3")
        if not all(math.isfinite(v) for v in (self.jx, self.jy, self.b)):
            raise ValueError("couplings and field must be finite")
        if self.topology not in ("nearest_neighbor_cyclic", "fully_connected"):
            raise ValueError(f"unknown topology {self.topology!r}")

    @property
    def j_plus(self) -> float:
        return 0.5 * (self.jx + self.jy)

    @property
    def j_minus(self) -> float:
        return 0.5 * (self.jx - self.jy)

    @property
    def chi(self) -> float:
        return self.jy / self.jx

    def with_field(self, b: float) -> "ChainSpec":
        return ChainSpec(self.n, self.jx, self.jy, b, self.topology)

    @classmethod
    def from_chi(cls, n: int, jx: float, chi: float, b: float, topology: Topology = "nearest_neighbor_cyclic"):
        return cls(n, jx, chi * jx, b, topology)


@dataclass(frozen=True)
class QuasiparticleSolution:
    parity: int
    ks: np.ndarray
    omegas: np.ndarray
    lambdas: np.ndarray
    us: np.ndarray
    vs: np.ndarray
    sector_energy: float

    @property
    def occupations(self) -> np.ndarray:
        return self.vs**2


@dataclass(frozen=True)
class Contractions:
    """``f[l] = <c_i^dag c_{i+l}> - delta_l0/2`` and ``g[l] = <c_i^dag c_{i+l}^dag>``."""

    f: np.ndarray
    g: np.ndarray

    def f_at(self, r: int) -> float:
        return float(self.f[abs(r)])

    def g_at(self, r: int) -> float:
        return float(math.copysign(1.0, r) * self.g[abs(r)]) if r != 0 else 0.0


@dataclass(frozen=True)
class SectorChoice:
    parity: int
    energy: float
    energy_plus: float
    energy_minus: float
    crossing: bool


def _require_nn(spec: ChainSpec) -> None:
    if spec.topology != "nearest_neighbor_cyclic":
        raise ModelUnsupported(f"free-fermion solution needs a nearest-neighbour chain, got {spec.topology}")


def mode_indices(n: int, parity: int) -> np.ndarray:
    if parity == 1:
        return np.arange(n) + 0.5
    if parity == -1:
        return np.arange(n, dtype=float)
    raise ValueError(f"parity must be +1 or -1, got {parity!r}")


def quasiparticle_spectrum(spec: ChainSpec, parity: int) -> QuasiparticleSolution:
    """BCS solution of one parity sector (``spec.b >= 0``)."""
    _require_nn(spec)
    if spec.b < 0.0:
        raise ValueError("negative fields are folded by the caller (B -> -B)")
    n, jp, jm = spec.n, spec.j_plus, spec.j_minus
    ks = mode_indices(n, parity)
    omegas = 2.0 * math.pi * ks / n
    eps = spec.b - jp * np.cos(omegas)
    delta = jm * np.sin(omegas)
    unpaired = (2.0 * ks) % n == 0
    # exact zeros for the unpaired momenta (sin(pi) is not exactly 0 in floating point)
    delta[unpaired] = 0.0

    occupied = np.zeros(n, dtype=bool)
    if parity == -1:
        zero_mode = ks == 0.0
        pi_mode = 2.0 * ks == n
        if n % 2 == 1:
            if jp < 0.0:
                raise ModelUnsupported("odd antiferromagnetic rings are not handled")
            occupied |= zero_mode
        else:
            # one of the two unpaired momenta must be filled; take the cheaper one
            occupied |= zero_mode if eps[zero_mode][0] <= eps[pi_mode][0] else pi_mode

    lambdas = np.sqrt(eps**2 + delta**2)
    lambdas[unpaired] = np.where(occupied[unpaired], -eps[unpaired], eps[unpaired])

    vs2 = np.where(unpaired, occupied.astype(float), 0.0)
    paired = ~unpaired
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(lambdas[paired] > 0.0, eps[paired] / lambdas[paired], 1.0)
    vs2[paired] = 0.5 * (1.0 - ratio)
    us = np.sqrt(1.0 - vs2)
    vs = np.sqrt(vs2) * np.where(delta < 0.0, -1.0, 1.0)
    energy = -0.5 * float(np.sum(lambdas))
    return QuasiparticleSolution(parity, ks, omegas, lambdas, us, vs, energy)


def sector_energies(spec: ChainSpec) -> tuple[float, float]:
    folded = spec.with_field(abs(spec.b))
    plus = quasiparticle_spectrum(folded, 1).sector_energy
    minus = quasiparticle_spectrum(folded, -1).sector_energy
    if spec.b < 0.0 and spec.n % 2 == 1:
        plus, minus = minus, plus
    return plus, minus


def ground_sector(spec: ChainSpec) -> SectorChoice:
    """Parity of the lower sector; ``crossing`` flags near-degeneracy."""
    plus, minus = sector_energies(spec)
    scale = max(abs(spec.j_plus), abs(spec.jx), 1e-300)
    crossing = abs(plus - minus) < CROSSING_REL_TOL * spec.n * scale
    parity = 1 if plus <= minus else -1
    return SectorChoice(parity, min(plus, minus), plus, minus, crossing)


def contractions(spec: ChainSpec, parity: int) -> Contractions:
    """Real-space contractions of one parity sector ground state (``b >= 0``)."""
    sol = quasiparticle_spectrum(spec, parity)
    n = spec.n
    ls = np.arange(n)
    phase = np.outer(ls, sol.omegas)
    f = np.cos(phase) @ sol.occupations / n
    f[0] -= 0.5
    g = np.sin(phase) @ (sol.us * sol.vs) / n
    return Contractions(f, g)


def _majorana_matrix(con: Contractions, size: int, shift: int) -> np.ndarray:
    p = np.arange(size)
    r = p[None, :] - p[:, None] + shift
    fr = con.f[np.abs(r)]
    gr = np.sign(r) * con.g[np.abs(r)]
    return 2.0 * (fr + gr)


def spin_correlators(con: Contractions, separation: int) -> dict[str, float]:
    """``<s_z>``, ``<s_iz s_jz>``, ``<s_ix s_jx>`` and ``<s_iy s_jy>`` at distance ``separation``."""
    f0 = float(con.f[0])
    fl, gl = float(con.f[separation]), float(con.g[separation])
    xx = 0.25 * np.linalg.det(_majorana_matrix(con, separation, 1))
    yy = 0.25 * np.linalg.det(_majorana_matrix(con, separation, -1))
    return {"sz": f0, "szsz": f0 * f0 - fl * fl + gl * gl, "xx": float(xx), "yy": float(yy)}


def _fold(spec: ChainSpec, parity: int | None) -> tuple[ChainSpec, int, bool]:
    """Map a negative field onto a positive one by a global spin flip."""
    if parity is None:
        parity = ground_sector(spec).parity
    if spec.b >= 0.0:
        return spec, parity, False
    flip_sign = -1 if spec.n % 2 else 1
    return spec.with_field(-spec.b), parity * flip_sign, True


def pair_densities(
    spec: ChainSpec, separations: Iterable[int], parity: int | None = None
) -> dict[int, XState]:
    """Pair densities for several separations from one set of contractions.

    ``parity`` selects a sector; by default the ground-state sector is used.
    """
    _require_nn(spec)
    seps = list(separations)
    for L in seps:
        if not 1 <= L <= spec.n // 2:
            raise SeparationOutOfRange(f"L={L} outside 1..{spec.n // 2}")
    folded, sector, flipped = _fold(spec, parity)
    con = contractions(folded, sector)
    out = {}
    for L in seps:
        corr = spin_correlators(con, L)
        alpha = corr["xx"] - corr["yy"]
        beta = corr["xx"] + corr["yy"]
        state = xstate_from_correlators(corr["sz"], corr["sz"], corr["szsz"], alpha, beta)
        out[L] = state.flipped() if flipped else state
    return out


def pair_density(spec: ChainSpec, L: int, parity: int | None = None) -> XState:
    return pair_densities(spec, [L], parity)[L]


def factorizing_field(
    source: ChainSpec | Sequence[float], jy: Sequence[float] | None = None, jz: Sequence[float] | None = None
) -> float:
    """Transverse field at which the ground state is an exact product state.

    ``source`` is either a :class:`ChainSpec` (result ``sqrt(jx*jy)`` for both
    topologies) or the couplings ``J_x[i, j]`` of one site to all others, with
    ``jy`` (and optionally ``jz``) given alongside, in the convention where
    each unordered pair enters the Hamiltonian once.
    """
    if isinstance(source, ChainSpec):
        chi = source.chi
        if not 0.0 < chi < 1.0:
            raise AnisotropyOutOfRange(f"chi={chi!r} outside (0, 1)")
        return math.sqrt(source.jx * source.jy)
    jx_row = np.asarray(source, dtype=float)
    if jy is None:
        raise ValueError("jy couplings are required with a coupling list")
    jy_row = np.asarray(jy, dtype=float)
    jz_row = np.zeros_like(jx_row) if jz is None else np.asarray(jz, dtype=float)
    dx = jx_row - jz_row
    coupled = dx != 0.0
    ratios = (jy_row - jz_row)[coupled] / dx[coupled]
    if ratios.size == 0 or np.ptp(ratios) > 1e-12:
        raise AnisotropyOutOfRange("couplings do not share a common anisotropy")
    chi = float(ratios.mean())
    if not 0.0 < chi < 1.0:
        raise AnisotropyOutOfRange(f"chi={chi!r} outside (0, 1)")
    return 0.5 * math.sqrt(chi) * float(dx.sum())


def mixture_angle(spec: ChainSpec, mean_field: bool = False) -> float:
    """Alignment angle of the product-state picture.

    ``cos(theta) = B_s/J_x`` at the factorizing field, or ``B/J_x`` for the
    mean-field description at arbitrary field.
    """
    if mean_field:
        ratio = abs(spec.b / spec.jx)
        if ratio > 1.0:
            raise FieldAboveCritical(f"|B/J_x|={ratio!r} > 1")
        return math.acos(ratio)
    return math.acos(factorizing_field(spec) / abs(spec.jx))


def parity_crossings(spec: ChainSpec, b_max: float, samples: int = 4000) -> list[float]:
    """Fields in ``(0, b_max]`` where the two sector energies cross.

    A crossing at ``b_max`` itself (within root tolerance) is included.
    """
    def gap(b: float) -> float:
        plus, minus = sector_energies(spec.with_field(b))
        return plus - minus

    scale = abs(spec.j_plus) * spec.n
    tol = CROSSING_REL_TOL * scale
    grid = np.linspace(0.0, b_max, samples + 1)[1:]
    values = [gap(b) for b in grid]
    roots = []
    for (b0, v0), (b1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if v0 == 0.0 or abs(v0) < tol:
            continue
        if v0 * v1 < 0.0 or abs(v1) < tol:
            roots.append(b1 if abs(v1) < tol else brentq(gap, b0, b1, xtol=1e-14))
    return roots


def ground_parities(spec: ChainSpec, fields: Iterable[float]) -> list[int]:
    return [ground_sector(spec.with_field(b)).parity for b in fields]
