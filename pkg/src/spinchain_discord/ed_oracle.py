"""Brute-force exact diagonalization of small spin-1/2 arrays.

Hamiltonian::

    H = B * sum_i s_iz - 1/2 * sum_{i != j} sum_mu J_mu[i, j] s_imu s_jmu

i.e. every unordered pair enters once with coupling ``J_mu[i, j]``.

Basis index bits: site 0 is the most significant bit, bit value 0 is spin
down (``s_z = -1/2``) and 1 is spin up. The spin parity ``P_z = prod(-sigma_z)``
is then ``(-1)**(number of up spins)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh

from .errors import DegenerateNormalization, SizeLimitExceeded, XFormViolation
from .pair_state import XState, xstate_from_elements

ROUTINE_MAX_N = 12
HARD_MAX_N = 14
OFF_X_TOL = 1e-8


@dataclass(frozen=True)
class CouplingTable:
    n: int
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    b: float

    def __post_init__(self):
        for name in ("jx", "jy", "jz"):
            mat = np.asarray(getattr(self, name), dtype=float)
            if mat.shape != (self.n, self.n):
                raise ValueError(f"{name} must be {self.n}x{self.n}, got {mat.shape}")
            if not np.all(np.isfinite(mat)):
                raise ValueError(f"{name} has non-finite entries")
            if not np.allclose(mat, mat.T, rtol=0.0, atol=1e-14):
                raise ValueError(f"{name} is not symmetric")
            if np.any(np.diag(mat) != 0.0):
                raise ValueError(f"{name} has a non-zero diagonal")
            object.__setattr__(self, name, mat)

    def with_field(self, b: float) -> "CouplingTable":
        return CouplingTable(self.n, self.jx, self.jy, self.jz, b)

    @classmethod
    def nearest_neighbor(cls, n: int, jx: float, jy: float, b: float) -> "CouplingTable":
        """Cyclic chain with first-neighbour couplings."""
        ring = np.zeros((n, n))
        for i in range(n):
            ring[i, (i + 1) % n] = ring[(i + 1) % n, i] = 1.0
        return cls(n, jx * ring, jy * ring, np.zeros((n, n)), b)

    @classmethod
    def fully_connected(cls, n: int, jx: float, jy: float, b: float) -> "CouplingTable":
        """Uniformly connected array normalised so that
        ``H = B S_z - sum_mu J_mu (S_mu**2 - n/4) / (n - 1)``."""
        full = (np.ones((n, n)) - np.eye(n)) * 2.0 / (n - 1)
        return cls(n, jx * full, jy * full, np.zeros((n, n)), b)

    @classmethod
    def random_common_anisotropy(
        cls, n: int, chi: float, rng: np.random.Generator, scale: float = 1.0, jz_fraction: float = 0.0
    ) -> "CouplingTable":
        """Random ferromagnetic couplings of arbitrary range with a common
        anisotropy and equal per-site sums (required for a uniform separable
        ground state). Field is set to zero; use :meth:`with_field`."""
        raw = rng.uniform(0.05, 1.0, size=(n, n))
        mat = np.triu(raw, 1)
        mat = mat + mat.T
        for _ in range(500):
            d = 1.0 / np.sqrt(mat.sum(axis=1))
            mat = mat * np.outer(d, d)
            if np.max(np.abs(mat.sum(axis=1) - 1.0)) < 1e-15:
                break
        mat = 0.5 * (mat + mat.T) * scale
        jz = jz_fraction * mat
        jx = mat
        jy = jz + chi * (jx - jz)
        return cls(n, jx, jy, jz, 0.0)


@dataclass(frozen=True)
class ParityGround:
    energy_plus: float
    energy_minus: float
    state_plus: np.ndarray
    state_minus: np.ndarray

    @property
    def global_parity(self) -> int:
        return 1 if self.energy_plus <= self.energy_minus else -1

    @property
    def energy(self) -> float:
        return min(self.energy_plus, self.energy_minus)

    @property
    def state(self) -> np.ndarray:
        return self.state_plus if self.global_parity == 1 else self.state_minus

    def sector_state(self, parity: int) -> np.ndarray:
        return self.state_plus if parity == 1 else self.state_minus


def _check_size(n: int, allow_large: bool) -> None:
    limit = HARD_MAX_N if allow_large else ROUTINE_MAX_N
    if n > limit:
        raise SizeLimitExceeded(f"n={n} exceeds the dense limit {limit} (allow_large={allow_large})")


def _popcount(states: np.ndarray, n: int) -> np.ndarray:
    counts = np.zeros_like(states)
    for k in range(n):
        counts += (states >> k) & 1
    return counts


def site_bits(n: int, site: int) -> np.ndarray:
    return (np.arange(2**n) >> (n - 1 - site)) & 1


def hamiltonian(table: CouplingTable, allow_large: bool = False) -> sp.csr_matrix:
    """Sparse real symmetric Hamiltonian in the full ``2**n`` product basis."""
    n = table.n
    _check_size(n, allow_large)
    dim = 2**n
    states = np.arange(dim)
    bits = [site_bits(n, i) for i in range(n)]
    sz = [bit - 0.5 for bit in bits]
    diag = table.b * sum(sz)
    rows, cols, vals = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            jx, jy, jz = table.jx[i, j], table.jy[i, j], table.jz[i, j]
            if jz != 0.0:
                diag = diag - jz * sz[i] * sz[j]
            if jx == 0.0 and jy == 0.0:
                continue
            same = bits[i] == bits[j]
            # <flipped| sx sx |s> = 1/4; <flipped| sy sy |s> = +1/4 (opposite) or -1/4 (equal)
            amp = np.where(same, 0.25 * (jx - jy), 0.25 * (jx + jy))
            keep = amp != 0.0
            flipped = states ^ ((1 << (n - 1 - i)) | (1 << (n - 1 - j)))
            rows.append(flipped[keep])
            cols.append(states[keep])
            vals.append(-amp[keep])
    rows.append(states)
    cols.append(states)
    vals.append(diag)
    return sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )


def parity_indices(n: int) -> dict[int, np.ndarray]:
    counts = _popcount(np.arange(2**n), n)
    return {1: np.flatnonzero(counts % 2 == 0), -1: np.flatnonzero(counts % 2 == 1)}


def parity_operator_diagonal(n: int) -> np.ndarray:
    return np.where(_popcount(np.arange(2**n), n) % 2 == 0, 1.0, -1.0)


def build_and_ground(table: CouplingTable, allow_large: bool = False) -> ParityGround:
    """Lowest eigenpair of each parity block (full block spectrum, dense)."""
    ham = hamiltonian(table, allow_large)
    dim = 2**table.n
    energies, vectors = {}, {}
    for parity, idx in parity_indices(table.n).items():
        block = ham[idx][:, idx].toarray()
        w, v = eigh(block)
        full = np.zeros(dim)
        vec = v[:, 0]
        # deterministic sign: largest-magnitude amplitude positive
        vec = vec * np.sign(vec[np.argmax(np.abs(vec))])
        full[idx] = vec
        energies[parity], vectors[parity] = float(w[0]), full
    return ParityGround(energies[1], energies[-1], vectors[1], vectors[-1])


def pair_matrix(state: np.ndarray, n: int, i: int, j: int) -> np.ndarray:
    """4x4 reduced density of sites ``i, j`` in the oracle bit basis."""
    if i == j:
        raise ValueError("sites must differ")
    psi = np.asarray(state).reshape((2,) * n)
    psi = np.moveaxis(psi, (i, j), (0, 1)).reshape(4, -1)
    return psi @ psi.conj().T


def reduced_pair(state: np.ndarray, i: int, j: int) -> XState:
    """Reduced X state of spins ``i`` and ``j`` (first spin ``i``).

    Raises :class:`XFormViolation` if the density has weight off the X pattern.
    """
    n = int(round(math.log2(len(state))))
    rho = pair_matrix(state, n, i, j)
    # oracle index 3 = both up = X-state index 0
    rho = rho[::-1, ::-1]
    mask = np.array(
        [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=bool
    )
    off = np.abs(rho[~mask]).max()
    if off > OFF_X_TOL:
        raise XFormViolation(f"off-X weight {off:.3e} on pair ({i}, {j})")
    if np.abs(rho.imag).max() > OFF_X_TOL:
        raise XFormViolation("complex coherences in pair density")
    rho = rho.real
    return xstate_from_elements(rho[0, 0], rho[3, 3], rho[1, 1], rho[2, 2], rho[0, 3], rho[1, 2])


def aligned_product_state(theta: float, n: int) -> np.ndarray:
    """``prod_i exp(i theta s_iy) |down>``: every spin at angle ``theta`` from -z."""
    site = np.array([math.cos(0.5 * theta), math.sin(0.5 * theta)])
    vec = np.ones(1)
    for _ in range(n):
        vec = np.kron(vec, site)
    return vec


def definite_parity_projection(theta: float, n: int, sign: int) -> np.ndarray:
    """``(|Theta> + sign |-Theta>) / sqrt(2 (1 + sign cos**n theta))``."""
    _check_size(n, allow_large=True)
    overlap = math.cos(theta) ** n
    norm2 = 2.0 * (1.0 + sign * overlap)
    if norm2 < 2e-14:
        raise DegenerateNormalization(f"1 {'+' if sign > 0 else '-'} cos^n(theta) vanishes")
    plus = aligned_product_state(theta, n)
    minus = aligned_product_state(-theta, n)
    return (plus + sign * minus) / math.sqrt(norm2)


def common_anisotropy(table: CouplingTable) -> float:
    """``(J_y - J_z)/(J_x - J_z)`` shared by every coupled pair."""
    dx = table.jx - table.jz
    coupled = np.abs(dx) > 0.0
    ratios = (table.jy - table.jz)[coupled] / dx[coupled]
    if ratios.size == 0 or np.ptp(ratios) > 1e-12:
        raise ValueError("couplings do not share a common anisotropy")
    return float(ratios.mean())


def verify_separable_ground(table: CouplingTable, allow_large: bool = False) -> float:
    """Residual ``||(H - E0)|Theta>||`` of the aligned product state with
    ``cos(theta) = sqrt(chi)``, ``E0`` the exact ground energy."""
    chi = common_anisotropy(table)
    theta = math.acos(math.sqrt(chi))
    ham = hamiltonian(table, allow_large)
    e0 = build_and_ground(table, allow_large).energy
    vec = aligned_product_state(theta, table.n)
    return float(np.linalg.norm(ham @ vec - e0 * vec))
