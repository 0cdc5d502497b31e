from __future__ import annotations

import math
from functools import reduce as fold

import numpy as np
import pytest

from spinchain_discord.errors import DegenerateNormalization, SizeLimitExceeded, XFormViolation
from spinchain_discord.ed_oracle import (
    CouplingTable,
    aligned_product_state,
    build_and_ground,
    definite_parity_projection,
    hamiltonian,
    parity_operator_diagonal,
    reduced_pair,
    verify_separable_ground,
)
from spinchain_discord.mixture import mixture_state_coherent

# single-site operators in the (down, up) basis
SZ = np.diag([-0.5, 0.5])
SX = np.array([[0, 0.5], [0.5, 0]])
SY = np.array([[0, 0.5j], [-0.5j, 0]])


def site_op(op, i, n):
    return fold(np.kron, [op if k == i else np.eye(2) for k in range(n)])


def kron_hamiltonian(table: CouplingTable) -> np.ndarray:
    n = table.n
    h = table.b * sum(site_op(SZ, i, n) for i in range(n)).astype(complex)
    for i in range(n):
        for j in range(i + 1, n):
            for mat, op in ((table.jx, SX), (table.jy, SY), (table.jz, SZ)):
                h = h - mat[i, j] * site_op(op, i, n) @ site_op(op, j, n)
    return h


def test_hamiltonian_matches_kron_construction(rng):
    table = CouplingTable.random_common_anisotropy(5, 0.4, rng, jz_fraction=0.3).with_field(0.37)
    dense = hamiltonian(table).toarray()
    assert np.allclose(dense, kron_hamiltonian(table), atol=1e-14)


def test_hamiltonian_commutes_with_parity():
    table = CouplingTable.nearest_neighbor(6, 1.0, 0.3, 0.8)
    h = hamiltonian(table).toarray()
    p = np.diag(parity_operator_diagonal(6))
    assert np.allclose(h @ p, p @ h)
    assert np.allclose(h, h.T)


def test_sector_grounds_are_eigenvectors():
    table = CouplingTable.nearest_neighbor(8, 1.0, 0.5, 0.55)
    h = hamiltonian(table)
    ground = build_and_ground(table)
    for parity, energy in ((1, ground.energy_plus), (-1, ground.energy_minus)):
        vec = ground.sector_state(parity)
        assert np.linalg.norm(h @ vec - energy * vec) < 1e-11
        assert np.allclose(parity_operator_diagonal(8) * vec, parity * vec)
    full = np.linalg.eigvalsh(h.toarray())
    assert ground.energy == pytest.approx(full[0], abs=1e-12)


@pytest.mark.parametrize("sign", [1, -1])
def test_definite_parity_projection_pair(sign):
    n, theta = 6, 0.25 * math.pi
    state = definite_parity_projection(theta, n, sign)
    expected = mixture_state_coherent(theta, sign * math.cos(theta) ** (n - 2)).flipped()
    for j in (1, 2, 3):
        assert np.allclose(reduced_pair(state, 0, j).elements(), expected.elements(), atol=1e-14)


def test_projection_degenerate_normalization():
    with pytest.raises(DegenerateNormalization):
        definite_parity_projection(0.0, 4, -1)


def test_product_state_is_not_x_form():
    with pytest.raises(XFormViolation):
        reduced_pair(aligned_product_state(0.7, 4), 0, 1)


def test_size_limits():
    with pytest.raises(SizeLimitExceeded):
        hamiltonian(CouplingTable.nearest_neighbor(13, 1.0, 0.5, 0.1))
    assert hamiltonian(CouplingTable.nearest_neighbor(13, 1.0, 0.5, 0.1), allow_large=True).shape == (2**13, 2**13)


def test_table_validation():
    with pytest.raises(ValueError):
        CouplingTable(3, np.eye(3), np.zeros((3, 3)), np.zeros((3, 3)), 0.0)
    asym = np.array([[0, 1.0, 0], [0.5, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        CouplingTable(3, asym, np.zeros((3, 3)), np.zeros((3, 3)), 0.0)


@pytest.mark.parametrize("builder", [CouplingTable.nearest_neighbor, CouplingTable.fully_connected])
def test_separable_ground_at_factorizing_field(builder):
    chi = 0.6
    table = builder(7, 1.0, chi, math.sqrt(chi))
    assert verify_separable_ground(table) < 1e-12
    assert verify_separable_ground(table.with_field(1.2 * math.sqrt(chi))) > 1e-3


def test_random_tables_have_equal_row_sums(rng):
    table = CouplingTable.random_common_anisotropy(8, 0.3, rng)
    assert np.ptp(table.jx.sum(axis=1)) < 1e-12
