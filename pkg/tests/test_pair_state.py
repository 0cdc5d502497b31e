from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinchain_discord.errors import NegativeEigenvalue, PositivityViolation, TraceError
from spinchain_discord.pair_state import (
    XState,
    concurrence,
    entropy,
    eof,
    reduce,
    spectrum,
    xstate_from_correlators,
    xstate_from_elements,
)

from conftest import random_states

unit = st.floats(min_value=0.0, max_value=1.0)
sign = st.floats(min_value=-1.0, max_value=1.0)


@st.composite
def xstates(draw) -> XState:
    w = np.array([draw(unit) for _ in range(4)]) + 1e-3
    a, b, c, cp = w / w.sum()
    return xstate_from_elements(a, b, c, cp, draw(sign) * math.sqrt(a * b), draw(sign) * math.sqrt(c * cp))


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    t = rho.reshape(2, 2, 2, 2)
    return np.einsum("ikjk->ij", t) if keep == "first" else np.einsum("kikj->ij", t)


def wootters(rho: np.ndarray) -> float:
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    tilde = yy @ rho.conj() @ yy
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(rho @ tilde).real)[::-1], 0.0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


@settings(max_examples=200, deadline=None)
@given(xstates())
def test_spectrum_matches_dense_eigenvalues(state):
    dense = np.sort(np.linalg.eigvalsh(state.matrix()))[::-1]
    assert np.allclose(spectrum(state), dense, atol=1e-13)


@settings(max_examples=200, deadline=None)
@given(xstates())
def test_marginals_match_dense_partial_trace(state):
    for site in ("first", "second"):
        dense = partial_trace(state.matrix(), site)
        assert np.allclose(np.diag(dense), reduce(state, site).probabilities(), atol=1e-15)
        assert abs(dense[0, 1]) == 0.0


@settings(max_examples=200, deadline=None)
@given(xstates())
def test_concurrence_matches_wootters(state):
    value, kind = concurrence(state)
    assert value == pytest.approx(wootters(state.matrix()), abs=1e-7)
    if value > 0:
        assert kind == ("parallel" if abs(state.alpha) > abs(state.beta) else "antiparallel")


@settings(max_examples=100, deadline=None)
@given(xstates())
def test_flip_and_swap_keep_spectrum_and_concurrence(state):
    for other in (state.flipped(), state.swapped()):
        assert np.allclose(spectrum(other), spectrum(state), atol=1e-15)
        assert concurrence(other)[0] == pytest.approx(concurrence(state)[0], abs=1e-15)
    assert reduce(state.swapped(), "first") == reduce(state, "second")


def test_correlator_round_trip():
    for state in random_states(50):
        sz_first = 0.5 * (reduce(state, "first").p0 - reduce(state, "first").p1)
        sz_second = 0.5 * (reduce(state, "second").p0 - reduce(state, "second").p1)
        szsz = 0.25 * (state.a + state.b - state.c - state.cp)
        back = xstate_from_correlators(sz_first, sz_second, szsz, state.alpha, state.beta)
        assert np.allclose(back.elements(), state.elements(), atol=1e-15)


def test_small_negative_population_is_clamped():
    state = xstate_from_elements(0.5, 0.5, -5e-13, 0.0, 0.0, 0.0)
    assert state.c == 0.0


@pytest.mark.parametrize(
    "elements, error",
    [
        ((0.6, 0.4, -1e-6, 0.0, 0.0, 0.0), PositivityViolation),
        ((0.5, 0.5, 0.1, 0.0, 0.0, 0.0), TraceError),
        ((0.25, 0.25, 0.25, 0.25, 0.3, 0.0), PositivityViolation),
        ((0.25, 0.25, 0.25, 0.25, 0.0, -0.3), PositivityViolation),
        ((0.25, 0.25, 0.25, 0.25, math.nan, 0.0), PositivityViolation),
    ],
)
def test_invalid_elements_raise(elements, error):
    with pytest.raises(error):
        xstate_from_elements(*elements)


def test_entropy_values_and_errors():
    assert entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert entropy([1.0, 0.0]) == 0.0
    assert entropy([0.25] * 4) == pytest.approx(2.0)
    with pytest.raises(NegativeEigenvalue):
        entropy([1.1, -0.1])


def test_eof_endpoints_and_monotone():
    assert eof(0.0) == 0.0
    assert eof(1.0) == pytest.approx(1.0)
    values = [eof(c) for c in np.linspace(0.0, 1.0, 101)]
    assert np.all(np.diff(values) > 0)


def test_bell_state_concurrence():
    bell = xstate_from_elements(0.0, 0.0, 0.5, 0.5, 0.0, 0.5)
    assert concurrence(bell) == (1.0, "antiparallel")
