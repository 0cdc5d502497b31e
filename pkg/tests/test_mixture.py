from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinchain_discord.discord import discord
from spinchain_discord.mixture import (
    MixtureParams,
    asymptote_near_half_pi,
    asymptote_small_theta,
    concurrence_coherent,
    discord_closed_form,
    discord_closed_form_coherent,
    epsilon_overlap,
    measured_conditional_entropy,
    mixture_state,
    mixture_state_coherent,
    unmeasured_conditional_entropy,
)
from spinchain_discord.pair_state import concurrence

D_QUARTER_PI = 0.1441768149  # independent dense evaluation at theta = pi/4

thetas = st.floats(min_value=1e-3, max_value=0.5 * math.pi - 1e-3)
epsilons = st.floats(min_value=-0.99, max_value=0.99)


def test_value_at_quarter_pi():
    theta = 0.25 * math.pi
    assert discord_closed_form(theta) == pytest.approx(D_QUARTER_PI, abs=1e-10)
    res = discord(mixture_state(theta))
    assert res.mutual_information == pytest.approx(0.390474, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(thetas)
def test_closed_form_matches_minimizer(theta):
    assert discord(mixture_state(theta)).discord == pytest.approx(discord_closed_form(theta), abs=1e-9)
    gap = measured_conditional_entropy(theta) - unmeasured_conditional_entropy(theta)
    assert gap == pytest.approx(discord_closed_form(theta), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(thetas, epsilons)
def test_coherent_closed_form_matches_minimizer(theta, eps):
    state = mixture_state_coherent(theta, eps)
    assert discord(state).discord == pytest.approx(discord_closed_form_coherent(theta, eps), abs=1e-9)
    assert concurrence(state)[0] == pytest.approx(concurrence_coherent(theta, eps), abs=1e-12)


def test_zero_epsilon_reduces_to_incoherent_mixture():
    for theta in np.linspace(0.0, 0.5 * math.pi, 11):
        assert mixture_state_coherent(theta, 0.0) == pytest.approx(mixture_state(theta))
        assert concurrence(mixture_state(theta))[0] < 1e-15


def test_epsilon_extremes():
    theta = 0.6
    bell = mixture_state_coherent(theta, -1.0)
    assert discord(bell).discord == pytest.approx(1.0, abs=1e-12)
    assert concurrence(bell)[0] == pytest.approx(1.0, abs=1e-12)
    plus = mixture_state_coherent(theta, 1.0)
    expected = math.sin(theta) ** 2 / (1 + math.cos(theta) ** 2)
    assert concurrence(plus)[0] == pytest.approx(expected, abs=1e-12)


def test_boundary_angles():
    assert discord_closed_form(0.0) == pytest.approx(0.0, abs=1e-15)
    assert discord_closed_form(0.5 * math.pi) == pytest.approx(0.0, abs=1e-15)


def test_asymptotes():
    for x in (1e-3, 3e-3):
        assert discord_closed_form(x) / asymptote_small_theta(x) == pytest.approx(1.0, rel=1e-4)
    for x in (1e-4, 1e-3):
        theta = 0.5 * math.pi - x
        assert discord_closed_form(theta) / asymptote_near_half_pi(theta) == pytest.approx(1.0, rel=1e-2)


def test_epsilon_overlap():
    theta = 0.25 * math.pi
    assert epsilon_overlap(theta, 10, "+") == pytest.approx(1 / 16)
    assert epsilon_overlap(theta, 10, "-") == pytest.approx(-1 / 16)
    with pytest.raises(ValueError):
        epsilon_overlap(theta, 2, "+")
    with pytest.raises(ValueError):
        epsilon_overlap(theta, 10, "0")


def test_side_limit_values():
    theta = 0.25 * math.pi
    assert discord_closed_form_coherent(theta, -1 / 16) == pytest.approx(0.153005, abs=1e-6)
    assert discord_closed_form_coherent(theta, 1 / 16) == pytest.approx(0.136777, abs=1e-6)


@pytest.mark.parametrize("theta, eps", [(-0.1, 0.0), (2.0, 0.0), (0.5, 1.5)])
def test_parameter_validation(theta, eps):
    with pytest.raises(ValueError):
        MixtureParams(theta, eps)
