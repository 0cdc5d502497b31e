from __future__ import annotations

import numpy as np
import pytest

from spinchain_discord.pair_state import XState
from spinchain_discord.validation import random_xstate

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def random_states(count: int, seed: int = 7) -> list[XState]:
    gen = np.random.default_rng(seed)
    return [random_xstate(gen) for _ in range(count)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
