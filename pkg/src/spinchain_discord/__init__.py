"""Quantum discord and entanglement of spin pairs in finite XY arrays."""

__version__ = "0.1.0"

from .discord import DiscordResult, MeasurementAxis, conditional_gap, discord, measured_spectrum, mutual_information
from .jw_chain import ChainSpec, factorizing_field, ground_sector, mixture_angle, pair_densities, pair_density
from .lmg import lmg_ground, lmg_pair_density
from .mixture import (
    discord_closed_form,
    discord_closed_form_coherent,
    epsilon_overlap,
    mixture_state,
    mixture_state_coherent,
)
from .pair_state import QubitState, XState, concurrence, entropy, eof, reduce, spectrum, xstate_from_correlators, xstate_from_elements

__all__ = [
    "ChainSpec",
    "DiscordResult",
    "MeasurementAxis",
    "QubitState",
    "XState",
    "concurrence",
    "conditional_gap",
    "discord",
    "discord_closed_form",
    "discord_closed_form_coherent",
    "entropy",
    "eof",
    "epsilon_overlap",
    "factorizing_field",
    "ground_sector",
    "lmg_ground",
    "lmg_pair_density",
    "measured_spectrum",
    "mixture_angle",
    "mixture_state",
    "mixture_state_coherent",
    "mutual_information",
    "pair_densities",
    "pair_density",
    "reduce",
    "spectrum",
    "xstate_from_correlators",
    "xstate_from_elements",
]
