"""Synthetic data with known truth and the exact least-squares oracle."""

from .oracle import oracle_ols, solve_full_pivot
from .rng import Xoshiro256, splitmix64
from .scenario import (
    EPOCH,
    SynthScenario,
    generate_panel,
    load_scenario,
    price_panel,
    study_config_text,
    truth_json,
    weekdays,
)

__all__ = [
    "EPOCH",
    "SynthScenario",
    "Xoshiro256",
    "generate_panel",
    "load_scenario",
    "oracle_ols",
    "price_panel",
    "solve_full_pivot",
    "splitmix64",
    "study_config_text",
    "truth_json",
    "weekdays",
]
