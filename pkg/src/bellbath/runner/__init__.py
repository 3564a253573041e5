"""Scenario configs, sweeps, CSV output and the reproduction report."""

from .config import ConfigError, ScenarioConfig, load_config, parse_config
from .esd import DeathInterval, detect_esd
from .presets import PRESETS, get_preset
from .reproduce import ReproductionReport, calibrate_cutoff, reproduce_quoted
from .scenario import Trajectory, read_csv, run_scenario, write_csv
