"""
Entanglement and fidelity dynamics of a Bell pair whose qubit A couples to an
anisotropic Heisenberg XY spin bath, reduced to one bosonic mode and
propagated with a Laguerre polynomial expansion.
"""

from .dynamics import (LeakageExceeded, SubsystemTrajectory, run_reduced_dynamics, simulate)
from .metrics import concurrence, fidelity, ideal_evolution
from .model import ModelParams, assemble_total, build_hb, build_hs, build_hsb
from .propagator import PropagatorConfig, evolve_step, evolve_trajectory, exact_oracle
from .states import InitialState, make_initial
from .thermal import ThermalEnsemble, prepare_ensemble, t0_ensemble

__version__ = "0.1.0"
