"""Thermal bath preparation as a Boltzmann-weighted ensemble of bath eigenstates."""

from dataclasses import dataclass

import numpy as np

from .operators import hermitian_eig

DEFAULT_EPSILON = 1e-8
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class ThermalEnsemble:
    """
    Retained bath eigenpairs with normalized Boltzmann weights.

    ``states[:, m]`` is the eigenvector for ``energies[m]``; energies ascend.
    ``temperature`` is 0 for a ground-state ensemble (k_B = 1).
    """

    energies: np.ndarray
    states: np.ndarray
    weights: np.ndarray
    log_partition: float
    temperature: float
    epsilon: float | None = None

    @property
    def cutoff(self):
        return len(self.weights)

    @property
    def partition(self):
        return float(np.exp(self.log_partition))

    def density_matrix(self):
        return (self.states * self.weights) @ self.states.conj().T

    def mean_energy(self):
        return float(self.weights @ self.energies)


def boltzmann_tail(energies, T):
    """
    Relative Boltzmann mass left out when keeping only the first k levels.

    Entry ``k`` is sum_{m>=k} exp(-E_m/T) / Z for k = 0..len(energies).
    """
    e = np.asarray(energies, dtype=float)
    raw = np.exp(-(e - e[0]) / T)
    tail = np.concatenate([np.cumsum(raw[::-1])[::-1], [0.0]])
    return tail / tail[0]


def retained_levels(energies, T, epsilon=DEFAULT_EPSILON):
    """Smallest level count whose discarded Boltzmann mass is at most ``epsilon``."""
    tail = boltzmann_tail(energies, T)
    return int(np.argmax(tail <= epsilon))


def prepare_ensemble(hb, T, epsilon=DEFAULT_EPSILON):
    """
    Thermal state of the bath Hamiltonian ``hb`` at temperature ``T``.

    Keeps the lowest M eigenstates such that the discarded share of the
    Boltzmann mass (over the whole truncated spectrum) is at most ``epsilon``,
    then renormalizes the weights over the kept levels.
    """
    if not T > 0:
        raise ValueError(f"temperature must be > 0, got {T}; use t0_ensemble for T=0")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    energies, vecs = hermitian_eig(hb)
    m = max(1, retained_levels(energies, T, epsilon))
    raw = np.exp(-(energies[:m] - energies[0]) / T)
    total = raw.sum()
    log_z = float(np.log(total) - energies[0] / T)
    return ThermalEnsemble(energies=energies[:m], states=vecs[:, :m], weights=raw / total,
                           log_partition=log_z, temperature=float(T), epsilon=float(epsilon))


def t0_ensemble(hb):
    """Zero-temperature ensemble: the ground state, or the uniform mix of a degenerate ground space."""
    energies, vecs = hermitian_eig(hb)
    m = int(np.count_nonzero(energies - energies[0] <= DEGENERACY_TOL))
    weights = np.full(m, 1.0 / m)
    return ThermalEnsemble(energies=energies[:m], states=vecs[:, :m], weights=weights,
                           log_partition=float("nan"), temperature=0.0)
