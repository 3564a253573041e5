"""
Thermal bath ensembles
======================

The bath starts in a Gibbs state of its own Hamiltonian. Only the lowest M
eigenstates are kept, where M is the smallest count whose discarded
Boltzmann weight is at most epsilon.
"""

import numpy as np

from bellbath.model import ModelParams, build_hb
from bellbath.thermal import prepare_ensemble, retained_levels, t0_ensemble

for gamma in (0.0, 0.2, 0.6, 1.0):
    hb = build_hb(ModelParams(gamma=gamma, g=1.0, fock_dim=60))
    energies = np.linalg.eigvalsh(hb)
    counts = [retained_levels(energies, 1.0, eps) for eps in (1e-4, 1e-8, 1e-12)]
    print(f"gamma={gamma:3.1f}  M at eps=1e-4, 1e-8, 1e-12: {counts}")

# hotter baths need more members and carry more energy
hb = build_hb(ModelParams(gamma=0.6, g=1.0, fock_dim=60))
for T in (0.2, 1.0, 5.0):
    ens = prepare_ensemble(hb, T)
    print(f"T={T:3.1f}  M={ens.cutoff:2d}  <H_b>={ens.mean_energy():8.4f}")

# at zero temperature the ensemble is the ground state
print(t0_ensemble(hb).cutoff)
