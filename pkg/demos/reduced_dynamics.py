"""
Pair dynamics in a thermal bath
===============================

Each thermal bath member is paired with the initial Bell state and evolved
under the full Hamiltonian. The boson is then traced out and the results are
mixed with the Boltzmann weights.
"""

import numpy as np

from bellbath import ModelParams, simulate

p = ModelParams(mu0=2.0, g0=1.0, g=1.0, gamma=0.6)
grid = np.linspace(0, 25, 251)
e1, e2 = simulate(p, 1.0, ["e1", "e2"], t_grid=grid, strict=False)
print(e1.meta)

C, F1, F2 = e1.concurrence(), e1.fidelity(), e2.fidelity()
for k in range(0, len(grid), 25):
    print(f"g0t={grid[k]:5.1f}  C={C[k]:.4f}  Fd1={F1[k]:.4f}  Fd2={F2[k]:.4f}")

# all four Bell states give the same concurrence series
print(np.abs(e2.concurrence() - C).max())

# the finite bath of N = 40 spins, where fock_dim is capped at N + 1
finite = simulate(p.with_(N=40), 1.0, "e1", t_grid=grid, strict=False)
print(finite.meta["fock_dim"], finite.meta["leakage_ok"], finite.concurrence()[-1])
