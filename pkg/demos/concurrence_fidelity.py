"""
Concurrence and fidelity
========================

Concurrence measures how entangled the pair is. Fidelity here is the trace
overlap with the state the pair would reach with no bath at all.
"""

import numpy as np

from bellbath.metrics import concurrence, fidelity, ideal_evolution
from bellbath.states import InitialState, make_initial


def projector(v):
    return np.outer(v, v.conj())


e1, e4 = make_initial("e1"), make_initial("e4")
print(concurrence(projector(e1)).value)

# Werner states lose entanglement below p = 1/3
for p in (0.2, 1 / 3, 0.5, 0.9):
    rho = p * projector(e4) + (1 - p) * np.eye(4) / 4
    print(f"p={p:.3f}  C={concurrence(rho).value:.4f}")

# e1 and e3 precess under the bare pair Hamiltonian, e2 and e4 do not move
for label in ("e1", "e2"):
    frozen = projector(make_initial(label))
    overlaps = [fidelity(frozen, ideal_evolution(label, 2.0, t)).value for t in (0, 0.2, 0.4)]
    print(label, np.round(overlaps, 4))

# a relative phase on the Bell amplitudes leaves concurrence unchanged
print(concurrence(projector(make_initial(InitialState("e1", theta=np.pi / 3)))).value)
