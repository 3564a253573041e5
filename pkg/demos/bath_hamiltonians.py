"""
The bath as a single boson mode
===============================

A large XY spin bath is mapped to one boson mode. In the limit of infinitely
many spins the bath Hamiltonian is quadratic; for finite N the ladder
operators pick up first-order corrections (1 - n/2N).
"""

import numpy as np

from bellbath.model import ModelParams, assemble_total, build_hb, build_hs, build_hsb

p = ModelParams(mu0=2.0, g0=1.0, g=1.0, gamma=0.6, fock_dim=30)
print(p.regime, p.dim)

# the pair alone: energies 2*mu0, 0, 0, -2*mu0
print(np.diag(build_hs(p)).real)

# the squeezing term gamma (b^dag^2 + b^2) mixes even and odd Fock states separately
hb = build_hb(p)
print(np.round(np.linalg.eigvalsh(hb)[:6], 4))

# the finite-N bath approaches the limit as N grows
for N in (40, 400, 4000, 10**6):
    diff = np.abs(build_hb(p.with_(N=N, fock_dim=8)) - build_hb(p.with_(fock_dim=8))).max()
    print(f"N={N:>7d}  max|H_b(N) - H_b(inf)| = {diff:.2e}")

# by default only qubit A talks to the boson; couple_b adds the same terms for B
extra = build_hsb(p.with_(couple_b=True)) - build_hsb(p)
print(np.count_nonzero(np.abs(extra) > 0))

h = assemble_total(p)
print(h.shape, np.abs(h - h.conj().T).max())
