"""
Operators on the pair-plus-boson space
======================================

The composite space is qubit A (x) qubit B (x) one boson mode. Each qubit
uses the ordering (|1>, |0>), so sigma_z = diag(1, -1) and the pair basis
reads |11>, |10>, |01>, |00>.
"""

import numpy as np

from bellbath.operators import boson_ops, kron, partial_trace_boson, pauli, sigma_pm

# sigma_+ raises |0> to |1>, which in this ordering is the upper-right entry
print(sigma_pm("+"))
print(np.allclose(sigma_pm("+") @ sigma_pm("-") - sigma_pm("-") @ sigma_pm("+"), pauli("z")))

# truncated ladder operators keep [b, b^dag] = 1 except on the top level
b, bd, n = boson_ops(6)
print(np.diag(b @ bd - bd @ b).real)

# a Bell pair next to a coherent-ish boson state, then trace the boson out
pair = np.array([1, 0, 0, 1]) / np.sqrt(2)
boson = np.exp(-0.5) * np.array([1, 1, 1 / np.sqrt(2), 1 / np.sqrt(6), 1 / np.sqrt(24), 0])
boson /= np.linalg.norm(boson)
psi = np.kron(pair, boson)
rho_pair = partial_trace_boson(np.outer(psi, psi.conj()), fock_dim=6)
print(np.round(rho_pair.real, 3))

# operators on the full space compose with kron in the same A, B, boson order
zz_n = kron(pauli("z"), pauli("z"), n)
print(zz_n.shape)
