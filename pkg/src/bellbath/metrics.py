"""Wootters concurrence and overlap fidelity of the reduced pair state."""

from dataclasses import dataclass

import numpy as np

from .operators import PAIR_DIM, hermitize, kron, pauli
from .states import InitialState, make_initial

CLAMP_TOL = 1e-10
IMAG_TOL = 1e-10

SPIN_FLIP = kron(pauli("y"), pauli("y"))


class NegativeSpectrum(ValueError):
    """Spin-flip product matrix has an eigenvalue below -1e-10."""


class ImaginaryResidual(ValueError):
    """Overlap trace has an imaginary part above tolerance."""


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: np.ndarray

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class FidelityResult:
    value: float
    group_tag: str | None = None

    def __float__(self):
        return self.value


def _psd_sqrt(rho):
    w, v = np.linalg.eigh(rho)
    if w.min() < -CLAMP_TOL:
        raise NegativeSpectrum(f"input state has eigenvalue {w.min():.3e}")
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def concurrence_lambdas(rho):
    """
    Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.

    They are the singular values of sqrt(rho) sqrt(rho~) with
    rho~ = (sy x sy) rho* (sy x sy). Taking singular values keeps the small
    lambdas at roundoff size for nearly pure states, where square-rooting
    roundoff-sized eigenvalues would inflate them to ~1e-8.
    """
    rho = hermitize(rho)
    if rho.shape != (PAIR_DIM, PAIR_DIM):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    root = _psd_sqrt(rho)
    root_flipped = SPIN_FLIP @ root.conj() @ SPIN_FLIP
    return np.linalg.svd(root @ root_flipped, compute_uv=False)


def concurrence(rho):
    """
    Wootters concurrence max(l1 - l2 - l3 - l4, 0) with l1 >= l2 >= l3 >= l4.

    Raises :class:`NegativeSpectrum` when ``rho`` has an eigenvalue below
    -1e-10 (the spin-flip product then has no valid square roots); smaller
    negative eigenvalues are clamped to zero.
    """
    lam = concurrence_lambdas(rho)
    return ConcurrenceResult(value=float(max(lam[0] - lam[1:].sum(), 0.0)), lambdas=lam)


def ideal_state(init, mu0, t):
    """Pair vector evolved under mu0 (sz_A + sz_B) alone, in closed form."""
    psi0 = make_initial(init) if isinstance(init, (InitialState, str)) else np.asarray(init)
    energies = mu0 * np.array([2.0, 0.0, 0.0, -2.0])
    return np.exp(-1j * energies * t) * psi0


def ideal_evolution(init, mu0, t):
    """Projector onto the bath-free evolved pair state."""
    psi = ideal_state(init, mu0, t)
    return np.outer(psi, psi.conj())


def fidelity(rho_s, rho_ideal, group_tag=None):
    """Trace overlap Tr[rho_ideal rho_s] (not the Uhlmann fidelity)."""
    overlap = np.trace(np.asarray(rho_ideal) @ np.asarray(rho_s))
    if abs(overlap.imag) > IMAG_TOL:
        raise ImaginaryResidual(f"imaginary part {overlap.imag:.3e} of the overlap")
    return FidelityResult(value=float(overlap.real), group_tag=group_tag)
