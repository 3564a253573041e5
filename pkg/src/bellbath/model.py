"""
Hamiltonians for two Bell-pair qubits where qubit A talks to an XY spin bath.

After the Holstein-Primakoff mapping the bath is one bosonic mode. Two regimes
are supported: the thermodynamic limit (``N=None``) and a finite bath of ``N``
spins kept to first order in 1/N. Energies are in units of the qubit-bath
coupling ``g0``. Constant energy offsets are dropped since they only add a
global phase.
"""

from dataclasses import dataclass, replace

import numpy as np

from .operators import (PAIR_DIM, boson_ops, hermiticity_residual, hermitize, kron,
                        pauli, sigma_pm)

DEFAULT_FOCK_DIM = 40
FINITE_ORDERING_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """
    Physical constants of the pair + bath model.

    Parameters
    ----------
    mu0 : float
        Half the energy bias of each qubit.
    g0 : float
        Qubit A to bath coupling. Zero requests free evolution.
    g : float
        Intra-bath coupling.
    gamma : float
        Anisotropy in [0, 1]; 0 is the XX (rotating-wave) case.
    N : int or None
        Number of bath spins; ``None`` selects the thermodynamic limit.
    fock_dim : int or None
        Boson truncation. Defaults to 40, or ``min(N, 40)`` for a finite bath.
    couple_b : bool
        Also couple qubit B to the bath, as the printed limit-regime
        interaction literally reads.
    """

    mu0: float = 2.0
    g0: float = 1.0
    g: float = 1.0
    gamma: float = 0.6
    N: int | None = None
    fock_dim: int | None = None
    couple_b: bool = False

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.g0 < 0:
            raise ValueError(f"g0 must be >= 0, got {self.g0}")
        if self.N is not None and int(self.N) < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        d = self.resolved_fock_dim
        if d < 2:
            raise ValueError(f"fock_dim must be >= 2, got {d}")
        if self.N is not None and d > self.N + 1:
            raise ValueError(f"fock_dim={d} exceeds N+1={self.N + 1} for a finite bath")

    @property
    def regime(self):
        return "limit" if self.N is None else "finite"

    @property
    def resolved_fock_dim(self):
        if self.fock_dim is not None:
            return int(self.fock_dim)
        if self.N is None:
            return DEFAULT_FOCK_DIM
        return max(2, min(int(self.N), DEFAULT_FOCK_DIM))

    @property
    def max_fock_dim(self):
        """Largest admissible truncation (unbounded in the limit regime)."""
        return None if self.N is None else int(self.N) + 1

    @property
    def dim(self):
        return PAIR_DIM * self.resolved_fock_dim

    def with_(self, **changes):
        return replace(self, **changes)


def _qubit_a(op):
    return kron(op, np.eye(2))


def _qubit_b(op):
    return kron(np.eye(2), op)


def build_hs(p):
    """Free pair Hamiltonian mu0 (sigma_z^A + sigma_z^B), a 4x4 diagonal."""
    sz = pauli("z")
    return p.mu0 * (_qubit_a(sz) + _qubit_b(sz))


def _pair_couplings(p):
    """Pair operators multiplying the bath raising and lowering parts."""
    sp, sm = sigma_pm("+"), sigma_pm("-")
    with_raise = _qubit_a(p.gamma * sp + sm)
    with_lower = _qubit_a(sp + p.gamma * sm)
    if p.couple_b:
        with_raise = with_raise + _qubit_b(p.gamma * sp + sm)
        with_lower = with_lower + _qubit_b(sp + p.gamma * sm)
    return with_raise, with_lower


def build_hsb_limit(p):
    """
    Qubit-bath interaction in the thermodynamic limit.

    g0 [b^dag (gamma s+ + s-) + b (s+ + gamma s-)] on qubit A; with
    ``couple_b`` the same terms are added for qubit B.
    """
    b, bd, _ = boson_ops(p.resolved_fock_dim)
    with_raise, with_lower = _pair_couplings(p)
    return p.g0 * (kron(with_raise, bd) + kron(with_lower, b))


def build_hb_limit(p):
    """Bath Hamiltonian g [gamma (b^dag^2 + b^2) + 2 n] in the thermodynamic limit."""
    b, bd, n = boson_ops(p.resolved_fock_dim)
    return p.g * (p.gamma * (bd @ bd + b @ b) + 2 * n)


def _corrected_ladders(p):
    """First-order Holstein-Primakoff ladders b^dag (1 - n/2N) and (1 - n/2N) b."""
    b, bd, n = boson_ops(p.resolved_fock_dim)
    shrink = np.eye(len(n)) - n / (2 * p.N)
    return shrink @ b, bd @ shrink


def build_hsb_finite(p):
    """Qubit-bath interaction for N bath spins, first order in 1/N."""
    lower, raise_ = _corrected_ladders(p)
    with_raise, with_lower = _pair_couplings(p)
    return p.g0 * (kron(with_raise, raise_) + kron(with_lower, lower))


def build_hb_finite(p):
    """
    Bath Hamiltonian for N bath spins, first order in 1/N, in normal-ordered form.

    g {gamma [b^dag^2 f(n+1) f(n) + b^2 f(n-2) f(n-1)] + 2n + n(2n^2 - 8Nn - n + 1)/4N^2}
    with f(x) = 1 - x/2N. Built from explicit diagonal factors so the truncated
    matrix is exact apart from the dropped top Fock levels.
    """
    N = float(p.N)
    b, bd, n_op = boson_ops(p.resolved_fock_dim)
    n = np.real(np.diag(n_op))

    def f(x):
        return 1.0 - x / (2 * N)

    pair_up = bd @ bd @ np.diag(f(n + 1) * f(n))
    pair_down = b @ b @ np.diag(f(n - 2) * f(n - 1))
    diag = 2 * n + n * (2 * n**2 - 8 * N * n - n + 1) / (4 * N**2)
    hb = p.g * (p.gamma * (pair_up + pair_down) + np.diag(diag))
    res = hermiticity_residual(hb)
    if res > FINITE_ORDERING_TOL:
        raise ArithmeticError(f"finite-N bath Hamiltonian not Hermitian (residual {res:.3e})")
    return hermitize(hb)


def build_hsb(p):
    return build_hsb_limit(p) if p.N is None else build_hsb_finite(p)


def build_hb(p):
    return build_hb_limit(p) if p.N is None else build_hb_finite(p)


def assemble_total(p):
    """Total Hamiltonian H_s (x) 1 + H_sb + 1 (x) H_b on the composite space."""
    d = p.resolved_fock_dim
    h = kron(build_hs(p), np.eye(d)) + build_hsb(p) + kron(np.eye(PAIR_DIM), build_hb(p))
    return hermitize(h)
