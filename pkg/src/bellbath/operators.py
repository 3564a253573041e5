"""
Dense operator algebra for two qubits coupled to one truncated bosonic mode.

Matrices are plain complex ``numpy`` arrays. The composite ordering is fixed
project-wide as ``qubit A (x) qubit B (x) boson``. Qubit index 0 is the spin-up
state |1> and index 1 is |0>, so ``pauli("z") == diag(1, -1)`` and the
two-qubit basis reads {|11>, |10>, |01>, |00>}.
"""

import numpy as np

HERMITIAN_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
TRACE_TOL = 1e-12
POSITIVITY_FLOOR = -1e-10

QUBIT_DIM = 2
PAIR_DIM = 4


class NonHermitianError(ValueError):
    """Raised when an operator expected to be Hermitian is not."""


class DimensionError(ValueError):
    """Raised when operator shapes do not match the composite layout."""


class DensityMatrixError(ValueError):
    """Raised when a matrix violates the density-matrix gates."""


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(which):
    """Pauli matrix for axis ``"x"``, ``"y"`` or ``"z"``."""
    try:
        return _PAULI[which].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {which!r}") from None


def sigma_pm(sign):
    """
    Spin ladder operator (sigma_x +/- i sigma_y) / 2.

    ``sigma_pm("+")`` raises |0> to |1>; ``sigma_pm("-")`` is its adjoint.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    s = 1 if sign == "+" else -1
    return 0.5 * (_PAULI["x"] + s * 1j * _PAULI["y"])


def boson_ops(fock_dim):
    """
    Truncated bosonic ladder operators on the Fock states |0>..|fock_dim-1>.

    Returns
    -------
    b, b_dagger, n_hat : ndarray
        Annihilation, creation and number operators. ``n_hat`` is exactly
        ``b_dagger @ b``.
    """
    fock_dim = int(fock_dim)
    if fock_dim < 2:
        raise ValueError(f"fock_dim must be >= 2, got {fock_dim}")
    b = np.diag(np.sqrt(np.arange(1, fock_dim, dtype=float)), k=1).astype(complex)
    bd = b.conj().T.copy()
    return b, bd, bd @ b


def kron(*ops):
    """Tensor product of the operators, leftmost factor outermost."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def hermiticity_residual(h):
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def is_hermitian(h, tol=HERMITIAN_TOL):
    return hermiticity_residual(h) <= tol


def require_hermitian(h, tol=HERMITIAN_TOL, name="operator"):
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {h.shape}")
    res = hermiticity_residual(h)
    if res > tol:
        raise NonHermitianError(f"{name} is not Hermitian (residual {res:.3e} > {tol:.0e})")
    return h


def hermitize(a):
    """Return (A + A^dagger) / 2."""
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def hermitian_eig(h, tol=HERMITIAN_TOL):
    """
    Eigendecomposition of a Hermitian matrix with eigenvalues ascending.

    Returns
    -------
    evals : ndarray of float
    evecs : ndarray
        Column ``k`` is the eigenvector for ``evals[k]``.
    """
    h = require_hermitian(h, tol)
    evals, evecs = np.linalg.eigh(hermitize(h))
    return evals, evecs


def partial_trace_boson(rho, fock_dim=None):
    """
    Trace the bosonic factor out of a (4 * fock_dim)-dimensional operator.

    The output is hermitized; the input is not required to be.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {rho.shape}")
    dim = rho.shape[0]
    if fock_dim is None:
        if dim % PAIR_DIM:
            raise DimensionError(f"dimension {dim} is not a multiple of {PAIR_DIM}")
        fock_dim = dim // PAIR_DIM
    if PAIR_DIM * fock_dim != dim:
        raise DimensionError(f"dimension {dim} != {PAIR_DIM} x {fock_dim}")
    red = np.einsum("ajbj->ab", rho.reshape(PAIR_DIM, fock_dim, PAIR_DIM, fock_dim))
    return hermitize(red)


def reduced_from_states(states, weights):
    """
    Reduced pair state sum_m w_m Tr_boson |psi_m><psi_m|.

    ``states`` holds the composite vectors as columns (shape ``(4*d, M)``).
    Avoids forming the full composite density matrix.
    """
    states = np.asarray(states, dtype=complex)
    if states.ndim == 1:
        states = states[:, None]
    dim, m = states.shape
    if dim % PAIR_DIM:
        raise DimensionError(f"dimension {dim} is not a multiple of {PAIR_DIM}")
    blocks = states.T.reshape(m, PAIR_DIM, dim // PAIR_DIM)
    red = np.einsum("m,maj,mbj->ab", np.asarray(weights, dtype=float), blocks, blocks.conj())
    return hermitize(red)


def density_violations(rho, trace_tol=TRACE_TOL, herm_tol=HERMITIAN_TOL,
                       floor=POSITIVITY_FLOOR):
    """List of human-readable gate failures for a density matrix (empty if valid)."""
    rho = np.asarray(rho)
    problems = []
    tr = np.trace(rho)
    if abs(tr.imag) > trace_tol or abs(tr.real - 1) > trace_tol:
        problems.append(f"trace {tr:.15g} deviates from 1 by more than {trace_tol:.0e}")
    res = hermiticity_residual(rho)
    if res > herm_tol:
        problems.append(f"hermiticity residual {res:.3e}")
    lo = float(np.linalg.eigvalsh(hermitize(rho)).min())
    if lo < floor:
        problems.append(f"negative eigenvalue {lo:.3e}")
    return problems


def check_density(rho, **tols):
    problems = density_violations(rho, **tols)
    if problems:
        raise DensityMatrixError("; ".join(problems))
    return rho
