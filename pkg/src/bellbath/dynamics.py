"""
Reduced pair dynamics: evolve every member of the product ensemble
|psi(0)> (x) |phi_m> and trace the boson out.
"""

from dataclasses import dataclass, field

import numpy as np

from .metrics import concurrence, fidelity, ideal_evolution
from .model import assemble_total, build_hb
from .operators import DensityMatrixError, density_violations, kron, reduced_from_states
from .propagator import PropagatorConfig, evolve_trajectory
from .states import InitialState, make_initial
from .thermal import DEFAULT_EPSILON, prepare_ensemble, t0_ensemble

LEAKAGE_TOL = 1e-8
FOCK_GROWTH = 16
MAX_RETRIES = 3


class LeakageExceeded(RuntimeError):
    """Population in the two highest Fock levels exceeded the tolerance."""

    def __init__(self, message, leakage=None, fock_dim=None):
        super().__init__(message)
        self.leakage = leakage
        self.fock_dim = fock_dim


@dataclass
class SubsystemTrajectory:
    """Reduced 4x4 states on a time grid with per-time diagnostics."""

    t_grid: np.ndarray
    rho_s: np.ndarray
    trace_error: np.ndarray
    leakage: np.ndarray
    steps: np.ndarray
    init: InitialState
    params: object = None
    meta: dict = field(default_factory=dict)

    def concurrence(self):
        return np.array([concurrence(r).value for r in self.rho_s])

    def fidelity(self, mu0=None, init=None):
        """Overlap with the bath-free evolution of ``init`` (defaults to the own initial state)."""
        mu0 = self.params.mu0 if mu0 is None else mu0
        init = self.init if init is None else init
        return np.array([fidelity(r, ideal_evolution(init, mu0, t)).value
                         for r, t in zip(self.rho_s, self.t_grid)])

    @property
    def max_leakage(self):
        return float(np.max(self.leakage))


def _as_init(init):
    return InitialState.parse(init) if isinstance(init, str) else init


def top_fock_population(states, weights, fock_dim, levels=2):
    """Ensemble-weighted population of the ``levels`` highest Fock states."""
    m = states.shape[1]
    blocks = states.T.reshape(m, 4, fock_dim)
    pop = np.sum(np.abs(blocks[:, :, fock_dim - levels:]) ** 2, axis=(1, 2))
    return float(np.dot(weights, pop))


def run_reduced_dynamics(p, ens, init, cfg=PropagatorConfig(), t_grid=None,
                         leakage_tol=LEAKAGE_TOL, check_leakage=True):
    """
    rho_s(t) = sum_m w_m Tr_b[U(t) |psi0, phi_m><psi0, phi_m| U(t)^dagger].

    ``init`` may be one initial state or a list of them; a list is evolved
    as one block and yields a list of trajectories. Raises
    :class:`LeakageExceeded` when the top-Fock population passes
    ``leakage_tol`` (unless ``check_leakage`` is false) and
    :class:`DensityMatrixError` when a reduced state fails the trace,
    hermiticity or positivity gate.
    """
    single = not isinstance(init, (list, tuple))
    inits = [_as_init(i) for i in ([init] if single else init)]
    if t_grid is None:
        t_grid = default_grid()
    d = p.resolved_fock_dim
    if ens.states.shape[0] != d:
        raise ValueError(f"ensemble dimension {ens.states.shape[0]} != fock_dim {d}")
    h = assemble_total(p)
    m = ens.cutoff
    block = np.concatenate(
        [kron(make_initial(i)[:, None], ens.states) for i in inits], axis=1)
    evo = evolve_trajectory(h, block, t_grid, cfg)

    out = []
    for k, i in enumerate(inits):
        cols = slice(k * m, (k + 1) * m)
        rhos, tr_err, leak = [], [], []
        for t, st in zip(evo.t_grid, evo.states):
            members = st[:, cols]
            rho = reduced_from_states(members, ens.weights)
            problems = density_violations(rho)
            if problems:
                raise DensityMatrixError(f"reduced state at t={t:.6g}: " + "; ".join(problems))
            rhos.append(rho)
            tr_err.append(abs(np.trace(rho).real - 1.0))
            leak.append(top_fock_population(members, ens.weights, d))
        traj = SubsystemTrajectory(
            t_grid=evo.t_grid, rho_s=np.array(rhos), trace_error=np.array(tr_err),
            leakage=np.array(leak), steps=evo.steps, init=i, params=p,
            meta={"fock_dim": d, "cutoff": m, "dt": evo.dt})
        if check_leakage and traj.max_leakage > leakage_tol:
            raise LeakageExceeded(
                f"top-Fock population {traj.max_leakage:.3e} > {leakage_tol:.0e} at fock_dim={d}",
                leakage=traj.max_leakage, fock_dim=d)
        out.append(traj)
    return out[0] if single else out


def default_grid(t_max=25.0, n_points=500):
    return np.linspace(0.0, t_max, n_points)


def bath_ensemble(p, T, epsilon=DEFAULT_EPSILON):
    hb = build_hb(p)
    return t0_ensemble(hb) if T == 0 else prepare_ensemble(hb, T, epsilon)


def simulate(p, T, init, cfg=PropagatorConfig(), t_grid=None, epsilon=DEFAULT_EPSILON,
             leakage_tol=LEAKAGE_TOL, max_retries=MAX_RETRIES, strict=True):
    """
    Build the thermal ensemble, run the reduced dynamics, and enlarge the
    Fock truncation by 16 levels (at most ``max_retries`` times, never beyond
    N+1) while leakage stays above ``leakage_tol``.

    With ``strict=False`` the last attempt is returned with
    ``meta["leakage_ok"] = False`` instead of raising.
    """
    attempt = p
    for retry in range(max_retries + 1):
        ens = bath_ensemble(attempt, T, epsilon)
        result = run_reduced_dynamics(attempt, ens, init, cfg, t_grid, leakage_tol,
                                      check_leakage=False)
        trajs = result if isinstance(result, list) else [result]
        worst = max(t.max_leakage for t in trajs)
        ok = worst <= leakage_tol
        for t in trajs:
            t.meta.update(leakage_ok=ok, retries=retry, temperature=T, epsilon=epsilon)
        if ok:
            return result
        d = attempt.resolved_fock_dim
        cap = attempt.max_fock_dim
        grown = d + FOCK_GROWTH if cap is None else min(d + FOCK_GROWTH, cap)
        if grown == d or retry == max_retries:
            break
        attempt = attempt.with_(fock_dim=grown)
    if strict:
        raise LeakageExceeded(
            f"top-Fock population {worst:.3e} > {leakage_tol:.0e} after {retry} retries "
            f"(fock_dim={attempt.resolved_fock_dim})", leakage=worst,
            fock_dim=attempt.resolved_fock_dim)
    return result
