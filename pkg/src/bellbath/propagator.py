"""
Time evolution exp(-iHt) by generalized Laguerre polynomial expansion.

The generating function sum_k z^k L_k^a(x) = (1-z)^(-a-1) exp(-xz/(1-z)) with
z = it/(1+it) gives

    exp(-iHt) = (1+it)^(-a-1) sum_k (it/(1+it))^k L_k^a(H),

which is truncated at ``k_max`` and applied to vectors through the three-term
recurrence. Long times are reached by composing short steps. The Hamiltonian
is shifted to the centre of its Gershgorin interval first and the phase is
restored analytically afterwards.
"""

from dataclasses import dataclass, field

import numpy as np

from .operators import NonHermitianError, hermitian_eig, require_hermitian

MODES = ("laguerre", "exact_oracle")


class StepTooLarge(RuntimeError):
    """The norm gate failed for a step; the caller should use a smaller step."""


class StepUnderflow(RuntimeError):
    """Step size dropped below the configured floor."""


@dataclass(frozen=True)
class PropagatorConfig:
    """
    Parameters
    ----------
    alpha : float
        Laguerre family parameter, > -1. The exact series does not depend on it.
    k_max : int
        Highest polynomial order kept.
    dt : float or None
        Step length in units of 1/g0. ``None`` picks the largest step for which
        the truncated scalar series matches exp(-ixdt) to ``trace_tol`` over
        the whole spectral interval, starting from half_width * dt = 1.
    trace_tol : float
        Allowed change of the squared norm (the trace of the projector) per step.
    mode : str
        ``"laguerre"`` or ``"exact_oracle"`` (eigendecomposition).
    min_dt : float
        Halving floor; going below raises :class:`StepUnderflow`.
    cache_operators : bool
        Build the one-step propagator matrix once and reuse it.
    """

    alpha: float = 0.0
    k_max: int = 20
    dt: float | None = None
    trace_tol: float = 1e-12
    mode: str = "laguerre"
    min_dt: float = 1e-6
    cache_operators: bool = True

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError(f"alpha must exceed -1, got {self.alpha}")
        if int(self.k_max) < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")
        if not self.trace_tol > 0:
            raise ValueError(f"trace_tol must be > 0, got {self.trace_tol}")
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


def gershgorin_bounds(h):
    """Interval [lo, hi] containing the spectrum of a Hermitian matrix."""
    h = np.asarray(h)
    centre = np.real(np.diag(h))
    radius = np.sum(np.abs(h), axis=1) - np.abs(np.diag(h))
    return float(np.min(centre - radius)), float(np.max(centre + radius))


def _laguerre_terms(h, v, k_max, alpha):
    """Yield L_k^alpha(h) v for k = 0..k_max."""
    prev = np.asarray(v)
    if not np.iscomplexobj(prev):
        prev = prev.astype(complex)
    yield prev
    if k_max == 0:
        return
    cur = (1 + alpha) * prev - h @ prev
    yield cur
    for k in range(1, k_max):
        nxt = ((2 * k + 1 + alpha) * cur - h @ cur - (k + alpha) * prev) / (k + 1)
        prev, cur = cur, nxt
        yield cur


def laguerre_poly_apply(h, v, k_max, alpha=0.0):
    """
    Generalized Laguerre polynomials of ``h`` applied to ``v``.

    Returns the list [L_0(h) v, ..., L_{k_max}(h) v] built with
    (k+1) L_{k+1} = (2k+1+alpha-h) L_k - (k+alpha) L_{k-1}.
    ``v`` may be a single vector or a block of column vectors.
    """
    require_hermitian(h)
    return list(_laguerre_terms(np.asarray(h, dtype=complex), v, int(k_max), alpha))


def _series(h, v, dt, k_max, alpha):
    """Truncated Laguerre series for exp(-i h dt) v; keeps the precision of ``v``."""
    v = np.asarray(v)
    if not np.iscomplexobj(v):
        v = v.astype(complex)
    z = 1j * dt / (1 + 1j * dt)
    acc = np.zeros_like(v)
    zk = np.ones((), dtype=v.dtype)
    for term in _laguerre_terms(h, v, k_max, alpha):
        acc += zk * term
        zk *= z
    return acc * (1 + 1j * dt) ** (-(alpha + 1))


def scalar_series_error(half_width, dt, k_max=20, alpha=0.0, samples=257):
    """Max |truncated series - exp(-ixdt)| over x sampled in [-half_width, half_width]."""
    x = half_width * np.cos(np.linspace(0, np.pi, samples)) if half_width > 0 else np.zeros(1)
    approx = _series(np.diag(x), np.ones(len(x)), dt, k_max, alpha)
    return float(np.max(np.abs(approx - np.exp(-1j * x * dt))))


def stable_dt(half_width, cfg):
    """Largest step dt = 2^-j / half_width whose scalar series error is <= trace_tol."""
    dt = 1.0 / half_width if half_width > 0 else 1.0
    while scalar_series_error(half_width, dt, cfg.k_max, cfg.alpha) > cfg.trace_tol:
        dt /= 2
        if dt < cfg.min_dt:
            raise StepUnderflow(f"no stable step above {cfg.min_dt} for half-width {half_width}")
    return dt


def _norm_sq(v):
    v = np.asarray(v)
    return np.sum(np.abs(v) ** 2, axis=0)


def _check_norm(before, after, tol, dt):
    drift = float(np.max(np.abs(_norm_sq(after) - _norm_sq(before))))
    if drift > tol:
        raise StepTooLarge(f"squared-norm drift {drift:.3e} > {tol:.0e} at dt={dt:.6g}")
    return drift


def evolve_step(h, v, cfg=PropagatorConfig(), dt=None, shift=None):
    """
    One Laguerre step: approximately exp(-i h dt) v.

    The squared norm of every column must change by at most ``cfg.trace_tol``,
    otherwise :class:`StepTooLarge` is raised.
    """
    h = require_hermitian(h, name="Hamiltonian")
    dt = cfg.dt if dt is None else dt
    if dt is None:
        raise ValueError("step length required (cfg.dt or dt)")
    if shift is None:
        lo, hi = gershgorin_bounds(h)
        shift = 0.5 * (lo + hi)
    hs = np.asarray(h, dtype=complex) - shift * np.eye(h.shape[0])
    out = _series(hs, v, dt, int(cfg.k_max), cfg.alpha) * np.exp(-1j * shift * dt)
    _check_norm(v, out, cfg.trace_tol, dt)
    return out


class ExactPropagator:
    """Reference evolution V exp(-i Lambda t) V^dagger v with one eigendecomposition."""

    def __init__(self, h):
        self.evals, self.evecs = hermitian_eig(h)

    def __call__(self, v, t):
        coeffs = self.evecs.conj().T @ np.asarray(v, dtype=complex)
        phases = np.exp(-1j * self.evals * t)
        if coeffs.ndim == 2:
            phases = phases[:, None]
        return self.evecs @ (phases * coeffs)


def exact_oracle(h, v, t):
    """exp(-i h t) v by eigendecomposition."""
    return ExactPropagator(h)(v, t)


class LaguerrePropagator:
    """
    Repeated Laguerre steps for one Hamiltonian.

    With ``cfg.cache_operators`` the propagator over a whole grid interval is
    assembled once and reused: the truncated series is applied to the
    identity in extended precision for a sub-step ``duration / 2**j`` no
    longer than ``dt``, gated on its column norms, squared ``j`` times and
    rounded to double once. Repeating a double-precision step thousands of
    times would otherwise let its fixed roundoff accumulate past the trace
    tolerance. Without caching, each sub-step is applied to the states
    directly through :func:`evolve_step`.
    """

    def __init__(self, h, cfg=PropagatorConfig()):
        self.h = np.asarray(require_hermitian(h, name="Hamiltonian"), dtype=complex)
        self.cfg = cfg
        lo, hi = gershgorin_bounds(self.h)
        self.shift = 0.5 * (lo + hi)
        self.half_width = 0.5 * (hi - lo)
        self.dt = cfg.dt if cfg.dt is not None else stable_dt(self.half_width, cfg)
        self._ops = {}

    def _substep_operator(self, sub):
        """Extended-precision one-step matrix, gated like any other step."""
        hx = self.h.astype(np.clongdouble) - self.shift * np.eye(len(self.h), dtype=np.clongdouble)
        eye = np.eye(len(self.h), dtype=np.clongdouble)
        sub_x = np.longdouble(sub)
        op = _series(hx, eye, sub_x, int(self.cfg.k_max), np.longdouble(self.cfg.alpha))
        op = op * np.exp(np.clongdouble(-1j) * np.longdouble(self.shift) * sub_x)
        _check_norm(eye, op, self.cfg.trace_tol, sub)
        return op

    def interval_operator(self, duration):
        """Propagator over ``duration`` (complex128) and the number of sub-steps used."""
        key = round(float(duration), 12)
        if key in self._ops:
            return self._ops[key]
        while True:
            j = max(0, int(np.ceil(np.log2(duration / self.dt) - 1e-12)))
            try:
                op = self._substep_operator(duration / 2**j)
                break
            except StepTooLarge:
                self.dt = duration / 2 ** (j + 1)
                if self.dt < self.cfg.min_dt:
                    raise StepUnderflow(f"step fell below {self.cfg.min_dt}") from None
        for _ in range(j):
            op = op @ op
        result = (op.astype(complex), 2**j)
        self._ops[key] = result
        return result

    def advance(self, v, duration):
        """
        Evolve ``v`` over ``duration``; returns the state and the sub-step count.

        Halves the step on :class:`StepTooLarge`.
        """
        if duration == 0:
            return np.array(v, dtype=complex), 0
        if self.cfg.cache_operators:
            op, n = self.interval_operator(duration)
            out = op @ v
            _check_norm(v, out, self.cfg.trace_tol, duration)
            return out, n
        while True:
            n = max(1, int(np.ceil(duration / self.dt - 1e-9)))
            sub = duration / n
            try:
                out = v
                for _ in range(n):
                    out = evolve_step(self.h, out, self.cfg, dt=sub, shift=self.shift)
                return out, n
            except StepTooLarge:
                self.dt = sub / 2
                if self.dt < self.cfg.min_dt:
                    raise StepUnderflow(f"step fell below {self.cfg.min_dt}") from None


@dataclass
class Evolution:
    """States on a time grid plus per-point diagnostics."""

    t_grid: np.ndarray
    states: list
    norm_error: np.ndarray
    steps: np.ndarray
    dt: float | None = None
    extra: dict = field(default_factory=dict)


def _check_grid(t_grid):
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or len(t) == 0:
        raise ValueError("t_grid must be a non-empty 1-D sequence")
    if t[0] != 0:
        raise ValueError(f"t_grid must start at 0, got {t[0]}")
    if np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be strictly ascending")
    return t


def evolve_trajectory(h, v0, t_grid, cfg=PropagatorConfig()):
    """
    Evolve ``v0`` (a vector or a block of columns) to every time in ``t_grid``.

    Returns an :class:`Evolution`; ``norm_error`` is the largest
    |norm^2 - initial norm^2| over the columns at each time.
    """
    t = _check_grid(t_grid)
    v0 = np.asarray(v0, dtype=complex)
    n0 = _norm_sq(v0)
    if cfg.mode == "exact_oracle":
        prop = ExactPropagator(h)
        states = [prop(v0, ti) for ti in t]
        steps = np.zeros(len(t), dtype=int)
        dt = None
    else:
        prop = LaguerrePropagator(h, cfg)
        states, steps = [v0.copy()], [0]
        cur = v0
        for dur in np.diff(t):
            cur, n = prop.advance(cur, dur)
            states.append(cur)
            steps.append(n)
        steps = np.asarray(steps)
        dt = prop.dt
    err = np.array([float(np.max(np.abs(_norm_sq(s) - n0))) for s in states])
    return Evolution(t_grid=t, states=states, norm_error=err, steps=steps, dt=dt)


__all__ = [
    "ExactPropagator", "Evolution", "LaguerrePropagator", "NonHermitianError",
    "PropagatorConfig", "StepTooLarge", "StepUnderflow", "evolve_step",
    "evolve_trajectory", "exact_oracle", "gershgorin_bounds", "laguerre_poly_apply",
    "scalar_series_error", "stable_dt",
]
