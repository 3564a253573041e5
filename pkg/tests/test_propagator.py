import numpy as np
import pytest
from scipy.linalg import expm
from scipy.special import eval_genlaguerre

from conftest import random_hermitian
from bellbath.operators import NonHermitianError, pauli
from bellbath.propagator import (ExactPropagator, LaguerrePropagator, PropagatorConfig,
                                 StepTooLarge, evolve_step, evolve_trajectory, exact_oracle,
                                 gershgorin_bounds, laguerre_poly_apply, scalar_series_error,
                                 stable_dt)


def _unit(rng, n, cols=None):
    shape = (n,) if cols is None else (n, cols)
    v = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return v / np.linalg.norm(v, axis=0)


def _safe_dt(h, cfg=PropagatorConfig()):
    lo, hi = gershgorin_bounds(h)
    return 0.5 * (lo + hi), stable_dt(0.5 * (hi - lo), cfg)


def test_laguerre_trivial_values(rng):
    v = _unit(rng, 3)
    terms = laguerre_poly_apply(np.eye(3), v, 2)
    assert np.array_equal(terms[0], v)
    assert np.abs(terms[1]).max() == 0
    assert terms[2][0] / v[0] == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.7])
def test_laguerre_matches_closed_form(alpha):
    x = np.linspace(-3, 3, 13)
    terms = laguerre_poly_apply(np.diag(x), np.ones(len(x)), 12, alpha)
    for k, term in enumerate(terms):
        ref = eval_genlaguerre(k, alpha, x)
        assert np.abs(term.real - ref).max() < 1e-10 * max(1, np.abs(ref).max())


def test_laguerre_block_columns(rng):
    h = random_hermitian(rng, 6)
    vs = _unit(rng, 6, 3)
    block = laguerre_poly_apply(h, vs, 5)
    for c in range(3):
        single = laguerre_poly_apply(h, vs[:, c], 5)
        for a, b in zip(block, single):
            assert np.abs(a[:, c] - b).max() < 1e-13


def test_zero_hamiltonian_leaves_state(rng):
    v = _unit(rng, 5)
    h = np.zeros((5, 5))
    for dt in (0.01, 0.05):
        assert np.abs(evolve_step(h, v, dt=dt) - v).max() < 1e-13
    # longer spans are split into accepted sub-steps
    ev = evolve_trajectory(h, v, [0.0, 0.1, 1.0, 10.0])
    for w in ev.states:
        assert np.abs(w - v).max() < 1e-13


def test_sigma_z_phases():
    v = np.array([0.6, 0.8j])
    bound = stable_dt(1.0, PropagatorConfig())
    for dt in (0.01, 0.05, bound):
        out = evolve_step(pauli("z"), v, dt=dt)
        assert np.abs(out - v * np.exp([-1j * dt, 1j * dt])).max() < 1e-13


@pytest.mark.parametrize("dim", [4, 16, 64])
def test_agrees_with_oracle_random(rng, dim):
    for _ in range(34 if dim != 64 else 32):  # 100 matrices in total
        h = random_hermitian(rng, dim)
        shift, dt = _safe_dt(h)
        v = _unit(rng, dim)
        out = evolve_step(h, v, dt=dt, shift=shift)
        assert np.abs(out - expm(-1j * h * dt) @ v).max() < 1e-10


def test_oracle_matches_expm(rng):
    h = random_hermitian(rng, 12)
    v = _unit(rng, 12)
    for t in (0.0, 0.37, 5.0):
        assert np.abs(exact_oracle(h, v, t) - expm(-1j * h * t) @ v).max() < 1e-12
    assert np.abs(exact_oracle(h, v, 0.0) - v).max() < 1e-14


def test_oracle_unitarity_and_energy(rng):
    h = random_hermitian(rng, 20)
    v = _unit(rng, 20)
    prop = ExactPropagator(h)
    e0 = np.vdot(v, h @ v).real
    for t in np.linspace(0, 30, 31):
        w = prop(v, t)
        assert abs(np.linalg.norm(w) - 1) < 1e-12
        assert abs(np.vdot(w, h @ w).real - e0) < 1e-10


def test_trajectory_composition(rng):
    h = random_hermitian(rng, 16)
    v = _unit(rng, 16)
    t = 1.7
    ev = evolve_trajectory(h, v, [0.0, t, 2 * t])
    assert np.abs(ev.states[2] - exact_oracle(h, v, 2 * t)).max() < 1e-9
    assert np.abs(ev.states[1] - exact_oracle(h, v, t)).max() < 1e-9


def test_trajectory_single_point(rng):
    v = _unit(rng, 4)
    ev = evolve_trajectory(random_hermitian(rng, 4), v, [0.0])
    assert np.array_equal(ev.states[0], v)
    assert ev.steps.tolist() == [0]


@pytest.mark.parametrize("cache", [True, False])
def test_trajectory_against_oracle(rng, cache):
    h = random_hermitian(rng, 24, scale=3.0)
    v = _unit(rng, 24, 3)
    grid = np.linspace(0, 6, 25)
    cfg = PropagatorConfig(cache_operators=cache)
    ev = evolve_trajectory(h, v, grid, cfg)
    ref = evolve_trajectory(h, v, grid, PropagatorConfig(mode="exact_oracle"))
    for a, b in zip(ev.states, ref.states):
        assert np.abs(a - b).max() < 1e-10
    assert ev.norm_error.max() <= 1e-12
    assert ev.steps[1:].min() >= 1


def test_long_trajectory_holds_norm_gate(rng):
    h = random_hermitian(rng, 32, scale=10.0)
    v = _unit(rng, 32)
    ev = evolve_trajectory(h, v, np.linspace(0, 25, 500))
    assert ev.norm_error.max() <= 1e-12


@pytest.mark.parametrize("alpha", [0.5, 1.0])
def test_alpha_insensitivity(rng, alpha):
    h = random_hermitian(rng, 16)
    v = _unit(rng, 16)
    grid = np.linspace(0, 3, 7)
    base = evolve_trajectory(h, v, grid, PropagatorConfig(alpha=0.0))
    other = evolve_trajectory(h, v, grid, PropagatorConfig(alpha=alpha))
    for a, b in zip(base.states, other.states):
        assert np.abs(a - b).max() < 1e-9


def test_deterministic(rng):
    h = random_hermitian(rng, 16)
    v = _unit(rng, 16)
    grid = np.linspace(0, 4, 9)
    a = evolve_trajectory(h, v, grid)
    b = evolve_trajectory(h, v, grid)
    assert all(np.array_equal(x, y) for x, y in zip(a.states, b.states))


def test_oversized_step_rejected(rng):
    h = random_hermitian(rng, 8, scale=5.0)
    with pytest.raises(StepTooLarge):
        evolve_step(h, _unit(rng, 8), dt=50.0)


def test_trajectory_recovers_from_oversized_dt(rng):
    h = random_hermitian(rng, 8, scale=5.0)
    v = _unit(rng, 8)
    for cache in (True, False):
        cfg = PropagatorConfig(dt=50.0, cache_operators=cache)
        ev = evolve_trajectory(h, v, [0.0, 2.0], cfg)
        assert np.abs(ev.states[1] - exact_oracle(h, v, 2.0)).max() < 1e-10
        assert ev.dt < 50.0


def test_non_hermitian_rejected(rng):
    h = random_hermitian(rng, 4)
    h[0, 1] += 1e-6
    with pytest.raises(NonHermitianError):
        evolve_step(h, _unit(rng, 4), dt=0.1)
    with pytest.raises(NonHermitianError):
        LaguerrePropagator(h)


def test_stable_dt_meets_tolerance():
    cfg = PropagatorConfig()
    for hw in (0.5, 3.0, 40.0):
        dt = stable_dt(hw, cfg)
        assert dt * hw <= 1.0
        assert scalar_series_error(hw, dt) <= cfg.trace_tol


@pytest.mark.parametrize("bad", [dict(alpha=-1.0), dict(k_max=0), dict(trace_tol=0.0),
                                 dict(mode="rk4"), dict(dt=-0.1)])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        PropagatorConfig(**bad)


@pytest.mark.parametrize("grid", [[0.1, 0.2], [0.0, 0.5, 0.5], [0.0, 1.0, 0.5]])
def test_grid_validation(rng, grid):
    with pytest.raises(ValueError):
        evolve_trajectory(np.eye(2), _unit(rng, 2), grid)
