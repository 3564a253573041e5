"""Run scenario sweeps and persist trajectories as CSV with a run manifest."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..dynamics import simulate
from ..states import InitialState
from .config import ScenarioConfig

WORKERS_ENV = "BELLBATH_WORKERS"
COLUMNS = ("g0t", "C", "Fd_group1", "Fd_group2", "trace_error", "leakage")
FMT = "%.15g"


@dataclass
class Trajectory:
    """Time series of concurrence and both fidelity groups for one sweep point."""

    t: np.ndarray
    C: np.ndarray
    Fd_group1: np.ndarray
    Fd_group2: np.ndarray
    trace_error: np.ndarray
    leakage: np.ndarray
    header: dict = field(default_factory=dict)

    def table(self):
        return np.column_stack([self.t, self.C, self.Fd_group1, self.Fd_group2,
                                self.trace_error, self.leakage])


@dataclass
class PointResult:
    value: float | None
    path: Path
    trajectory: Trajectory
    gates_ok: bool
    problems: list


@dataclass
class RunResult:
    config: ScenarioConfig
    points: list
    manifest: Path

    @property
    def gates_ok(self):
        return all(p.gates_ok for p in self.points)

    @property
    def paths(self):
        return [p.path for p in self.points]


def group_representatives(init):
    """Initial states whose trajectories fill the C, Fd_group1 and Fd_group2 columns."""
    g1 = init if init.group == "group1" else InitialState("e1")
    g2 = init if init.group == "group2" else InitialState("e2")
    return init, g1, g2


def compute_trajectory(cfg):
    """Simulate one (non-sweep) scenario point."""
    p = cfg.model_params()
    init, g1, g2 = group_representatives(cfg.initial)
    unique = list(dict.fromkeys([init, g1, g2]))
    trajs = simulate(p, cfg.T, unique, cfg.propagator(), cfg.t_grid(), epsilon=cfg.epsilon,
                     leakage_tol=cfg.leakage_tol, strict=False)
    by_init = dict(zip(unique, trajs))
    main = by_init[init]
    header = {
        "name": cfg.name, "mu0": cfg.mu0, "g0": cfg.g0, "g": cfg.g, "gamma": cfg.gamma,
        "N": "inf" if cfg.N is None else cfg.N, "T": cfg.T, "couple_b": cfg.couple_b,
        "initial": init.label(), "fock_dim": main.meta["fock_dim"],
        "cutoff_M": main.meta["cutoff"], "epsilon": cfg.epsilon, "alpha": cfg.alpha,
        "k_max": cfg.k_max, "dt": main.meta["dt"], "mode": cfg.mode,
        "leakage_ok": main.meta["leakage_ok"],
    }
    return Trajectory(
        t=main.t_grid, C=main.concurrence(),
        Fd_group1=by_init[g1].fidelity(), Fd_group2=by_init[g2].fidelity(),
        trace_error=np.max([t.trace_error for t in trajs], axis=0),
        leakage=np.max([t.leakage for t in trajs], axis=0), header=header)


def gate_problems(traj, cfg):
    problems = []
    if np.max(traj.trace_error) > cfg.trace_tol:
        problems.append(f"trace error {np.max(traj.trace_error):.3e} > {cfg.trace_tol:.0e}")
    if np.max(traj.leakage) > cfg.leakage_tol:
        problems.append(f"leakage {np.max(traj.leakage):.3e} > {cfg.leakage_tol:.0e}")
    return problems


def write_csv(path, traj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = "\n".join(f"# {k} = {v}" for k, v in traj.header.items())
    with open(path, "w") as fh:
        if header:
            fh.write(header + "\n")
        fh.write(",".join(COLUMNS) + "\n")
        np.savetxt(fh, traj.table(), fmt=FMT, delimiter=",")
    return path


def read_csv(path):
    """Parse a trajectory CSV written by :func:`write_csv`."""
    header = {}
    with open(path) as fh:
        lines = fh.read().splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            header[key.strip()] = value.strip()
            continue
        body_start = i
        break
    cols = lines[body_start].split(",")
    if tuple(cols) != COLUMNS:
        raise ValueError(f"{path}: unexpected columns {cols}")
    data = np.loadtxt(lines[body_start + 1:], delimiter=",", ndmin=2)
    return Trajectory(*(data[:, k] for k in range(len(COLUMNS))), header=header)


def point_filename(cfg, value):
    if value is None:
        return f"{cfg.name}.csv"
    return f"{cfg.name}_{cfg.sweep_axis}={value:g}.csv"


def _run_point(args):
    value, point = args
    traj = compute_trajectory(point)
    return value, traj


def worker_count(workers=None):
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def run_scenario(cfg, workers=None, output=None):
    """
    Simulate every sweep point and write one CSV each plus ``manifest.cfg``.

    The manifest is the fully resolved configuration in the config grammar,
    so running it again reproduces the same CSVs; per-point gate results are
    appended as comments. Sweep points run in parallel when more than one
    worker is requested (argument or the ``BELLBATH_WORKERS`` variable).
    """
    if output is not None:
        cfg = replace(cfg, output=str(output))
    outdir = Path(cfg.output)
    outdir.mkdir(parents=True, exist_ok=True)
    points = cfg.points()
    n = worker_count(workers)
    if n > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(points))) as pool:
            computed = list(pool.map(_run_point, points))
    else:
        computed = [_run_point(pt) for pt in points]

    results = []
    for (value, traj), (_, point) in zip(computed, points):
        path = write_csv(outdir / point_filename(cfg, value), traj)
        problems = gate_problems(traj, point)
        results.append(PointResult(value, path, traj, not problems, problems))

    manifest = outdir / "manifest.cfg"
    lines = [cfg.to_text().rstrip("\n"), ""]
    for r in results:
        status = "ok" if r.gates_ok else "FAILED: " + "; ".join(r.problems)
        lines.append(f"# {r.path.name}: {status}")
    manifest.write_text("\n".join(lines) + "\n")
    return RunResult(cfg, results, manifest)
