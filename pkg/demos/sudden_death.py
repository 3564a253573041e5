"""
Entanglement sudden death
=========================

In a hot bath the concurrence hits exactly zero in finite time and later
comes back. The clipping at zero in the concurrence formula makes these
stretches exact, so they can be found by equality.
"""

import numpy as np

from bellbath import ModelParams, simulate
from bellbath.runner.esd import detect_esd

grid = np.linspace(0, 25, 500)
for T in (0.2, 1.0, 5.0):
    traj = simulate(ModelParams(gamma=0.6), T, "e1", t_grid=grid, strict=False)
    intervals = detect_esd(traj.t_grid, traj.concurrence())
    print(f"T={T}: {len(intervals)} dead stretches")
    for iv in intervals[:3]:
        end = "open" if iv.open else f"revives at {iv.revival:.3f}"
        print(f"   zero on [{iv.onset:.3f}, {iv.end:.3f}], {end}")
