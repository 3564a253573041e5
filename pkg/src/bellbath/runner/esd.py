"""Detection of entanglement sudden death: stretches where the concurrence is exactly zero."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DeathInterval:
    """
    A maximal run of grid times with C == 0.

    ``onset`` and ``end`` are the first and last zero-concurrence grid times;
    ``revival`` is the next grid time with C > 0, or ``None`` when the series
    ends inside the zero stretch (``open`` is then true).
    """

    onset: float
    end: float
    revival: float | None

    @property
    def open(self):
        return self.revival is None


def detect_esd(t, C):
    """Maximal intervals where the concurrence series is exactly zero."""
    t = np.asarray(t, dtype=float)
    zero = np.asarray(C) == 0.0
    intervals = []
    i, n = 0, len(zero)
    while i < n:
        if not zero[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and zero[j + 1]:
            j += 1
        revival = float(t[j + 1]) if j + 1 < n else None
        intervals.append(DeathInterval(float(t[i]), float(t[j]), revival))
        i = j + 1
    return intervals
