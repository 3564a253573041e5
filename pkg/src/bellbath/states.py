"""Initial pair states: the four Bell states and their phase-rotated variants."""

from dataclasses import dataclass

import numpy as np

BELL_LABELS = ("e1", "e2", "e3", "e4")

# basis order {|11>, |10>, |01>, |00>}; each entry is ((i, j), sign of the second amplitude)
_BELL_SUPPORT = {
    "e1": ((0, 3), +1),
    "e2": ((1, 2), +1),
    "e3": ((0, 3), -1),
    "e4": ((1, 2), -1),
}

GROUPS = {"e1": "group1", "e3": "group1", "e2": "group2", "e4": "group2"}


@dataclass(frozen=True)
class InitialState:
    """
    A Bell state ``base`` or, when ``theta`` is given, its phase variant where
    the first amplitude 1/sqrt(2) becomes e^{i theta}/sqrt(2).

    ``theta=0`` on e1/e2 reproduces the Bell state itself; on e3/e4 it gives
    the state whose relative sign is also rotated, i.e. the same family.
    """

    base: str = "e1"
    theta: float | None = None

    def __post_init__(self):
        if self.base not in BELL_LABELS:
            raise ValueError(f"unknown Bell state {self.base!r}; expected one of {BELL_LABELS}")

    @property
    def kind(self):
        return "bell" if self.theta is None else "phase_family"

    @property
    def group(self):
        return GROUPS[self.base]

    def label(self):
        return self.base if self.theta is None else f"{self.base}:theta={self.theta:g}"

    @classmethod
    def parse(cls, text):
        """Parse ``"e2"`` or ``"e1:theta=1.0472"``."""
        text = text.strip()
        base, _, rest = text.partition(":")
        if not rest:
            return cls(base.strip())
        key, _, value = rest.partition("=")
        if key.strip() != "theta" or not value.strip():
            raise ValueError(f"cannot parse initial state {text!r}")
        return cls(base.strip(), float(value))


def make_initial(init):
    """Normalized 4-vector in the basis {|11>, |10>, |01>, |00>}."""
    if isinstance(init, str):
        init = InitialState.parse(init)
    (i, j), sign = _BELL_SUPPORT[init.base]
    v = np.zeros(4, dtype=complex)
    first = 1.0 if init.theta is None else np.exp(1j * init.theta)
    v[i] = first / np.sqrt(2)
    v[j] = sign / np.sqrt(2)
    return v
