"""Named scenario presets: gamma, T and g sweeps for the infinite bath and for N=40."""

from ..states import InitialState
from .config import ScenarioConfig

_COMMON = dict(mu0=2.0, g0=1.0, initial=InitialState("e1"), t_max=25.0, n_points=500)

PRESETS = {
    "fig1": ScenarioConfig(name="fig1", g=1.0, T=1.0, N=None, sweep_axis="gamma",
                           sweep_values=(0.0, 0.2, 0.6, 1.0), output="out/fig1", **_COMMON),
    "fig2": ScenarioConfig(name="fig2", g=1.0, gamma=0.6, N=None, sweep_axis="T",
                           sweep_values=(0.2, 1.0, 5.0), output="out/fig2", **_COMMON),
    "fig3": ScenarioConfig(name="fig3", gamma=0.6, T=1.0, N=None, sweep_axis="g",
                           sweep_values=(2.0, 4.0, 8.0), output="out/fig3", **_COMMON),
    "fig4": ScenarioConfig(name="fig4", g=1.0, T=1.0, N=40, sweep_axis="gamma",
                           sweep_values=(0.0, 0.2, 0.6, 1.0), output="out/fig4", **_COMMON),
    "fig5": ScenarioConfig(name="fig5", g=1.0, gamma=0.6, N=40, sweep_axis="T",
                           sweep_values=(0.2, 1.0, 5.0), output="out/fig5", **_COMMON),
    "fig6": ScenarioConfig(name="fig6", gamma=0.6, T=1.0, N=40, sweep_axis="g",
                           sweep_values=(2.0, 4.0, 8.0), output="out/fig6", **_COMMON),
}

DESCRIPTIONS = {
    "fig1": "thermodynamic limit, anisotropy sweep (T=g0, g=g0)",
    "fig2": "thermodynamic limit, temperature sweep (gamma=0.6, g=g0)",
    "fig3": "thermodynamic limit, bath coupling sweep (gamma=0.6, T=g0)",
    "fig4": "N=40, anisotropy sweep (T=g0, g=g0)",
    "fig5": "N=40, temperature sweep (gamma=0.6, g=g0)",
    "fig6": "N=40, bath coupling sweep (gamma=0.6, T=g0)",
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
