"""yeelab: discrete Fresnel coefficients and a 1D Yee-FDTD cross-check."""

from .dispersion import (
    EvanescentRegime,
    Medium,
    WaveDiscretization,
    YeeLabError,
    big_k,
    big_omega,
    continuum_k,
    k_tilde,
    optimal_courant,
    solve_k_tilde,
)
from .fresnel import (
    DegenerateInterface,
    ErrorReport,
    FresnelPair,
    InterfaceCase,
    InterfaceKind,
    PowerPair,
    compare_courant_modes,
    error_report,
    exact_fresnel,
    exact_power,
    fdtd_fresnel,
    fdtd_fresnel_dielectric,
    fdtd_fresnel_magnetic,
    fdtd_power,
)

__version__ = "0.1.0"
