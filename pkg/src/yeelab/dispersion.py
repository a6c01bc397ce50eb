"""Yee-grid dispersion in natural units.

Everything here works with c = 1, eta_0 = 1 and dx = 1, so the time step
equals the Courant number. All discrete quantities are functions of the
dimensionless groups ``k dx``, ``omega dt``, ``S_c`` and ``n_r`` only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class YeeLabError(Exception):
    """Base class for all errors raised by yeelab."""


class EvanescentRegime(YeeLabError):
    """No real discrete wavenumber exists for the requested discretization."""


@dataclass(frozen=True)
class Medium:
    """Lossless right-handed medium."""

    epsilon_r: float
    mu_r: float

    def __post_init__(self):
        if not (self.epsilon_r > 0 and self.mu_r > 0):
            raise ValueError(
                f"epsilon_r and mu_r must be positive, got {self.epsilon_r}, {self.mu_r}"
            )
        if not (math.isfinite(self.epsilon_r) and math.isfinite(self.mu_r)):
            raise ValueError("material parameters must be finite")

    @property
    def n_r(self) -> float:
        return math.sqrt(self.epsilon_r * self.mu_r)

    @property
    def eta_r(self) -> float:
        return math.sqrt(self.mu_r / self.epsilon_r)


@dataclass(frozen=True)
class WaveDiscretization:
    """Drive frequency expressed as grid points per vacuum wavelength."""

    n_lambda: float
    courant: float

    def __post_init__(self):
        if not self.n_lambda > 2:
            raise ValueError(f"n_lambda must exceed 2, got {self.n_lambda}")
        if not self.courant > 0:
            raise ValueError(f"courant must be positive, got {self.courant}")
        if not self.n_lambda > 2 * self.courant:
            raise ValueError(
                f"N_lambda / S_c = {self.n_lambda / self.courant:.6g} leaves fewer than "
                "two time steps per period"
            )

    @property
    def half_omega_dt(self) -> float:
        return math.pi * self.courant / self.n_lambda

    @property
    def dt(self) -> float:
        return self.courant

    @property
    def omega(self) -> float:
        """Angular drive frequency (rad per unit time, c = dx = 1)."""
        return 2.0 * math.pi / self.n_lambda

    @property
    def steps_per_period(self) -> float:
        return self.n_lambda / self.courant


def dispersion_sine(medium: Medium, wd: WaveDiscretization) -> float:
    """Right-hand side ``(n_r / S_c) sin(omega dt / 2)`` of the Yee dispersion relation."""
    return medium.n_r / wd.courant * math.sin(wd.half_omega_dt)


def solve_k_tilde(medium: Medium, wd: WaveDiscretization) -> float:
    """Return ``k~ dx / 2`` for a harmonic wave on the Yee grid.

    Raises
    ------
    EvanescentRegime
        If ``(n_r / S_c) sin(omega dt / 2) > 1``.
    """
    arg = dispersion_sine(medium, wd)
    if arg > 1.0:
        raise EvanescentRegime(
            f"sine argument {arg:.6g} > 1 for n_r={medium.n_r:.6g}, "
            f"S_c={wd.courant:.6g}, N_lambda={wd.n_lambda:.6g}; "
            "reduce the Courant number or increase N_lambda"
        )
    return math.asin(arg)


def k_tilde(medium: Medium, wd: WaveDiscretization) -> float:
    """Discrete wavenumber ``k~`` in rad per cell."""
    return 2.0 * solve_k_tilde(medium, wd)


def big_omega(wd: WaveDiscretization, dt: float) -> float:
    """Finite-difference frequency ``(2/dt) sin(omega dt / 2)``."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    return 2.0 / dt * math.sin(wd.half_omega_dt)


def big_k(medium: Medium, wd: WaveDiscretization, dx: float = 1.0) -> float:
    """Finite-difference wavenumber ``(2/dx) sin(k~ dx / 2)``."""
    return 2.0 / dx * dispersion_sine(medium, wd)


def continuum_k(medium: Medium, omega: float) -> float:
    if not omega > 0:
        raise ValueError("omega must be positive")
    return omega * medium.n_r


def optimal_courant(*media: Medium) -> float:
    """Largest stable Courant number for a set of media, ``min(n_r)``."""
    return min(m.n_r for m in media)
