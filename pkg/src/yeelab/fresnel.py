"""Continuum and Yee-grid Fresnel coefficients for normal incidence.

Two staggered interface models are supported:

* ``DIELECTRIC``: shared permeability, the permittivity jumps between the
  E nodes ``b-1`` and ``b`` and the interface sits on the H node between them.
* ``MAGNETIC``: shared permittivity, the permeability jumps between two H
  nodes and the interface sits on the E node between them.

The discrete coefficients depend on the drive through ``cos(k~ dx / 2)`` of
each medium; they tend to the continuum ones as ``N_lambda -> inf``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .dispersion import (
    Medium,
    WaveDiscretization,
    YeeLabError,
    big_omega,
    optimal_courant,
    solve_k_tilde,
)


class DegenerateInterface(YeeLabError):
    """Relative reflection error requested for identical media (R = 0)."""


class InterfaceKind(enum.Enum):
    DIELECTRIC = "dielectric"
    MAGNETIC = "magnetic"


@dataclass(frozen=True)
class InterfaceCase:
    kind: InterfaceKind
    medium1: Medium
    medium2: Medium

    def __post_init__(self):
        if self.kind is InterfaceKind.DIELECTRIC and self.medium1.mu_r != self.medium2.mu_r:
            raise ValueError("a dielectric interface needs equal mu_r on both sides")
        if self.kind is InterfaceKind.MAGNETIC and self.medium1.epsilon_r != self.medium2.epsilon_r:
            raise ValueError("a magnetic interface needs equal epsilon_r on both sides")

    @classmethod
    def dielectric(cls, eps1: float, eps2: float, mu: float = 1.0) -> "InterfaceCase":
        return cls(InterfaceKind.DIELECTRIC, Medium(eps1, mu), Medium(eps2, mu))

    @classmethod
    def magnetic(cls, mu1: float, mu2: float, eps: float = 1.0) -> "InterfaceCase":
        return cls(InterfaceKind.MAGNETIC, Medium(eps, mu1), Medium(eps, mu2))

    @property
    def eta_ratio(self) -> float:
        """``eta_1 / eta_2``."""
        return self.medium1.eta_r / self.medium2.eta_r

    @property
    def identical(self) -> bool:
        return self.medium1 == self.medium2

    def swapped(self) -> "InterfaceCase":
        return InterfaceCase(self.kind, self.medium2, self.medium1)

    def optimal_courant(self) -> float:
        return optimal_courant(self.medium1, self.medium2)


@dataclass(frozen=True)
class FresnelPair:
    r: float
    t: float


@dataclass(frozen=True)
class PowerPair:
    R: float
    T: float


@dataclass(frozen=True)
class ErrorReport:
    """Relative errors in percent (50.0 means 50 %)."""

    delta_R: float
    delta_T: float


def exact_fresnel(ic: InterfaceCase) -> FresnelPair:
    eta1, eta2 = ic.medium1.eta_r, ic.medium2.eta_r
    return FresnelPair(r=(eta2 - eta1) / (eta2 + eta1), t=2.0 * eta2 / (eta2 + eta1))


def exact_power(ic: InterfaceCase) -> PowerPair:
    c = exact_fresnel(ic)
    return PowerPair(R=c.r**2, T=ic.eta_ratio * c.t**2)


def _half_cosines(ic: InterfaceCase, wd: WaveDiscretization) -> tuple[float, float]:
    return (
        math.cos(solve_k_tilde(ic.medium1, wd)),
        math.cos(solve_k_tilde(ic.medium2, wd)),
    )


def fdtd_fresnel_dielectric(ic: InterfaceCase, wd: WaveDiscretization) -> FresnelPair:
    """Discrete r~, t~ for the shared-permeability interface."""
    if ic.kind is not InterfaceKind.DIELECTRIC:
        raise ValueError("expected a dielectric interface")
    eta1, eta2 = ic.medium1.eta_r, ic.medium2.eta_r
    c1, c2 = _half_cosines(ic, wd)
    den = eta2 * c2 + eta1 * c1
    return FresnelPair(r=(eta2 * c2 - eta1 * c1) / den, t=2.0 * eta2 * c1 / den)


def fdtd_fresnel_magnetic(ic: InterfaceCase, wd: WaveDiscretization) -> FresnelPair:
    """Discrete r~, t~ for the shared-permittivity interface.

    Same structure as the dielectric case with the two cosines swapped in
    the denominator.
    """
    if ic.kind is not InterfaceKind.MAGNETIC:
        raise ValueError("expected a magnetic interface")
    eta1, eta2 = ic.medium1.eta_r, ic.medium2.eta_r
    c1, c2 = _half_cosines(ic, wd)
    den = eta2 * c1 + eta1 * c2
    return FresnelPair(r=(eta2 * c1 - eta1 * c2) / den, t=2.0 * eta2 * c1 / den)


def fdtd_fresnel(ic: InterfaceCase, wd: WaveDiscretization) -> FresnelPair:
    if ic.kind is InterfaceKind.DIELECTRIC:
        return fdtd_fresnel_dielectric(ic, wd)
    return fdtd_fresnel_magnetic(ic, wd)


def boundary_residuals(
    ic: InterfaceCase, wd: WaveDiscretization, coeffs: FresnelPair | None = None
) -> tuple[float, float]:
    """Relative residuals of the two discrete continuity conditions.

    The conditions are evaluated with complex exponentials, so a zero
    residual confirms that the imaginary parts cancel through the dispersion
    relation. Each residual is ``|lhs - rhs| / max(1, largest term)``.
    """
    if coeffs is None:
        coeffs = fdtd_fresnel(ic, wd)
    r, t = coeffs.r, coeffs.t
    eta1, eta2 = ic.medium1.eta_r, ic.medium2.eta_r
    a1 = solve_k_tilde(ic.medium1, wd)
    a2 = solve_k_tilde(ic.medium2, wd)
    omega = big_omega(wd, wd.dt)
    e1p, e1m, e2m = cmath.exp(1j * a1), cmath.exp(-1j * a1), cmath.exp(-1j * a2)

    if ic.kind is InterfaceKind.DIELECTRIC:
        # tangential H continuous on the interface H node
        lhs1, rhs1 = -1.0 / eta1 + r / eta1, -t / eta2
        # Faraday update of that H node couples E[b-1] and E[b]
        mu = ic.medium1.mu_r
        lhs2 = e1p + r * e1m
        rhs2 = (e2m + 1j * omega * mu / eta2) * t
        scale1 = max(1.0, abs(1 / eta1), abs(r / eta1), abs(t / eta2))
    else:
        # tangential E continuous on the interface E node
        lhs1, rhs1 = 1.0 + r, t
        # Ampere update of that E node couples the neighbouring H nodes
        eps = ic.medium1.epsilon_r
        lhs2 = e1p - r * e1m
        rhs2 = eta1 * (e2m / eta2 + 1j * omega * eps) * t
        scale1 = max(1.0, abs(r), abs(t))
    scale2 = max(1.0, abs(lhs2), abs(rhs2))
    return abs(lhs1 - rhs1) / scale1, abs(lhs2 - rhs2) / scale2


def fdtd_power(ic: InterfaceCase, wd: WaveDiscretization) -> PowerPair:
    c = fdtd_fresnel(ic, wd)
    return PowerPair(R=c.r**2, T=ic.eta_ratio * c.t**2)


def relative_errors(exact: PowerPair, fdtd: PowerPair) -> ErrorReport:
    if exact.R == 0.0:
        raise DegenerateInterface("delta_R is undefined for identical media (R = 0)")
    return ErrorReport(
        delta_R=abs(fdtd.R - exact.R) / exact.R * 100.0,
        delta_T=abs(fdtd.T - exact.T) / exact.T * 100.0,
    )


def error_report(ic: InterfaceCase, wd: WaveDiscretization) -> ErrorReport:
    if ic.identical:
        raise DegenerateInterface("delta_R is undefined for identical media (R = 0)")
    return relative_errors(exact_power(ic), fdtd_power(ic, wd))


def compare_courant_modes(ic: InterfaceCase, n_lambda: float) -> tuple[float, float]:
    """Error at ``S_c = 1`` minus error at ``S_c = min(n_r1, n_r2)``, for R and T."""
    standard = error_report(ic, WaveDiscretization(n_lambda, 1.0))
    optimal = error_report(ic, WaveDiscretization(n_lambda, ic.optimal_courant()))
    return standard.delta_R - optimal.delta_R, standard.delta_T - optimal.delta_T
