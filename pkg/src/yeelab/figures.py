"""Named sweep presets, one family of curves per figure id."""

from __future__ import annotations

from pathlib import Path

from .fresnel import InterfaceCase
from .sweep import CourantMode, SweepAxis, SweepSpec, linspace_values, run_sweep, write_csv

COARSE = linspace_values(10.0, 40.0, 0.5)
FINE = linspace_values(40.0, 70.0, 0.5)
WIDE = linspace_values(10.0, 70.0, 0.5)
HIGH = linspace_values(50.0, 150.0, 1.0)

# weak contrast: eta1/eta2 = sqrt(4/3) and sqrt(3/4) in both interface models
WEAK = {
    "diel_eps3-4_mu2": InterfaceCase.dielectric(3.0, 4.0, mu=2.0),
    "diel_eps4-3_mu2": InterfaceCase.dielectric(4.0, 3.0, mu=2.0),
    "magn_mu4-3_eps2": InterfaceCase.magnetic(4.0, 3.0, eps=2.0),
    "magn_mu3-4_eps2": InterfaceCase.magnetic(3.0, 4.0, eps=2.0),
}

HIGH_CONTRAST = {
    "diel_eps1-100_mu2": InterfaceCase.dielectric(1.0, 100.0, mu=2.0),
    "diel_eps100-1_mu2": InterfaceCase.dielectric(100.0, 1.0, mu=2.0),
    "magn_mu100-1_eps2": InterfaceCase.magnetic(100.0, 1.0, eps=2.0),
    "magn_mu1-100_eps2": InterfaceCase.magnetic(1.0, 100.0, eps=2.0),
}

MU_FAMILY = (1.0, 2.0, 4.0, 16.0)


def _nl(ic: InterfaceCase, values, mode=CourantMode.STANDARD) -> SweepSpec:
    return SweepSpec(ic, SweepAxis.N_LAMBDA, values, courant_mode=mode)


def _weak_both_modes(values) -> dict[str, SweepSpec]:
    out = {}
    for name, ic in WEAK.items():
        out[f"{name}_standard"] = _nl(ic, values, CourantMode.STANDARD)
        out[f"{name}_optimal"] = _nl(ic, values, CourantMode.OPTIMAL)
    return out


def _fig9() -> dict[str, SweepSpec]:
    out = {}
    # left column: permittivity contrast at mu = 1, N_lambda in [10, 40]
    for e1, e2 in ((1.0, 2.0), (1.0, 4.0), (2.0, 1.0), (4.0, 1.0)):
        out[f"a_c_eps{e1:g}-{e2:g}_mu1"] = _nl(InterfaceCase.dielectric(e1, e2, 1.0), COARSE)
    # right column: shared permeability at eps = (1, 4) and (4, 1), N_lambda in [40, 70]
    for e1, e2 in ((1.0, 4.0), (4.0, 1.0)):
        for mu in MU_FAMILY:
            out[f"b_d_eps{e1:g}-{e2:g}_mu{mu:g}"] = _nl(InterfaceCase.dielectric(e1, e2, mu), FINE)
    return out


def _figA() -> dict[str, SweepSpec]:
    out = {}
    for e1, e2 in ((1.0, 4.0), (4.0, 1.0)):
        for mu in MU_FAMILY[1:]:
            ic = InterfaceCase.dielectric(e1, e2, mu)
            out[f"eps{e1:g}-{e2:g}_mu{mu:g}"] = _nl(ic, WIDE, CourantMode.BOTH)
    return out


def _figB() -> dict[str, SweepSpec]:
    return {name: _nl(ic, HIGH) for name, ic in HIGH_CONTRAST.items()}


FIGURES = {
    "fig5": lambda: _weak_both_modes(COARSE),
    "fig6": lambda: _weak_both_modes(COARSE),
    "fig8": lambda: _weak_both_modes(COARSE),
    "fig9": _fig9,
    "figA": _figA,
    "figB": _figB,
}


def figure_specs(fig_id: str) -> dict[str, SweepSpec]:
    try:
        return FIGURES[fig_id]()
    except KeyError:
        raise KeyError(f"unknown figure id {fig_id!r}; choose from {sorted(FIGURES)}") from None


def write_figure(fig_id: str, out_dir: str | Path) -> list[Path]:
    """Run every curve of ``fig_id`` and write one CSV per curve."""
    out_dir = Path(out_dir) / fig_id
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        write_csv(run_sweep(spec), out_dir / f"{name}.csv")
        for name, spec in figure_specs(fig_id).items()
    ]
