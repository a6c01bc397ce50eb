"""Parameter sweeps over N_lambda or a shared material parameter.

Each sweep point yields one :class:`SweepRow` with the continuum and
discrete coefficients, their relative errors, optionally the
standard-minus-optimal error differences, and optionally a simulated
cross-check. Failures at a point are recorded in ``status`` and the sweep
carries on.
"""

from __future__ import annotations

import csv
import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable, Sequence

from .dispersion import EvanescentRegime, Medium, WaveDiscretization
from .fresnel import (
    DegenerateInterface,
    InterfaceCase,
    InterfaceKind,
    error_report,
    exact_fresnel,
    exact_power,
    fdtd_fresnel,
    fdtd_power,
)
from .yee_sim import DivergenceDetected, NotSettled, SimConfig, run_and_measure

SIM_TOL = 1e-5
SIM_MAX_N_LAMBDA = 200.0


class SweepAxis(enum.Enum):
    N_LAMBDA = "nlambda"
    SHARED_MU = "mu"
    SHARED_EPS = "eps"


class CourantMode(enum.Enum):
    STANDARD = "standard"
    OPTIMAL = "optimal"
    BOTH = "both"


class Status(enum.Enum):
    OK = "ok"
    EVANESCENT = "evanescent"
    DIVERGED = "diverged"
    NOT_SETTLED = "not_settled"


@dataclass(frozen=True)
class SweepSpec:
    """One curve: a template interface and the values swept along ``axis``.

    ``n_lambda`` fixes the discretization when sweeping a material axis.
    Under ``CourantMode.BOTH`` the primary columns hold the standard-mode
    values and the Delta columns hold standard minus optimal.
    ``with_simulation=None`` means on for ``N_lambda <= 200`` only.
    """

    ic_template: InterfaceCase
    axis: SweepAxis
    axis_values: tuple[float, ...]
    courant_mode: CourantMode = CourantMode.STANDARD
    with_simulation: bool | None = False
    n_lambda: float | None = None
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "axis_values", tuple(float(v) for v in self.axis_values))
        vals = self.axis_values
        if not vals:
            raise ValueError("axis_values is empty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("axis_values must be strictly increasing")
        if self.axis is not SweepAxis.N_LAMBDA and self.n_lambda is None:
            raise ValueError("a material sweep needs a fixed n_lambda")
        if self.axis is SweepAxis.SHARED_MU and self.ic_template.kind is not InterfaceKind.DIELECTRIC:
            raise ValueError("the shared-mu axis applies to dielectric interfaces")
        if self.axis is SweepAxis.SHARED_EPS and self.ic_template.kind is not InterfaceKind.MAGNETIC:
            raise ValueError("the shared-eps axis applies to magnetic interfaces")

    def point(self, value: float) -> tuple[InterfaceCase, float]:
        """Interface and N_lambda at one axis value."""
        ic = self.ic_template
        if self.axis is SweepAxis.N_LAMBDA:
            return ic, value
        m1, m2 = ic.medium1, ic.medium2
        if self.axis is SweepAxis.SHARED_MU:
            ic = replace(ic, medium1=Medium(m1.epsilon_r, value), medium2=Medium(m2.epsilon_r, value))
        else:
            ic = replace(ic, medium1=Medium(value, m1.mu_r), medium2=Medium(value, m2.mu_r))
        return ic, float(self.n_lambda)


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    n_lambda: float
    courant: float
    r: float
    t: float
    R: float
    T: float
    r_fdtd: float | None = None
    t_fdtd: float | None = None
    R_fdtd: float | None = None
    T_fdtd: float | None = None
    delta_R: float | None = None
    delta_T: float | None = None
    Delta_R: float | None = None
    Delta_T: float | None = None
    r_meas: float | None = None
    t_meas: float | None = None
    sim_residual_r: float | None = None
    sim_residual_t: float | None = None
    status: str = Status.OK.value

    @property
    def sim_agrees(self) -> bool | None:
        """Whether the simulated r, t match the closed forms (None if not simulated)."""
        if self.sim_residual_r is None:
            return None
        return self.sim_residual_r <= SIM_TOL and self.sim_residual_t <= SIM_TOL


CSV_FIELDS = [f.name for f in fields(SweepRow)]


def _courant(ic: InterfaceCase, mode: CourantMode) -> float:
    return ic.optimal_courant() if mode is CourantMode.OPTIMAL else 1.0


def evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    ic, n_lambda = spec.point(value)
    courant = _courant(ic, spec.courant_mode)
    ex, ep = exact_fresnel(ic), exact_power(ic)
    row = SweepRow(
        axis_value=value, n_lambda=n_lambda, courant=courant, r=ex.r, t=ex.t, R=ep.R, T=ep.T
    )
    wd = WaveDiscretization(n_lambda, courant)
    try:
        fd, fp = fdtd_fresnel(ic, wd), fdtd_power(ic, wd)
        row = replace(row, r_fdtd=fd.r, t_fdtd=fd.t, R_fdtd=fp.R, T_fdtd=fp.T)
        if not ic.identical:
            err = error_report(ic, wd)
            row = replace(row, delta_R=err.delta_R, delta_T=err.delta_T)
        if spec.courant_mode is CourantMode.BOTH and not ic.identical:
            opt = error_report(ic, WaveDiscretization(n_lambda, ic.optimal_courant()))
            row = replace(
                row, Delta_R=row.delta_R - opt.delta_R, Delta_T=row.delta_T - opt.delta_T
            )
    except EvanescentRegime:
        return replace(row, status=Status.EVANESCENT.value)
    except DegenerateInterface:  # pragma: no cover - guarded by ic.identical
        pass

    simulate = spec.with_simulation
    if simulate is None:
        simulate = n_lambda <= SIM_MAX_N_LAMBDA
    if simulate:
        try:
            m = run_and_measure(SimConfig.auto(ic, wd))
        except DivergenceDetected:
            return replace(row, status=Status.DIVERGED.value)
        except NotSettled:
            return replace(row, status=Status.NOT_SETTLED.value)
        row = replace(
            row,
            r_meas=m.r_meas,
            t_meas=m.t_meas,
            sim_residual_r=abs(m.r_meas - fd.r),
            sim_residual_t=abs(m.t_meas - fd.t),
        )
    return row


def _evaluate(args: tuple[SweepSpec, float]) -> SweepRow:
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate every axis value; rows come back in axis order regardless of workers."""
    jobs = [(spec, v) for v in spec.axis_values]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(_evaluate, jobs))
    return [_evaluate(j) for j in jobs]


def weak_contrast_ordering_check(rows: Iterable[SweepRow]) -> bool:
    """True iff ``delta_R > delta_T`` on every row that has both errors.

    Rows without errors (identical media, evanescent points) are skipped;
    an input with no usable rows is vacuously true.
    """
    return all(
        row.delta_R > row.delta_T
        for row in rows
        if row.delta_R is not None and row.delta_T is not None
    )


def strictly_decreasing(rows: Sequence[SweepRow], column: str) -> bool:
    vals = [getattr(r, column) for r in rows if getattr(r, column) is not None]
    return all(b < a for a, b in zip(vals, vals[1:]))


def mode_dominance_violations(rows: Iterable[SweepRow]) -> list[SweepRow]:
    """Rows where the optimal Courant number did worse than S_c = 1."""
    return [
        row
        for row in rows
        if row.Delta_R is not None and (row.Delta_R < 0.0 or row.Delta_T < 0.0)
    ]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(rows: Iterable[SweepRow], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_FIELDS)
        for row in rows:
            w.writerow([_fmt(getattr(row, name)) for name in CSV_FIELDS])
    return path


def read_csv(path: str | Path) -> list[SweepRow]:
    """Inverse of :func:`write_csv`."""
    out = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            kw = {}
            for name in CSV_FIELDS:
                cell = rec[name]
                if name == "status":
                    kw[name] = cell
                else:
                    kw[name] = float(cell) if cell != "" else None
            out.append(SweepRow(**kw))
    return out


def linspace_values(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive arithmetic grid, robust to float accumulation."""
    if step <= 0 or stop < start:
        raise ValueError("need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9))
    return tuple(start + i * step for i in range(n + 1))
