"""Acceptance checks shared by ``yeelab verify`` and the test suite.

Every check returns a :class:`CheckResult` whose ``lines`` describe each
sub-check; a sub-check that cannot be evaluated for a documented reason is
reported as ``n/a`` and does not count as a failure.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .dispersion import EvanescentRegime, Medium, WaveDiscretization, k_tilde
from .fresnel import (
    InterfaceCase,
    InterfaceKind,
    compare_courant_modes,
    error_report,
    exact_fresnel,
    exact_power,
    fdtd_fresnel,
    fdtd_power,
)
from .yee_sim import (
    DivergenceDetected,
    SimConfig,
    Stepper,
    measure_wavelength,
    run_and_measure,
    scattered_leakage,
)

SIM_TOL = 1e-5
SIM_N_LAMBDA = (20.0, 40.0, 80.0)

# one realization per (kind, eta1/eta2); a shared parameter of 1.21 keeps
# min(n_r) above 1 so the optimal mode differs from S_c = 1
SIM_CASES = {
    ("dielectric", 1.16): InterfaceCase.dielectric(3.0, 4.0, mu=2.0),
    ("dielectric", 0.87): InterfaceCase.dielectric(4.0, 3.0, mu=2.0),
    ("dielectric", 2.0): InterfaceCase.dielectric(1.0, 4.0, mu=4.0),
    ("dielectric", 10.0): InterfaceCase.dielectric(1.0, 100.0, mu=1.21),
    ("magnetic", 1.16): InterfaceCase.magnetic(4.0, 3.0, eps=2.0),
    ("magnetic", 0.87): InterfaceCase.magnetic(3.0, 4.0, eps=2.0),
    ("magnetic", 2.0): InterfaceCase.magnetic(4.0, 1.0, eps=4.0),
    ("magnetic", 10.0): InterfaceCase.magnetic(100.0, 1.0, eps=1.21),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    seconds: float = 0.0


def courant_modes(ic: InterfaceCase) -> dict[str, float]:
    return {"standard": 1.0, "optimal": ic.optimal_courant()}


def sim_grid():
    """Yield ``(label, ic, wd)`` over the 48-point cross-check grid."""
    for (kind, eta), ic in SIM_CASES.items():
        for nl in SIM_N_LAMBDA:
            for mode, sc in courant_modes(ic).items():
                label = f"{kind:10s} eta1/eta2={eta:<5g} N_lambda={nl:<3g} {mode:8s}"
                yield label, ic, WaveDiscretization(nl, sc)


def random_interfaces(n: int, seed: int, lo: float = 0.1, hi: float = 100.0) -> list[InterfaceCase]:
    """Random interfaces of both kinds with log-uniform parameters in ``[lo, hi]``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        a, b, c = np.exp(rng.uniform(math.log(lo), math.log(hi), 3))
        if i % 2 == 0:
            out.append(InterfaceCase.dielectric(float(a), float(b), float(c)))
        else:
            out.append(InterfaceCase.magnetic(float(a), float(b), float(c)))
    return out


def convergence_interfaces(n: int = 20, seed: int = 7) -> list[InterfaceCase]:
    """Interfaces with n_r <= 6 and a clear contrast (differing values by >= 20 %).

    The N_lambda = 40 -> 80 error ratio sits in the asymptotic O(N_lambda^-2)
    range only while n_r / N_lambda is small; n_r <= 6 keeps it there.
    """
    rng = np.random.default_rng(seed)
    out: list[InterfaceCase] = []
    while len(out) < n:
        a, b, c = np.exp(rng.uniform(0.0, math.log(6.0), 3))
        if max(a, b) / min(a, b) < 1.2 or max(a, b) * c > 36.0:
            continue
        make = InterfaceCase.dielectric if len(out) % 2 == 0 else InterfaceCase.magnetic
        out.append(make(float(a), float(b), float(c)))
    return out


def _line(ok: bool | None, text: str) -> str:
    tag = "n/a " if ok is None else ("PASS" if ok else "FAIL")
    return f"[{tag}] {text}"


def check_exact_theory() -> CheckResult:
    res = CheckResult("exact-theory", True)
    quoted = [
        (InterfaceCase.dielectric(3.0, 4.0, 2.0), -0.07, 0.93),
        (InterfaceCase.dielectric(4.0, 3.0, 2.0), 0.07, 1.07),
    ]
    for ic, r_ref, t_ref in quoted:
        c = exact_fresnel(ic)
        ok = abs(c.r - r_ref) <= 0.005 and abs(c.t - t_ref) <= 0.005
        res.passed &= ok
        res.lines.append(
            _line(ok, f"eta1/eta2={ic.eta_ratio:.4f}: r={c.r:.4f} (~{r_ref}), t={c.t:.4f} (~{t_ref}) +-0.005")
        )
    worst = max(abs(p.R + p.T - 1.0) for p in map(exact_power, random_interfaces(1000, seed=1)))
    ok = worst <= 1e-12
    res.passed &= ok
    res.lines.append(_line(ok, f"R+T=1 over 1000 random interfaces: max |R+T-1| = {worst:.2e} <= 1e-12"))
    return res


def check_convergence() -> CheckResult:
    res = CheckResult("convergence", True)
    cases = convergence_interfaces()
    worst_lim = 0.0
    ratios = []
    for ic in cases:
        ex = exact_fresnel(ic)
        for sc in courant_modes(ic).values():
            fd = fdtd_fresnel(ic, WaveDiscretization(1e6, sc))
            worst_lim = max(worst_lim, abs(fd.r - ex.r), abs(fd.t - ex.t))
            e40 = fdtd_fresnel(ic, WaveDiscretization(40.0, sc))
            e80 = fdtd_fresnel(ic, WaveDiscretization(80.0, sc))
            ratios.append(abs(e40.r - ex.r) / abs(e80.r - ex.r))
            ratios.append(abs(e40.t - ex.t) / abs(e80.t - ex.t))
    ok = worst_lim < 1e-9
    res.passed &= ok
    res.lines.append(_line(ok, f"N_lambda=1e6, 20 interfaces x 2 modes: max |r~-r|,|t~-t| = {worst_lim:.2e} < 1e-9"))
    lo, hi = min(ratios), max(ratios)
    ok = 3.5 <= lo and hi <= 4.5
    res.passed &= ok
    res.lines.append(_line(ok, f"error ratio N_lambda 40->80 in [{lo:.4f}, {hi:.4f}] within [3.5, 4.5]"))
    return res


def check_simulation_crosscheck() -> CheckResult:
    res = CheckResult("simulation-crosscheck", True)
    n_run = n_na = 0
    worst = 0.0
    for label, ic, wd in sim_grid():
        try:
            ref = fdtd_fresnel(ic, wd)
        except EvanescentRegime:
            n_na += 1
            res.lines.append(_line(None, f"{label} evanescent at S_c={wd.courant:g}: no propagating wave"))
            continue
        m = run_and_measure(SimConfig.auto(ic, wd))
        dr, dt = abs(m.r_meas - ref.r), abs(m.t_meas - ref.t)
        worst = max(worst, dr, dt)
        ok = dr <= SIM_TOL and dt <= SIM_TOL
        res.passed &= ok
        n_run += 1
        res.lines.append(_line(ok, f"{label} |dr|={dr:.1e} |dt|={dt:.1e}"))
    res.lines.append(f"       {n_run} runs, {n_na} not applicable, worst deviation {worst:.2e} (tol {SIM_TOL:g})")
    return res


def expected_signs(ic: InterfaceCase) -> dict[str, int]:
    """Sign of (discrete - exact) for r, t, R, T from the sign laws."""
    high_first = ic.medium1.eta_r > ic.medium2.eta_r
    r_sign = -1 if high_first else 1
    t_up = high_first if ic.kind is InterfaceKind.DIELECTRIC else not high_first
    t_sign = 1 if t_up else -1
    return {"r": r_sign, "t": t_sign, "R": 1, "T": t_sign}


def sign_law_violations(ic: InterfaceCase, wd: WaveDiscretization) -> list[str]:
    want = expected_signs(ic)
    ex, fd = exact_fresnel(ic), fdtd_fresnel(ic, wd)
    ep, fp = exact_power(ic), fdtd_power(ic, wd)
    diffs = {"r": fd.r - ex.r, "t": fd.t - ex.t, "R": fp.R - ep.R, "T": fp.T - ep.T}
    return [k for k, d in diffs.items() if math.copysign(1, d) != want[k] or d == 0.0]


def check_sign_laws() -> CheckResult:
    res = CheckResult("sign-laws", True)
    n_ok = n_na = 0
    for label, ic, wd in sim_grid():
        try:
            bad = sign_law_violations(ic, wd)
        except EvanescentRegime:
            n_na += 1
            continue
        if bad:
            res.passed = False
            res.lines.append(_line(False, f"{label} violates {bad}"))
        else:
            n_ok += 1
    res.lines.append(
        _line(res.passed, f"r~ vs r, t~ vs t, R~ > R, T~ vs T on {n_ok} grid points ({n_na} evanescent skipped)")
    )
    return res


def check_figure_spot_values() -> CheckResult:
    res = CheckResult("figure-spot-values", True)
    ic = InterfaceCase.dielectric(1.0, 4.0, 16.0)
    d40 = compare_courant_modes(ic, 40.0)[0]
    d70 = compare_courant_modes(ic, 70.0)[0]
    delta = error_report(ic, WaveDiscretization(40.0, 1.0)).delta_R
    checks = [
        (abs(d40 - 3.0) <= 1.0, f"Delta_R(eps=1,4 mu=16, N_lambda=40) = {d40:.4f} % ~ 3 +- 1"),
        (d70 < 0.2, f"Delta_R(N_lambda=70) = {d70:.4f} % < 0.2"),
        (delta > 50.0, f"delta_R(N_lambda=40, S_c=1) = {delta:.3f} % > 50"),
    ]
    worst = 0.0
    for ic_ in random_interfaces(200, seed=3, lo=1.0, hi=10.0):
        for nl in (20.0, 40.0):
            try:
                a = error_report(ic_, WaveDiscretization(nl, 1.0)).delta_R
                b = error_report(ic_.swapped(), WaveDiscretization(nl, 1.0)).delta_R
            except EvanescentRegime:
                continue
            worst = max(worst, abs(a - b) / max(1.0, a))
    checks.append((worst <= 1e-12, f"delta_R swap invariance: max relative change {worst:.2e} <= 1e-12"))
    for ok, text in checks:
        res.passed &= ok
        res.lines.append(_line(ok, text))
    return res


def pulse_shape_error(n_steps: int = 1000) -> float:
    """Max deviation from exact advection for a Gaussian pulse at S_c = n_r = 2."""
    medium = Medium(4.0, 1.0)
    wd = WaveDiscretization(20.0, 2.0)
    width = 12.0
    t0 = 6.5 * width

    def pulse(t: float) -> float:
        return math.exp(-(((t - t0) / width) ** 2))

    ic = InterfaceCase.dielectric(4.0, 4.0, 1.0)
    cfg = SimConfig.auto(ic, wd, waveform=pulse, n_warmup_periods=n_steps / wd.steps_per_period)
    # the pulse advances one cell per step; keep it clear of the right wall
    cfg = replace(cfg, m_total=max(cfg.m_total, cfg.s + n_steps + 16))
    nodes = np.arange(cfg.s, cfg.m_total - 1)
    worst = 0.0
    with Stepper(cfg) as stepper:
        for _ in range(n_steps):
            stepper.step()
            t = stepper.state.q * wd.dt
            exact = np.exp(-(((t - (nodes - cfg.s) * medium.n_r - t0) / width) ** 2))
            worst = max(worst, float(np.max(np.abs(stepper.state.e[cfg.s : cfg.m_total - 1] - exact))))
    return worst


def check_dispersion() -> CheckResult:
    res = CheckResult("dispersion", True)
    for label, medium in (("1", Medium(1.0, 1.0)), ("2", Medium(4.0, 1.0)), ("sqrt(8)", Medium(8.0, 1.0))):
        for nl in (20.0, 40.0):
            wd = WaveDiscretization(nl, 1.0)
            lam = measure_wavelength(medium, wd)
            ref = 2.0 * math.pi / k_tilde(medium, wd)
            rel = abs(lam - ref) / ref
            ok = rel <= 1e-3
            res.passed &= ok
            res.lines.append(_line(ok, f"n_r={label:7s} N_lambda={nl:g}: lambda={lam:.6f} vs 2pi/k~={ref:.6f} (rel {rel:.1e})"))
    err = pulse_shape_error()
    ok = err <= 1e-10
    res.passed &= ok
    res.lines.append(_line(ok, f"S_c=n_r=2 pulse over 1000 steps: max deviation {err:.1e} <= 1e-10"))
    return res


def divergence_step(factor: float, max_steps: int = 2000) -> int | None:
    """Step at which the watchdog fires for ``S_c = factor * min(n_r)``, or None."""
    ic = InterfaceCase.dielectric(3.0, 4.0, 2.0)
    wd = WaveDiscretization(20.0, factor * ic.optimal_courant())
    cfg = SimConfig.auto(ic, wd, check_stability=False)
    with Stepper(cfg) as stepper:
        try:
            stepper.run(max_steps)
        except DivergenceDetected:
            return stepper.state.q
    return None


STABILITY_FACTORS = (1.05, 1.01 * 1.05)


def check_tfsf_stability(factors: tuple[float, ...] = STABILITY_FACTORS) -> CheckResult:
    res = CheckResult("tfsf-stability", True)
    for ic in (InterfaceCase.dielectric(1.0, 1.0, 1.0), InterfaceCase.dielectric(3.0, 3.0, 2.0)):
        leak = scattered_leakage(SimConfig.auto(ic, WaveDiscretization(20.0, 1.0)))
        ok = leak <= 1e-6
        res.passed &= ok
        res.lines.append(_line(ok, f"scattered-field peak, n_r={ic.medium1.n_r:.4g}: {leak:.1e} <= 1e-6 E0"))
    for factor in factors:
        q = divergence_step(factor)
        ok = q is not None
        res.passed &= ok
        res.lines.append(_line(ok, f"S_c = {factor:.4f} min(n_r): watchdog fired at step {q} (limit 2000)"))
    ic = InterfaceCase.dielectric(3.0, 4.0, 2.0)
    try:
        run_and_measure(SimConfig.auto(ic, WaveDiscretization(20.0, ic.optimal_courant())))
        ok = True
    except DivergenceDetected:
        ok = False
    res.passed &= ok
    res.lines.append(_line(ok, "S_c = min(n_r) runs to completion"))
    return res


def check_high_contrast() -> CheckResult:
    res = CheckResult("high-contrast", True)
    n_lambdas = np.arange(50.0, 151.0, 1.0)
    forward = InterfaceCase.dielectric(1.0, 100.0, 2.0)
    backward = InterfaceCase.dielectric(100.0, 1.0, 2.0)
    ok = all(fdtd_power(ic, WaveDiscretization(nl, 1.0)).R > fdtd_power(ic, WaveDiscretization(nl, 1.0)).T
             for ic in (forward, backward) for nl in n_lambdas)
    res.passed &= ok
    res.lines.append(_line(ok, "R~ > T~ for eps=(1,100) and (100,1), mu=2, N_lambda in [50,150]"))
    fwd = [error_report(forward, WaveDiscretization(nl, 1.0)) for nl in n_lambdas]
    bwd = [error_report(backward, WaveDiscretization(nl, 1.0)) for nl in n_lambdas]
    ok = all(e.delta_T < e.delta_R for e in fwd)
    res.passed &= ok
    res.lines.append(_line(ok, "n_r1 < n_r2: delta_T < delta_R throughout"))
    n_exc = sum(e.delta_T > e.delta_R for e in bwd)
    ok = n_exc > 0
    res.passed &= ok
    res.lines.append(_line(ok, f"n_r1 > n_r2: exception delta_T > delta_R observed at {n_exc}/{len(bwd)} points"))
    return res


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "exact-theory": check_exact_theory,
    "convergence": check_convergence,
    "simulation-crosscheck": check_simulation_crosscheck,
    "sign-laws": check_sign_laws,
    "figure-spot-values": check_figure_spot_values,
    "dispersion": check_dispersion,
    "tfsf-stability": check_tfsf_stability,
    "high-contrast": check_high_contrast,
}


def run_check(name: str, **options) -> CheckResult:
    start = time.perf_counter()
    res = CHECKS[name](**options)
    res.seconds = time.perf_counter() - start
    return res
