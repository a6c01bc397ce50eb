"""Command-line front end: ``yeelab {coeff,simulate,sweep,verify,figures}``.

Exit codes: 0 success, 1 failed check or simulation, 2 invalid input,
3 evanescent regime, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import checks
from .config import RunConfig
from .dispersion import EvanescentRegime
from .figures import FIGURES, write_figure
from .fresnel import (
    error_report,
    exact_fresnel,
    exact_power,
    fdtd_fresnel,
    fdtd_power,
)
from .sweep import (
    CourantMode,
    SweepAxis,
    SweepSpec,
    linspace_values,
    mode_dominance_violations,
    run_sweep,
    write_csv,
)
from .yee_sim import ConfigError, DivergenceDetected, NotSettled, run_and_measure

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVANESCENT, EXIT_IO = 0, 1, 2, 3, 4


def out_dir() -> Path:
    return Path(os.environ.get("YEELAB_OUT", "out"))


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--kind", choices=["dielectric", "magnetic"])
    p.add_argument("--eps", help="eps_r: shared value or 'eps1,eps2'")
    p.add_argument("--mu", help="mu_r: shared value or 'mu1,mu2'")
    p.add_argument("--nlambda", help="grid points per vacuum wavelength")
    p.add_argument("--courant", help="standard (S_c=1), optimal (min n_r) or a number")
    p.add_argument("--dump-config", metavar="PATH", help="write the effective config and continue")
    p.add_argument("overrides", nargs="*", metavar="KEY=VALUE", help="inline config overrides")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then inline flags and KEY=VALUE pairs."""
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    inline = {k: getattr(args, k) for k in ("kind", "eps", "mu", "nlambda", "courant") if getattr(args, k)}
    for item in args.overrides:
        if "=" not in item:
            raise ValueError(f"override {item!r} is not KEY=VALUE")
        key, value = item.split("=", 1)
        inline[key.strip()] = value
    cfg = cfg.with_overrides(inline)
    if args.dump_config:
        Path(args.dump_config).write_text(cfg.dump(), encoding="utf-8")
    return cfg


def _g6(x: float | None) -> str:
    return "-" if x is None else f"{x:.6g}"


def coeff_report(cfg: RunConfig) -> dict:
    """All numbers shown by ``coeff``, straight from the library calls."""
    ic = cfg.interface()
    wd = cfg.discretization()
    ex, ep = exact_fresnel(ic), exact_power(ic)
    fd, fp = fdtd_fresnel(ic, wd), fdtd_power(ic, wd)
    report = {
        "kind": ic.kind.value,
        "eta_ratio": ic.eta_ratio,
        "n_lambda": wd.n_lambda,
        "courant": wd.courant,
        "exact": {"r": ex.r, "t": ex.t, "R": ep.R, "T": ep.T},
        "fdtd": {"r": fd.r, "t": fd.t, "R": fp.R, "T": fp.T},
        "delta_R": None,
        "delta_T": None,
        "note": None,
    }
    if ic.identical:
        report["note"] = "identical media: delta_R undefined (R = 0)"
    else:
        err = error_report(ic, wd)
        report["delta_R"], report["delta_T"] = err.delta_R, err.delta_T
    return report


def format_coeff_table(rep: dict) -> str:
    lines = [
        f"{rep['kind']} interface, eta1/eta2 = {rep['eta_ratio']:.6g}, "
        f"N_lambda = {rep['n_lambda']:.6g}, S_c = {rep['courant']:.6g}",
        f"{'':4s}{'exact':>14s}{'fdtd':>14s}",
    ]
    for key in ("r", "t", "R", "T"):
        lines.append(f"{key:4s}{_g6(rep['exact'][key]):>14s}{_g6(rep['fdtd'][key]):>14s}")
    if rep["note"]:
        lines.append(f"delta_R  [undefined] {rep['note']}")
        lines.append("delta_T  [undefined]")
    else:
        lines.append(f"delta_R  {_g6(rep['delta_R'])} %")
        lines.append(f"delta_T  {_g6(rep['delta_T'])} %")
    return "\n".join(lines)


def cmd_coeff(args) -> int:
    rep = coeff_report(resolve_config(args))
    print(format_coeff_table(rep))
    if args.json:
        print(json.dumps(rep))
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = resolve_config(args)
    sim = cfg.sim_config()
    ref = fdtd_fresnel(sim.ic, sim.wd)
    try:
        m = run_and_measure(sim)
    except (DivergenceDetected, NotSettled) as exc:
        print(f"simulation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"grid M={sim.m_total} s={sim.s} b={sim.b} probes=({sim.probe_r}, {sim.probe_t})")
    print(f"steps={m.n_steps} warm-up retries={m.retries}")
    print(f"{'':8s}{'measured':>14s}{'closed form':>14s}{'|diff|':>12s}{'imag':>12s}")
    print(f"{'r':8s}{m.r_meas:>14.6g}{ref.r:>14.6g}{abs(m.r_meas - ref.r):>12.3g}{m.r_imag:>12.3g}")
    print(f"{'t':8s}{m.t_meas:>14.6g}{ref.t:>14.6g}{abs(m.t_meas - ref.t):>12.3g}{m.t_imag:>12.3g}")
    if args.json:
        print(json.dumps({"r_meas": m.r_meas, "t_meas": m.t_meas, "r_fdtd": ref.r, "t_fdtd": ref.t,
                          "r_imag": m.r_imag, "t_imag": m.t_imag, "n_steps": m.n_steps}))
    return EXIT_OK


def parse_values(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3:
            raise ValueError("range must be start:stop:step")
        return linspace_values(*parts)
    return tuple(float(v) for v in text.split(","))


def cmd_sweep(args) -> int:
    cfg = resolve_config(args)
    axis = SweepAxis(args.axis)
    simulate = {"on": True, "off": False, "auto": None}[args.simulate]
    spec = SweepSpec(
        ic_template=cfg.interface(),
        axis=axis,
        axis_values=parse_values(args.values),
        courant_mode=CourantMode(args.mode),
        with_simulation=simulate,
        n_lambda=None if axis is SweepAxis.N_LAMBDA else cfg.nlambda,
        workers=args.workers,
    )
    rows = run_sweep(spec)
    path = Path(args.output) if args.output else out_dir() / "sweep.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    write_csv(rows, path)
    print(path)
    for row in mode_dominance_violations(rows):
        print(f"note: optimal mode worse at {row.axis_value:g} (Delta_R={row.Delta_R:.3g}, Delta_T={row.Delta_T:.3g})")
    bad = [r for r in rows if r.sim_agrees is False]
    for row in bad:
        print(f"simulation mismatch at {row.axis_value:g}: {row.sim_residual_r:.3g}, {row.sim_residual_t:.3g}",
              file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        print("\n".join(checks.CHECKS))
        return EXIT_OK
    names = args.only or list(checks.CHECKS)
    failed = 0
    for name in names:
        opts = {}
        if name == "tfsf-stability" and args.stability_factor:
            opts["factors"] = tuple(args.stability_factor)
        res = checks.run_check(name, **opts)
        print(f"{'PASS' if res.passed else 'FAIL'} {name} ({res.seconds:.2f} s)")
        for line in res.lines:
            print(f"    {line}")
        failed += not res.passed
    print(f"{len(names) - failed}/{len(names)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_figures(args) -> int:
    for path in write_figure(args.figure, out_dir()):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="yeelab", description="1D Yee-FDTD interface laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="exact and discrete Fresnel coefficients")
    _add_config_args(p)
    p.add_argument("--json", action="store_true", help="also print a JSON record")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("simulate", help="run the time-domain simulator and measure r, t")
    _add_config_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="sweep N_lambda or a shared material parameter, write CSV")
    _add_config_args(p)
    p.add_argument("--axis", choices=[a.value for a in SweepAxis], default="nlambda")
    p.add_argument("--values", required=True, help="start:stop:step or v1,v2,...")
    p.add_argument("--mode", choices=[m.value for m in CourantMode], default="standard")
    p.add_argument("--simulate", choices=["on", "off", "auto"], default="off")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", help="CSV path (default $YEELAB_OUT/sweep.csv)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", action="append", choices=list(checks.CHECKS))
    p.add_argument("--list", action="store_true")
    p.add_argument("--stability-factor", type=float, action="append",
                   help="S_c / min(n_r) for the divergence check (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write figure datasets to $YEELAB_OUT")
    p.add_argument("figure", choices=sorted(FIGURES))
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EvanescentRegime as exc:
        print(f"error: evanescent regime: {exc}", file=sys.stderr)
        return EXIT_EVANESCENT
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
