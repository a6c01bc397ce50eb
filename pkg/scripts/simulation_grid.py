"""Time-domain runs against the discrete closed forms on the 2 x 4 x 3 x 2 grid.

Prints measured and predicted r, t with the residuals, warm-up retries and
step counts. Evanescent points are listed and skipped.
"""

import time

from yeelab.checks import sim_grid
from yeelab.dispersion import EvanescentRegime
from yeelab.fresnel import fdtd_fresnel
from yeelab.yee_sim import SimConfig, run_and_measure


def main() -> None:
    t0 = time.perf_counter()
    worst = 0.0
    print(f"{'case':48s}{'r_meas':>12s}{'r~':>12s}{'t_meas':>12s}{'t~':>12s}{'max|d|':>10s}{'steps':>7s}")
    for label, ic, wd in sim_grid():
        try:
            ref = fdtd_fresnel(ic, wd)
        except EvanescentRegime:
            print(f"{label:48s}  evanescent")
            continue
        m = run_and_measure(SimConfig.auto(ic, wd))
        d = max(abs(m.r_meas - ref.r), abs(m.t_meas - ref.t))
        worst = max(worst, d)
        print(f"{label:48s}{m.r_meas:12.8f}{ref.r:12.8f}{m.t_meas:12.8f}{ref.t:12.8f}{d:10.1e}{m.n_steps:7d}")
    print(f"worst residual {worst:.2e}, {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
