"""Grid refinement of the discrete coefficients toward the continuum values.

For a few interfaces, halve the cell size repeatedly and print the error in
r~ and t~ with the observed order log2(e_N / e_2N).
"""

import math

from yeelab.dispersion import EvanescentRegime, WaveDiscretization
from yeelab.fresnel import InterfaceCase, exact_fresnel, fdtd_fresnel

CASES = {
    "dielectric eps=(3,4) mu=2": InterfaceCase.dielectric(3.0, 4.0, 2.0),
    "dielectric eps=(1,4) mu=16": InterfaceCase.dielectric(1.0, 4.0, 16.0),
    "magnetic mu=(4,3) eps=2": InterfaceCase.magnetic(4.0, 3.0, 2.0),
    "magnetic mu=(100,1) eps=1.21": InterfaceCase.magnetic(100.0, 1.0, 1.21),
}
N_LAMBDAS = [20.0 * 2**k for k in range(8)]


def main() -> None:
    for name, ic in CASES.items():
        ex = exact_fresnel(ic)
        for mode, sc in (("S_c=1", 1.0), ("S_c=min n_r", ic.optimal_courant())):
            print(f"{name}, {mode}")
            prev = None
            for nl in N_LAMBDAS:
                try:
                    fd = fdtd_fresnel(ic, WaveDiscretization(nl, sc))
                except EvanescentRegime:
                    print(f"  N_lambda={nl:7g}  evanescent")
                    continue
                er, et = abs(fd.r - ex.r), abs(fd.t - ex.t)
                order = ""
                if prev is not None:
                    order = f"  order r {math.log2(prev[0] / er):.3f}  t {math.log2(prev[1] / et):.3f}"
                print(f"  N_lambda={nl:7g}  |r~-r|={er:.3e}  |t~-t|={et:.3e}{order}")
                prev = (er, et)


if __name__ == "__main__":
    main()
