"""Write every figure dataset as CSV and print a one-line summary per curve.

    python3 scripts/reproduce_figures.py [--out out] [--only fig9 ...]
"""

import argparse
import time
from pathlib import Path

from yeelab.figures import FIGURES, write_figure
from yeelab.sweep import read_csv


def summarize(path: Path) -> str:
    rows = [r for r in read_csv(path) if r.status == "ok"]
    n_skip = len(read_csv(path)) - len(rows)
    if not rows or rows[0].delta_R is None:
        return f"  {path.stem:32s} {len(rows)} rows"
    first, last = rows[0], rows[-1]
    text = (
        f"  {path.stem:32s} N_lambda {first.n_lambda:g}..{last.n_lambda:g}: "
        f"delta_R {first.delta_R:8.3f} -> {last.delta_R:7.3f} %, "
        f"delta_T {first.delta_T:8.3f} -> {last.delta_T:7.3f} %"
    )
    if last.Delta_R is not None:
        text += f", Delta_R at end {last.Delta_R:.4f} %"
    if n_skip:
        text += f" ({n_skip} evanescent)"
    return text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out")
    ap.add_argument("--only", nargs="*", choices=sorted(FIGURES))
    args = ap.parse_args()
    for fig_id in args.only or sorted(FIGURES):
        t0 = time.perf_counter()
        paths = write_figure(fig_id, args.out)
        print(f"{fig_id}: {len(paths)} curves in {time.perf_counter() - t0:.2f} s")
        for p in paths:
            print(summarize(p))


if __name__ == "__main__":
    main()
