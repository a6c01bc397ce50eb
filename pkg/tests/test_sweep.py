import math

import pytest

from yeelab.figures import FIGURES, HIGH_CONTRAST, WEAK, figure_specs
from yeelab.fresnel import InterfaceCase
from yeelab.sweep import (
    CSV_FIELDS,
    CourantMode,
    Status,
    SweepAxis,
    SweepRow,
    SweepSpec,
    evaluate_point,
    linspace_values,
    mode_dominance_violations,
    read_csv,
    run_sweep,
    strictly_decreasing,
    weak_contrast_ordering_check,
    write_csv,
)

WEAK_D = InterfaceCase.dielectric(3.0, 4.0, 2.0)


def nl_sweep(ic, values, **kw):
    return SweepSpec(ic, SweepAxis.N_LAMBDA, values, **kw)


def test_linspace_inclusive():
    vals = linspace_values(10.0, 40.0, 0.5)
    assert len(vals) == 61 and vals[0] == 10.0 and vals[-1] == 40.0
    assert linspace_values(1.0, 1.0, 0.3) == (1.0,)
    with pytest.raises(ValueError):
        linspace_values(2.0, 1.0, 0.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(axis=SweepAxis.N_LAMBDA, axis_values=()),
        dict(axis=SweepAxis.N_LAMBDA, axis_values=(20.0, 20.0)),
        dict(axis=SweepAxis.N_LAMBDA, axis_values=(30.0, 20.0)),
        dict(axis=SweepAxis.SHARED_MU, axis_values=(1.0, 2.0)),
        dict(axis=SweepAxis.SHARED_EPS, axis_values=(1.0, 2.0), n_lambda=40.0),
    ],
)
def test_spec_rejects(kwargs):
    with pytest.raises(ValueError):
        SweepSpec(WEAK_D, **kwargs)


def test_material_axis_points():
    spec = SweepSpec(WEAK_D, SweepAxis.SHARED_MU, (1.0, 4.0), n_lambda=40.0)
    ic, nl = spec.point(4.0)
    assert nl == 40.0
    assert (ic.medium1.epsilon_r, ic.medium2.epsilon_r) == (3.0, 4.0)
    assert ic.medium1.mu_r == ic.medium2.mu_r == 4.0

    magn = SweepSpec(InterfaceCase.magnetic(4.0, 3.0, 2.0), SweepAxis.SHARED_EPS, (1.5,), n_lambda=30.0)
    ic, _ = magn.point(1.5)
    assert ic.medium1.epsilon_r == ic.medium2.epsilon_r == 1.5
    assert (ic.medium1.mu_r, ic.medium2.mu_r) == (4.0, 3.0)


def test_row_internal_consistency():
    ic = InterfaceCase.dielectric(1.0, 4.0, 16.0)
    for row in run_sweep(nl_sweep(ic, linspace_values(40.0, 70.0, 5.0))):
        assert row.status == "ok"
        assert row.R_fdtd == pytest.approx(row.r_fdtd**2, abs=1e-14)
        assert row.T_fdtd == pytest.approx(ic.eta_ratio * row.t_fdtd**2, rel=1e-14)
        assert row.R + row.T == pytest.approx(1.0, abs=1e-14)
        assert row.delta_R == pytest.approx(abs(row.R_fdtd - row.R) / row.R * 100, rel=1e-12)
        assert row.Delta_R is None


def test_errors_shrink_with_resolution():
    rows = run_sweep(nl_sweep(WEAK_D, linspace_values(10.0, 40.0, 0.5)))
    assert strictly_decreasing(rows, "delta_R")
    assert strictly_decreasing(rows, "delta_T")


def test_material_sweep_delta_grows_with_mu():
    spec = SweepSpec(InterfaceCase.dielectric(1.0, 4.0, 1.0), SweepAxis.SHARED_MU, (1.0, 2.0, 4.0, 16.0), n_lambda=60.0)
    rows = run_sweep(spec)
    d = [r.delta_R for r in rows]
    assert all(b > a for a, b in zip(d, d[1:]))


def test_both_mode_columns():
    ic = InterfaceCase.dielectric(1.0, 4.0, 16.0)
    row = evaluate_point(nl_sweep(ic, (40.0,), courant_mode=CourantMode.BOTH), 40.0)
    assert row.courant == 1.0
    assert row.Delta_R == pytest.approx(2.5253440425771580322, rel=1e-10)
    assert row.Delta_R > 0 and row.Delta_T > 0
    assert not mode_dominance_violations([row])


def test_optimal_mode_uses_min_index():
    ic = InterfaceCase.dielectric(3.0, 4.0, 2.0)
    row = evaluate_point(nl_sweep(ic, (20.0,), courant_mode=CourantMode.OPTIMAL), 20.0)
    assert row.courant == pytest.approx(math.sqrt(6.0))


def test_mode_dominance_flags_negative():
    row = SweepRow(1.0, 20.0, 1.0, 0.0, 1.0, 0.0, 1.0, Delta_R=-1e-3, Delta_T=0.2)
    assert mode_dominance_violations([row]) == [row]


def test_evanescent_points_recorded():
    ic = InterfaceCase.dielectric(1.0, 100.0, 1.21)
    rows = run_sweep(nl_sweep(ic, (10.0, 20.0, 60.0)))
    assert [r.status for r in rows] == ["evanescent", "evanescent", "ok"]
    assert rows[0].r_fdtd is None and rows[0].delta_R is None
    # continuum values are still reported
    assert rows[0].r == pytest.approx(rows[2].r)


def test_identical_media_rows():
    rows = run_sweep(nl_sweep(InterfaceCase.dielectric(2.0, 2.0, 2.0), (20.0, 30.0)))
    assert all(r.delta_R is None and r.r_fdtd == 0.0 for r in rows)
    assert weak_contrast_ordering_check(rows)


@pytest.mark.parametrize("ic", list(WEAK.values()), ids=list(WEAK))
def test_weak_contrast_reflection_error_dominates(ic):
    rows = run_sweep(nl_sweep(ic, linspace_values(10.0, 40.0, 0.5)))
    assert weak_contrast_ordering_check(rows)


def test_ordering_check_detects_violation():
    row = SweepRow(1.0, 20.0, 1.0, 0.0, 1.0, 0.0, 1.0, delta_R=0.1, delta_T=0.2)
    assert not weak_contrast_ordering_check([row])


def test_parallel_matches_sequential():
    ic = InterfaceCase.magnetic(4.0, 3.0, 2.0)
    vals = linspace_values(10.0, 20.0, 1.0)
    seq = run_sweep(nl_sweep(ic, vals, courant_mode=CourantMode.BOTH))
    par = run_sweep(nl_sweep(ic, vals, courant_mode=CourantMode.BOTH, workers=3))
    assert seq == par


def test_csv_round_trip(tmp_path):
    ic = InterfaceCase.dielectric(1.0, 100.0, 1.21)
    rows = run_sweep(nl_sweep(ic, (20.0, 60.0, 61.5), courant_mode=CourantMode.BOTH))
    path = write_csv(rows, tmp_path / "s.csv")
    text = path.read_text(encoding="utf-8")
    assert text.splitlines()[0] == ",".join(CSV_FIELDS)
    assert read_csv(path) == rows


def test_simulated_rows_agree():
    rows = run_sweep(nl_sweep(WEAK_D, (20.0, 40.0), with_simulation=True))
    for row in rows:
        assert row.sim_agrees is True
        assert row.sim_residual_r <= 1e-5 and row.sim_residual_t <= 1e-5


def test_auto_simulation_threshold():
    spec = nl_sweep(InterfaceCase.magnetic(4.0, 3.0, 2.0), (200.0, 201.0), with_simulation=None)
    first = evaluate_point(spec, 200.0)
    second = evaluate_point(spec, 201.0)
    assert first.r_meas is not None and second.r_meas is None
    assert second.sim_agrees is None


def test_figure_registry():
    assert sorted(FIGURES) == ["fig5", "fig6", "fig8", "fig9", "figA", "figB"]
    for fig_id in ("fig5", "fig6", "fig8"):
        assert len(figure_specs(fig_id)) == 8
    with pytest.raises(KeyError):
        figure_specs("fig7")


def test_weak_reflection_approaches_continuum_from_below():
    spec = figure_specs("fig5")["diel_eps3-4_mu2_standard"]
    rows = run_sweep(spec)
    exact = rows[-1].r
    assert exact == pytest.approx(-0.0718, abs=5e-5)
    r = [row.r_fdtd for row in rows]
    assert all(x < exact for x in r)
    assert all(b > a for a, b in zip(r, r[1:]))


def test_fine_family_ordered_by_mu():
    specs = figure_specs("fig9")
    for pair in ("1-4", "4-1"):
        per_mu = [run_sweep(specs[f"b_d_eps{pair}_mu{mu:g}"]) for mu in (1, 2, 4, 16)]
        for i in range(len(per_mu[0])):
            d = [rows[i].delta_R for rows in per_mu]
            assert all(b > a for a, b in zip(d, d[1:]))


@pytest.mark.parametrize("name", list(HIGH_CONTRAST))
def test_high_contrast_reflection_dominates(name):
    rows = run_sweep(figure_specs("figB")[name])
    assert all(r.status == "ok" for r in rows)
    assert all(r.R_fdtd > r.T_fdtd for r in rows)
    assert all(r.R > r.T for r in rows)


def test_status_values():
    assert {s.value for s in Status} == {"ok", "evanescent", "diverged", "not_settled"}
