"""Acceptance suite: one test per criterion, run through ``yeelab.checks``.

Each test prints the per-item ``[PASS]``/``[FAIL]``/``[n/a ]`` lines from the
check (visible with ``pytest -s``) and repeats them in the assertion
message on failure. ``yeelab verify`` runs the same checks from the
command line.
"""

from yeelab.checks import run_check


def _run(name, budget=None, **options):
    res = run_check(name, **options)
    report = "\n".join([f"{name} ({res.seconds:.2f} s)", *res.lines])
    print(report)
    assert res.passed, report
    if budget is not None:
        assert res.seconds < budget, f"{name} took {res.seconds:.2f} s, budget {budget} s"
    return res


def test_exact_theory_quoted_values_and_energy_balance():
    _run("exact-theory", budget=1.0)


def test_discrete_coefficients_converge_at_second_order():
    _run("convergence", budget=1.0)


def test_simulator_matches_discrete_closed_forms():
    res = _run("simulation-crosscheck", budget=60.0)
    assert not any(line.startswith("[FAIL]") for line in res.lines)


def test_sign_laws_on_simulation_grid():
    _run("sign-laws")


def test_courant_mode_spot_values_and_swap_invariance():
    _run("figure-spot-values")


def test_measured_wavelength_and_magic_courant_pulse():
    _run("dispersion")


def test_tfsf_clean_and_watchdog_fires():
    _run("tfsf-stability")


def test_high_contrast_reflection_and_error_ordering_exception():
    _run("high-contrast")
