import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from _oracles import FROZEN, bisect_asin, half_k
from yeelab.dispersion import (
    EvanescentRegime,
    Medium,
    WaveDiscretization,
    big_k,
    big_omega,
    continuum_k,
    dispersion_sine,
    k_tilde,
    optimal_courant,
    solve_k_tilde,
)


@pytest.mark.parametrize("eps,mu", [(0, 1), (1, 0), (-1, 2), (2, -1), (math.inf, 1), (math.nan, 1)])
def test_medium_rejects_nonpositive(eps, mu):
    with pytest.raises(ValueError):
        Medium(eps, mu)


def test_medium_derived():
    m = Medium(3.0, 2.0)
    assert m.n_r == pytest.approx(math.sqrt(6.0))
    assert m.eta_r == pytest.approx(math.sqrt(2.0 / 3.0))


@pytest.mark.parametrize("nl,sc", [(2.0, 1.0), (1.0, 1.0), (20.0, 0.0), (20.0, -1.0), (20.0, 10.0), (20.0, 15.0)])
def test_discretization_rejects(nl, sc):
    with pytest.raises(ValueError):
        WaveDiscretization(nl, sc)


def test_discretization_units():
    wd = WaveDiscretization(20.0, 0.5)
    assert wd.half_omega_dt == pytest.approx(math.pi * 0.5 / 20)
    assert wd.dt == 0.5
    # one period is N_lambda time units
    assert wd.omega * wd.n_lambda == pytest.approx(2 * math.pi)
    assert wd.steps_per_period == pytest.approx(40.0)


@pytest.mark.parametrize("nl", [4.5, 10.0, 20.0, 137.0])
def test_vacuum_standard_courant(nl):
    wd = WaveDiscretization(nl, 1.0)
    assert solve_k_tilde(Medium(1.0, 1.0), wd) == pytest.approx(math.pi / nl, rel=1e-15)


@pytest.mark.parametrize("eps,mu", [(4.0, 1.0), (2.0, 3.0), (8.0, 8.0), (1.21, 1.0)])
@pytest.mark.parametrize("nl", [20.0, 33.3, 80.0])
def test_magic_courant(eps, mu, nl):
    m = Medium(eps, mu)
    wd = WaveDiscretization(nl, m.n_r)
    got = 2 * solve_k_tilde(m, wd)
    assert got == pytest.approx(2 * wd.half_omega_dt, abs=4 * math.ulp(got))


def test_known_value_against_bisection():
    m = Medium(4.0, 1.0)
    wd = WaveDiscretization(20.0, 1.0)
    assert dispersion_sine(m, wd) == pytest.approx(2 * math.sin(math.pi / 20), rel=1e-15)
    val = solve_k_tilde(m, wd)
    assert val == pytest.approx(bisect_asin(2 * math.sin(math.pi / 20)), abs=1e-14)
    assert val == pytest.approx(FROZEN["half_k_n2_s1_nl20"], abs=1e-15)
    assert float(half_k(2, 1, 20)) == pytest.approx(FROZEN["half_k_n2_s1_nl20"], abs=1e-16)
    # dispersion slows the wave: k~ exceeds the continuum value
    assert val > math.pi * 2 / 20


def test_evanescent_raises():
    with pytest.raises(EvanescentRegime, match="reduce the Courant number"):
        solve_k_tilde(Medium(100.0, 2.0), WaveDiscretization(10.0, 1.0))


def test_edge_of_propagation_is_allowed():
    # argument exactly 1: n_r sin(pi / N) = 1 with N = 6 and n_r = 2
    val = solve_k_tilde(Medium(4.0, 1.0), WaveDiscretization(6.0, 1.0))
    assert val == pytest.approx(math.pi / 2, abs=1e-7)


def test_depends_only_on_index():
    wd = WaveDiscretization(17.0, 0.9)
    assert solve_k_tilde(Medium(4.0, 1.0), wd) == solve_k_tilde(Medium(1.0, 4.0), wd)


def test_big_omega():
    wd = WaveDiscretization(20.0, 1.0)
    assert big_omega(wd, wd.dt) == pytest.approx(FROZEN["big_omega_nl20"], rel=1e-15)
    with pytest.raises(ValueError):
        big_omega(wd, 0.0)


@pytest.mark.parametrize("nl", [1e3, 1e4, 1e5])
def test_big_omega_small_step_limit(nl):
    wd = WaveDiscretization(nl, 1.0)
    assert big_omega(wd, wd.dt) / wd.omega == pytest.approx(1.0, abs=2 * (math.pi / nl) ** 2)


def test_big_omega_approaches_maximum():
    # half_omega_dt -> pi / 2 as N_lambda -> 2 S_c
    wd = WaveDiscretization(4.0 + 1e-9, 2.0)
    assert big_omega(wd, wd.dt) == pytest.approx(2.0 / wd.dt, rel=1e-12)


def test_big_k_matches_dispersion_relation():
    m = Medium(3.0, 2.0)
    wd = WaveDiscretization(25.0, 1.0)
    # Yee dispersion in operator form: K = n_r Omega (c = dx = 1)
    assert big_k(m, wd) == pytest.approx(m.n_r * big_omega(wd, wd.dt))
    assert big_k(m, wd) == pytest.approx(2 * math.sin(solve_k_tilde(m, wd)))


def test_continuum_k():
    assert continuum_k(Medium(1.0, 1.0), 1.0) == 1.0
    assert continuum_k(Medium(4.0, 1.0), 0.5) == 1.0
    with pytest.raises(ValueError):
        continuum_k(Medium(1.0, 1.0), 0.0)


@pytest.mark.parametrize("eps,mu", [(1.0, 1.0), (4.0, 1.0), (3.0, 2.0), (8.0, 1.0)])
def test_continuum_limit(eps, mu):
    m = Medium(eps, mu)
    wd = WaveDiscretization(1e4, 1.0)
    k = continuum_k(m, wd.omega)
    assert abs(k_tilde(m, wd) - k) / k < 1e-6


CONVERGENCE_CASES = [(4.0, 1.0, 1.0), (3.0, 2.0, 1.0), (3.0, 2.0, 2.0), (9.0, 1.0, 0.5)]


def _phase_errors(m, sc):
    out = []
    for nl in (20.0, 40.0, 80.0, 160.0):
        exact = math.pi * m.n_r / nl
        out.append(abs(solve_k_tilde(m, WaveDiscretization(nl, sc)) - exact) / exact)
    return out


@pytest.mark.parametrize("eps,mu,sc", CONVERGENCE_CASES)
def test_second_order_convergence(eps, mu, sc):
    errors = _phase_errors(Medium(eps, mu), sc)
    assert all(b < a for a, b in zip(errors, errors[1:]))
    for a, b in zip(errors, errors[1:]):
        assert 3.6 <= a / b <= 4.4


@pytest.mark.parametrize("eps,mu,sc", CONVERGENCE_CASES)
def test_absolute_phase_error_is_third_order(eps, mu, sc):
    # relative error O(N^-2) times k dx ~ 1/N gives O(N^-3) per cell
    errors = _phase_errors(Medium(eps, mu), sc)
    scaled = [e / nl for e, nl in zip(errors, (20.0, 40.0, 80.0, 160.0))]
    for a, b in zip(scaled, scaled[1:]):
        assert 7.2 <= a / b <= 8.8


def test_optimal_courant():
    assert optimal_courant(Medium(3.0, 2.0), Medium(4.0, 2.0)) == pytest.approx(math.sqrt(6.0))
    assert optimal_courant(Medium(1.0, 1.0), Medium(100.0, 1.0)) == 1.0


@settings(max_examples=200, deadline=None)
@given(
    eps=st.floats(0.05, 50.0),
    mu=st.floats(0.05, 50.0),
    nl=st.floats(2.5, 1e4),
    frac=st.floats(0.05, 1.0),
)
def test_solution_satisfies_relation(eps, mu, nl, frac):
    m = Medium(eps, mu)
    assume(nl > 2 * frac * m.n_r)
    wd = WaveDiscretization(nl, frac * m.n_r)
    assume(dispersion_sine(m, wd) <= 1.0)
    x = solve_k_tilde(m, wd)
    assert 0.0 <= x <= math.pi / 2
    assert math.sin(x) == pytest.approx(m.n_r / wd.courant * math.sin(wd.half_omega_dt), rel=1e-12)
