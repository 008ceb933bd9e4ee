import math

import numpy as np
import pytest
from scipy.special import hyp1f1

from mathieu import Method
from spectrum import (
    angular_eigenvalue,
    angular_function,
    angular_solution,
    bound_state,
    critical_dipole,
    dipole_from_p,
    energy,
    normalization,
    p_from_dipole,
    radial_eval,
    wavefunction_eval,
)
from utils.errors import NoBoundStateError
from utils.laguerre import kummer_series

TABLE_CRITICAL = [0.0, 7.530, 24.547, 51.285, 87.746, 133.930, 189.837, 255.468]


# ─────────────────────────────────────────────────────────────
# ANGULAR
# ─────────────────────────────────────────────────────────────

def test_dipole_substitution_round_trip():
    assert p_from_dipole(1.0) == pytest.approx(-2 * math.sqrt(2))
    assert dipole_from_p(p_from_dipole(3.7)) == pytest.approx(3.7)


@pytest.mark.parametrize("m, D, expected", [
    (1, 0.0, -1.0),
    (0, 0.5, 0.2204861),
    (2, 1.0, -4.0744171),
])
def test_series_angular_eigenvalue(m, D, expected):
    mode = angular_eigenvalue(m, D, Method.SERIES)
    assert mode.E_theta == pytest.approx(expected, abs=1e-6)
    assert mode.method is Method.SERIES


def test_auto_switches_to_matrix():
    assert angular_eigenvalue(1, 0.1).method is Method.SERIES
    assert angular_eigenvalue(1, 1.0).method is Method.MATRIX


def test_negative_m_labels_same_state():
    assert angular_eigenvalue(-2, 3.0).E_theta == angular_eigenvalue(2, 3.0).E_theta


def test_negative_dipole_rejected():
    with pytest.raises(ValueError):
        angular_eigenvalue(1, -0.1)


def test_angular_function_unit_norm():
    sol = angular_solution(2, 4.0)
    theta = np.linspace(0.0, 2 * math.pi, 256, endpoint=False)
    values = angular_function(sol, theta)
    assert np.sum(values ** 2) * 2 * math.pi / len(theta) == pytest.approx(1.0, abs=1e-10)


# ─────────────────────────────────────────────────────────────
# CRITICAL DIPOLE
# ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("m, expected", list(enumerate(TABLE_CRITICAL)))
def test_critical_dipole_table(m, expected):
    assert critical_dipole(m) == pytest.approx(expected, abs=5e-3)


def test_critical_dipole_is_increasing():
    values = [critical_dipole(m) for m in range(8)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_reality_gate_around_critical_dipole():
    d_crit = critical_dipole(1)
    state = energy(1, 1, d_crit * (1 - 1e-3))
    assert math.isfinite(state.energy) and state.energy < 0
    with pytest.raises(NoBoundStateError):
        energy(1, 1, d_crit * (1 + 1e-3))


# ─────────────────────────────────────────────────────────────
# ENERGIES
# ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("n", range(6))
def test_coulomb_limit(n):
    for m in range(n + 1):
        assert energy(n, m, 0.0).energy == pytest.approx(-(n + 0.5) ** -2, abs=1e-10)


def test_ground_state():
    assert energy(0, 0, 0.0).energy == pytest.approx(-4.0)


def test_series_energy_at_small_dipole():
    series = energy(1, 1, 0.3, Method.SERIES)
    assert series.E_theta == pytest.approx(-1.0690216, abs=1e-6)
    assert series.energy == pytest.approx(-0.424997, abs=1e-6)
    assert energy(1, 1, 0.3, Method.MATRIX).energy == pytest.approx(series.energy, abs=1e-3)


@pytest.mark.parametrize("D", [1e-7, 1e-6, 5e-6, 1e-3, 0.1, 1.0, 10.0])
def test_s_states_vanish(D):
    for n in range(3):
        with pytest.raises(NoBoundStateError):
            energy(n, 0, D)


def test_s_state_without_dipole_is_bound():
    state = energy(0, 0, 0.0)
    assert state.marginal
    assert state.energy == -4.0


def test_marginal_state_at_critical_dipole():
    state = energy(2, 2, critical_dipole(2))
    assert state.marginal
    assert state.energy == pytest.approx(-4.0, abs=1e-9)


def test_n_below_m_rejected():
    with pytest.raises(ValueError):
        energy(1, 2, 0.0)


def test_non_integer_quantum_numbers_rejected():
    with pytest.raises(ValueError):
        energy(1.5, 1, 0.0)
    with pytest.raises(ValueError):
        bound_state(2.5, angular_eigenvalue(1, 0.0))
    assert energy(2.0, 1, 0.0).n == 2


def test_energy_rises_then_falls():
    d_crit = critical_dipole(1)
    E = np.array([energy(1, 1, D).energy for D in np.linspace(0.0, d_crit, 60)])
    peak = int(np.argmax(E))
    assert 0 < peak < len(E) - 1
    assert np.all(np.diff(E[:peak + 1]) > 0)
    assert np.all(np.diff(E[peak:]) < 0)


# ─────────────────────────────────────────────────────────────
# RADIAL PART AND WAVEFUNCTIONS
# ─────────────────────────────────────────────────────────────

def test_radial_reference_values():
    state = energy(1, 1, 0.0)
    assert radial_eval(state, 1.0) == pytest.approx(math.exp(-2 / 3), abs=1e-6)
    assert normalization(state) == pytest.approx(0.72578, abs=1e-5)
    assert radial_eval(state, 0.0) == 0.0


def test_radial_confluent_factor_matches_scipy():
    state = energy(4, 1, 3.0)
    r = np.linspace(0.0, 15.0, 31)
    expected = (r ** state.lam * np.exp(-state.beta * r)
                * hyp1f1(-state.n_r, 2 * state.lam, 2 * state.beta * r))
    np.testing.assert_allclose(radial_eval(state, r), expected, rtol=1e-9, atol=1e-12)


def test_radial_matches_direct_series():
    state = energy(2, 1, 0.0)
    r = np.linspace(0.0, 20.0, 41)
    expected = (r ** state.lam * np.exp(-state.beta * r)
                * kummer_series(-state.n_r, 2 * state.lam, 2 * state.beta * r))
    np.testing.assert_allclose(radial_eval(state, r), expected, rtol=0, atol=1e-10)


@pytest.mark.parametrize("n, m, D", [(1, 1, 0.0), (3, 1, 4.0), (4, 2, 12.0)])
def test_radial_ode_residual(n, m, D):
    state = energy(n, m, D, Method.MATRIX)
    h = 1e-3
    r = np.linspace(0.1, 20.0, 200)
    R = radial_eval(state, r)
    second = (-radial_eval(state, r + 2 * h) + 16 * radial_eval(state, r + h) - 30 * R
              + 16 * radial_eval(state, r - h) - radial_eval(state, r - 2 * h)) / (12 * h * h)
    potential = state.energy + 2 / r + (state.E_theta + 0.25) / r ** 2
    residual = second + potential * R
    scale = np.max(np.abs(second) + np.abs(potential * R))
    assert np.max(np.abs(residual)) / scale <= 1e-6


def test_wavefunction_origin_and_node():
    state = energy(1, 1, 0.0)
    sol = angular_solution(1, 0.0)
    assert wavefunction_eval(state, sol, 0.0, 0.3) == 0.0
    assert abs(wavefunction_eval(state, sol, 2.0, math.pi / 2)) < 1e-12


def test_wavefunction_broadcasts():
    state = energy(2, 1, 2.0)
    sol = angular_solution(1, 2.0)
    r = np.linspace(0.0, 5.0, 4)
    theta = np.linspace(0.0, math.pi, 3)
    assert wavefunction_eval(state, sol, r[:, None], theta[None, :]).shape == (4, 3)


def test_wavefunction_rejects_mismatched_angular_solution():
    with pytest.raises(ValueError):
        wavefunction_eval(energy(1, 1, 0.5), angular_solution(1, 0.6), 1.0, 0.0)
