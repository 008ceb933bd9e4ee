import dataclasses
import math

import numpy as np
import pytest

from oracle import (
    QuadratureGrid,
    ShootingConfig,
    convergence_report,
    integrate_density,
    norm_quadrature,
    radial_eigenvalue_shoot,
)
from spectrum import angular_solution, critical_dipole, energy
from utils.errors import BracketNotFoundError


# ─────────────────────────────────────────────────────────────
# SHOOTING
# ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("E_theta, nodes, expected", [
    (-1.0, 0, -4.0 / 9.0),
    (-4.0, 1, -4.0 / 49.0),
    (0.0, 0, -4.0),
])
def test_shooting_hydrogenic_levels(E_theta, nodes, expected):
    assert radial_eigenvalue_shoot(E_theta, nodes) == pytest.approx(expected, rel=1e-6)


def test_shooting_matches_closed_form_with_dipole():
    state = energy(3, 1, 0.5 * critical_dipole(1))
    shot = radial_eigenvalue_shoot(state.E_theta, state.n_r)
    assert abs(shot - state.energy) / abs(state.energy) <= 1e-6


def test_shooting_matches_matrix_solve():
    state = energy(1, 1, 3.0)
    assert radial_eigenvalue_shoot(state.E_theta, 0) == pytest.approx(state.energy, rel=1e-6)


def test_shooting_step_halving():
    cfg = ShootingConfig()
    coarse = radial_eigenvalue_shoot(-2.25, 1, cfg)
    fine = radial_eigenvalue_shoot(-2.25, 1, cfg.refined())
    assert abs(coarse - fine) <= 10 * cfg.match_tol


def test_shooting_bracket_failure():
    # a box of radius 20 cannot hold the 5th radial level
    with pytest.raises(BracketNotFoundError):
        radial_eigenvalue_shoot(-1.0, 5, ShootingConfig(r_max=20.0, steps=2000))


@pytest.mark.parametrize("kwargs", [
    {"r_min": 0.0},
    {"r_max": 1e-7},
    {"steps": 10},
    {"match_tol": 0.0},
    {"e_ceiling": 1.0},
])
def test_shooting_config_validation(kwargs):
    with pytest.raises(ValueError):
        ShootingConfig(**kwargs)


def test_shooting_rejects_positive_angular_eigenvalue():
    with pytest.raises(ValueError):
        radial_eigenvalue_shoot(0.5, 0)


# ─────────────────────────────────────────────────────────────
# QUADRATURE
# ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("n, m, D", [(1, 1, 0.0), (2, 1, 0.0), (1, 1, 5.0), (3, 2, 20.0)])
def test_norm_quadrature(n, m, D):
    state = energy(n, m, D)
    result = norm_quadrature(state, angular_solution(m, D))
    assert result.estimate == pytest.approx(1.0, abs=1e-6)


def test_unit_prefactor_gives_inverse_square_norm():
    state = energy(2, 1, 3.0)
    bare = dataclasses.replace(state, norm=1.0)
    result = norm_quadrature(bare, angular_solution(1, 3.0))
    assert result.estimate == pytest.approx(1.0 / state.norm ** 2, rel=1e-6)


def test_zero_function_integrates_to_zero():
    result = integrate_density(lambda r, theta: np.zeros_like(theta), QuadratureGrid(r_cut=10.0))
    assert result.estimate == 0.0


def test_gaussian_density():
    # integral of exp(-r^2) r dr dtheta over the plane is pi
    grid = QuadratureGrid(n_theta=16, r_cut=12.0)
    result = integrate_density(lambda r, theta: np.exp(-r * r / 2) * np.ones_like(theta), grid)
    assert result.estimate == pytest.approx(math.pi, rel=1e-9)


def test_integrate_density_needs_cutoff():
    with pytest.raises(ValueError):
        integrate_density(lambda r, theta: theta, QuadratureGrid())


# ─────────────────────────────────────────────────────────────
# MATHIEU CONVERGENCE
# ─────────────────────────────────────────────────────────────

def test_convergence_report_settles():
    report = convergence_report(2, 20.0, [25, 50, 100, 200])
    assert [K for K, _ in report] == [25, 50, 100, 200]
    assert abs(report[-1][1] - report[-2][1]) <= 1e-10


def test_convergence_report_at_zero_p():
    assert all(a == pytest.approx(0.0, abs=1e-14) for _, a in convergence_report(0, 0.0, [5, 10]))


def test_convergence_report_requires_ascending_truncations():
    with pytest.raises(ValueError):
        convergence_report(1, 1.0, [50, 25])


def test_convergence_report_near_critical_dipole():
    report = convergence_report(1, 21.3, [25, 50, 100, 200, 400])
    assert abs(report[-1][1] - report[-2][1]) < 1e-12
