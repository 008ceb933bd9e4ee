"""
Bound states of an electron in the 2D non-pure dipole potential

    V(r, theta) = -2/r + D cos(theta)/r^2        (Rydberg units)

Separation psi = r^(-1/2) R(r) Theta(theta) gives an angular Mathieu problem
(theta = 2z, a = -4 E_theta, p = -2 sqrt(2) D) and a radial equation

    R'' + [E + 2/r + (E_theta + 1/4)/r^2] R = 0

whose regular, normalizable solutions are
    R = r^lam e^(-beta r) 1F1(-n_r, 2 lam, 2 beta r)
    lam = 1/2 + sqrt(-E_theta),  beta = 1/(n_r + lam),  E = -beta^2
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln

from config import CRITICAL_TOL, MATHIEU_TOL
from mathieu import (
    SERIES_TRUST_RADIUS,
    MathieuSolution,
    Method,
    ce_eval,
    char_value,
    char_value_matrix,
)
from utils.errors import BracketNotFoundError, NoBoundStateError
from utils.laguerre import kummer_terminating

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)

# |E_theta| below this is treated as exactly zero (state at D = D_crit)
MARGINAL_BAND = 1e-10

# critical-dipole bracket scan in |p|
_SCAN_START  = 1.0
_SCAN_FACTOR = 1.5
_SCAN_CAP    = 1e7


@dataclass(frozen=True)
class AngularMode:
    m: int
    D: float
    E_theta: float
    method: Method
    p: float


@dataclass(frozen=True)
class BoundState:
    """
    One level E_{n,m}(D). `lam` is the radial exponent lambda; `marginal` marks
    a state sitting exactly at the critical dipole (E_theta = 0).
    """

    n: int
    m: int
    n_r: int
    D: float
    lam: float
    beta: float
    energy: float
    norm: float
    E_theta: float
    marginal: bool = False
    method: Method = Method.AUTO


def _normalize_m(m) -> int:
    if int(m) != m:
        raise ValueError(f"angular quantum number must be an integer, got {m!r}")
    # only cosine solutions exist, so m and -m label the same state
    return abs(int(m))


def _check_principal(n) -> int:
    if int(n) != n:
        raise ValueError(f"principal quantum number must be an integer, got {n!r}")
    return int(n)


def _check_dipole(D) -> float:
    D = float(D)
    if not D >= 0:
        raise ValueError(f"dipole moment must be >= 0, got {D}")
    return D


def p_from_dipole(D: float) -> float:
    return -2.0 * SQRT2 * float(D)


def dipole_from_p(p: float) -> float:
    return abs(float(p)) / (2.0 * SQRT2)


# ─────────────────────────────────────────────────────────────
# ANGULAR PART
# ─────────────────────────────────────────────────────────────

def angular_eigenvalue(m: int, D: float, method: Method = Method.AUTO,
                       tol: float = MATHIEU_TOL) -> AngularMode:
    """E_theta^(2m)(D) = -a_2m(p)/4 with p = -2 sqrt(2) D"""
    m = _normalize_m(m)
    D = _check_dipole(D)
    p = p_from_dipole(D)
    method = Method(method)
    if method is Method.AUTO:
        method = Method.SERIES if abs(p) <= SERIES_TRUST_RADIUS else Method.MATRIX
    a = char_value(m, p, method, tol)
    return AngularMode(m=m, D=D, E_theta=-a / 4.0, method=method, p=p)


def angular_solution(m: int, D: float, tol: float = MATHIEU_TOL) -> MathieuSolution:
    """Converged ce_2m for the dipole moment D"""
    return char_value_matrix(_normalize_m(m), p_from_dipole(_check_dipole(D)), tol)


def angular_function(sol: MathieuSolution, theta):
    """Theta(theta) = ce_2m(theta/2; p)/sqrt(pi), unit norm on [0, 2 pi)"""
    return ce_eval(sol, np.asarray(theta, dtype=float) / 2.0) / math.sqrt(math.pi)


def critical_dipole(m: int, tol: float = CRITICAL_TOL) -> float:
    """
    Smallest D >= 0 with a_2m(p(D)) = 0. For m = 0 this is exactly 0 since
    a_0(p) < 0 for every p != 0. Otherwise |p| is scanned geometrically from
    1 until a_2m turns negative and the root is polished with Brent's method.
    """
    m = _normalize_m(m)
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if m == 0:
        return 0.0

    def a_of(q: float) -> float:
        return char_value_matrix(m, q).a

    lo, hi = 0.0, _SCAN_START
    while a_of(hi) > 0:
        lo, hi = hi, hi * _SCAN_FACTOR
        if hi > _SCAN_CAP:
            raise BracketNotFoundError(f"a_{2 * m}(p) stayed positive up to |p|={_SCAN_CAP:g}")
    logger.debug("critical dipole m=%d bracketed in |p| in [%g, %g]", m, lo, hi)

    q_root = brentq(a_of, lo, hi, xtol=tol * 2.0 * SQRT2, maxiter=200)
    return dipole_from_p(q_root)


# ─────────────────────────────────────────────────────────────
# RADIAL PART AND ENERGIES
# ─────────────────────────────────────────────────────────────

def _log_norm(n_r: int, lam: float, beta: float) -> float:
    # N = 2^lam beta^(lam+1/2) / Gamma(2 lam) * [Gamma(n_r + 2 lam) / (n_r! (n_r + lam))]^(1/2)
    return (
        lam * math.log(2.0)
        + (lam + 0.5) * math.log(beta)
        - gammaln(2.0 * lam)
        + 0.5 * (gammaln(n_r + 2.0 * lam) - gammaln(n_r + 1.0) - math.log(n_r + lam))
    )


def bound_state(n: int, mode: AngularMode) -> BoundState:
    """BoundState for principal number n on an already solved angular mode"""
    n = _check_principal(n)
    m = mode.m
    if n < m:
        raise ValueError(f"need n >= m, got n={n}, m={m}")

    E_theta = mode.E_theta
    # D_crit is 0 for m = 0, so the marginal band must not absorb small D
    if m == 0 and mode.D > 0:
        raise NoBoundStateError(m, mode.D, E_theta)
    marginal = abs(E_theta) <= MARGINAL_BAND
    if marginal:
        E_theta = 0.0
        logger.debug("marginal state n=%d m=%d at D=%g", n, m, mode.D)
    elif E_theta > 0:
        raise NoBoundStateError(m, mode.D, E_theta)

    n_r = n - m
    lam = 0.5 + math.sqrt(-E_theta)
    beta = 1.0 / (n_r + lam)
    return BoundState(
        n=n, m=m, n_r=n_r, D=mode.D,
        lam=lam, beta=beta, energy=-beta * beta,
        norm=math.exp(_log_norm(n_r, lam, beta)),
        E_theta=E_theta, marginal=marginal, method=mode.method,
    )


def energy(n: int, m: int, D: float, method: Method = Method.AUTO,
           tol: float = MATHIEU_TOL) -> BoundState:
    """E_{n,m}(D) = -(n - m + sqrt(-E_theta) + 1/2)^(-2); raises NoBoundStateError above D_crit"""
    m = _normalize_m(m)
    n = _check_principal(n)
    if n < m:
        raise ValueError(f"need n >= m, got n={n}, m={m}")
    return bound_state(n, angular_eigenvalue(m, D, method, tol))


def normalization(state: BoundState) -> float:
    """N such that the integral of |psi|^2 r dr dtheta is 1 with a unit-norm Theta"""
    return math.exp(_log_norm(state.n_r, state.lam, state.beta))


def radial_eval(state: BoundState, r):
    """R(r) = r^lam e^(-beta r) 1F1(-n_r, 2 lam, 2 beta r)"""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be >= 0")
    values = (
        r ** state.lam
        * np.exp(-state.beta * r)
        * kummer_terminating(state.n_r, 2.0 * state.lam, 2.0 * state.beta * r)
    )
    return float(values) if values.ndim == 0 else values


def wavefunction_eval(state: BoundState, sol: MathieuSolution, r, theta):
    """psi(r, theta) = N r^(lam-1/2) e^(-beta r) Theta(theta) 1F1(-n_r, 2 lam, 2 beta r)"""
    p = p_from_dipole(state.D)
    if sol.m != state.m or abs(sol.p - p) > 1e-12 * max(1.0, abs(p)):
        raise ValueError(
            f"angular solution (m={sol.m}, p={sol.p:g}) does not match "
            f"state (m={state.m}, p={p:g})"
        )
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be >= 0")
    radial = (
        state.norm
        * r ** (state.lam - 0.5)
        * np.exp(-state.beta * r)
        * kummer_terminating(state.n_r, 2.0 * state.lam, 2.0 * state.beta * r)
    )
    values = radial * angular_function(sol, theta)
    return float(values) if np.ndim(values) == 0 else values
