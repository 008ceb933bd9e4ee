"""
Mathieu characteristic values a_2m(p) and cosine-elliptic functions ce_2m(z; p)

    y'' + (a - 2p cos 2z) y = 0

Two routes to a_2m:
  - series : small-p expansion truncated at O(p^8), trusted for |p| <= 0.5
  - matrix : the Fourier-cosine recurrence of the even pi-periodic solution,
             truncated to K rows and solved as a symmetric tridiagonal
             eigenproblem; K is doubled until successive values agree

Conventions used throughout:
  integral_0^2pi ce_2m(z)^2 dz = pi  -> ce_0(z; 0) = 1/sqrt(2), ce_2m(z; 0) = cos 2mz
  ce_2m(0; |p|) > 0, and p < 0 maps A_2k -> (-1)^k A_2k
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from config import MATHIEU_TOL
from utils.errors import ConvergenceError

logger = logging.getLogger(__name__)

SERIES_TRUST_RADIUS = 0.5
MAX_ROWS = 2 ** 14

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


class Method(str, Enum):
    SERIES = "series"
    MATRIX = "matrix"
    AUTO = "auto"


# ─────────────────────────────────────────────────────────────
# SERIES
# ─────────────────────────────────────────────────────────────

# a_2m = 4m^2 + c2 p^2 + c4 p^4 + c6 p^6 for the four lowest members
_LOW_ORDER_SERIES = {
    0: (Fraction(-1, 2), Fraction(7, 128), Fraction(-29, 2304)),
    1: (Fraction(5, 12), Fraction(-763, 13824), Fraction(1002401, 79626240)),
    2: (Fraction(1, 30), Fraction(433, 864000), Fraction(-5701, 2721600000)),
    3: (Fraction(1, 70), Fraction(187, 43904000), Fraction(6743617, 92935987200000)),
}


def _check_index(m) -> int:
    if int(m) != m or m < 0:
        raise ValueError(f"angular index must be a non-negative integer, got {m!r}")
    return int(m)


def series_coefficients(m: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(c2, c4, c6) of a_2m(p) - 4m^2 as exact fractions"""
    m = _check_index(m)
    if m in _LOW_ORDER_SERIES:
        return _LOW_ORDER_SERIES[m]
    # general form in r = 2m, valid for r >= 7
    r2 = Fraction(4 * m * m)
    c2 = 1 / (2 * (r2 - 1))
    c4 = (5 * r2 + 7) / (32 * (r2 - 1) ** 3 * (r2 - 4))
    c6 = (9 * r2 * r2 + 58 * r2 + 29) / (64 * (r2 - 1) ** 5 * (r2 - 4) * (r2 - 9))
    return c2, c4, c6


def char_value_series(m: int, p: float) -> float:
    """Truncated small-p series for a_2m(p); see SERIES_TRUST_RADIUS"""
    c2, c4, c6 = (float(c) for c in series_coefficients(m))
    p2 = float(p) * float(p)
    return 4.0 * m * m + p2 * (c2 + p2 * (c4 + p2 * c6))


# ─────────────────────────────────────────────────────────────
# MATRIX
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class MathieuSolution:
    """Characteristic value a_2m(p) with the Fourier-cosine coefficients of ce_2m"""

    m: int
    p: float
    a: float
    coeffs: np.ndarray
    truncation: int
    method: Method = Method.MATRIX

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def harmonics(self) -> np.ndarray:
        """Angular frequencies 2k matching coeffs"""
        return 2.0 * np.arange(len(self.coeffs))


def initial_truncation(m: int, p: float) -> int:
    return max(25, 3 * m + 10, math.ceil(2.0 * math.sqrt(abs(p))) + 10)


def _eigenpair(m: int, q: float, truncation: int, want_vector: bool = True):
    """
    (m+1)-th ascending eigenvalue of the symmetrized recurrence matrix.

    Rows k = 0..K-1 act on B_0 = sqrt(2) A_0, B_k = A_2k:
        diag 4k^2, off-diagonal q, except the (0,1) entry sqrt(2) q.
    Sturm bisection with a negligible absolute tolerance keeps the low
    eigenvalues relatively accurate although the diagonal grows like 4K^2.
    """
    k = np.arange(truncation, dtype=float)
    diag = 4.0 * k * k
    off = np.full(truncation - 1, float(q))
    off[0] *= math.sqrt(2.0)
    result = eigh_tridiagonal(
        diag, off,
        eigvals_only=not want_vector,
        select="i", select_range=(m, m),
        lapack_driver="stebz", tol=_TINY,
    )
    if want_vector:
        w, v = result
        return float(w[0]), v[:, 0]
    return float(result[0]), None


def _noise_floor(a: float, q: float) -> float:
    return 16.0 * _EPS * max(1.0, abs(a), abs(q))


def _signed_coefficients(vec: np.ndarray, p: float) -> np.ndarray:
    coeffs = np.array(vec, dtype=float)
    coeffs[0] /= math.sqrt(2.0)
    if coeffs.sum() < 0:
        coeffs = -coeffs
    if p < 0:
        coeffs[1::2] *= -1.0
    return coeffs


def char_value_truncated(m: int, p: float, truncation: int) -> float:
    """a_2m(p) from a fixed K-row truncation (no convergence loop)"""
    m = _check_index(m)
    if truncation <= m:
        raise ValueError(f"truncation K={truncation} too small for m={m}")
    a, _ = _eigenpair(m, abs(float(p)), int(truncation), want_vector=False)
    return a


def char_value_matrix(m: int, p: float, tol: float = MATHIEU_TOL) -> MathieuSolution:
    """
    Exact a_2m(p) and ce_2m coefficients. K starts at initial_truncation and
    is doubled until |a_2K - a_K| < tol (or the attainable eigensolver
    accuracy), capped at MAX_ROWS rows.
    """
    m = _check_index(m)
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    p = float(p)
    q = abs(p)

    rows = initial_truncation(m, q)
    a_prev, _ = _eigenpair(m, q, rows, want_vector=False)
    a_next = a_prev
    while True:
        if 2 * rows > MAX_ROWS:
            raise ConvergenceError(
                f"a_{2 * m}({p:g}) did not converge within {MAX_ROWS} rows",
                previous=a_prev, last=a_next,
            )
        rows *= 2
        a_next, vec = _eigenpair(m, q, rows)
        if abs(a_next - a_prev) < max(tol, _noise_floor(a_next, q)):
            break
        logger.debug("a_%d(%g): K=%d delta=%.3e", 2 * m, p, rows, abs(a_next - a_prev))
        a_prev = a_next

    return MathieuSolution(
        m=m, p=p, a=a_next,
        coeffs=_signed_coefficients(vec, p),
        truncation=rows,
        method=Method.MATRIX,
    )


def char_value(m: int, p: float, method: Method = Method.AUTO, tol: float = MATHIEU_TOL) -> float:
    """a_2m(p) by the requested route; auto picks the series inside |p| <= 0.5"""
    method = Method(method)
    if method is Method.AUTO:
        method = Method.SERIES if abs(p) <= SERIES_TRUST_RADIUS else Method.MATRIX
    if method is Method.SERIES:
        if abs(p) > SERIES_TRUST_RADIUS:
            logger.warning("series for a_%d used at |p|=%g outside its trust radius", 2 * m, abs(p))
        return char_value_series(m, p)
    return char_value_matrix(m, p, tol).a


# ─────────────────────────────────────────────────────────────
# EVALUATION
# ─────────────────────────────────────────────────────────────

def _as_result(values: np.ndarray):
    return float(values) if np.ndim(values) == 0 else values


def ce_eval(sol: MathieuSolution, z):
    """ce_2m(z; p) = sum_k A_2k cos(2kz); scalar or array z"""
    z = np.asarray(z, dtype=float)
    return _as_result(np.cos(np.multiply.outer(z, sol.harmonics)) @ sol.coeffs)


def ce_second_derivative(sol: MathieuSolution, z):
    z = np.asarray(z, dtype=float)
    weights = -(sol.harmonics ** 2) * sol.coeffs
    return _as_result(np.cos(np.multiply.outer(z, sol.harmonics)) @ weights)


def ode_residual(sol: MathieuSolution, z_samples: Sequence[float]) -> float:
    """max |ce'' + (a - 2p cos 2z) ce| over the samples, from the analytic derivative"""
    z = np.asarray(z_samples, dtype=float)
    ce = ce_eval(sol, z)
    residual = ce_second_derivative(sol, z) + (sol.a - 2.0 * sol.p * np.cos(2.0 * z)) * ce
    return float(np.max(np.abs(residual)))
