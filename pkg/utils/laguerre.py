import numpy as np
from scipy.special import gammaln


def genlaguerre_recurrence(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence"""
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    curr = 1.0 + alpha - x
    for j in range(1, n):
        prev, curr = curr, ((2 * j + 1 + alpha - x) * curr - (j + alpha) * prev) / (j + 1)
    return curr


def kummer_terminating(n: int, b: float, x):
    """
    1F1(-n, b, x) for integer n >= 0, through

        L_n^(b-1)(x) = Gamma(n+b) / (n! Gamma(b)) * 1F1(-n, b, x)

    The gamma ratio is taken in log space so large n or b do not overflow.
    """
    scale = np.exp(gammaln(n + 1) + gammaln(b) - gammaln(n + b))
    return scale * genlaguerre_recurrence(n, b - 1.0, x)


def kummer_series(a: float, b: float, x, max_terms: int = 500, rtol: float = 1e-17):
    """Direct power-series summation of 1F1(a, b, x); terminates for a = -n"""
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(max_terms):
        term = term * (a + k) / (b + k) * x / (k + 1)
        total = total + term
        if np.all(np.abs(term) <= rtol * np.abs(total)):
            break
    return total
