"""
Brute-force checks for the closed-form pipeline.

None of these call the closed-form energy: the radial eigenvalue comes from
Numerov shooting with node counting, norms from numerical quadrature, and the
Mathieu convergence study from fixed-size eigensolves.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from mathieu import MathieuSolution, char_value_truncated
from spectrum import BoundState, wavefunction_eval
from utils.errors import BracketNotFoundError

logger = logging.getLogger(__name__)


# ─────────────────────────────────────────────────────────────
# SHOOTING
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ShootingConfig:
    r_min: float = 1e-6
    r_max: float = 250.0
    steps: int = 6000
    match_tol: float = 1e-9
    # lower end of the energy bracket; every level of this problem lies above -4
    e_floor: float = -5.0
    e_ceiling: float = -1e-6
    max_iter: int = 200

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.steps < 1000:
            raise ValueError("steps must be >= 1000")
        if not self.match_tol > 0:
            raise ValueError("match_tol must be positive")
        if not self.e_floor < self.e_ceiling < 0:
            raise ValueError("need e_floor < e_ceiling < 0")

    def refined(self) -> "ShootingConfig":
        """Same domain with the step size halved"""
        return ShootingConfig(self.r_min, self.r_max, 2 * self.steps, self.match_tol,
                              self.e_floor, self.e_ceiling, self.max_iter)


class _LogGrid:
    """
    Uniform grid in x = ln r. With y = r^(-1/2) R the radial equation becomes
        y'' + (E e^(2x) + 2 e^x + E_theta) y = 0
    which is regular at the origin and suits a fixed Numerov step.
    """

    def __init__(self, cfg: ShootingConfig):
        x = np.linspace(math.log(cfg.r_min), math.log(cfg.r_max), cfg.steps + 1)
        self.h = float(x[1] - x[0])
        self.r = np.exp(x)
        self.r2 = self.r * self.r


def _count_nodes(E: float, E_theta: float, grid: _LogGrid) -> int:
    """Sign changes of the outward solution started as r^lam on (r_min, r_max)"""
    kappa = math.sqrt(max(-E_theta, 0.0))
    lam = kappa + 0.5
    # two-term Frobenius expansion of R = r^lam (1 + c1 r + c2 r^2)
    c1 = -1.0 / lam
    c2 = -(2.0 * c1 + E) / (2.0 * (2.0 * lam + 1.0))
    r0, r1 = float(grid.r[0]), float(grid.r[1])
    y_prev = r0 ** kappa * (1.0 + c1 * r0 + c2 * r0 * r0)
    y_curr = r1 ** kappa * (1.0 + c1 * r1 + c2 * r1 * r1)

    f = (1.0 + grid.h * grid.h / 12.0 * (E * grid.r2 + 2.0 * grid.r + E_theta)).tolist()
    nodes = 0
    for i in range(1, len(f) - 1):
        y_next = ((12.0 - 10.0 * f[i]) * y_curr - f[i - 1] * y_prev) / f[i + 1]
        if y_next * y_curr < 0.0:
            nodes += 1
        y_prev, y_curr = y_curr, y_next
        if abs(y_curr) > 1e150:
            y_prev *= 1e-150
            y_curr *= 1e-150
    return nodes


def radial_eigenvalue_shoot(E_theta: float, node_count: int,
                            cfg: Optional[ShootingConfig] = None) -> float:
    """
    Energy of the radial level with `node_count` interior nodes, by bisection
    on E: more than node_count nodes means E is too high. Converges to the
    Dirichlet level at r_max, which matches the bound state once r_max is
    many decay lengths out.
    """
    cfg = cfg or ShootingConfig()
    if E_theta > 0:
        raise ValueError(f"E_theta must be <= 0, got {E_theta}")
    if node_count < 0:
        raise ValueError(f"node_count must be >= 0, got {node_count}")
    grid = _LogGrid(cfg)

    lo, hi = cfg.e_floor, cfg.e_ceiling
    if _count_nodes(lo, E_theta, grid) > node_count:
        raise BracketNotFoundError(f"more than {node_count} nodes already at E={lo:g}")
    if _count_nodes(hi, E_theta, grid) <= node_count:
        raise BracketNotFoundError(
            f"fewer than {node_count + 1} nodes at E={hi:g}; enlarge r_max={cfg.r_max:g}"
        )

    for _ in range(cfg.max_iter):
        if hi - lo <= cfg.match_tol:
            break
        mid = 0.5 * (lo + hi)
        if _count_nodes(mid, E_theta, grid) > node_count:
            hi = mid
        else:
            lo = mid
    logger.debug("shooting E_theta=%g nodes=%d -> [%.12g, %.12g]", E_theta, node_count, lo, hi)
    return 0.5 * (lo + hi)


# ─────────────────────────────────────────────────────────────
# QUADRATURE
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class QuadratureGrid:
    n_theta: int = 256
    r_cut: Optional[float] = None
    epsabs: float = 1e-13
    epsrel: float = 1e-11
    limit: int = 400


@dataclass(frozen=True)
class QuadratureResult:
    estimate: float
    error: float


def integrate_density(psi: Callable, grid: QuadratureGrid) -> QuadratureResult:
    """
    Integral of |psi(r, theta)|^2 r dr dtheta over the plane. theta uses the
    periodic trapezoid rule; r uses adaptive Gauss-Kronrod on [0, r_cut].
    """
    if grid.r_cut is None:
        raise ValueError("integrate_density needs an explicit r_cut")
    theta = np.linspace(0.0, 2.0 * math.pi, grid.n_theta, endpoint=False)
    weight = 2.0 * math.pi / grid.n_theta

    def ring(r: float) -> float:
        values = np.asarray(psi(r, theta), dtype=float)
        return r * weight * float(np.sum(values * values))

    estimate, error = quad(ring, 0.0, grid.r_cut, epsabs=grid.epsabs,
                           epsrel=grid.epsrel, limit=grid.limit)
    return QuadratureResult(estimate=float(estimate), error=float(error))


def norm_quadrature(state: BoundState, sol: MathieuSolution,
                    grid: Optional[QuadratureGrid] = None) -> QuadratureResult:
    """Numerical norm of psi for a bound state, expected 1 with the analytic N"""
    grid = grid or QuadratureGrid()
    if grid.r_cut is None:
        grid = QuadratureGrid(grid.n_theta, 80.0 / state.beta, grid.epsabs, grid.epsrel, grid.limit)
    return integrate_density(lambda r, theta: wavefunction_eval(state, sol, r, theta), grid)


# ─────────────────────────────────────────────────────────────
# MATHIEU CONVERGENCE
# ─────────────────────────────────────────────────────────────

def convergence_report(m: int, p: float, K_list: Sequence[int]) -> List[Tuple[int, float]]:
    """a_2m(p) per truncation K, for K in ascending order"""
    K_list = [int(K) for K in K_list]
    if any(b <= a for a, b in zip(K_list, K_list[1:])):
        raise ValueError("K_list must be strictly ascending")
    return [(K, char_value_truncated(m, p, K)) for K in K_list]
