"""
Table and figure datasets: critical dipoles, characteristic-value curves,
energy curves, wavefunction grids and the oracle verification grid.
Every builder returns a pandas DataFrame in input order; app.py writes it.
"""

import logging
import math
from dataclasses import dataclass, fields
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from config import CRITICAL_TOL, DEFAULT_TOL, N_JOBS
from mathieu import Method, char_value_matrix
from multipole import ChargeCluster, charge_centers, reduce
from oracle import (
    QuadratureGrid,
    ShootingConfig,
    convergence_report,
    norm_quadrature,
    radial_eigenvalue_shoot,
)
from spectrum import (
    angular_eigenvalue,
    angular_solution,
    bound_state,
    critical_dipole,
    energy,
    p_from_dipole,
    wavefunction_eval,
)
from utils.errors import DomainError, NoBoundStateError
from utils.ranges import Range

logger = logging.getLogger(__name__)

ENERGY_RTOL  = 1e-6
NORM_ATOL    = 1e-6
MATHIEU_ATOL = 1e-10


@dataclass(frozen=True)
class SweepSpec:
    """Parameter grid for one dataset"""

    m: Union[int, Sequence[int]] = 1
    n_list: Sequence[int] = ()
    d_range: Optional[Range] = None
    p_range: Optional[Range] = None
    method: Method = Method.AUTO
    output: Optional[str] = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        object.__setattr__(self, "method", Method(self.method))
        for m in self.m_values:
            bad = [n for n in self.n_list if n < m]
            if bad:
                raise ValueError(f"n must be >= m={m}, got {bad}")

    @property
    def m_values(self) -> List[int]:
        return [self.m] if isinstance(self.m, int) else list(self.m)


# Module-level cell workers so joblib can ship them to worker processes.

def _critical_row(m: int, tol: float) -> dict:
    return {"m": m, "D_crit": critical_dipole(m, tol=min(tol, CRITICAL_TOL))}


def _charvals_row(p: float, m_values: Sequence[int], tol: float) -> dict:
    row = {"p": p}
    for m in m_values:
        row[f"a_{2 * m}"] = char_value_matrix(m, p, tol).a
    return row


def _energies_row(D: float, m: int, n_list: Sequence[int], method: Method, tol: float) -> dict:
    row = {"D": D}
    mode = angular_eigenvalue(m, D, method, tol)
    for n in n_list:
        try:
            row[f"E_{n}"] = bound_state(n, mode).energy
        except NoBoundStateError:
            row[f"E_{n}"] = np.nan
    return row


def _verify_cell(n: int, m: int, D: float, fault: float, tol: float,
                 cfg: ShootingConfig, grid: QuadratureGrid) -> List[dict]:
    state = energy(n, m, D, Method.MATRIX, tol)
    closed = state.energy + fault
    shot = radial_eigenvalue_shoot(state.E_theta, state.n_r, cfg)
    rel = abs(shot - closed) / abs(closed)

    sol = angular_solution(m, D, tol)
    norm = norm_quadrature(state, sol, grid).estimate
    return [
        {"check": "shooting", "n": n, "m": m, "D": D, "expected": closed, "observed": shot,
         "error": rel, "tolerance": ENERGY_RTOL, "passed": rel <= ENERGY_RTOL},
        {"check": "norm", "n": n, "m": m, "D": D, "expected": 1.0, "observed": norm,
         "error": abs(norm - 1.0), "tolerance": NORM_ATOL, "passed": abs(norm - 1.0) <= NORM_ATOL},
    ]


def _convergence_cell(m: int, D: float) -> dict:
    report = convergence_report(m, p_from_dipole(D), [25, 50, 100, 200, 400])
    (_, a_prev), (_, a_last) = report[-2], report[-1]
    delta = abs(a_last - a_prev)
    return {"check": "mathieu", "n": np.nan, "m": m, "D": D, "expected": a_prev,
            "observed": a_last, "error": delta, "tolerance": MATHIEU_ATOL,
            "passed": delta <= MATHIEU_ATOL}


class DatasetBuilder:
    """Builds the output tables; sweep cells run through joblib in input order"""

    def __init__(self, tol: float = DEFAULT_TOL, n_jobs: int = N_JOBS):
        if not tol > 0:
            raise ValueError(f"tol must be positive, got {tol}")
        self.tol = tol
        self.n_jobs = n_jobs

    def _run(self, tasks) -> list:
        return Parallel(n_jobs=self.n_jobs)(tasks)

    # ─────────────────────────────────────────────────────────
    # TABLES AND FIGURES
    # ─────────────────────────────────────────────────────────

    def critical_table(self, m_max: int) -> pd.DataFrame:
        """Columns m, D_crit for m = 0..m_max"""
        if m_max < 0:
            raise ValueError(f"m_max must be >= 0, got {m_max}")
        rows = self._run(delayed(_critical_row)(m, self.tol) for m in range(m_max + 1))
        return pd.DataFrame(rows, columns=["m", "D_crit"])

    def charvals_table(self, spec: SweepSpec) -> pd.DataFrame:
        """Columns p, a_0, a_2, ... (matrix method)"""
        if spec.p_range is None:
            raise ValueError("characteristic-value sweep needs a p range")
        m_values = spec.m_values
        rows = self._run(
            delayed(_charvals_row)(float(p), m_values, self.tol) for p in spec.p_range.values()
        )
        return pd.DataFrame(rows, columns=["p"] + [f"a_{2 * m}" for m in m_values])

    def energies_table(self, spec: SweepSpec) -> pd.DataFrame:
        """Columns D, E_<n>...; cells above D_crit are left empty"""
        if len(spec.m_values) != 1:
            raise ValueError("energy sweep needs a single m")
        if spec.d_range is None:
            raise ValueError("energy sweep needs a D range")
        m = abs(spec.m_values[0])
        n_list = list(spec.n_list) or list(range(m, m + 5))
        if spec.d_range.min < 0:
            raise ValueError("D range must start at D >= 0")
        if m == 0 and spec.d_range.max > 0:
            raise DomainError("s states (m=0) have no bound state for any D > 0")

        rows = self._run(
            delayed(_energies_row)(float(D), m, n_list, spec.method, self.tol)
            for D in spec.d_range.values()
        )
        return pd.DataFrame(rows, columns=["D"] + [f"E_{n}" for n in n_list])

    def wavefunction_table(self, n: int, m: int, D: float, r_range: Range,
                           theta_steps: int, method: Method = Method.AUTO) -> pd.DataFrame:
        """Columns r, theta, psi; r-major over the grid, theta in [0, 2 pi)"""
        if theta_steps < 2:
            raise ValueError("theta grid needs at least 2 steps")
        if r_range.min < 0:
            raise ValueError("r range must start at r >= 0")
        state = energy(n, m, D, method, self.tol)
        sol = angular_solution(m, D, self.tol)
        r = r_range.values()
        theta = np.linspace(0.0, 2.0 * math.pi, theta_steps, endpoint=False)
        psi = wavefunction_eval(state, sol, r[:, None], theta[None, :])
        R, T = np.meshgrid(r, theta, indexing="ij")
        return pd.DataFrame({"r": R.ravel(), "theta": T.ravel(), "psi": np.ravel(psi)})

    def state_summary(self, n: int, m: int, D: float, method: Method = Method.AUTO) -> dict:
        state = energy(n, m, D, method, self.tol)
        summary = {f.name: getattr(state, f.name) for f in fields(state)}
        summary["method"] = state.method.value
        return summary

    @staticmethod
    def reduction_summary(cluster: ChargeCluster) -> dict:
        reduction = reduce(cluster)
        positive, negative = charge_centers(cluster)
        return {
            "Q": reduction.Q,
            "D": reduction.D,
            "axis": list(reduction.axis),
            "origin": list(cluster.origin),
            "positive_center": list(positive) if positive else None,
            "negative_center": list(negative) if negative else None,
        }

    # ─────────────────────────────────────────────────────────
    # VERIFICATION
    # ─────────────────────────────────────────────────────────

    @staticmethod
    def verification_grid(quick: bool = False) -> List[tuple]:
        """(n, m, D) with n in {m, m+1, m+2}, D in {0, 0.5, 0.9} x D_crit"""
        m_values = (1,) if quick else (1, 2, 3)
        grid = []
        for m in m_values:
            d_crit = critical_dipole(m)
            for n in (m, m + 1, m + 2):
                for frac in (0.0, 0.5, 0.9):
                    grid.append((n, m, frac * d_crit))
        return grid

    def verification_table(self, quick: bool = False, fault: float = 0.0,
                           cfg: Optional[ShootingConfig] = None,
                           grid: Optional[QuadratureGrid] = None) -> pd.DataFrame:
        """Shooting vs closed form, quadrature norms and Mathieu convergence"""
        cfg = cfg or ShootingConfig()
        grid = grid or QuadratureGrid()
        cells = self.verification_grid(quick)
        logger.info("verifying %d grid states", len(cells))

        nested = self._run(
            delayed(_verify_cell)(n, m, D, fault, self.tol, cfg, grid) for n, m, D in cells
        )
        rows = [row for cell in nested for row in cell]
        conv_points = sorted({(m, D) for _, m, D in cells if D > 0})
        rows += self._run(delayed(_convergence_cell)(m, D) for m, D in conv_points)
        return pd.DataFrame(rows, columns=["check", "n", "m", "D", "expected", "observed",
                                           "error", "tolerance", "passed"])
