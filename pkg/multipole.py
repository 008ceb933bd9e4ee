"""
Reduction of a planar point-charge cluster to the monopole + dipole potential

    V(r) = sum_j q_j / |r - a_j|  ~  Q/r + D cos(theta)/r^2 + O(a^2/r^3)

with Q = sum_j q_j, dipole vector sum_j q_j (a_j - origin), D its magnitude and
theta measured from the dipole axis (Rydberg units, 4 pi eps0 = 1).
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np

from utils.errors import ClusterFormatError, SingularPointError, ZeroPotentialError

logger = logging.getLogger(__name__)

# axis reported when the dipole vanishes
DEFAULT_AXIS = (1.0, 0.0)


@dataclass(frozen=True)
class PointCharge:
    q: float
    x: float
    y: float

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True)
class ChargeCluster:
    charges: Tuple[PointCharge, ...]
    origin: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        charges = tuple(self.charges)
        if not charges:
            raise ClusterFormatError("charge cluster is empty")
        values = [c for ch in charges for c in (ch.q, ch.x, ch.y)] + list(self.origin)
        if not all(math.isfinite(v) for v in values):
            raise ClusterFormatError("charge cluster has non-finite charges or positions")
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def total_charge(self) -> float:
        return float(sum(c.q for c in self.charges))

    @property
    def positions(self) -> np.ndarray:
        return np.array([[c.x, c.y] for c in self.charges], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([c.q for c in self.charges], dtype=float)

    def shifted(self, dx: float, dy: float) -> "ChargeCluster":
        """Same cluster with every position and the origin translated"""
        return ChargeCluster(
            tuple(PointCharge(c.q, c.x + dx, c.y + dy) for c in self.charges),
            (self.origin[0] + dx, self.origin[1] + dy),
        )

    def union(self, other: "ChargeCluster") -> "ChargeCluster":
        return ChargeCluster(self.charges + other.charges, self.origin)

    @property
    def extent(self) -> float:
        """Largest distance of a charge from the origin"""
        return float(np.max(np.hypot(*(self.positions - np.array(self.origin)).T)))


@dataclass(frozen=True)
class Reduction:
    Q: float
    D: float
    axis: Tuple[float, float]

    @property
    def dipole_vector(self) -> np.ndarray:
        return self.D * np.array(self.axis)


# ─────────────────────────────────────────────────────────────
# LOADING
# ─────────────────────────────────────────────────────────────

def cluster_from_json(data) -> ChargeCluster:
    """
    Accepts either a bare array of {"q", "x", "y"} objects or
    {"charges": [...], "origin": [x, y]}; origin defaults to [0, 0].
    """
    origin = (0.0, 0.0)
    if isinstance(data, dict):
        if "origin" in data:
            try:
                ox, oy = data["origin"]
                origin = (float(ox), float(oy))
            except (TypeError, ValueError) as e:
                raise ClusterFormatError(f"origin must be [x, y]: {e}") from e
        data = data.get("charges")
    if not isinstance(data, list):
        raise ClusterFormatError("expected a list of charges")

    charges = []
    for i, item in enumerate(data):
        try:
            charges.append(PointCharge(float(item["q"]), float(item["x"]), float(item["y"])))
        except (KeyError, TypeError, ValueError) as e:
            raise ClusterFormatError(f"charge #{i} is malformed: {e}") from e
    return ChargeCluster(tuple(charges), origin)


def load_cluster(path) -> ChargeCluster:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ClusterFormatError(f"{path}: invalid JSON ({e})") from e
    cluster = cluster_from_json(data)
    logger.debug("loaded %d charges from %s", len(cluster.charges), path)
    return cluster


# ─────────────────────────────────────────────────────────────
# REDUCTION AND POTENTIALS
# ─────────────────────────────────────────────────────────────

def reduce(cluster: ChargeCluster) -> Reduction:
    """(Q, D, axis) of the cluster about its origin"""
    offsets = cluster.positions - np.array(cluster.origin)
    dipole = cluster.values @ offsets
    D = float(np.hypot(dipole[0], dipole[1]))
    axis = DEFAULT_AXIS if D == 0.0 else (float(dipole[0] / D), float(dipole[1] / D))
    return Reduction(Q=cluster.total_charge, D=D, axis=axis)


def charge_centers(cluster: ChargeCluster):
    """
    Charge-weighted centers of the positive and of the negative charges,
    the two poles of the single-dipole picture. None where a sign is absent.
    """
    q = cluster.values
    pos = cluster.positions
    centers = []
    for mask in (q > 0, q < 0):
        if not mask.any():
            centers.append(None)
            continue
        w = np.abs(q[mask])
        centers.append(tuple(float(v) for v in (w @ pos[mask]) / w.sum()))
    return tuple(centers)


def exact_potential(cluster: ChargeCluster, point: Sequence[float]) -> float:
    """sum_j q_j / |r - a_j|"""
    distances = np.hypot(*(np.asarray(point, dtype=float) - cluster.positions).T)
    if np.any(distances == 0.0):
        raise SingularPointError(f"point {tuple(point)} coincides with a charge")
    return float(np.sum(cluster.values / distances))


def multipole_potential(Q: float, D: float, r: float, theta: float) -> float:
    """Q/r + D cos(theta)/r^2"""
    if r <= 0:
        raise SingularPointError("multipole potential is singular at r = 0")
    return Q / r + D * math.cos(theta) / (r * r)


def _point_at(cluster: ChargeCluster, reduction: Reduction, r: float, theta: float):
    ax, ay = reduction.axis
    c, s = math.cos(theta), math.sin(theta)
    # rotate the dipole axis by theta
    return (cluster.origin[0] + r * (c * ax - s * ay), cluster.origin[1] + r * (s * ax + c * ay))


def truncation_error(cluster: ChargeCluster, radii: Sequence[float], theta: float = 0.0) -> np.ndarray:
    """
    Relative error |exact - multipole| / |exact| at the given radii along the
    direction making angle theta with the dipole axis. Raises ZeroPotentialError
    on a nodal point of the exact potential.
    """
    reduction = reduce(cluster)
    errors = []
    for r in radii:
        if r <= 0:
            raise SingularPointError("radii must be positive")
        exact = exact_potential(cluster, _point_at(cluster, reduction, r, theta))
        approx = multipole_potential(reduction.Q, reduction.D, r, theta)
        if exact == 0.0:
            raise ZeroPotentialError(f"exact potential vanishes at r={r:g}, theta={theta:g}")
        errors.append(abs(exact - approx) / abs(exact))
    return np.array(errors)


def loglog_slope(radii: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(r)"""
    slope, _ = np.polyfit(np.log(radii), np.log(errors), 1)
    return float(slope)
