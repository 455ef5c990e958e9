"""Multi-drone waypoint paths and clamped B-spline smoothing.

A candidate solution is a flat decision vector holding the interior waypoints
of every drone; the shared start and terminal points are fixed by the
scenario geometry.  Smoothing is for output and post-hoc collision audits;
cost evaluation operates on the raw waypoints.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ScenarioGeometry",
    "PathSet",
    "SmoothTrajectory",
    "decode",
    "encode",
    "clamped_knots",
    "bspline_basis",
    "smooth_path",
    "smooth_paths",
    "export_waypoints_csv",
    "export_trajectory_csv",
]


@dataclass(frozen=True)
class ScenarioGeometry:
    """Shared geometry of a planning problem: fleet size, path length, endpoints."""

    drones: int
    waypoints: int
    start: tuple[float, float, float]
    terminal: tuple[float, float, float]
    lower: float = 0.0
    upper: float = 1000.0

    def __post_init__(self):
        if self.drones < 1:
            raise ValueError("drone count must be >= 1")
        if self.waypoints < 2:
            raise ValueError("waypoint count must be >= 2")
        if self.upper <= self.lower:
            raise ValueError("bounds must satisfy lower < upper")
        start = np.asarray(self.start, dtype=float)
        terminal = np.asarray(self.terminal, dtype=float)
        if start.shape != (3,) or terminal.shape != (3,):
            raise ValueError("start and terminal must be 3D points")
        if np.array_equal(start, terminal):
            raise ValueError("start and terminal must differ")
        for p in (start, terminal):
            if np.any(p < self.lower) or np.any(p > self.upper):
                raise ValueError("start/terminal outside bounds")

    @property
    def dim(self) -> int:
        """Length of the flat decision vector: 3 coords per interior waypoint per drone."""
        return 3 * (self.waypoints - 2) * self.drones

    def to_dict(self) -> dict:
        return {
            "drones": self.drones,
            "waypoints": self.waypoints,
            "start": list(self.start),
            "terminal": list(self.terminal),
            "lower": self.lower,
            "upper": self.upper,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioGeometry":
        return cls(drones=data["drones"], waypoints=data["waypoints"],
                   start=tuple(data["start"]), terminal=tuple(data["terminal"]),
                   lower=data.get("lower", 0.0), upper=data.get("upper", 1000.0))


@dataclass(frozen=True)
class PathSet:
    """Waypoint sequences for the whole fleet, shape (drones, waypoints, 3)."""

    waypoints: np.ndarray

    def __post_init__(self):
        wp = np.asarray(self.waypoints, dtype=float)
        if wp.ndim != 3 or wp.shape[2] != 3:
            raise ValueError("waypoints must have shape (drones, waypoints, 3)")
        if not np.all(np.isfinite(wp)):
            raise ValueError("waypoints must be finite")
        object.__setattr__(self, "waypoints", wp)

    @property
    def drones(self) -> int:
        return self.waypoints.shape[0]


@dataclass(frozen=True)
class SmoothTrajectory:
    """Dense sampled spline polylines for the fleet, shape (drones, samples, 3)."""

    samples: np.ndarray

    @property
    def drones(self) -> int:
        return self.samples.shape[0]


def decode(vector, geom: ScenarioGeometry) -> PathSet:
    """Unpack a flat decision vector into per-drone waypoint paths.

    Drone m's interior waypoints are read consecutively as (x, y, z) triples
    from segment m of the vector; endpoints come from the geometry.
    """
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (geom.dim,):
        raise ValueError(
            f"decision vector has length {vector.size}, expected {geom.dim}")
    m, n = geom.drones, geom.waypoints
    wp = np.empty((m, n, 3))
    wp[:, 0, :] = geom.start
    wp[:, -1, :] = geom.terminal
    if n > 2:
        wp[:, 1:-1, :] = vector.reshape(m, n - 2, 3)
    return PathSet(wp)


def encode(paths: PathSet) -> np.ndarray:
    """Flatten the interior waypoints back into a decision vector."""
    return paths.waypoints[:, 1:-1, :].reshape(-1).copy()


def clamped_knots(n_ctrl: int, degree: int) -> np.ndarray:
    """Clamped uniform knot vector on [0, 1] for ``n_ctrl`` control points."""
    if n_ctrl < degree + 1:
        raise ValueError("need at least degree+1 control points")
    interior = np.linspace(0.0, 1.0, n_ctrl - degree + 1)
    return np.concatenate([np.zeros(degree), interior, np.ones(degree)])


def bspline_basis(l: int, k: int, t: float, knots) -> float:
    """Normalized blending function of order ``k`` (k=1 is piecewise constant).

    Cox-de Boor recursion with the 0/0 convention mapped to 0.  Knot spans
    are half-open except the last non-degenerate one, which closes at the
    final knot so clamped curves end exactly on the last control point.
    """
    knots = np.asarray(knots, dtype=float)
    if k == 1:
        if knots[l] <= t < knots[l + 1]:
            return 1.0
        if t == knots[-1] and knots[l] < knots[l + 1] == knots[-1]:
            return 1.0
        return 0.0
    left = 0.0
    denom = knots[l + k - 1] - knots[l]
    if denom != 0.0:
        left = (t - knots[l]) / denom * bspline_basis(l, k - 1, t, knots)
    right = 0.0
    denom = knots[l + k] - knots[l + 1]
    if denom != 0.0:
        right = (knots[l + k] - t) / denom * bspline_basis(l + 1, k - 1, t, knots)
    return left + right


def smooth_path(waypoints, samples: int = 200) -> np.ndarray:
    """Sample a clamped B-spline through the waypoint control polygon.

    Cubic whenever four or more control points exist; fewer control points
    reduce the degree to n-1.  Endpoints are interpolated exactly.
    """
    ctrl = np.asarray(waypoints, dtype=float)
    if ctrl.ndim != 2:
        raise ValueError("waypoints must be a (n, coords) array")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    n = ctrl.shape[0]
    degree = min(3, n - 1)
    order = degree + 1
    knots = clamped_knots(n, degree)
    ts = np.linspace(0.0, 1.0, samples)
    basis = np.empty((samples, n))
    for j, t in enumerate(ts):
        for l in range(n):
            basis[j, l] = bspline_basis(l, order, t, knots)
    return basis @ ctrl


def smooth_paths(paths: PathSet, samples: int = 200) -> SmoothTrajectory:
    """Smooth every drone's path; returns dense polylines for plotting/audit."""
    out = np.stack([smooth_path(paths.waypoints[m], samples)
                    for m in range(paths.drones)])
    return SmoothTrajectory(out)


def export_waypoints_csv(paths: PathSet, path) -> None:
    """Write (drone, waypoint, x, y, z) rows for the raw control polygons."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["drone", "waypoint", "x", "y", "z"])
        for m in range(paths.drones):
            for i, p in enumerate(paths.waypoints[m]):
                writer.writerow([m, i] + [format(v, ".9g") for v in p])


def export_trajectory_csv(traj: SmoothTrajectory, path) -> None:
    """Write (drone, sample, x, y, z) rows for the smoothed trajectories."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["drone", "sample", "x", "y", "z"])
        for m in range(traj.drones):
            for i, p in enumerate(traj.samples[m]):
                writer.writerow([m, i] + [format(v, ".9g") for v in p])
