"""Synthetic 3D terrain: a smooth base relief plus Gaussian obstacle bumps.

The flyable world is an axis-aligned cube.  Base relief and obstacles are
combined by pointwise maximum, so the obstacle field is folded into a single
height surface that collision checks can query.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BaseTerrainCoeffs",
    "Obstacle",
    "TerrainModel",
    "base_height",
    "obstacle_height",
    "terrain_height",
    "point_in_obstruction",
    "export_height_grid",
]


@dataclass(frozen=True)
class BaseTerrainCoeffs:
    """Coefficients of the rolling base-relief surface.

    Defaults are the standard settings used by the built-in scenarios.
    """

    a: float = 3.0 * math.pi
    b: float = 0.1
    c: float = 0.9
    d: float = 0.5
    e: float = 0.5
    f: float = 0.5
    g: float = 0.3

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "e", "f", "g"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"coefficient {name} must be finite")


@dataclass(frozen=True)
class Obstacle:
    """A single Gaussian bump: centroid, axis slopes and peak height."""

    center_x: float
    center_y: float
    slope_x: float
    slope_y: float
    height: float

    def __post_init__(self):
        if self.slope_x <= 0.0 or self.slope_y <= 0.0:
            raise ValueError("obstacle slopes must be strictly positive")
        if self.height <= 0.0:
            raise ValueError("obstacle height must be strictly positive")


@dataclass(frozen=True)
class TerrainModel:
    """Base relief plus obstacles over a cubic world [lower, upper]^3."""

    base: BaseTerrainCoeffs = field(default_factory=BaseTerrainCoeffs)
    obstacles: tuple[Obstacle, ...] = ()
    lower: float = 0.0
    upper: float = 1000.0

    def __post_init__(self):
        if self.upper <= self.lower:
            raise ValueError("terrain bounds must satisfy lower < upper")
        for obs in self.obstacles:
            if not (self.lower <= obs.center_x <= self.upper
                    and self.lower <= obs.center_y <= self.upper):
                raise ValueError(
                    f"obstacle centre ({obs.center_x}, {obs.center_y}) "
                    "outside horizontal bounds")

    def height(self, x, y):
        return terrain_height(x, y, self)

    def to_dict(self) -> dict:
        return {
            "base": {k: getattr(self.base, k) for k in "abcdefg"},
            "obstacles": [
                {
                    "center_x": o.center_x,
                    "center_y": o.center_y,
                    "slope_x": o.slope_x,
                    "slope_y": o.slope_y,
                    "height": o.height,
                }
                for o in self.obstacles
            ],
            "lower": self.lower,
            "upper": self.upper,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TerrainModel":
        base = BaseTerrainCoeffs(**data.get("base", {}))
        obstacles = tuple(Obstacle(**o) for o in data.get("obstacles", ()))
        return cls(base=base, obstacles=obstacles,
                   lower=data.get("lower", 0.0), upper=data.get("upper", 1000.0))


def base_height(x, y, coeffs: BaseTerrainCoeffs | None = None):
    """Height of the base relief at (x, y).

    Accepts scalars or broadcastable arrays.  The formula carries two
    cosine-of-y terms on purpose; both are kept.
    """
    c = coeffs if coeffs is not None else BaseTerrainCoeffs()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.sqrt(x * x + y * y)
    z = (np.sin(y + c.a)
         + c.b * np.sin(x)
         + c.c * np.cos(c.d * r)
         + c.e * np.cos(y)
         + c.f * np.sin(c.f * r)
         + c.g * np.cos(y))
    return float(z) if z.ndim == 0 else z


def obstacle_height(x, y, obstacles) -> float | np.ndarray:
    """Summed Gaussian bump heights at (x, y); zero for an empty sequence."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.zeros(np.broadcast(x, y).shape)
    for o in obstacles:
        dx = (x - o.center_x) / o.slope_x
        dy = (y - o.center_y) / o.slope_y
        z = z + o.height * np.exp(-dx * dx - dy * dy)
    return float(z) if z.ndim == 0 else z


def terrain_height(x, y, model: TerrainModel):
    """Pointwise maximum of base relief and obstacle field."""
    z = np.maximum(base_height(x, y, model.base),
                   obstacle_height(x, y, model.obstacles))
    return float(z) if np.ndim(z) == 0 else z


def point_in_obstruction(p, model: TerrainModel) -> bool:
    """True when the point sits on or below the terrain surface.

    Surface contact counts as obstruction (conservative for safety costs).
    """
    p = np.asarray(p, dtype=float)
    return bool(p[2] <= terrain_height(p[0], p[1], model))


def export_height_grid(model: TerrainModel, path, resolution: int = 101) -> None:
    """Write an (x, y, z) CSV sampling of the terrain on a regular grid."""
    xs = np.linspace(model.lower, model.upper, resolution)
    ys = np.linspace(model.lower, model.upper, resolution)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    gz = terrain_height(gx, gy, model)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "z"])
        for i in range(resolution):
            for j in range(resolution):
                writer.writerow([format(gx[i, j], ".9g"),
                                 format(gy[i, j], ".9g"),
                                 format(gz[i, j], ".9g")])
