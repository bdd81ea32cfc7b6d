"""Smooth compactly supported bump functions on causal diamonds.

A diamond of radius r in the right wedge is |x - r| + |t| <= r (its left
tip touches the origin); the left-wedge mirror is |x + r| + |t| <= r.
Every point of a right diamond is spacelike to every point of any left
diamond, which is what makes the smeared Weyl operators commute.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .kernels import SpacetimePoint

__all__ = ["DiamondSide", "BoundingBox", "DiamondTestFunction"]


class DiamondSide(Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class BoundingBox:
    """Tight axis-aligned box around a diamond; the integration domain."""

    t_min: float
    t_max: float
    x_min: float
    x_max: float

    def __post_init__(self):
        if not (self.t_min < self.t_max and self.x_min < self.x_max):
            raise ValueError("degenerate bounding box")

    @property
    def area(self) -> float:
        return (self.t_max - self.t_min) * (self.x_max - self.x_min)

    def map_unit(self, u_t, u_x):
        """Affine image of unit-square coordinates in this box."""
        return (
            self.t_min + u_t * (self.t_max - self.t_min),
            self.x_min + u_x * (self.x_max - self.x_min),
        )


@dataclass(frozen=True)
class DiamondTestFunction:
    """amplitude * exp(-sharpness / (r^2 - d^2)) inside the diamond, 0 outside,
    where d = |x -+ r| + |t| is the diamond gauge of the point.

    Smooth everywhere: all derivatives vanish at the boundary d = r.
    """

    side: DiamondSide
    radius: float
    sharpness: float
    amplitude: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError("radius must be a finite positive real")
        if not (math.isfinite(self.sharpness) and self.sharpness > 0.0):
            raise ValueError("sharpness must be a finite positive real")
        if not (math.isfinite(self.amplitude) and self.amplitude != 0.0):
            raise ValueError("amplitude must be finite and nonzero")

    @property
    def center_x(self) -> float:
        return self.radius if self.side is DiamondSide.RIGHT else -self.radius

    def __call__(self, p: SpacetimePoint):
        t = np.asarray(p.t, dtype=np.float64)
        x = np.asarray(p.x, dtype=np.float64)
        d = np.abs(x - self.center_x) + np.abs(t)
        denom = self.radius * self.radius - d * d
        # skip the exponential where it would underflow anyway (and where
        # sharpness/denom could overflow): true value < 1e-300 there
        live = (d < self.radius) & (denom >= 1e-300 * self.sharpness)
        ratio = self.sharpness / np.where(live, denom, 1.0)
        out = np.where(live, self.amplitude * np.exp(-ratio), 0.0)
        return float(out) if out.ndim == 0 else out

    def support_box(self) -> BoundingBox:
        r = self.radius
        if self.side is DiamondSide.RIGHT:
            return BoundingBox(-r, r, 0.0, 2.0 * r)
        return BoundingBox(-r, r, -2.0 * r, 0.0)

    def mirror(self) -> "DiamondTestFunction":
        """Reflection x -> -x: flips the wedge, preserves all parameters."""
        other = (DiamondSide.LEFT if self.side is DiamondSide.RIGHT
                 else DiamondSide.RIGHT)
        return replace(self, side=other)
