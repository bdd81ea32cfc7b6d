"""Randomized quasi-Monte Carlo integration of smeared bilinears.

The integrals are 4D: two spacetime points, one in each test function's
bounding box.  The primary engine is a digital Sobol sequence (Joe-Kuo
direction numbers) with a modulo-1 random shift per replicate; the spread
of replicate means gives an honest error bar even for the log-singular
self-bilinears, where deterministic adaptive rules misreport.

A nested tensor-product Gauss-Legendre rule serves as an independent
deterministic cross-check (tests and the eval --cross-check path only).

Accumulation inside a replicate uses an error-free transformation
(vectorized Neumaier lanes + exact final summation) in a fixed order, so
results are bit-reproducible for a fixed seed regardless of parallelism.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .kernels import SpacetimePoint
from .testfns import DiamondTestFunction

__all__ = [
    "QuadPlan",
    "IntegralEstimate",
    "NonFiniteIntegrandError",
    "low_discrepancy_stream",
    "integrate_bilinear",
    "integrate_tensor_oracle",
]

_MAXBIT = 32
_SCALE = 2.0 ** -_MAXBIT

# Joe-Kuo D6 direction-number parameters: (degree, coefficient bits, m_init).
# Dimension 1 is the van der Corput sequence and needs no polynomial.
_SOBOL_PARAMS = (
    (1, 0, (1,)),
    (2, 1, (1, 3)),
    (3, 1, (1, 3, 1)),
    (3, 2, (1, 1, 1)),
    (4, 1, (1, 1, 3, 3)),
    (4, 4, (1, 3, 5, 13)),
    (5, 2, (1, 1, 5, 5, 17)),
)
MAX_DIM = len(_SOBOL_PARAMS) + 1


class NonFiniteIntegrandError(RuntimeError):
    """Raised when an integrand evaluation produces NaN/inf (a guard fault)."""


def _direction_integers(dim_index: int) -> np.ndarray:
    """32 direction integers (v_j = m_j << (32-j)) for one dimension."""
    if dim_index == 0:
        m = [1] * _MAXBIT
    else:
        degree, coeff, m_init = _SOBOL_PARAMS[dim_index - 1]
        m = list(m_init)
        for k in range(degree, _MAXBIT):
            val = m[k - degree] ^ (m[k - degree] << degree)
            for i in range(1, degree):
                if (coeff >> (degree - 1 - i)) & 1:
                    val ^= m[k - i] << i
            m.append(val)
    return np.array(
        [m[j] << (_MAXBIT - 1 - j) for j in range(_MAXBIT)], dtype=np.uint32
    )


@lru_cache(maxsize=16)
def _sobol_base(dim: int, n: int) -> np.ndarray:
    """First n points of the unshifted dim-dimensional Sobol sequence
    (Gray-code order, starting at the origin).  Cached and frozen."""
    idx = np.arange(n, dtype=np.uint32)
    gray = idx ^ (idx >> np.uint32(1))
    pts = np.empty((n, dim), dtype=np.float64)
    nbits = max(1, int(n - 1).bit_length())
    for d in range(dim):
        v = _direction_integers(d)
        acc = np.zeros(n, dtype=np.uint32)
        for b in range(nbits):
            bit = (gray >> np.uint32(b)) & np.uint32(1)
            acc ^= v[b] * bit
        pts[:, d] = acc * _SCALE
    pts.flags.writeable = False
    return pts


def low_discrepancy_stream(dim: int, n: int, shift) -> np.ndarray:
    """n points of the shifted Sobol sequence in [0,1)^dim, shape (n, dim).

    Deterministic in (dim, n, shift).  n must be a power of two (digital
    balance); shift is a length-dim vector in [0, 1) added modulo 1.
    """
    if not isinstance(dim, int) or not (1 <= dim <= MAX_DIM):
        raise ValueError(f"unsupported dimension {dim}; have direction "
                         f"numbers for 1..{MAX_DIM}")
    if not isinstance(n, int) or n < 1 or n & (n - 1):
        raise ValueError("n must be a positive power of two")
    shift = np.asarray(shift, dtype=np.float64)
    if shift.shape != (dim,) or not np.all((shift >= 0.0) & (shift < 1.0)):
        raise ValueError("shift must be a length-dim vector in [0, 1)")
    return (_sobol_base(dim, n) + shift) % 1.0


@dataclass(frozen=True)
class QuadPlan:
    """Sampling plan: points per replicate, replicate count, shift seed."""

    points_per_replicate: int = 2 ** 16
    replicates: int = 16
    seed: int = 0
    target_rel_error: float = 1e-3

    def __post_init__(self):
        n = self.points_per_replicate
        if not isinstance(n, int) or n < 1 or n & (n - 1):
            raise ValueError("points_per_replicate must be a power of two")
        if not isinstance(self.replicates, int) or self.replicates < 2:
            raise ValueError("replicates must be an integer >= 2")
        if not isinstance(self.seed, int) or not (0 <= self.seed < 2 ** 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not (self.target_rel_error > 0.0):
            raise ValueError("target_rel_error must be positive")

    @property
    def n_points(self) -> int:
        return self.points_per_replicate * self.replicates


@dataclass(frozen=True)
class IntegralEstimate:
    """QMC value with the standard error of the replicate means."""

    value: float
    std_error: float
    n_points: int

    def __post_init__(self):
        if not (self.std_error >= 0.0):
            raise ValueError("std_error must be nonnegative")
        if self.n_points < 1:
            raise ValueError("n_points must be positive")


def _compensated_row_sums(a: np.ndarray) -> list[float]:
    """Per-row sums of a (rows, n) array via lane-wise Neumaier accumulation
    and an exact final reduction.  Fixed order: bit-reproducible."""
    rows, n = a.shape
    lanes = min(256, n)
    blocks = a.reshape(rows, n // lanes, lanes)
    s = np.zeros((rows, lanes))
    c = np.zeros((rows, lanes))
    for i in range(blocks.shape[1]):
        term = blocks[:, i, :]
        total = s + term
        big = np.where(np.abs(s) >= np.abs(term), s, term)
        small = np.where(np.abs(s) >= np.abs(term), term, s)
        c += (big - total) + small
        s = total
    return [math.fsum(np.concatenate((s[r], c[r]))) for r in range(rows)]


def integrate_bilinear(
    u: DiamondTestFunction,
    v: DiamondTestFunction,
    kernel: Callable[[SpacetimePoint], np.ndarray],
    plan: QuadPlan,
) -> IntegralEstimate:
    """Estimate of  integral u(p1) kernel(p1 - p2) v(p2) d2p1 d2p2  over the
    product of the two support boxes.

    Each replicate maps the same Sobol points through its own modulo-1
    shift; coordinates (0,1) parametrize p1 and (2,3) parametrize p2.
    Deterministic in (u, v, kernel, plan) including bit-level
    reproducibility of value and std_error.
    """
    box_u = u.support_box()
    box_v = v.support_box()
    volume = box_u.area * box_v.area
    n = plan.points_per_replicate
    base = _sobol_base(4, n)
    shift_rng = np.random.Generator(np.random.Philox(key=plan.seed))
    shifts = shift_rng.random((plan.replicates, 4))

    pts = (base[None, :, :] + shifts[:, None, :]) % 1.0  # (R, n, 4)
    t1, x1 = box_u.map_unit(pts[..., 0], pts[..., 1])
    t2, x2 = box_v.map_unit(pts[..., 2], pts[..., 3])
    p1 = SpacetimePoint(t1, x1)
    p2 = SpacetimePoint(t2, x2)
    integrand = u(p1) * kernel(p1 - p2) * v(p2)

    bad = ~np.isfinite(integrand)
    if bad.any():
        r, i = np.argwhere(bad)[0]
        raise NonFiniteIntegrandError(
            f"non-finite integrand {integrand[r, i]} at replicate {r}, "
            f"p1=({t1[r, i]}, {x1[r, i]}), p2=({t2[r, i]}, {x2[r, i]})"
        )

    sums = _compensated_row_sums(integrand)
    means = [s * (volume / n) for s in sums]
    value = math.fsum(means) / plan.replicates
    resid = [(mu - value) ** 2 for mu in means]
    std_error = math.sqrt(
        math.fsum(resid) / (plan.replicates - 1)
    ) / math.sqrt(plan.replicates)
    return IntegralEstimate(value=value, std_error=std_error, n_points=plan.n_points)


def _gauss_nodes_2d(box, n_axis: int):
    """Tensor Gauss-Legendre nodes and weights on a bounding box, flattened."""
    nodes, weights = np.polynomial.legendre.leggauss(n_axis)
    t = 0.5 * (box.t_max - box.t_min) * (nodes + 1.0) + box.t_min
    x = 0.5 * (box.x_max - box.x_min) * (nodes + 1.0) + box.x_min
    wt = 0.5 * (box.t_max - box.t_min) * weights
    wx = 0.5 * (box.x_max - box.x_min) * weights
    tt, xx = np.meshgrid(t, x, indexing="ij")
    ww = np.outer(wt, wx)
    return tt.ravel(), xx.ravel(), ww.ravel()


def integrate_tensor_oracle(
    u: DiamondTestFunction,
    v: DiamondTestFunction,
    kernel: Callable[[SpacetimePoint], np.ndarray],
    level: int,
) -> float:
    """Deterministic cross-check: tensor Gauss-Legendre with 8*level nodes
    per axis (cost grows as (8*level)^4; level is capped at 8)."""
    if not isinstance(level, int) or not (1 <= level <= 8):
        raise ValueError("level must be an integer in 1..8")
    n_axis = 8 * level
    t1, x1, w1 = _gauss_nodes_2d(u.support_box(), n_axis)
    t2, x2, w2 = _gauss_nodes_2d(v.support_box(), n_axis)
    uw = w1 * u(SpacetimePoint(t1, x1))
    vw = w2 * v(SpacetimePoint(t2, x2))
    total = 0.0
    block = max(1, 2 ** 22 // len(t2))  # cap the kernel matrix at ~32 MB
    for lo in range(0, len(t1), block):
        hi = min(lo + block, len(t1))
        diff = SpacetimePoint(
            t1[lo:hi, None] - t2[None, :], x1[lo:hi, None] - x2[None, :]
        )
        total += float(uw[lo:hi] @ (kernel(diff) @ vw))
    return total
