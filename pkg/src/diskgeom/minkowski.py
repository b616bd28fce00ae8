"""Minkowski-space model of planar disks.

A disk with center (x, y) and signed radius r lifts to the space-like
4-vector (x/r, y/r, 1/r, (x^2 + y^2 - r^2)/r); halfplanes are the
curvature-0 limit of that map.  Under the metric g (negative unit block on
the reduced coordinates, half-swap block on curvature/co-curvature) the
product of two lifted vectors equals the inversive product
(d^2 - r1^2 - r2^2) / (2 r1 r2), so tangency, intersection angles and the
whole configuration calculus become linear algebra on 4-vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateConfiguration,
    NonUnitNormal,
    NotNormalized,
    NotSpacelike,
    SingularMatrix,
    ZeroRadius,
)

MINKOWSKI_METRIC = np.array(
    [
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.5],
        [0.0, 0.0, 0.5, 0.0],
    ]
)
MINKOWSKI_METRIC_INV = np.array(
    [
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
        [0.0, 0.0, 2.0, 0.0],
    ]
)
MINKOWSKI_METRIC.setflags(write=False)
MINKOWSKI_METRIC_INV.setflags(write=False)

_UNIT_NORMAL_TOL = 1e-12
_PROJECT_TOL = 1e-6
_SPACELIKE_TOL = 1e-12
_SINGULAR_GATE = 1e-12


@dataclass(frozen=True)
class Circle:
    """Disk bounded by a circle; radius < 0 marks the unbounded complement."""

    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class Halfplane:
    """Curvature-0 disk {p : normal . p <= offset} with unit normal."""

    normal: tuple[float, float]
    offset: float


Disk = Circle | Halfplane


@dataclass(frozen=True)
class CircleVector:
    """Lifted disk: reduced center (xdot, ydot), curvature beta, co-curvature gamma."""

    xdot: float
    ydot: float
    beta: float
    gamma: float

    def as_array(self) -> np.ndarray:
        return np.array([self.xdot, self.ydot, self.beta, self.gamma])

    def __iter__(self):
        return iter((self.xdot, self.ydot, self.beta, self.gamma))


def lift(d: Disk) -> CircleVector:
    """Map a disk to its normalized space-like 4-vector."""
    if isinstance(d, Circle):
        x, y = d.center
        r = d.radius
        if r == 0.0 or not math.isfinite(r):
            raise ZeroRadius(f"circle radius must be finite and nonzero, got {r!r}")
        return CircleVector(x / r, y / r, 1.0 / r, (x * x + y * y - r * r) / r)
    nx, ny = d.normal
    norm = math.hypot(nx, ny)
    if abs(norm - 1.0) > _UNIT_NORMAL_TOL:
        raise NonUnitNormal(f"halfplane normal must be unit length, |n| = {norm!r}")
    # 0.0 - x coerces ints and flushes negative zeros
    return CircleVector(0.0 - nx, 0.0 - ny, 0.0, 0.0 - 2.0 * d.offset)


def project(v: CircleVector) -> Disk:
    """Invert the lift; beta == 0 exactly maps back to a halfplane."""
    s = inner(v, v)
    if abs(s + 1.0) > _PROJECT_TOL:
        raise NotNormalized(f"<v,v> = {s!r}, expected -1")
    if v.beta != 0.0:
        r = 1.0 / v.beta
        return Circle((v.xdot * r, v.ydot * r), r)
    norm = math.hypot(v.xdot, v.ydot)
    return Halfplane((-v.xdot / norm, -v.ydot / norm), -0.5 * v.gamma / norm)


def normalize(components: Iterable[float]) -> CircleVector:
    """Scale a raw space-like 4-vector to self-product -1, preserving orientation."""
    x, y, b, g = (float(c) for c in components)
    s = -(x * x) - y * y + b * g
    if s >= -_SPACELIKE_TOL:
        raise NotSpacelike(f"<v,v> = {s!r} is not negative")
    scale = 1.0 / math.sqrt(-s)
    return CircleVector(x * scale, y * scale, b * scale, g * scale)


def inner(u: CircleVector, v: CircleVector) -> float:
    """Minkowski product of two circle vectors."""
    return (
        -u.xdot * v.xdot
        - u.ydot * v.ydot
        + 0.5 * (u.beta * v.gamma + v.beta * u.gamma)
    )


def inner_geometric(d1: Disk, d2: Disk) -> float:
    """Inversive product from center distance and signed radii.

    Halfplane arguments fall back to the Minkowski product of the lifts,
    where the curvature-0 limit is well defined.
    """
    if isinstance(d1, Halfplane) or isinstance(d2, Halfplane):
        return inner(lift(d1), lift(d2))
    r1, r2 = d1.radius, d2.radius
    for r in (r1, r2):
        if r == 0.0 or not math.isfinite(r):
            raise ZeroRadius(f"circle radius must be finite and nonzero, got {r!r}")
    dx = d2.center[0] - d1.center[0]
    dy = d2.center[1] - d1.center[1]
    return (dx * dx + dy * dy - r1 * r1 - r2 * r2) / (2.0 * r1 * r2)


def intersection_angle(d1: Disk, d2: Disk) -> float | None:
    """Angle between the boundary circles, or None when the disks miss each other."""
    p = inner_geometric(d1, d2)
    if abs(p) > 1.0:
        return None
    return math.acos(p)


def gramian(vectors: Sequence[CircleVector]) -> np.ndarray:
    """Symmetric 4x4 matrix of pairwise products of four circle vectors."""
    if len(vectors) != 4:
        raise ValueError(f"expected 4 vectors, got {len(vectors)}")
    f = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            f[i, j] = f[j, i] = inner(vectors[i], vectors[j])
    return f


def invert_matrix(m: np.ndarray) -> np.ndarray:
    """Inverse by partially pivoted elimination, gated on a scaled determinant."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    n = m.shape[0]
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    det = float(np.linalg.det(m))
    if abs(det) < _SINGULAR_GATE * scale**n:
        raise SingularMatrix(f"determinant {det!r} below gate for entry scale {scale!r}")
    return np.linalg.solve(m, np.eye(n))


def invert4(m: np.ndarray) -> np.ndarray:
    """Inverse of a 4x4 matrix; raises SingularMatrix at the determinant gate."""
    if np.shape(m) != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {np.shape(m)}")
    return invert_matrix(m)


def verify_generalized(vectors: Sequence[CircleVector]) -> float:
    """Max-abs residual of the configuration identity D f^-1 D^T = G.

    D holds the four circle vectors as columns and f is their Gramian; for
    any quadruple with invertible Gramian the product reconstructs the
    inverse metric exactly, so the residual measures only numerical noise
    and input inconsistency.
    """
    if len(vectors) != 4:
        raise ValueError(f"expected 4 vectors, got {len(vectors)}")
    d = np.column_stack([v.as_array() for v in vectors])
    f = gramian(vectors)
    try:
        finv = invert4(f)
    except SingularMatrix as exc:
        raise DegenerateConfiguration(str(exc)) from exc
    resid = d @ finv @ d.T - MINKOWSKI_METRIC_INV
    return float(np.max(np.abs(resid)))
