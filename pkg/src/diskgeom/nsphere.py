"""Tangent-sphere identities in arbitrary dimension.

(n-1)-spheres in n-space lift to space-like unit vectors in an
(n+2)-dimensional Minkowski space exactly as planar disks do for n = 2.
The all-tangent Gramian (diagonal -1, off-diagonal 1) has inverse
J/(2n) - I/2, and the vanishing curvature-curvature entry of the inverse
metric turns that into the curvature identity (sum b)^2 = n * sum(b^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BadDimension, DegenerateConfiguration, SingularMatrix, ZeroRadius
from .minkowski import invert_matrix


@dataclass(frozen=True)
class NSphere:
    """Sphere in n-space with signed radius; negative marks the enclosing complement."""

    center: tuple[float, ...]
    radius: float

    @property
    def dim(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class NVector:
    """Lifted sphere: reduced center coordinates, curvature beta, co-curvature gamma."""

    coords: tuple[float, ...]
    beta: float
    gamma: float

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_array(self) -> np.ndarray:
        return np.array([*self.coords, self.beta, self.gamma])


def minkowski_metric(n: int) -> np.ndarray:
    """(n+2)x(n+2) metric: -identity block plus the half-swap curvature block."""
    if n < 2:
        raise BadDimension(f"dimension must be >= 2, got {n!r}")
    g = np.zeros((n + 2, n + 2))
    g[:n, :n] = -np.eye(n)
    g[n, n + 1] = g[n + 1, n] = 0.5
    return g


def minkowski_metric_inv(n: int) -> np.ndarray:
    """Exact inverse of minkowski_metric(n)."""
    if n < 2:
        raise BadDimension(f"dimension must be >= 2, got {n!r}")
    g = np.zeros((n + 2, n + 2))
    g[:n, :n] = -np.eye(n)
    g[n, n + 1] = g[n + 1, n] = 2.0
    return g


def lift_sphere(s: NSphere) -> NVector:
    """Map a sphere to its normalized space-like (n+2)-vector."""
    if s.dim < 2:
        raise BadDimension(f"dimension must be >= 2, got {s.dim!r}")
    r = s.radius
    if r == 0.0 or not math.isfinite(r):
        raise ZeroRadius(f"sphere radius must be finite and nonzero, got {r!r}")
    norm2 = sum(c * c for c in s.center)
    return NVector(tuple(c / r for c in s.center), 1.0 / r, (norm2 - r * r) / r)


def inner_sphere(u: NVector, v: NVector) -> float:
    """Minkowski product of two lifted spheres of the same dimension."""
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")
    s = 0.0
    for a, b in zip(u.coords, v.coords):
        s += a * b
    return -s + 0.5 * (u.beta * v.gamma + v.beta * u.gamma)


def gramian_n(vectors: Sequence[NVector]) -> np.ndarray:
    """Symmetric matrix of pairwise products of n+2 lifted spheres."""
    m = len(vectors)
    f = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            f[i, j] = f[j, i] = inner_sphere(vectors[i], vectors[j])
    return f


def verify_generalized_n(vectors: Sequence[NVector]) -> float:
    """Max-abs residual of D f^-1 D^T = G for n+2 spheres in n-space."""
    if not vectors:
        raise ValueError("no vectors given")
    n = vectors[0].dim
    if any(v.dim != n for v in vectors):
        raise ValueError("all vectors must share one dimension")
    if len(vectors) != n + 2:
        raise ValueError(f"need n+2 = {n + 2} vectors for n = {n}, got {len(vectors)}")
    d = np.column_stack([v.as_array() for v in vectors])
    f = gramian_n(vectors)
    try:
        finv = invert_matrix(f)
    except SingularMatrix as exc:
        raise DegenerateConfiguration(str(exc)) from exc
    resid = d @ finv @ d.T - minkowski_metric_inv(n)
    return float(np.max(np.abs(resid)))


def soddy_gosset_residual(curvatures: Sequence[float], n: int) -> float:
    """(sum b)^2 - n * sum(b^2) over n+2 curvatures; zero on tangent configurations."""
    if n < 2:
        raise BadDimension(f"dimension must be >= 2, got {n!r}")
    bs = [float(b) for b in curvatures]
    if len(bs) != n + 2:
        raise ValueError(f"need n+2 = {n + 2} curvatures for n = {n}, got {len(bs)}")
    s = sum(bs)
    return s * s - n * sum(b * b for b in bs)


def _simplex_vertices(n: int) -> np.ndarray:
    """Vertices of the regular n-simplex with edge 2 centered at the origin.

    Scaled standard basis vectors of R^(n+1) mapped isometrically onto the
    sum-zero subspace through the Helmert orthonormal basis.
    """
    h = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        scale = 1.0 / math.sqrt(k * (k + 1))
        h[k - 1, :k] = scale
        h[k - 1, k] = -k * scale
    return math.sqrt(2.0) * h.T


def canonical_simplex_config(n: int, outer: bool = False) -> list[NSphere]:
    """n+1 unit spheres at simplex vertices plus the central tangent sphere.

    The central sphere has radius R-1 (inscribed) or -(R+1) (enclosing)
    where R = sqrt(2n/(n+1)) is the circumradius; all pairs end up
    externally tangent.
    """
    if n < 2:
        raise BadDimension(f"dimension must be >= 2, got {n!r}")
    verts = _simplex_vertices(n)
    circumradius = math.sqrt(2.0 * n / (n + 1.0))
    central = -(circumradius + 1.0) if outer else circumradius - 1.0
    spheres = [NSphere(tuple(float(x) for x in v), 1.0) for v in verts]
    spheres.append(NSphere((0.0,) * n, central))
    return spheres
