"""Solvers for mutually tangent disk configurations.

External tangency of two disks means their lifted vectors have product 1,
so a disk tangent to three given ones solves three linear constraints plus
the quadratic normalization <X,X> = -1.  The two roots of that system are
swapped by the reflection c -> 2(sum of the other three) - c, the step that
grows Apollonian gaskets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ComplexRoots,
    DegenerateTriple,
    InvalidIndex,
    NotNormalized,
    NotTangent,
)
from .minkowski import MINKOWSKI_METRIC, CircleVector, inner, normalize

_RANK_TOL = 1e-10
_PAIRS_TOL = 1e-12


@dataclass(frozen=True)
class Quadruple:
    """Four mutually tangent circle vectors."""

    vectors: tuple[CircleVector, CircleVector, CircleVector, CircleVector]

    @property
    def curvatures(self) -> tuple[float, float, float, float]:
        return tuple(v.beta for v in self.vectors)

    def validate(self, pair_tol: float = 1e-6, norm_tol: float = 1e-9) -> None:
        """Check normalization of each member and pairwise tangency."""
        if len(self.vectors) != 4:
            raise ValueError(f"expected 4 vectors, got {len(self.vectors)}")
        for k, v in enumerate(self.vectors):
            s = inner(v, v)
            if abs(s + 1.0) > norm_tol:
                raise NotNormalized(f"vector {k} has <v,v> = {s!r}")
        resid = tangency_residual(self.vectors)
        if resid > pair_tol:
            raise NotTangent(f"pairwise tangency residual {resid!r} exceeds {pair_tol!r}")


def descartes_residual(a: float, b: float, c: float, d: float) -> float:
    """(a+b+c+d)^2 - 2(a^2+b^2+c^2+d^2); zero exactly on tangent quadruples."""
    s = a + b + c + d
    return s * s - 2.0 * (a * a + b * b + c * c + d * d)


def solve_fourth_curvature(a: float, b: float, c: float) -> tuple[float, float]:
    """Both curvatures completing a tangent triple, larger root first.

    The larger-magnitude root is computed directly and the other from the
    product of roots, so nearly cancelling sums do not lose precision.
    """
    pairs = a * b + b * c + c * a
    if pairs < -_PAIRS_TOL:
        raise ComplexRoots(f"ab+bc+ca = {pairs!r} is negative, no real fourth curvature")
    root = 2.0 * math.sqrt(max(pairs, 0.0))
    s = a + b + c
    if s >= 0.0:
        hi = s + root
        lo = (s * s - root * root) / hi if hi != 0.0 else 0.0
    else:
        lo = s - root
        hi = (s * s - root * root) / lo
    return hi, lo


def tangency_residual(vectors: Sequence[CircleVector]) -> float:
    """Max deviation of pairwise products from 1 over distinct pairs."""
    if len(vectors) not in (3, 4):
        raise ValueError(f"expected 3 or 4 vectors, got {len(vectors)}")
    worst = 0.0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            worst = max(worst, abs(inner(vectors[i], vectors[j]) - 1.0))
    return worst


def _solution_line(rows: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Particular point and null direction of the 3x4 system rows @ x = rhs.

    Gaussian elimination with full pivoting over rows and columns; a pivot
    ratio below _RANK_TOL marks the constraints as rank deficient.
    """
    a = np.hstack([np.asarray(rows, dtype=float), np.asarray(rhs, dtype=float).reshape(3, 1)])
    pivot_cols: list[int] = []
    free_cols = [0, 1, 2, 3]
    for k in range(3):
        best_val = -1.0
        best = (k, free_cols[0])
        for i in range(k, 3):
            for j in free_cols:
                v = abs(a[i, j])
                if v > best_val:
                    best_val = v
                    best = (i, j)
        i, j = best
        if best_val <= 0.0:
            raise DegenerateTriple("tangency constraints are rank deficient")
        if i != k:
            a[[k, i]] = a[[i, k]]
        for i2 in range(k + 1, 3):
            factor = a[i2, j] / a[k, j]
            a[i2] = a[i2] - factor * a[k]
            a[i2, j] = 0.0
        pivot_cols.append(j)
        free_cols.remove(j)
    pivots = [abs(a[k, c]) for k, c in enumerate(pivot_cols)]
    if min(pivots) < _RANK_TOL * max(pivots):
        raise DegenerateTriple(
            f"pivot ratio {min(pivots) / max(pivots):.3e} below rank tolerance"
        )
    free_col = free_cols[0]

    def back(use_rhs: bool, free_val: float) -> np.ndarray:
        x = np.zeros(4)
        x[free_col] = free_val
        for k in (2, 1, 0):
            c = pivot_cols[k]
            s = a[k, 4] if use_rhs else 0.0
            for j in range(4):
                if j != c:
                    s -= a[k, j] * x[j]
            x[c] = s / a[k, c]
        return x

    return back(True, 0.0), back(False, 1.0)


def _metric_product(u: np.ndarray, v: np.ndarray) -> float:
    return float(-u[0] * v[0] - u[1] * v[1] + 0.5 * (u[2] * v[3] + u[3] * v[2]))


def _root_order(v: CircleVector) -> tuple[float, float, float, float]:
    # larger curvature first; remaining components break exact ties
    return (-v.beta, -v.xdot, -v.ydot, -v.gamma)


def _roots_on_line(point: np.ndarray, direction: np.ndarray) -> tuple[CircleVector, CircleVector]:
    """Intersect the affine line point + t*direction with <X,X> = -1."""
    alpha = _metric_product(direction, direction)
    if alpha == 0.0:
        raise DegenerateTriple("solution line is light-like")
    b = _metric_product(point, direction)
    c0 = _metric_product(point, point) + 1.0
    disc = b * b - alpha * c0
    gate = 1e-12 * max(1.0, b * b, abs(alpha * c0))
    if disc < -gate:
        raise ComplexRoots(f"discriminant {disc!r} is negative")
    sq = math.sqrt(max(disc, 0.0))
    q = -(b + math.copysign(sq, b))
    if q != 0.0:
        t1, t2 = q / alpha, c0 / q
    else:
        t1 = t2 = 0.0
    roots = sorted(
        (normalize(point + t1 * direction), normalize(point + t2 * direction)),
        key=_root_order,
    )
    return roots[0], roots[1]


def solve_fourth_disk(
    c1: CircleVector, c2: CircleVector, c3: CircleVector, tol: float = 1e-6
) -> tuple[CircleVector, CircleVector]:
    """Both disks tangent to a mutually tangent triple, larger curvature first."""
    triple = (c1, c2, c3)
    rows = np.stack([MINKOWSKI_METRIC @ v.as_array() for v in triple])
    # rank check first so repeated disks report degeneracy, not non-tangency
    line = _solution_line(rows, np.ones(3))
    resid = tangency_residual(triple)
    if resid > tol:
        raise NotTangent(f"triple tangency residual {resid!r} exceeds {tol!r}")
    return _roots_on_line(*line)


def tangent_disk_with_curvature(
    c1: CircleVector, c2: CircleVector, curvature: float
) -> tuple[CircleVector, CircleVector]:
    """Both disks of prescribed curvature tangent to two tangent disks."""
    rows = np.stack(
        [
            MINKOWSKI_METRIC @ c1.as_array(),
            MINKOWSKI_METRIC @ c2.as_array(),
            np.array([0.0, 0.0, 1.0, 0.0]),
        ]
    )
    return _roots_on_line(*_solution_line(rows, np.array([1.0, 1.0, float(curvature)])))


def vieta_reflect(q: Quadruple, index: int) -> Quadruple:
    """Swap slot `index` for the other root of its tangency system.

    Componentwise c' = 2(c_j + c_k + c_l) - c_i.  An involution that
    preserves every pairwise product, hence maps quadruples to quadruples.
    """
    if index not in (0, 1, 2, 3):
        raise InvalidIndex(f"reflection slot must be 0..3, got {index!r}")
    cs = q.vectors
    others = [cs[j] for j in range(4) if j != index]
    old = cs[index]
    new = CircleVector(
        2.0 * (others[0].xdot + others[1].xdot + others[2].xdot) - old.xdot,
        2.0 * (others[0].ydot + others[1].ydot + others[2].ydot) - old.ydot,
        2.0 * (others[0].beta + others[1].beta + others[2].beta) - old.beta,
        2.0 * (others[0].gamma + others[1].gamma + others[2].gamma) - old.gamma,
    )
    replaced = list(cs)
    replaced[index] = new
    return Quadruple(tuple(replaced))
