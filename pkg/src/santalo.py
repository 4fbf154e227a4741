"""
Santalo point solver.

z -> |(K - z)*| is strictly convex on int K. With h_i = b_i - <n_i, z> the
polar area is (1/2) sum_i s_i / (h_i h_{i+1}), s_i = n_i x n_{i+1}, so the
gradient and Hessian follow in closed form.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from errors import NoConvergence
from geometry_core import (
    ConvexPolygon, Point2, PointLike, as_point, boundary_distance, centroid,
    cross, diameter, halfplanes,
)
from polarity import CenteredBody, polar, polar_area_at


MAX_ITERATIONS = 200
TOLERANCE_FACTOR = 1e-9
INTERIOR_GUARD = 1e-6
ARMIJO = 1e-4


@dataclass(frozen=True, eq=False)
class SantaloResult:
    point: Point2
    polar_area_at_min: float
    gradient_norm: float
    iterations: int
    tolerance: float


def _edge_terms(K: ConvexPolygon, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    normals, offsets = halfplanes(K)
    nxt = np.roll(normals, -1, axis=0)
    h = offsets - normals @ z
    h_next = np.roll(h, -1)
    s = cross(normals, nxt)
    return normals, nxt, h, h_next, s


def _gradient(K: ConvexPolygon, z: np.ndarray) -> np.ndarray:
    n, m, h, g, s = _edge_terms(K, z)
    a = s / (h * h * g)
    b = s / (h * g * g)
    return 0.5 * (a @ n + b @ m)


def _hessian(K: ConvexPolygon, z: np.ndarray) -> np.ndarray:
    n, m, h, g, s = _edge_terms(K, z)
    c_nn = 2.0 * s / (h ** 3 * g)
    c_nm = s / (h * h * g * g)
    c_mm = 2.0 * s / (h * g ** 3)
    H = (
        np.einsum("k,ki,kj->ij", c_nn, n, n)
        + np.einsum("k,ki,kj->ij", c_nm, n, m)
        + np.einsum("k,ki,kj->ij", c_nm, m, n)
        + np.einsum("k,ki,kj->ij", c_mm, m, m)
    )
    return 0.5 * H


def polar_area_gradient(B: CenteredBody) -> Point2:
    """Gradient of z -> |(K - z)*| at the body's centre."""
    return _gradient(B.polygon, B.centre)


def polar_area_hessian(B: CenteredBody) -> np.ndarray:
    """Exact 2x2 Hessian of z -> |(K - z)*| at the body's centre."""
    return _hessian(B.polygon, B.centre)


def polar_area_hessian_lower(B: CenteredBody) -> float:
    """Uniform lower bound 3 * pi * diam^-4 on second directional derivatives."""
    return 3.0 * np.pi * diameter(B.polygon) ** -4


def gradient_scale(K: ConvexPolygon, z: PointLike) -> float:
    """Sum of the magnitudes of the per-edge gradient terms at z."""
    _, _, h, g, s = _edge_terms(K, as_point(z))
    return 0.5 * float(np.sum(np.abs(s) / (h * g) * (1.0 / h + 1.0 / g)))


def default_tolerance(K: ConvexPolygon, z: Optional[PointLike] = None,
                      factor: float = TOLERANCE_FACTOR) -> float:
    """factor * gradient_scale(K, z); z defaults to the centroid.

    The gradient at the minimiser is a cancelling sum, so its rounding noise
    is a multiple of the term sizes rather than of any power of the diameter.
    """
    return factor * gradient_scale(K, centroid(K) if z is None else z)


def santalo_point(K: ConvexPolygon, tol: Optional[float] = None,
                  max_iterations: int = MAX_ITERATIONS,
                  factor: float = TOLERANCE_FACTOR) -> SantaloResult:
    """Damped Newton from the centroid, steps kept 1e-6 * diam inside K.

    A given tol is an absolute bound on the gradient norm; otherwise the bound
    is default_tolerance at the current iterate.
    """
    guard = INTERIOR_GUARD * diameter(K)

    def bound(at: np.ndarray) -> float:
        return tol if tol is not None else default_tolerance(K, at, factor)

    z = centroid(K)
    value = polar_area_at(K, z)
    grad = _gradient(K, z)
    norm = float(np.linalg.norm(grad))
    limit = bound(z)

    for iteration in range(max_iterations):
        if norm <= limit:
            return SantaloResult(z, value, norm, iteration, limit)

        try:
            step = -np.linalg.solve(_hessian(K, z), grad)
        except np.linalg.LinAlgError:
            step = -grad
        if not np.all(np.isfinite(step)) or np.dot(step, grad) >= 0:
            step = -grad
        slope = float(np.dot(step, grad))

        t = 1.0
        while True:
            candidate = z + t * step
            if boundary_distance(K, candidate) > guard:
                cand_value = polar_area_at(K, candidate)
                cand_grad = _gradient(K, candidate)
                cand_norm = float(np.linalg.norm(cand_grad))
                if cand_value <= value + ARMIJO * t * slope or cand_norm < norm:
                    break
            t *= 0.5
            if t < 1e-30:
                raise NoConvergence(
                    f"line search stalled after {iteration} iterations "
                    f"(gradient norm {norm:.3e}, tolerance {limit:.3e})",
                    iterations=iteration,
                    residual=norm,
                )
        z, value, grad, norm = candidate, cand_value, cand_grad, cand_norm
        limit = bound(z)

    if norm <= limit:
        return SantaloResult(z, value, norm, max_iterations, limit)
    raise NoConvergence(
        f"no convergence in {max_iterations} iterations (gradient norm {norm:.3e}, tolerance {limit:.3e})",
        iterations=max_iterations,
        residual=norm,
    )


def centroid_of_polar_check(K: ConvexPolygon, tol: Optional[float] = None) -> float:
    """||centroid((K - s(K))*)||; zero at the exact Santalo point."""
    result = santalo_point(K, tol)
    return float(np.linalg.norm(centroid(polar(CenteredBody(K, result.point)))))


def finite_difference_gradient(K: ConvexPolygon, z: PointLike, step: float = 1e-5) -> Point2:
    """Central differences of the polar area, scaled by the nearest edge distance."""
    z = as_point(z)
    h = step * float(CenteredBody(K, z).heights().min())
    out = np.zeros(2)
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        out[i] = (polar_area_at(K, z + e) - polar_area_at(K, z - e)) / (2.0 * h)
    return out
