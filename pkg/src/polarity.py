"""
Polar bodies and volume products of convex polygons.

The polar of a polygon about an interior centre is computed exactly by
dualizing edge lines; the support-function integral is kept as an
independent quadrature cross-check.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from errors import CentreNotInterior, InvalidParameter
from geometry_core import (
    ConvexPolygon, Point2, PointLike, area, as_point, central_symmetral, cross,
    diameter, halfplanes, make_polygon,
)


CENTRE_MARGIN = 1e-10
GAUSS_POINTS = 16


@dataclass(frozen=True, eq=False)
class CenteredBody:
    """A polygon with a polarity centre strictly inside it."""
    polygon: ConvexPolygon
    centre: Point2

    def __post_init__(self):
        object.__setattr__(self, "centre", as_point(self.centre))
        heights = self.heights()
        margin = CENTRE_MARGIN * diameter(self.polygon)
        worst = int(np.argmin(heights))
        if heights[worst] <= margin:
            raise CentreNotInterior(
                f"centre {self.centre.tolist()} is not interior: "
                f"distance {heights[worst]:.3e} to edge {worst}",
                edge=worst,
            )

    @classmethod
    def at_origin(cls, polygon: ConvexPolygon) -> "CenteredBody":
        return cls(polygon, np.zeros(2))

    def heights(self) -> np.ndarray:
        """Distances from the centre to each edge line."""
        normals, offsets = halfplanes(self.polygon)
        return offsets - normals @ self.centre

    def translated(self) -> ConvexPolygon:
        """The polygon moved so the centre sits at the origin."""
        return ConvexPolygon(self.polygon.vertices - self.centre)


@dataclass(frozen=True)
class VolumeProductReport:
    body_area: float
    polar_area: float
    product: float
    centre: Tuple[float, float]


def polar(B: CenteredBody) -> ConvexPolygon:
    """(K - z)* as a polygon about the origin; vertex i dualizes edge i."""
    normals, _ = halfplanes(B.polygon)
    return make_polygon(normals / B.heights()[:, None])


def polar_area_at(K: ConvexPolygon, z: PointLike) -> float:
    """Closed-form |(K - z)*| without building the polar polygon."""
    normals, offsets = halfplanes(K)
    h = offsets - normals @ as_point(z)
    if np.any(h <= 0):
        return float("inf")
    nxt = np.roll(normals, -1, axis=0)
    return 0.5 * float(np.sum(cross(normals, nxt) / (h * np.roll(h, -1))))


def _arcs(B: CenteredBody) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edge-normal breakpoints and the vertex that supports each arc.

    On the arc from normal i to normal i+1 the support function of K - z is
    <u, v[i+1] - z>.
    """
    normals, _ = halfplanes(B.polygon)
    theta = np.arctan2(normals[:, 1], normals[:, 0])
    start = theta
    stop = np.roll(theta, -1)
    stop = np.where(stop <= start, stop + 2.0 * np.pi, stop)
    support_points = np.roll(B.polygon.vertices, -1, axis=0) - B.centre
    return start, stop, support_points


def _arc_nodes(start: float, stop: float, v: np.ndarray, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and angle weights in t = tan(theta - phi), phi = arg v.

    h^-2 dtheta = dt / |v|^2 and u h^-3 dtheta is linear in t, so the rule
    stays exact where h nearly vanishes at an arc end.
    """
    x, w = leggauss(GAUSS_POINTS)
    phi = np.arctan2(v[1], v[0])
    lo = np.remainder(start - phi + np.pi, 2.0 * np.pi) - np.pi
    edges = np.linspace(np.tan(lo), np.tan(lo + (stop - start)), panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel() / (1.0 + t * t)
    return phi + np.arctan(t), weights


def _integrate(B: CenteredBody, m: int, power: int, weight_u: bool) -> np.ndarray:
    if m < GAUSS_POINTS:
        raise InvalidParameter(f"quadrature needs at least {GAUSS_POINTS} nodes, got {m}")
    start, stop, vertices = _arcs(B)
    total = np.zeros(2) if weight_u else np.zeros(1)
    for a, b, v in zip(start, stop, vertices):
        panels = max(1, int(np.ceil((m / GAUSS_POINTS) * (b - a) / (2.0 * np.pi))))
        nodes, weights = _arc_nodes(a, b, v, panels)
        u = np.column_stack((np.cos(nodes), np.sin(nodes)))
        h = u @ v
        f = h ** (-power)
        if weight_u:
            total += (weights * f) @ u
        else:
            total += np.dot(weights, f)
    return total


def polar_area_quadrature(B: CenteredBody, m: int = 256) -> float:
    """(1/2) * integral over the circle of h_{K-z}(u)^(-2), Gauss-Legendre per arc."""
    return 0.5 * float(_integrate(B, m, power=2, weight_u=False)[0])


def polar_area_gradient_quadrature(B: CenteredBody, m: int = 256) -> np.ndarray:
    """Integral of u * h_{K-z}(u)^(-3): the gradient of z -> |(K - z)*|."""
    return _integrate(B, m, power=3, weight_u=True)


def volume_product(B: CenteredBody) -> VolumeProductReport:
    body = area(B.polygon)
    dual = area(polar(B))
    return VolumeProductReport(
        body_area=body,
        polar_area=dual,
        product=body * dual,
        centre=(float(B.centre[0]), float(B.centre[1])),
    )


def eggleston_product(K: ConvexPolygon) -> float:
    """|K| * |((K - K)/2)*|, the polar taken about the origin."""
    symmetral = central_symmetral(K)
    return area(K) * area(polar(CenteredBody.at_origin(symmetral)))
