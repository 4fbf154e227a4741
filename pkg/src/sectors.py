"""
Sector sections and their polar sections.

A sector is fixed by two boundary points u, v of a centred body and the
intersection p of the supporting lines there. After the linear map sending
u -> (1, 0) and v -> (0, 1) we have p = (lambda, mu), and the dual section
lives in the quadrilateral [o, u*, p*, v*] with u* = (1, (1-lambda)/mu),
v* = ((1-mu)/lambda, 1), p* = (1, 1).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple

import numpy as np

from errors import BadConfiguration, HypothesisViolated, InvalidParameter
from geometry_core import (
    CONTAINMENT_SLACK, ConvexPolygon, HalfPlane, LinearMap2, Point2, PointLike,
    area, as_point, boundary_distance, clip_all, clip_sector, contains, cross,
    diameter, halfplanes, make_polygon,
)
from polarity import CenteredBody


DEGENERATE = 1e-12
U = np.array([1.0, 0.0])
V = np.array([0.0, 1.0])


class Dichotomy(Enum):
    INNER_CLOSE = "inner_close"
    OUTER_CLOSE = "outer_close"
    NEITHER = "neither"


@dataclass(frozen=True, eq=False)
class SectorConfig:
    """Section C = K ∩ [o, u, v, p], stored in normalized coordinates."""
    u: Point2
    v: Point2
    lam: float
    mu: float
    C: ConvexPolygon
    to_normalized: LinearMap2 = LinearMap2()

    def __post_init__(self):
        if self.lam <= 0 or self.mu <= 0 or self.lam + self.mu < 1.0 - 1e-9:
            raise BadConfiguration(
                f"need lambda, mu > 0 and lambda + mu >= 1, got ({self.lam:.6g}, {self.mu:.6g})"
            )

    @property
    def p(self) -> Point2:
        return np.array([self.lam, self.mu])


@dataclass(frozen=True)
class SectorReport:
    product: float
    bound_f: float
    g: float
    alpha: float
    gamma: float
    dichotomy: Optional[Dichotomy] = None
    eps: Optional[float] = None
    passed: bool = True


@dataclass(frozen=True)
class Corollary5Report:
    alpha_minus: float
    alpha_plus: float
    inner_scale: float
    outer_scale: float
    inner_holds: bool
    outer_holds: bool

    @property
    def passed(self) -> bool:
        return self.inner_holds or self.outer_holds


# ---------------------------------------------------------------------------
# constants of the sector lemmas


def _check_pair(lam: float, mu: float) -> None:
    if lam <= 0 or mu <= 0 or lam + mu < 1.0 - 1e-12:
        raise InvalidParameter(f"need lambda, mu > 0 and lambda + mu >= 1, got ({lam}, {mu})")


def f_bound(lam: float, mu: float) -> float:
    """(lambda + mu)(lambda + mu - 1) / (4 lambda mu)."""
    _check_pair(lam, mu)
    s = lam + mu
    return s * (s - 1.0) / (4.0 * lam * mu)


def f_bound_dual(lam: float, mu: float) -> float:
    """Same quantity as (2 - <u, v*> - <u*, v>) / 4 in normalized coordinates."""
    _check_pair(lam, mu)
    u_star, v_star = dual_points(lam, mu)[:2]
    return (2.0 - float(np.dot(U, v_star)) - float(np.dot(u_star, V))) / 4.0


def g_bound(lam: float, mu: float) -> float:
    _check_pair(lam, mu)
    return 0.25 * (lam + mu - 1.0) ** 2 * min(
        1.0 / (mu * (1.0 + lam / 4.0 + mu)),
        1.0 / (lam * (1.0 + lam + mu / 4.0)),
        1.0 / (lam * mu),
    )


def gamma(lam: float, mu: float) -> float:
    _check_pair(lam, mu)
    s = lam + mu
    return 3.0 * (s / min(lam, mu)) * (1.0 + np.sqrt(s))


def dual_points(lam: float, mu: float) -> Tuple[Point2, Point2, Point2]:
    """(u*, v*, p*) in normalized coordinates."""
    return (
        np.array([1.0, (1.0 - lam) / mu]),
        np.array([(1.0 - mu) / lam, 1.0]),
        np.array([1.0, 1.0]),
    )


# ---------------------------------------------------------------------------
# configurations


def _supporting_normal(K: ConvexPolygon, q: np.ndarray, tol: float) -> np.ndarray:
    """Edge normal at an edge point; at a vertex, the bisector of its normal fan."""
    normals, offsets = halfplanes(K)
    touching = np.flatnonzero(np.abs(normals @ q - offsets) <= tol)
    if touching.size == 0:
        raise BadConfiguration(f"point {q.tolist()} is not on the boundary")
    n = normals[touching].sum(axis=0)
    return n / np.linalg.norm(n)


def normalize_sector(B: CenteredBody, u: PointLike, v: PointLike,
                     u_normal: Optional[PointLike] = None,
                     v_normal: Optional[PointLike] = None) -> SectorConfig:
    """Sector of B between boundary points u and v (counterclockwise), normalized."""
    K = B.translated()
    u = as_point(u) - B.centre
    v = as_point(v) - B.centre
    tol = CONTAINMENT_SLACK * diameter(K)

    for name, q in (("u", u), ("v", v)):
        if abs(boundary_distance(K, q)) > tol:
            raise BadConfiguration(f"{name} = {q.tolist()} is not on the boundary")
    if cross(u, v) <= DEGENERATE * np.linalg.norm(u) * np.linalg.norm(v):
        raise BadConfiguration("u and v must be linearly independent and counterclockwise")

    normals = []
    for q, given in ((u, u_normal), (v, v_normal)):
        if given is None:
            normals.append(_supporting_normal(K, q, tol))
            continue
        n = as_point(given)
        n = n / np.linalg.norm(n)
        if np.max(K.vertices @ n) > np.dot(n, q) + tol:
            raise BadConfiguration(f"normal {n.tolist()} does not support the body at {q.tolist()}")
        normals.append(n)

    lines = np.vstack(normals)
    if abs(np.linalg.det(lines)) <= DEGENERATE:
        raise BadConfiguration("supporting lines at u and v are parallel")
    p = np.linalg.solve(lines, np.array([np.dot(normals[0], u), np.dot(normals[1], v)]))

    to_normalized = LinearMap2.from_matrix(np.linalg.inv(np.column_stack((u, v))))
    lam, mu = (float(c) for c in to_normalized.apply(p))
    if lam <= 0 or mu <= 0 or lam + mu < 1.0 - 1e-9:
        raise BadConfiguration(f"segment [o, p] misses the chord [u, v] (lambda={lam:.6g}, mu={mu:.6g})")

    section = clip_sector(K, np.zeros(2), u, v)
    C = make_polygon(to_normalized.apply(section.vertices))
    return SectorConfig(u=u, v=v, lam=lam, mu=mu, C=C, to_normalized=to_normalized)


def section_config(lam: float, mu: float, extra: Iterable[PointLike] = ()) -> SectorConfig:
    """Normalized section hull{o, u, v, extra}; extra points must lie in [u, v, p]."""
    _check_pair(lam, mu)
    pts = [np.zeros(2), U, V] + [as_point(q) for q in extra]
    return SectorConfig(u=U.copy(), v=V.copy(), lam=lam, mu=mu, C=make_polygon(pts))


def random_section(rng: np.random.Generator, lam: float, mu: float,
                   alpha: Optional[float] = None, count: int = 3) -> SectorConfig:
    """Section with random points of [u, v, p]; alpha pins the largest height fraction."""
    if alpha is not None and not 0.0 <= alpha <= 1.0:
        raise InvalidParameter(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return section_config(lam, mu)

    weights = rng.dirichlet(np.ones(3), count)
    if alpha is not None:
        top = weights[:, 2].max()
        w_p = alpha * weights[:, 2] / top
        chord = weights[:, :2] / weights[:, :2].sum(axis=1, keepdims=True)
        weights = np.column_stack((chord * (1.0 - w_p)[:, None], w_p))
    p = np.array([lam, mu])
    pts = weights[:, 0:1] * U + weights[:, 1:2] * V + weights[:, 2:3] * p
    return section_config(lam, mu, pts)


# ---------------------------------------------------------------------------
# products and checks


def dual_section(cfg: SectorConfig) -> ConvexPolygon:
    """C* = [o, u*, p*, v*] cut by <c, q> <= 1 for every vertex c of C."""
    u_star, v_star, p_star = dual_points(cfg.lam, cfg.mu)
    quad = make_polygon([np.zeros(2), u_star, p_star, v_star])
    planes = [HalfPlane.from_normal(c, 1.0) for c in cfg.C.vertices if np.linalg.norm(c) > DEGENERATE]
    return clip_all(quad, planes)


def sector_product(cfg: SectorConfig) -> float:
    """|C| * |C*|; zero when p lies on the chord [u, v]."""
    if cfg.lam + cfg.mu - 1.0 <= DEGENERATE:
        return 0.0
    return area(cfg.C) * area(dual_section(cfg))


def alpha_of_section(cfg: SectorConfig) -> float:
    """Largest height of C above the chord [u, v] as a fraction of the height of p."""
    d = cfg.lam + cfg.mu - 1.0
    if d <= DEGENERATE:
        return 0.0
    heights = (cfg.C.vertices.sum(axis=1) - 1.0) / d
    return float(np.clip(heights.max(), 0.0, 1.0))


def lemma4_check(cfg: SectorConfig) -> SectorReport:
    product = sector_product(cfg)
    f = f_bound(cfg.lam, cfg.mu)
    g = g_bound(cfg.lam, cfg.mu)
    alpha = alpha_of_section(cfg)
    return SectorReport(
        product=product,
        bound_f=f,
        g=g,
        alpha=alpha,
        gamma=gamma(cfg.lam, cfg.mu),
        passed=product >= f + g * alpha * (1.0 - alpha) - 1e-9,
    )


def corollary5_thresholds(lam: float, mu: float, eps: float) -> Tuple[float, float]:
    """Roots of a^2 - a + (f/g) eps."""
    f = f_bound(lam, mu)
    g = g_bound(lam, mu)
    if f <= 0 or g <= 0 or not 0.0 < eps < g / (4.0 * f):
        raise InvalidParameter(f"eps must lie in (0, g/(4f)), got {eps}")
    r = np.sqrt(1.0 - (4.0 * f / g) * eps)
    return (1.0 - r) / 2.0, (1.0 + r) / 2.0


def _slack(cfg: SectorConfig) -> float:
    return CONTAINMENT_SLACK * diameter(cfg.C)


def _outer_corners(cfg: SectorConfig, factor: float) -> bool:
    slack = _slack(cfg)
    return all(contains(cfg.C, factor * q, slack) for q in (U, V, cfg.p))


def _require_product(cfg: SectorConfig, eps: float, product: float, f: float) -> None:
    if product > (1.0 + eps) * f + 1e-12:
        raise HypothesisViolated(
            f"sector product {product:.12g} exceeds (1 + eps) f = {(1.0 + eps) * f:.12g}",
            hypothesis="product",
        )


def lemma2_dichotomy(cfg: SectorConfig, eps: float) -> SectorReport:
    """Either C ⊆ (1+gamma eps)[o,u,v] or (1+gamma eps)^-1 [o,u,v,p] ⊆ C."""
    limit = min(cfg.lam, cfg.mu) / (cfg.lam + cfg.mu)
    if not 0.0 < eps < limit:
        raise InvalidParameter(f"eps must lie in (0, {limit:.6g}), got {eps}")
    product = sector_product(cfg)
    f = f_bound(cfg.lam, cfg.mu)
    _require_product(cfg, eps, product, f)

    c = gamma(cfg.lam, cfg.mu)
    factor = 1.0 + c * eps
    if np.all(cfg.C.vertices.sum(axis=1) <= factor + _slack(cfg)):
        branch = Dichotomy.INNER_CLOSE
    elif _outer_corners(cfg, 1.0 / factor):
        branch = Dichotomy.OUTER_CLOSE
    else:
        branch = Dichotomy.NEITHER

    return SectorReport(
        product=product,
        bound_f=f,
        g=g_bound(cfg.lam, cfg.mu),
        alpha=alpha_of_section(cfg),
        gamma=c,
        dichotomy=branch,
        eps=eps,
        passed=branch is not Dichotomy.NEITHER,
    )


def corollary5_check(cfg: SectorConfig, eps: float) -> Corollary5Report:
    """Containment form of the refined dichotomy with thresholds alpha_-, alpha_+."""
    alpha_minus, alpha_plus = corollary5_thresholds(cfg.lam, cfg.mu, eps)
    f = f_bound(cfg.lam, cfg.mu)
    _require_product(cfg, eps, sector_product(cfg), f)

    inner_scale = 1.0 + (cfg.lam + cfg.mu - 1.0) * alpha_minus
    outer_scale = alpha_plus + (1.0 - alpha_plus) * min((1.0 - cfg.lam) / cfg.mu, (1.0 - cfg.mu) / cfg.lam)
    if outer_scale <= 0:
        raise HypothesisViolated(f"outer scale {outer_scale:.6g} is not positive", hypothesis="outer_scale")

    return Corollary5Report(
        alpha_minus=alpha_minus,
        alpha_plus=alpha_plus,
        inner_scale=inner_scale,
        outer_scale=outer_scale,
        inner_holds=bool(np.all(cfg.C.vertices.sum(axis=1) <= inner_scale + _slack(cfg))),
        outer_holds=_outer_corners(cfg, outer_scale),
    )
