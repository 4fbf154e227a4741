"""
Stability verdicts for volume-product minimizers.

Each verifier measures how far a body's volume product sits above the
minimum for its class, builds a sandwich certificate against the matching
model, and checks the certified Banach-Mazur bound (and, where one is
known, the bound on the model's centre) against the claimed constants.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect, linprog

from config import TheoremId
from errors import (
    CentreNotInterior, HypothesisViolated, InvalidParameter,
    NoConvergence, NotSymmetric,
)
from geometry_core import (
    CONTAINMENT_SLACK, ConvexPolygon, HalfPlane, Point2, PointLike, apply_map,
    area, as_point, boundary_distance, central_symmetral, centroid, clip_all,
    clip_sector, contains_polygon, diameter, halfplanes, is_nfold_symmetric,
    is_symmetric, make_polygon, support, translate,
)
from polarity import CenteredBody, eggleston_product, polar, polar_area_at, volume_product
from canonical import (
    Model, ModelKind, SandwichCertificate, bumped_ngon, canonical_model, circumscribed_model,
    inscribed_triangle_search, ngon_product, normalizing_map, regular_ngon, sandwich,
)
from santalo import santalo_point


VERDICT_TOL = 1e-9
REGULARITY_TOL = 1e-9
BRACKET_LIMIT = 60

# body constant c in  d_BM <= 1 + c * eps
BODY_CONSTANTS = {
    TheoremId.T1: 200.0,
    TheoremId.T2: 900.0,
    TheoremId.T5: 18.0,
    TheoremId.T6: 87.0,
}

# centre constant c' in  ||centre|| <= c' * sqrt(eps)
CENTRE_CONSTANTS = {
    TheoremId.T1: 336.0,
    TheoremId.T2: 917.0,
    TheoremId.T5: 263.0,
}


@dataclass(frozen=True)
class TheoremVerdict:
    """Outcome of one stability check.

    passed implies bm_upper <= claimed + 1e-9 and, when a centre bound was
    checked, centre_distance <= centre_claimed + 1e-9.
    """
    theorem: TheoremId
    eps: float
    bm_upper: float
    claimed: float
    centre_distance: Optional[float] = None
    centre_claimed: Optional[float] = None
    passed: bool = False
    diagnostics: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class CentreStabilityConstants:
    eps1: float
    c1: float
    c2: float


@dataclass(frozen=True)
class Lemma6Report:
    santalo_gap: float
    santalo_bound: float
    centre_gap: Optional[float]
    centre_bound: Optional[float]
    shift: Tuple[float, float]
    passed: bool


@dataclass(frozen=True)
class Lemma7Report:
    alphas: Tuple[float, float, float]
    alpha: float
    product: float
    bound: float
    chain: Tuple[float, ...]
    inner_area: float
    inner_area_formula: float
    outer_polar_area: float
    outer_polar_area_formula: float
    passed: bool

    def verdict(self) -> TheoremVerdict:
        return TheoremVerdict(
            theorem=TheoremId.L7,
            eps=self.product / 6.0 - 1.0,
            bm_upper=self.bound / self.product,
            claimed=1.0,
            passed=self.passed,
            diagnostics={
                "alpha": self.alpha,
                **{f"chain_{i}": v for i, v in enumerate(self.chain)},
            },
        )


@dataclass(frozen=True)
class Example2Result:
    n: int
    eps: float
    offset: float
    lower: float
    passed: bool


# ---------------------------------------------------------------------------
# helpers


def _within(value: float, bound: float) -> bool:
    return bool(value <= bound + VERDICT_TOL)


def _model_scale(model: Model) -> float:
    """Factor taking the canonical model to unit diameter (square) or unit side (triangle)."""
    if model.kind is ModelKind.PARALLELOGRAM:
        return 1.0 / (2.0 * np.sqrt(2.0))
    if model.kind is ModelKind.TRIANGLE:
        return 1.0 / np.sqrt(3.0)
    return 1.0 / diameter(canonical_model(model))


def centre_norm_map(cert: SandwichCertificate) -> np.ndarray:
    """Linear map sending ((lambda1+lambda2)/2) M to the normalized model."""
    mean = 0.5 * (cert.lambda1 + cert.lambda2)
    return _model_scale(cert.model) * np.linalg.inv(cert.map.matrix) / mean


def _verdict(theorem: TheoremId, eps: float, cert: SandwichCertificate,
             origin: Point2, limit: Optional[float],
             diagnostics: Optional[Dict[str, float]] = None) -> TheoremVerdict:
    """Compare the certified ratio (and centre, when the ratio is small enough) with the claim."""
    eps_eff = max(eps, 0.0)
    claimed = 1.0 + BODY_CONSTANTS[theorem] * eps_eff
    passed = _within(cert.ratio, claimed)

    distance = centre_claimed = None
    if limit is not None and _within(cert.ratio, claimed) and claimed < limit:
        B = centre_norm_map(cert)
        distance = float(np.linalg.norm(B @ (cert.x - origin)))
        centre_claimed = CENTRE_CONSTANTS[theorem] * np.sqrt(eps_eff)
        passed = passed and _within(distance, centre_claimed)

    return TheoremVerdict(
        theorem=theorem,
        eps=eps,
        bm_upper=cert.ratio,
        claimed=claimed,
        centre_distance=distance,
        centre_claimed=centre_claimed,
        passed=passed,
        diagnostics=dict(diagnostics or {}),
    )


# ---------------------------------------------------------------------------
# stability of an arithmetic-geometric mean gap


def agm_stability_check(values: Sequence[float], eps: float) -> bool:
    """If AM <= (1 + eps) GM then every ratio a_i / a_j is at least 1 - 2 sqrt(n eps)."""
    a = np.asarray(values, dtype=float)
    if a.ndim != 1 or len(a) < 2:
        raise InvalidParameter("need at least two values")
    if np.any(a <= 0):
        raise InvalidParameter("values must be positive")
    if eps < 0:
        raise InvalidParameter(f"eps must be non-negative, got {eps}")
    am = float(np.mean(a))
    gm = float(np.exp(np.mean(np.log(a))))
    if am > (1.0 + eps) * gm * (1.0 + 1e-12):
        raise InvalidParameter(f"AM/GM = {am / gm:.12g} exceeds 1 + eps = {1.0 + eps:.12g}")
    floor = 1.0 - 2.0 * np.sqrt(len(a) * eps)
    return bool(a.min() / a.max() >= floor - VERDICT_TOL)


# ---------------------------------------------------------------------------
# Santalo point stability


def centre_constants(K0: ConvexPolygon) -> CentreStabilityConstants:
    d = diameter(K0)
    vol = area(K0)
    return CentreStabilityConstants(
        eps1=min(0.5, vol / (32.0 * np.pi ** 2 * d ** 2)),
        c1=2.0 * np.pi ** 4 * d ** 9 * vol ** -4,
        c2=4.0 * np.sqrt(2.0 / (3.0 * np.pi)) * d ** 2 * vol ** -0.5,
    )


def _homothety_shift(K0: ConvexPolygon, K: ConvexPolygon, eps1: float) -> np.ndarray:
    """Smallest |(a + b) / 2|_1 over a, b with (1-eps1) K0 + a ⊆ K ⊆ (1+eps1) K0 + b.

    Variables are [a, b, t] with t bounding |(a + b) / 2| coordinatewise.
    """
    nu, b_k = halfplanes(K)
    nm, c0 = halfplanes(K0)

    # (1 - eps1) k + a ∈ K for every vertex k of K0
    rows_a = np.hstack((np.tile(nu, (len(K0), 1)), np.zeros((len(K0) * len(nu), 4))))
    rhs_a = (b_k[None, :] - (1.0 - eps1) * (K0.vertices @ nu.T)).ravel()

    # w - b ∈ (1 + eps1) K0 for every vertex w of K
    rows_b = np.hstack((np.zeros((len(K) * len(nm), 2)), -np.tile(nm, (len(K), 1)),
                        np.zeros((len(K) * len(nm), 2))))
    rhs_b = ((1.0 + eps1) * c0[None, :] - K.vertices @ nm.T).ravel()

    half = 0.5 * np.eye(2)
    rows_t = np.vstack((
        np.hstack((half, half, -np.eye(2))),
        np.hstack((-half, -half, -np.eye(2))),
    ))

    res = linprog(
        c=np.array([0.0, 0.0, 0.0, 0.0, 1.0, 1.0]),
        A_ub=np.vstack((rows_a, rows_b, rows_t)),
        b_ub=np.concatenate((rhs_a, rhs_b, np.zeros(4))),
        bounds=[(None, None)] * 4 + [(0, None)] * 2,
        method="highs",
    )
    if res.status != 0:
        raise HypothesisViolated(
            f"no translates give (1-{eps1:g}) K0 ⊆ K ⊆ (1+{eps1:g}) K0",
            hypothesis="homothety",
        )
    return 0.5 * (res.x[:2] + res.x[2:4])


def lemma6_check(K0: ConvexPolygon, K: ConvexPolygon, eps1: float,
                 c: Optional[PointLike] = None, eps2: Optional[float] = None) -> Lemma6Report:
    """Santalo point and near-minimizing centre bounds for K close to K0.

    K0 is compared through the translate K0 + (a + b)/2 fixed by the
    homothety hypothesis.
    """
    consts = centre_constants(K0)
    if not 0.0 <= eps1 <= consts.eps1:
        raise InvalidParameter(f"eps1 must lie in [0, {consts.eps1:.6g}], got {eps1}")

    shift = _homothety_shift(K0, K, eps1)
    s0_point = santalo_point(K0)
    s0 = s0_point.point + shift
    sk = santalo_point(K)

    santalo_gap = float(np.linalg.norm(sk.point - s0))
    santalo_bound = consts.c1 * eps1
    passed = _within(santalo_gap, santalo_bound)

    centre_gap = centre_bound = None
    if c is not None:
        if eps2 is None or eps2 < 0:
            raise InvalidParameter("a centre check needs eps2 >= 0")
        c = as_point(c)
        try:
            body = CenteredBody(K, c)
        except CentreNotInterior as e:
            raise HypothesisViolated(str(e), hypothesis="centre")
        p0 = area(K0) * s0_point.polar_area_at_min
        pk = area(K) * sk.polar_area_at_min
        pc = volume_product(body).product
        if p0 > pk * (1.0 + VERDICT_TOL):
            raise HypothesisViolated(
                f"P(K0) = {p0:.12g} exceeds P(K) = {pk:.12g}", hypothesis="minimality"
            )
        if pc > (p0 + eps2) * (1.0 + VERDICT_TOL) or p0 + eps2 > np.pi ** 2:
            raise HypothesisViolated(
                f"P(K, c) = {pc:.12g} not within {p0:.12g} + {eps2:g} <= pi^2",
                hypothesis="near_minimal",
            )
        centre_gap = float(np.linalg.norm(c - s0))
        centre_bound = consts.c1 * eps1 + consts.c2 * np.sqrt(eps2)
        passed = passed and _within(centre_gap, centre_bound)

    return Lemma6Report(
        santalo_gap=santalo_gap,
        santalo_bound=santalo_bound,
        centre_gap=centre_gap,
        centre_bound=centre_bound,
        shift=(float(shift[0]), float(shift[1])),
        passed=passed,
    )


# ---------------------------------------------------------------------------
# theorem verifiers


def verify_theorem1(K: ConvexPolygon) -> TheoremVerdict:
    """o-symmetric bodies against the square, product at o."""
    if not is_symmetric(K):
        raise NotSymmetric("body is not o-symmetric")
    product = volume_product(CenteredBody.at_origin(K)).product
    eps = product / 8.0 - 1.0
    cert = sandwich(K, Model.parallelogram())
    return _verdict(TheoremId.T1, eps, cert, np.zeros(2), limit=2.0,
                    diagnostics={"product": product})


def verify_theorem2(K: ConvexPolygon, centre: Optional[PointLike] = None) -> TheoremVerdict:
    """Arbitrary bodies against the triangle, product at the Santalo point or a given centre."""
    if centre is None:
        centre = santalo_point(K).point
    body = CenteredBody(K, centre)
    product = volume_product(body).product
    eps = product / 6.75 - 1.0
    cert = sandwich(K, Model.triangle())
    return _verdict(TheoremId.T2, eps, cert, body.centre, limit=4.0,
                    diagnostics={"product": product, "non_unique": float(cert.non_unique)})


def verify_theorem5(K: ConvexPolygon, n: int) -> TheoremVerdict:
    """n-fold symmetric bodies against R_n, product at o."""
    if n < 3:
        raise InvalidParameter(f"n must be at least 3, got {n}")
    if not is_nfold_symmetric(K, n):
        raise NotSymmetric(f"body is not {n}-fold rotationally symmetric about o")
    product = volume_product(CenteredBody.at_origin(K)).product
    eps = product / ngon_product(n) - 1.0
    cert = sandwich(K, Model.regular(n))
    return _verdict(TheoremId.T5, eps, cert, np.zeros(2), limit=1.0 / np.cos(np.pi / n),
                    diagnostics={"product": product, "n": float(n)})


def theorem6_alpha_bound(eps: float) -> float:
    """Smaller root (1 - sqrt(1 - 16 eps)) / 2 of alpha (1 - alpha) = 4 eps."""
    if not 0.0 <= eps <= 1.0 / 16.0:
        raise InvalidParameter(f"eps must lie in [0, 1/16], got {eps}")
    return 0.5 * (1.0 - np.sqrt(1.0 - 16.0 * eps))


def verify_theorem6(K: ConvexPolygon) -> TheoremVerdict:
    """Eggleston quantity |K| |((K-K)/2)*| against the triangle."""
    product = eggleston_product(K)
    eps = product / 6.0 - 1.0
    cert = sandwich(K, Model.triangle())
    diagnostics = {"product": product}
    # rounding can leave the triangle a hair below 6
    if -1e-12 <= eps <= 1.0 / 28.8:
        alpha_bound = theorem6_alpha_bound(max(eps, 0.0))
        diagnostics["alpha_bound"] = alpha_bound
        diagnostics["alpha_ratio_bound"] = 1.0 + 18.0 * alpha_bound
    return _verdict(TheoremId.T6, eps, cert, np.zeros(2), limit=None, diagnostics=diagnostics)


def _is_regular(P: ConvexPolygon) -> bool:
    c = centroid(P)
    radii = np.linalg.norm(P.vertices - c, axis=1)
    sides = np.linalg.norm(P.edges, axis=1)
    return bool(np.ptp(radii) <= REGULARITY_TOL * radii.max()
                and np.ptp(sides) <= REGULARITY_TOL * sides.max())


def _incidence_chain(K: ConvexPolygon, Ki: ConvexPolygon, Ko: ConvexPolygon,
                     product: float) -> Dict[str, float]:
    """Sector-by-sector lower chain, all bodies already centred at the origin."""
    n = len(Ki)
    normals, d_all = halfplanes(Ko)

    # side of K_o carrying each vertex of K_i
    residual = np.abs(Ki.vertices @ normals.T - d_all[None, :])
    side = np.argmin(residual, axis=1)
    order = np.argsort(side)
    X = Ki.vertices[order]
    Y = Ko.vertices
    d = d_all

    X_prev = np.roll(X, 1, axis=0)
    a = np.linalg.norm(X_prev - Y, axis=1)
    b = np.linalg.norm(X - Y, axis=1)
    d_prev = np.roll(d, 1)

    K_star = polar(CenteredBody.at_origin(K))
    y_star = normals / d[:, None]
    y_star_prev = np.roll(y_star, 1, axis=0)

    products = np.empty(n)
    for j in range(n):
        C = clip_sector(K, np.zeros(2), X_prev[j], X[j])
        C_star = clip_sector(K_star, np.zeros(2), y_star_prev[j], y_star[j])
        products[j] = area(C) * area(C_star)

    s2 = np.sin(2.0 * np.pi / n)
    bounds = (a * d_prev + b * d) * s2 / (4.0 * d_prev * d)
    side_len = float(np.mean(a + b))

    return {
        "chain_0": product,
        "chain_1": n * n * float(np.exp(np.mean(np.log(products)))),
        "chain_2": n * n * float(np.exp(np.mean(np.log(4.0 * bounds / s2)))) * s2 / 4.0,
        "chain_3": n * n * side_len * s2 / 4.0 * float(np.exp(-np.mean(np.log(d)))),
        "chain_4": n ** 3 * side_len * s2 / (4.0 * float(np.sum(d))),
        "sector_margin": float(np.min(products / bounds)),
    }


def verify_theorem3(K: ConvexPolygon, Ki: ConvexPolygon, Ko: ConvexPolygon,
                    centre: PointLike) -> TheoremVerdict:
    """Regular K_i ⊆ K ⊆ K_o with the vertices of K_i on the sides of K_o.

    The verdict reports bm_upper = n^2 sin^2(pi/n) / P(K, centre) against
    claimed = 1, so passing means the product is at least the regular value.
    """
    n = len(Ki)
    if len(Ko) != n or not (_is_regular(Ki) and _is_regular(Ko)):
        raise HypothesisViolated("K_i and K_o must be regular n-gons with the same n", hypothesis="regular")

    slack = CONTAINMENT_SLACK * diameter(Ko)
    normals, offsets = halfplanes(Ko)
    residual = np.abs(Ki.vertices @ normals.T - offsets[None, :])
    on_side = residual.min(axis=1)
    if np.any(on_side > slack) or len(set(np.argmin(residual, axis=1).tolist())) != n:
        raise HypothesisViolated("each vertex of K_i must lie on its own side of K_o", hypothesis="incidence")
    if not contains_polygon(K, Ki, slack):
        raise HypothesisViolated("K_i is not contained in K", hypothesis="inner")
    if not contains_polygon(Ko, K, slack):
        raise HypothesisViolated("K is not contained in K_o", hypothesis="outer")

    centre = as_point(centre)
    try:
        body = CenteredBody(K, centre)
    except CentreNotInterior as e:
        raise HypothesisViolated(str(e), hypothesis="centre")

    product = volume_product(body).product
    bound = ngon_product(n)
    passed = bool(product >= bound * (1.0 - VERDICT_TOL))

    diagnostics: Dict[str, float] = {"product": product}
    if boundary_distance(Ki, centre) > slack:
        chain = _incidence_chain(
            translate(K, -centre), translate(Ki, -centre), translate(Ko, -centre), product
        )
        diagnostics.update(chain)
        links = [chain[f"chain_{i}"] for i in range(5)]
        monotone = all(hi >= lo * (1.0 - VERDICT_TOL) for hi, lo in zip(links, links[1:]))
        passed = passed and monotone and bool(chain["sector_margin"] >= 1.0 - VERDICT_TOL)

    return TheoremVerdict(
        theorem=TheoremId.T3,
        eps=product / bound - 1.0,
        bm_upper=bound / product,
        claimed=1.0,
        passed=passed,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# Eggleston lower bound


def lemma7_check(K: ConvexPolygon, inner: Optional[ConvexPolygon] = None) -> Lemma7Report:
    """Chain |K||((K-K)/2)*| >= 6 + 1.5 alpha (1 - alpha).

    inner defaults to the maximal inscribed triangle; an explicit triangle
    must satisfy inner ⊆ K ⊆ its midpoint-circumscribed triangle.
    """
    if inner is None:
        inner = inscribed_triangle_search(K).polygon
    elif len(inner) != 3:
        raise InvalidParameter(f"inner must be a triangle, got {len(inner)} vertices")
    outer = circumscribed_model(inner, Model.triangle())
    slack = CONTAINMENT_SLACK * diameter(outer)
    if not contains_polygon(K, inner, slack):
        raise HypothesisViolated("inner triangle is not contained in K", hypothesis="inner")
    if not contains_polygon(outer, K, slack):
        raise HypothesisViolated("K is not contained in the circumscribed triangle", hypothesis="outer")

    target = regular_ngon(3, 2.0 / np.sqrt(3.0), np.pi / 2)
    A = normalizing_map(outer, target)

    body = apply_map(K, A)
    corners = apply_map(outer, A).vertices
    mids = 0.5 * (np.roll(corners, -1, axis=0) + np.roll(corners, 1, axis=0))

    alphas = []
    far_points = []
    cuts = []
    for i, apex in enumerate(corners):
        u = apex / np.linalg.norm(apex)
        base = float(u @ np.roll(corners, -1, axis=0)[i] + u @ apex) / 2.0
        reach = support(body, u)
        alphas.append(float(np.clip((reach - base) / (float(u @ apex) - base), 0.0, 1.0)))
        far_points.append(body.vertices[int(np.argmax(body.vertices @ u))])
        cuts.append(HalfPlane.from_normal(u, reach))

    alpha = float(np.mean(alphas))
    hexagon = make_polygon(np.vstack((mids, np.array(far_points))))
    inner_area = area(hexagon)
    inner_formula = np.sqrt(3.0) / 4.0 * (1.0 + sum(alphas))

    trimmed = clip_all(apply_map(outer, A), cuts)
    outer_polar = area(polar(CenteredBody.at_origin(central_symmetral(trimmed))))
    inv = [1.0 / (1.0 + a) for a in alphas]
    outer_formula = (2.0 * (4.0 / np.sqrt(3.0)) ** 2
                     * sum(p * q for p, q in combinations(inv, 2))
                     * np.sin(np.pi / 3.0) / 2.0)

    product = eggleston_product(K)
    chain = (
        product,
        inner_area * outer_polar,
        2.0 * (1.0 + 3.0 * alpha) * (3.0 + 3.0 * alpha) * float(np.prod(inv)),
        6.0 * (1.0 + 3.0 * alpha) / (1.0 + alpha) ** 2,
        6.0 + 1.5 * alpha * (1.0 - alpha),
    )
    monotone = all(hi >= lo * (1.0 - VERDICT_TOL) for hi, lo in zip(chain, chain[1:]))

    return Lemma7Report(
        alphas=(alphas[0], alphas[1], alphas[2]),
        alpha=alpha,
        product=product,
        bound=chain[-1],
        chain=chain,
        inner_area=inner_area,
        inner_area_formula=inner_formula,
        outer_polar_area=outer_polar,
        outer_polar_area_formula=outer_formula,
        passed=monotone,
    )


# ---------------------------------------------------------------------------
# sharpness of the centre exponent


def _unit_diameter_ngon(n: int) -> ConvexPolygon:
    R = regular_ngon(n)
    return regular_ngon(n, 1.0 / diameter(R))


def example2_centre_lower(n: int, eps: float, direction: Optional[PointLike] = None,
                          rtol: float = 1e-6) -> Example2Result:
    """Offset t along direction with P(R_n, t*direction) = (1 + eps) n^2 sin^2(pi/n).

    R_n is scaled to unit diameter; the offset should reach at least
    sqrt(eps) sqrt(2) / (16 pi) or 1 / (4 sqrt(3)).
    """
    if n < 3:
        raise InvalidParameter(f"n must be at least 3, got {n}")
    if eps <= 0:
        raise InvalidParameter(f"eps must be positive, got {eps}")
    K = _unit_diameter_ngon(n)
    u = as_point((0.0, 1.0) if direction is None else direction)
    norm = np.linalg.norm(u)
    if norm == 0:
        raise InvalidParameter("direction must be non-zero")
    u = u / norm

    normals, offsets = halfplanes(K)
    facing = normals @ u
    reach = float(np.min(offsets[facing > 0] / facing[facing > 0]))
    vol = area(K)
    target = (1.0 + eps) * ngon_product(n)

    def excess(t: float) -> float:
        return vol * polar_area_at(K, t * u) - target

    hi = None
    for k in range(1, BRACKET_LIMIT + 1):
        candidate = reach * (1.0 - 2.0 ** -k)
        if excess(candidate) > 0:
            hi = candidate
            break
    if hi is None:
        raise NoConvergence(f"no bracket for eps={eps} on R_{n}", iterations=BRACKET_LIMIT, residual=float("nan"))

    try:
        t = float(bisect(excess, 0.0, hi, rtol=rtol, xtol=1e-15, maxiter=200))
    except RuntimeError as e:
        raise NoConvergence(str(e), iterations=200, residual=float("nan"))

    lower = np.sqrt(eps) * np.sqrt(2.0) / (16.0 * np.pi)
    return Example2Result(
        n=n,
        eps=eps,
        offset=t,
        lower=lower,
        passed=bool(t >= lower or t >= 1.0 / (4.0 * np.sqrt(3.0))),
    )


def example2_exponent(n: int, eps_values: Sequence[float]) -> float:
    """Fitted exponent of offset ~ eps^k; near 1/2 for small eps."""
    if len(eps_values) < 2:
        raise InvalidParameter("need at least two eps values")
    offsets = [example2_centre_lower(n, e).offset for e in eps_values]
    slope, _ = np.polyfit(np.log(np.asarray(eps_values, dtype=float)), np.log(offsets), 1)
    return float(slope)


def bumped_excess_slope(n: int, bumps: Sequence[float]) -> float:
    """Slope of P(bumped R_n)/P(R_n) - 1 against the bump size; 1 at the origin."""
    if len(bumps) < 2:
        raise InvalidParameter("need at least two bump sizes")
    base = ngon_product(n)
    excess = [volume_product(CenteredBody.at_origin(bumped_ngon(n, e))).product / base - 1.0 for e in bumps]
    slope, _ = np.polyfit(np.asarray(bumps, dtype=float), np.asarray(excess), 1)
    return float(slope)
