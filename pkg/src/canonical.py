"""
Canonical and near-extremal bodies, inscribed/circumscribed model pairs,
sandwich certificates and seeded random bodies.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from errors import DegenerateInput, InvalidParameter, NotSymmetric
from geometry_core import (
    CONTAINMENT_SLACK, ConvexPolygon, LinearMap2, Point2, PointLike,
    as_point, centroid, contains, contains_polygon, cross, diameter, halfplanes,
    is_nfold_symmetric, is_symmetric, make_polygon,
)


TIE_TOL = 1e-9
RESAMPLE_LIMIT = 64
MIN_WIDTH_RATIO = 0.1


class ModelKind(Enum):
    PARALLELOGRAM = "parallelogram"
    TRIANGLE = "triangle"
    REGULAR_NGON = "regular_ngon"


class Symmetry(Enum):
    NONE = "none"
    CENTRAL = "central"
    NFOLD = "nfold"


@dataclass(frozen=True)
class Model:
    """Canonical comparison body: parallelogram, triangle or regular n-gon."""
    kind: ModelKind
    n: Optional[int] = None

    @classmethod
    def parallelogram(cls) -> "Model":
        return cls(ModelKind.PARALLELOGRAM)

    @classmethod
    def triangle(cls) -> "Model":
        return cls(ModelKind.TRIANGLE)

    @classmethod
    def regular(cls, n: int) -> "Model":
        if n < 3:
            raise InvalidParameter(f"regular model needs n >= 3, got {n}")
        return cls(ModelKind.REGULAR_NGON, n)

    @property
    def sides(self) -> int:
        if self.kind is ModelKind.PARALLELOGRAM:
            return 4
        if self.kind is ModelKind.TRIANGLE:
            return 3
        return int(self.n)

    @property
    def ratio_guarantee(self) -> float:
        """Upper bound on the sandwich ratio the construction certifies."""
        if self.kind is ModelKind.PARALLELOGRAM:
            return 2.0
        if self.kind is ModelKind.TRIANGLE:
            return 4.0
        return 1.0 / np.cos(np.pi / self.n) ** 2

    def __str__(self) -> str:
        if self.kind is ModelKind.REGULAR_NGON:
            return f"regular_{self.n}gon"
        return self.kind.value


@dataclass(frozen=True, eq=False)
class SandwichCertificate:
    """lambda1 * M + x  ⊆  K  ⊆  lambda2 * M + x, with M = map(canonical model)."""
    inner: ConvexPolygon
    outer: ConvexPolygon
    model: Model
    lambda1: float
    lambda2: float
    x: Point2
    map: LinearMap2
    shape: str = "inner"
    non_unique: bool = False

    @property
    def ratio(self) -> float:
        return self.lambda2 / self.lambda1


@dataclass(frozen=True, eq=False)
class InscribedTriangle:
    polygon: ConvexPolygon
    indices: Tuple[int, int, int]
    area: float
    non_unique: bool


# ---------------------------------------------------------------------------
# canonical bodies


def regular_ngon(n: int, circumradius: float = 1.0, phase: float = 0.0,
                 centre: Optional[PointLike] = None) -> ConvexPolygon:
    if n < 3:
        raise InvalidParameter(f"regular polygon needs n >= 3, got {n}")
    if circumradius <= 0:
        raise InvalidParameter(f"circumradius must be positive, got {circumradius}")
    angles = phase + 2.0 * np.pi * np.arange(n) / n
    pts = circumradius * np.column_stack((np.cos(angles), np.sin(angles)))
    if centre is not None:
        pts = pts + as_point(centre)
    return make_polygon(pts)


def bump_limit(n: int) -> float:
    """Largest bump keeping the 2n-gon convex: 1/cos^2(pi/n) - 1."""
    return 1.0 / np.cos(np.pi / n) ** 2 - 1.0


def bumped_ngon(n: int, eps: float) -> ConvexPolygon:
    """Vertices of R_n (circumradius 1) interleaved with (1+eps) times its side midpoints."""
    if n < 3:
        raise InvalidParameter(f"bumped polygon needs n >= 3, got {n}")
    if eps < 0 or eps > bump_limit(n) * (1.0 + 1e-12):
        raise InvalidParameter(f"eps must lie in [0, {bump_limit(n):.6g}] for n={n}, got {eps}")
    angles = 2.0 * np.pi * np.arange(n) / n
    corners = np.column_stack((np.cos(angles), np.sin(angles)))
    mids = 0.5 * (corners + np.roll(corners, -1, axis=0)) * (1.0 + eps)
    return make_polygon(np.vstack((corners, mids)))


def bumped_product_closed_form(n: int, eps: float) -> float:
    base = n * n * np.sin(np.pi / n) ** 2
    return base * (1.0 + (eps - eps * eps / np.tan(np.pi / n) ** 2) / (1.0 + eps))


def bumped_eggleston_closed_form(eps: float) -> float:
    """Eggleston quantity of the bumped triangle."""
    return 6.0 * (9.0 + 15.0 * eps + 3.0 * eps ** 2 - 3.0 * eps ** 3) / (3.0 + eps) ** 2


def ngon_product(n: int) -> float:
    """|R_n| * |R_n*| = n^2 sin^2(pi/n)."""
    return n * n * np.sin(np.pi / n) ** 2


def incidence_pair(n: int, t: float = 0.5, circumradius: float = 1.0,
                   centre: Optional[PointLike] = None,
                   phase: float = 0.0) -> Tuple[ConvexPolygon, ConvexPolygon]:
    """Regular n-gons (K_i, K_o) with vertex j of K_i at (1-t) y_j + t y_{j+1} on side j of K_o."""
    if not 0.0 < t < 1.0:
        raise InvalidParameter(f"incidence parameter must lie in (0, 1), got {t}")
    outer = regular_ngon(n, circumradius, phase, centre)
    angles = phase + 2.0 * np.pi * np.arange(n) / n
    y = circumradius * np.column_stack((np.cos(angles), np.sin(angles)))
    x = (1.0 - t) * y + t * np.roll(y, -1, axis=0)
    if centre is not None:
        x = x + as_point(centre)
    return make_polygon(x), outer


def canonical_model(model: Model) -> ConvexPolygon:
    """Square [-1,1]^2, regular triangle of circumradius 1, or R_n of circumradius 1."""
    if model.kind is ModelKind.PARALLELOGRAM:
        return make_polygon([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])
    if model.kind is ModelKind.TRIANGLE:
        return regular_ngon(3, 1.0, np.pi / 2)
    return regular_ngon(model.n, 1.0, 0.0)


# ---------------------------------------------------------------------------
# maximal inscribed bodies


def inscribed_triangle_search(K: ConvexPolygon) -> InscribedTriangle:
    """Exhaustive search over vertex triples.

    Triangle area is affine in each vertex, so some maximizer has all three
    vertices at vertices of K. The first maximal triple in lexicographic
    index order wins; other triples within TIE_TOL flag non-uniqueness.
    """
    V = K.vertices
    triples = np.array(list(combinations(range(len(V)), 3)))
    a, b, c = V[triples[:, 0]], V[triples[:, 1]], V[triples[:, 2]]
    areas = 0.5 * np.abs(cross(b - a, c - a))
    best = float(areas.max())
    ties = np.flatnonzero(areas >= best * (1.0 - TIE_TOL))
    i, j, k = (int(v) for v in triples[ties[0]])
    return InscribedTriangle(
        polygon=make_polygon(V[[i, j, k]]),
        indices=(i, j, k),
        area=best,
        non_unique=len(ties) > 1,
    )


def max_area_inscribed_triangle(K: ConvexPolygon) -> ConvexPolygon:
    return inscribed_triangle_search(K).polygon


def max_area_inscribed_symmetric_parallelogram(K: ConvexPolygon) -> ConvexPolygon:
    """Parallelogram with vertices +-p, +-q on the boundary maximizing 2|det(p, q)|."""
    if not is_symmetric(K):
        raise NotSymmetric("inscribed o-symmetric parallelogram needs an o-symmetric body")
    V = K.vertices
    dets = np.abs(cross(V[:, None, :], V[None, :, :]))
    i, j = np.unravel_index(int(np.argmax(dets)), dets.shape)
    p, q = V[i], V[j]
    return make_polygon(np.array([p, q, -p, -q]))


def circumscribed_model(inner: ConvexPolygon, model: Model) -> ConvexPolygon:
    """Circumscribed model whose side midpoints are the vertices of inner."""
    V = inner.vertices
    if model.kind is ModelKind.PARALLELOGRAM:
        p, q = V[0], V[1]
        return make_polygon(np.array([p + q, q - p, -p - q, p - q]))
    if model.kind is ModelKind.TRIANGLE:
        a, b, c = V
        return make_polygon(np.array([b + c - a, c + a - b, a + b - c]))
    raise InvalidParameter(f"no midpoint construction for {model}")


def inner_outer(K: ConvexPolygon, model: Model) -> Tuple[ConvexPolygon, ConvexPolygon, bool]:
    """(K_i, K_o, non_unique) with K_i ⊆ K ⊆ K_o."""
    if model.kind is ModelKind.PARALLELOGRAM:
        inner = max_area_inscribed_symmetric_parallelogram(K)
        return inner, circumscribed_model(inner, model), False
    if model.kind is ModelKind.TRIANGLE:
        found = inscribed_triangle_search(K)
        return found.polygon, circumscribed_model(found.polygon, model), found.non_unique

    n = model.n
    if not is_nfold_symmetric(K, n):
        raise NotSymmetric(f"body is not {n}-fold rotationally symmetric about o")
    norms = np.linalg.norm(K.vertices, axis=1)
    far = K.vertices[int(np.argmax(norms))]
    radius = float(norms.max())
    phase = float(np.arctan2(far[1], far[0]))
    inner = regular_ngon(n, radius, phase)
    outer = regular_ngon(n, radius / np.cos(np.pi / n), phase + np.pi / n)
    return inner, outer, False


# ---------------------------------------------------------------------------
# sandwich


def _linear_part(canonical: ConvexPolygon, shape: ConvexPolygon) -> np.ndarray:
    """Matrix sending two consecutive canonical vertices onto two consecutive shape vertices."""
    W = np.column_stack((canonical.vertices[0], canonical.vertices[1]))
    S = np.column_stack((shape.vertices[0], shape.vertices[1]))
    return S @ np.linalg.inv(W)


def _homothety_lp(K: ConvexPolygon, M: ConvexPolygon) -> np.ndarray:
    """Translation witness x minimizing lambda2/lambda1 for M + y ⊆ sK ⊆ rM + y."""
    nu, b = halfplanes(K)
    nm, c = halfplanes(M)

    # M + y ⊆ sK
    rows_in = np.column_stack((
        np.zeros(nu.shape[0] * len(M)),
        np.tile(-b, len(M)),
        np.tile(nu, (len(M), 1)),
    ))
    rhs_in = -(M.vertices @ nu.T).ravel()

    # sK ⊆ rM + y
    rows_out = np.column_stack((
        np.tile(-c, len(K)),
        (K.vertices @ nm.T).ravel(),
        -np.tile(nm, (len(K), 1)),
    ))
    rhs_out = np.zeros(rows_out.shape[0])

    res = linprog(
        c=[1.0, 0.0, 0.0, 0.0],
        A_ub=np.vstack((rows_in, rows_out)),
        b_ub=np.concatenate((rhs_in, rhs_out)),
        bounds=[(0, None), (0, None), (None, None), (None, None)],
        method="highs",
    )
    if res.status != 0 or res.x[1] <= 0:
        raise DegenerateInput(f"homothety program failed: {res.message}")
    return res.x[2:] / res.x[1]


def _exact_lambdas(K: ConvexPolygon, M: ConvexPolygon, x: np.ndarray) -> Tuple[float, float]:
    """Largest lambda1 and smallest lambda2 with lambda1 M + x ⊆ K ⊆ lambda2 M + x."""
    nu, b = halfplanes(K)
    h_m = np.max(nu @ M.vertices.T, axis=1)
    lambda1 = float(np.min((b - nu @ x) / h_m))
    nm, c = halfplanes(M)
    h_k = np.max(nm @ K.vertices.T, axis=1)
    lambda2 = float(np.max((h_k - nm @ x) / c))
    return lambda1, lambda2


def _centred(P: ConvexPolygon) -> ConvexPolygon:
    return ConvexPolygon(P.vertices - centroid(P))


def normalizing_map(P: ConvexPolygon, target: ConvexPolygon) -> LinearMap2:
    """Affine map taking P onto an affine image target of it, centroid to centroid."""
    forward = LinearMap2.from_matrix(_linear_part(_centred(target), _centred(P)))
    linear = forward.inverse()
    return LinearMap2.from_matrix(linear.matrix, centroid(target) - linear.matrix @ centroid(P))


def sandwich(K: ConvexPolygon, model: Model) -> SandwichCertificate:
    """Tightest homothetic pair of the inscribed or circumscribed model shape."""
    if model.kind is ModelKind.PARALLELOGRAM and not is_symmetric(K):
        raise NotSymmetric("parallelogram sandwich needs an o-symmetric body")
    inner_shape, outer_shape, non_unique = inner_outer(K, model)
    base = canonical_model(model)
    slack = CONTAINMENT_SLACK * diameter(K)

    best: Optional[SandwichCertificate] = None
    for tag, shape in (("inner", inner_shape), ("outer", outer_shape)):
        M = _centred(shape)
        # the shape's own centroid is exact when K is the model itself
        witnesses = [_homothety_lp(K, M), centroid(shape)]
        scored = [(x, *_exact_lambdas(K, M, x)) for x in witnesses]
        scored = [s for s in scored if s[1] > 0]
        if not scored:
            continue
        x, lambda1, lambda2 = min(scored, key=lambda s: s[2] / s[1])
        cert = SandwichCertificate(
            inner=ConvexPolygon(lambda1 * M.vertices + x),
            outer=ConvexPolygon(lambda2 * M.vertices + x),
            model=model,
            lambda1=lambda1,
            lambda2=lambda2,
            x=x,
            map=LinearMap2.from_matrix(_linear_part(base, M)),
            shape=tag,
            non_unique=non_unique,
        )
        if best is None or cert.ratio < best.ratio:
            best = cert

    if best is None:
        raise DegenerateInput(f"no admissible {model} sandwich")
    if not (contains_polygon(K, best.inner, slack) and contains_polygon(best.outer, K, slack)):
        raise DegenerateInput(f"{model} sandwich inclusion failed")
    return best


# ---------------------------------------------------------------------------
# seeded generators


def body_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the seed alone fixes the stream on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


def width_ratio(K: ConvexPolygon) -> float:
    """Minimal width over diameter; the minimal width is attained across an edge."""
    normals, offsets = halfplanes(K)
    depth = offsets[:, None] - normals @ K.vertices.T
    return float(depth.max(axis=1).min()) / diameter(K)


def random_body(seed: int, n: int, symmetry: Symmetry = Symmetry.NONE,
                fold: Optional[int] = None) -> ConvexPolygon:
    """Hull of n points at random angles and radii in [0.5, 1], then symmetrized.

    Draws thinner than MIN_WIDTH_RATIO are resampled from the same stream.
    """
    if n < 3:
        raise InvalidParameter(f"random body needs n >= 3, got {n}")
    if symmetry is Symmetry.NFOLD and (fold is None or fold < 2):
        raise InvalidParameter(f"n-fold symmetry needs fold >= 2, got {fold}")

    rng = body_rng(seed)
    for _ in range(RESAMPLE_LIMIT):
        angles = rng.uniform(0.0, 2.0 * np.pi, n)
        radii = rng.uniform(0.5, 1.0, n)
        pts = radii[:, None] * np.column_stack((np.cos(angles), np.sin(angles)))
        if symmetry is Symmetry.CENTRAL:
            pts = np.vstack((pts, -pts))
        elif symmetry is Symmetry.NFOLD:
            copies = []
            for k in range(fold):
                R = LinearMap2.rotation(2.0 * np.pi * k / fold).matrix
                copies.append(pts @ R.T)
            pts = np.vstack(copies)
        try:
            K = make_polygon(pts)
        except DegenerateInput:
            continue
        if width_ratio(K) >= MIN_WIDTH_RATIO:
            return K
    raise DegenerateInput(f"seed {seed} produced no valid body in {RESAMPLE_LIMIT} draws")


def random_between(seed: int, inner: ConvexPolygon, outer: ConvexPolygon, extra: int = 4) -> ConvexPolygon:
    """Hull of inner plus points drawn uniformly from outer."""
    rng = body_rng(seed)
    lo, hi = outer.vertices.min(axis=0), outer.vertices.max(axis=0)
    picked = []
    while len(picked) < extra:
        q = rng.uniform(lo, hi)
        if contains(outer, q):
            picked.append(q)
    return make_polygon(np.vstack((inner.vertices, np.array(picked))))
