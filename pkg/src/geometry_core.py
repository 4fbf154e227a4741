"""
Planar convex polygon primitives for volprod.

Polygons are immutable vertex arrays in counterclockwise order starting at
the lexicographically smallest vertex, so two polygons built from the same
point set compare vertex by vertex.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial.distance import pdist, cdist

from errors import DegenerateInput, InvalidParameter, SingularMap


CONVEXITY_TOL = 1e-12
DEDUP_TOL = 1e-12
CONTAINMENT_SLACK = 1e-9

# A point is a length-2 float array; anything array-like is accepted on input.
Point2 = np.ndarray
PointLike = Union[Sequence[float], np.ndarray]


def as_point(p: PointLike) -> Point2:
    """Coerce to a finite length-2 float array."""
    arr = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameter(f"point coordinates must be finite, got {arr.tolist()}")
    return arr


def cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """z-component of the planar cross product, broadcasting over leading axes."""
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Counterclockwise, strictly convex polygon. Build it with make_polygon."""
    vertices: np.ndarray

    def __post_init__(self):
        arr = np.array(self.vertices, dtype=float).reshape(-1, 2)
        arr.setflags(write=False)
        object.__setattr__(self, "vertices", arr)

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors v[i+1] - v[i]."""
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def to_list(self) -> List[List[float]]:
        return self.vertices.tolist()

    def allclose(self, other: "ConvexPolygon", atol: float = 1e-9) -> bool:
        """Vertexwise comparison; canonical ordering makes this a set comparison."""
        if len(self) != len(other):
            return False
        return bool(np.allclose(self.vertices, other.vertices, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"ConvexPolygon(n={len(self)}, vertices={np.round(self.vertices, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class HalfPlane:
    """The set {q : <normal, q> <= offset} with a unit normal."""
    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = as_point(self.normal)
        if abs(np.linalg.norm(n) - 1.0) > 1e-9:
            raise InvalidParameter(f"half-plane normal must be a unit vector, got norm {np.linalg.norm(n)}")
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_normal(cls, normal: PointLike, offset: float) -> "HalfPlane":
        """Normalize an arbitrary nonzero normal, scaling the offset along."""
        n = as_point(normal)
        length = float(np.linalg.norm(n))
        if length == 0.0:
            raise InvalidParameter("half-plane normal must be nonzero")
        return cls(n / length, offset / length)

    def signed_distance(self, q: PointLike) -> float:
        return float(np.dot(self.normal, as_point(q)) - self.offset)


@dataclass(frozen=True)
class LinearMap2:
    """Affine map q -> A q + t of the plane."""
    a11: float = 1.0
    a12: float = 0.0
    a21: float = 0.0
    a22: float = 1.0
    tx: float = 0.0
    ty: float = 0.0

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, translation: Optional[PointLike] = None) -> "LinearMap2":
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        t = np.zeros(2) if translation is None else as_point(translation)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]), float(t[0]), float(t[1]))

    @classmethod
    def identity(cls) -> "LinearMap2":
        return cls()

    @classmethod
    def scaling(cls, factor: float) -> "LinearMap2":
        return cls(factor, 0.0, 0.0, factor)

    @classmethod
    def rotation(cls, angle: float) -> "LinearMap2":
        c, s = np.cos(angle), np.sin(angle)
        return cls(float(c), float(-s), float(s), float(c))

    @classmethod
    def translation(cls, t: PointLike) -> "LinearMap2":
        t = as_point(t)
        return cls(tx=float(t[0]), ty=float(t[1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    @property
    def offset(self) -> np.ndarray:
        return np.array([self.tx, self.ty])

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def is_singular(self) -> bool:
        scale = max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))
        return scale == 0.0 or abs(self.det) <= 1e-14 * scale * scale

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map one point or an (m, 2) array of points."""
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix.T + self.offset

    def compose(self, inner: "LinearMap2") -> "LinearMap2":
        """self after inner."""
        m = self.matrix @ inner.matrix
        return LinearMap2.from_matrix(m, self.matrix @ inner.offset + self.offset)

    def inverse(self) -> "LinearMap2":
        if self.is_singular():
            raise SingularMap(f"map with determinant {self.det:.3e} has no inverse")
        inv = np.linalg.inv(self.matrix)
        return LinearMap2.from_matrix(inv, -inv @ self.offset)


# ---------------------------------------------------------------------------
# construction


def _monotone_chain(points: np.ndarray) -> np.ndarray:
    """Andrew's monotone chain on lexicographically sorted, unique points."""
    def half(seq: Iterable[np.ndarray]) -> List[np.ndarray]:
        chain: List[np.ndarray] = []
        for p in seq:
            while len(chain) >= 2 and cross(chain[-1] - chain[-2], p - chain[-1]) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(points)
    upper = half(points[::-1])
    return np.array(lower[:-1] + upper[:-1])


def _drop_close(vertices: np.ndarray, threshold: float) -> np.ndarray:
    keep = list(vertices)
    i = 0
    while len(keep) > 2 and i < len(keep):
        if np.linalg.norm(keep[i] - keep[i - 1]) < threshold:
            keep.pop(i)
        else:
            i += 1
    return np.array(keep)


def _merge_collinear(vertices: np.ndarray, threshold: float) -> np.ndarray:
    """Drop vertices whose triangle with both neighbours has area below threshold."""
    keep = list(vertices)
    changed = True
    while changed and len(keep) > 3:
        changed = False
        for i in range(len(keep)):
            prev, cur, nxt = keep[i - 1], keep[i], keep[(i + 1) % len(keep)]
            if 0.5 * abs(cross(cur - prev, nxt - cur)) < threshold:
                keep.pop(i)
                changed = True
                break
    return np.array(keep)


def _shoelace(vertices: np.ndarray) -> float:
    return 0.5 * float(np.sum(cross(vertices, np.roll(vertices, -1, axis=0))))


def make_polygon(points: Iterable[PointLike], tol: float = CONVEXITY_TOL) -> ConvexPolygon:
    """Convex hull of a point set as a canonical ConvexPolygon."""
    pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=float)
    pts = pts.reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("point coordinates must be finite")
    if pts.shape[0] < 3:
        raise DegenerateInput(f"need at least 3 points, got {pts.shape[0]}")

    pts = np.unique(pts, axis=0)
    if pts.shape[0] < 3:
        raise DegenerateInput("fewer than 3 distinct points")
    hull = _monotone_chain(pts)
    if hull.shape[0] < 3:
        raise DegenerateInput("points are collinear")

    scale = float(pdist(hull).max())
    hull = _drop_close(hull, DEDUP_TOL * scale)
    hull = _merge_collinear(hull, tol * scale * scale)
    if hull.shape[0] < 3 or _shoelace(hull) < tol * scale * scale:
        raise DegenerateInput(f"hull area below tolerance (diameter {scale:.3e})")

    start = int(np.lexsort((hull[:, 1], hull[:, 0]))[0])
    return ConvexPolygon(np.roll(hull, -start, axis=0))


# ---------------------------------------------------------------------------
# measures


def area(K: ConvexPolygon) -> float:
    return _shoelace(K.vertices)


def centroid(K: ConvexPolygon) -> Point2:
    """Area-weighted centroid."""
    v = K.vertices
    w = np.roll(v, -1, axis=0)
    c = cross(v, w)
    a = 0.5 * c.sum()
    return ((v + w) * c[:, None]).sum(axis=0) / (6.0 * a)


def support(K: ConvexPolygon, u: PointLike) -> float:
    """h_K(u) = max over vertices of <u, vertex>."""
    u = as_point(u)
    if not np.any(u):
        raise InvalidParameter("support direction must be nonzero")
    return float(np.max(K.vertices @ u))


def diameter(K: ConvexPolygon) -> float:
    return float(pdist(K.vertices).max())


def halfplanes(K: ConvexPolygon) -> Tuple[np.ndarray, np.ndarray]:
    """Outward unit normals and offsets of the edge lines; row i is edge v[i] -> v[i+1]."""
    e = K.edges
    normals = np.column_stack((e[:, 1], -e[:, 0]))
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    offsets = np.einsum("ij,ij->i", normals, K.vertices)
    return normals, offsets


def boundary_distance(K: ConvexPolygon, q: PointLike) -> float:
    """Signed distance from q to the boundary, positive inside."""
    normals, offsets = halfplanes(K)
    return float(np.min(offsets - normals @ as_point(q)))


def contains(K: ConvexPolygon, q: PointLike, slack: float = 0.0) -> bool:
    normals, offsets = halfplanes(K)
    return bool(np.all(normals @ as_point(q) <= offsets + slack))


def contains_polygon(K: ConvexPolygon, L: ConvexPolygon, slack: float = 0.0) -> bool:
    """True iff every vertex of L lies in K up to slack."""
    normals, offsets = halfplanes(K)
    return bool(np.all(L.vertices @ normals.T <= offsets[None, :] + slack))


# ---------------------------------------------------------------------------
# transforms


def apply_map(K: ConvexPolygon, A: LinearMap2) -> ConvexPolygon:
    if A.is_singular():
        raise SingularMap(f"linear part has determinant {A.det:.3e}")
    # make_polygon restores counterclockwise order for orientation-reversing maps
    return make_polygon(A.apply(K.vertices))


def translate(K: ConvexPolygon, t: PointLike) -> ConvexPolygon:
    return ConvexPolygon(K.vertices + as_point(t))


def scale(K: ConvexPolygon, factor: float, about: Optional[PointLike] = None) -> ConvexPolygon:
    if factor <= 0:
        raise InvalidParameter(f"scale factor must be positive, got {factor}")
    c = np.zeros(2) if about is None else as_point(about)
    return ConvexPolygon(c + factor * (K.vertices - c))


def rotate(K: ConvexPolygon, angle: float, about: Optional[PointLike] = None) -> ConvexPolygon:
    c = np.zeros(2) if about is None else as_point(about)
    R = LinearMap2.rotation(angle).matrix
    return make_polygon(c + (K.vertices - c) @ R.T)


def reflect(K: ConvexPolygon) -> ConvexPolygon:
    """-K."""
    return make_polygon(-K.vertices)


# ---------------------------------------------------------------------------
# clipping


def _clip_vertices(vertices: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    """Sutherland-Hodgman against one half-plane."""
    out: List[np.ndarray] = []
    d = vertices @ normal - offset
    count = vertices.shape[0]
    for i in range(count):
        j = (i + 1) % count
        p, q = vertices[i], vertices[j]
        dp, dq = d[i], d[j]
        if dp <= 0:
            out.append(p)
        if (dp < 0 < dq) or (dq < 0 < dp):
            t = dp / (dp - dq)
            out.append(p + t * (q - p))
    return np.array(out).reshape(-1, 2)


def clip(K: ConvexPolygon, h: HalfPlane, tol: float = CONVEXITY_TOL) -> ConvexPolygon:
    """K intersected with a half-plane."""
    pts = _clip_vertices(K.vertices, h.normal, h.offset)
    return _clipped_polygon(K, pts, tol)


def clip_all(K: ConvexPolygon, planes: Iterable[HalfPlane], tol: float = CONVEXITY_TOL) -> ConvexPolygon:
    pts = K.vertices
    for h in planes:
        pts = _clip_vertices(pts, h.normal, h.offset)
        if pts.shape[0] == 0:
            break
    return _clipped_polygon(K, pts, tol)


def _clipped_polygon(K: ConvexPolygon, pts: np.ndarray, tol: float) -> ConvexPolygon:
    if pts.shape[0] < 3:
        raise DegenerateInput("clip result is empty")
    d = diameter(K)
    result = make_polygon(pts, tol)
    if area(result) < tol * d * d:
        raise DegenerateInput("clip result has area below tolerance")
    return result


def clip_sector(K: ConvexPolygon, apex: PointLike, ray1: PointLike, ray2: PointLike,
                tol: float = CONVEXITY_TOL) -> ConvexPolygon:
    """K intersected with the cone at apex swept counterclockwise from ray1 to ray2."""
    apex, r1, r2 = as_point(apex), as_point(ray1), as_point(ray2)
    n1, n2 = np.linalg.norm(r1), np.linalg.norm(r2)
    if n1 == 0.0 or n2 == 0.0 or cross(r1, r2) <= tol * n1 * n2:
        raise DegenerateInput("sector rays must span an angle strictly between 0 and pi")
    # left of ray1 and right of ray2
    planes = [
        HalfPlane.from_normal((r1[1], -r1[0]), float(np.dot((r1[1], -r1[0]), apex))),
        HalfPlane.from_normal((-r2[1], r2[0]), float(np.dot((-r2[1], r2[0]), apex))),
    ]
    return clip_all(K, planes, tol)


# ---------------------------------------------------------------------------
# Minkowski operations


def _lowest_first(vertices: np.ndarray) -> np.ndarray:
    start = int(np.lexsort((vertices[:, 0], vertices[:, 1]))[0])
    return np.roll(vertices, -start, axis=0)


def minkowski_sum(K: ConvexPolygon, L: ConvexPolygon) -> ConvexPolygon:
    """K + L by merging the edge sequences by angle."""
    P, Q = _lowest_first(K.vertices), _lowest_first(L.vertices)
    n, m = P.shape[0], Q.shape[0]
    P = np.vstack((P, P[:2]))
    Q = np.vstack((Q, Q[:2]))
    out = []
    i = j = 0
    while i < n or j < m:
        out.append(P[i] + Q[j])
        if i == n:
            j += 1
        elif j == m:
            i += 1
        else:
            c = cross(P[i + 1] - P[i], Q[j + 1] - Q[j])
            if c >= 0:
                i += 1
            if c <= 0:
                j += 1
    return make_polygon(np.array(out))


def central_symmetral(K: ConvexPolygon) -> ConvexPolygon:
    """(K - K) / 2."""
    S = minkowski_sum(K, reflect(K))
    return ConvexPolygon(0.5 * S.vertices)


# ---------------------------------------------------------------------------
# symmetry tests


def _same_vertex_set(a: np.ndarray, b: np.ndarray, atol: float) -> bool:
    if a.shape != b.shape:
        return False
    return bool(np.all(cdist(a, b).min(axis=1) <= atol))


def is_symmetric(K: ConvexPolygon, tol: float = 1e-9) -> bool:
    """o-symmetry: -v is a vertex for every vertex v."""
    return _same_vertex_set(K.vertices, -K.vertices, tol * max(1.0, diameter(K)))


def is_nfold_symmetric(K: ConvexPolygon, n: int, tol: float = 1e-9) -> bool:
    """Rotation by 2*pi/n about o maps the vertex set to itself."""
    R = LinearMap2.rotation(2.0 * np.pi / n).matrix
    return _same_vertex_set(K.vertices, K.vertices @ R.T, tol * max(1.0, diameter(K)))
