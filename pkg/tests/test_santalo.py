import numpy as np
import pytest

from canonical import Symmetry, ngon_product, random_body, regular_ngon
from errors import NoConvergence
from geometry_core import LinearMap2, apply_map, centroid, diameter, make_polygon
from polarity import CenteredBody, eggleston_product, polar, polar_area_at, volume_product
from santalo import (
    centroid_of_polar_check, default_tolerance, finite_difference_gradient,
    polar_area_gradient, polar_area_hessian, polar_area_hessian_lower, santalo_point,
)


class TestHessian:
    def test_lower_bound_scales_with_diameter(self):
        unit = regular_ngon(3, 1 / np.sqrt(3))
        assert polar_area_hessian_lower(CenteredBody.at_origin(unit)) == pytest.approx(3 * np.pi)
        double = regular_ngon(3, 2 / np.sqrt(3))
        assert polar_area_hessian_lower(CenteredBody.at_origin(double)) == pytest.approx(3 * np.pi / 16)

    @pytest.mark.parametrize("z", [(0.0, 0.0), (0.5, -0.3), (-0.8, 0.8)])
    def test_exact_hessian_dominates_lower_bound(self, square, z):
        B = CenteredBody(square, z)
        eigenvalues = np.linalg.eigvalsh(polar_area_hessian(B))
        assert eigenvalues.min() >= polar_area_hessian_lower(B)

    def test_hessian_matches_gradient_differences(self, quadrilateral):
        z = np.array([1.0, 0.8])
        step = 1e-6
        columns = []
        for e in np.eye(2):
            plus = polar_area_gradient(CenteredBody(quadrilateral, z + step * e))
            minus = polar_area_gradient(CenteredBody(quadrilateral, z - step * e))
            columns.append((plus - minus) / (2 * step))
        numeric = np.column_stack(columns)
        assert polar_area_hessian(CenteredBody(quadrilateral, z)) == pytest.approx(numeric, rel=1e-5, abs=1e-6)


class TestGradient:
    @pytest.mark.parametrize("z", [(1.0, 1.0), (0.4, 0.3), (2.0, 0.6)])
    def test_matches_finite_differences(self, quadrilateral, z):
        analytic = polar_area_gradient(CenteredBody(quadrilateral, z))
        assert finite_difference_gradient(quadrilateral, z) == pytest.approx(analytic, rel=1e-6, abs=1e-8)

    def test_vanishes_at_centre_of_symmetric_body(self, hexagon):
        assert polar_area_gradient(CenteredBody.at_origin(hexagon)) == pytest.approx([0.0, 0.0], abs=1e-12)

    def test_step_follows_nearest_edge(self):
        K = make_polygon([(0, 0), (0.6, 0), (0.55, 0.003), (0.1, 0.002)])
        z = (0.3, 5e-4)
        analytic = polar_area_gradient(CenteredBody(K, z))
        numeric = finite_difference_gradient(K, z)
        assert np.linalg.norm(numeric - analytic) <= 1e-7 * np.linalg.norm(analytic)

    @pytest.mark.slow
    def test_random_bodies(self):
        for seed in range(100):
            K = random_body(seed, 3 + seed % 8)
            z = 0.7 * centroid(K) + 0.3 * K.vertices[seed % len(K)]
            analytic = polar_area_gradient(CenteredBody(K, z))
            numeric = finite_difference_gradient(K, z)
            assert np.linalg.norm(numeric - analytic) <= 1e-5 * np.linalg.norm(analytic), seed


class TestSantaloPoint:
    @pytest.mark.parametrize("n", [4, 5, 6, 9])
    def test_regular_polygons(self, n):
        result = santalo_point(regular_ngon(n))
        assert result.point == pytest.approx([0.0, 0.0], abs=1e-9)

    def test_symmetric_random_body(self):
        K = random_body(11, 7, Symmetry.CENTRAL)
        assert santalo_point(K).point == pytest.approx([0.0, 0.0], abs=1e-9)

    def test_triangle_is_centroid(self, scalene):
        result = santalo_point(scalene)
        assert result.point == pytest.approx([1.0, 2.0 / 3.0], abs=1e-9)
        assert result.polar_area_at_min == pytest.approx(27 / 4 / 3.0)

    def test_minimizes_polar_area(self, quadrilateral):
        result = santalo_point(quadrilateral)
        assert result.gradient_norm <= result.tolerance
        assert result.tolerance == pytest.approx(default_tolerance(quadrilateral, result.point))
        for offset in [(1e-3, 0.0), (0.0, -1e-3), (7e-4, 7e-4)]:
            assert polar_area_at(quadrilateral, result.point + np.array(offset)) > result.polar_area_at_min

    def test_polar_centroid_vanishes(self, quadrilateral):
        assert centroid_of_polar_check(quadrilateral) < 1e-7

    def test_differs_from_centroid_in_general(self, quadrilateral):
        assert np.linalg.norm(santalo_point(quadrilateral).point - centroid(quadrilateral)) > 1e-4

    def test_iteration_cap(self, quadrilateral):
        with pytest.raises(NoConvergence) as info:
            santalo_point(quadrilateral, max_iterations=0)
        assert info.value.iterations == 0

    def test_affine_equivariance(self, quadrilateral):
        stretched = make_polygon(quadrilateral.vertices * np.array([2.0, 0.5]))
        a = santalo_point(quadrilateral).point
        b = santalo_point(stretched).point
        assert b == pytest.approx(a * np.array([2.0, 0.5]), abs=1e-6)

    def test_thin_triangle_stops_at_centroid(self):
        K = make_polygon([(0, 0), (0.6, 0), (0.31, 0.0023)])
        result = santalo_point(K)
        assert result.point == pytest.approx(centroid(K), abs=1e-9)
        assert result.tolerance > 1e-9 * diameter(K) ** -3

    def test_thin_quadrilateral_matches_stretched_image(self, quadrilateral):
        squash = LinearMap2(1.0, 0.0, 0.0, 0.002)
        thin = apply_map(quadrilateral, squash)
        a = santalo_point(quadrilateral).point
        b = santalo_point(thin).point
        assert squash.inverse().apply(b[None, :])[0] == pytest.approx(a, abs=1e-6 * diameter(quadrilateral))

    def test_random_body_377(self):
        K = random_body(377, 3)
        result = santalo_point(K)
        assert result.point == pytest.approx(centroid(K), abs=1e-9)

    @pytest.mark.parametrize("seed", range(20))
    def test_affine_equivariance_on_random_bodies(self, seed, random_map):
        K = random_body(seed, 4 + seed % 6)
        A = random_map()
        image = santalo_point(apply_map(K, A)).point
        expected = A.apply(santalo_point(K).point[None, :])[0]
        assert np.linalg.norm(image - expected) <= 1e-6 * diameter(apply_map(K, A))

    @pytest.mark.slow
    def test_polar_centroid_on_random_bodies(self):
        for seed in range(100):
            K = random_body(seed, 3 + seed % 8)
            result = santalo_point(K)
            dual = polar(CenteredBody(K, result.point))
            assert np.linalg.norm(centroid(dual)) <= 1e-5, seed


@pytest.mark.slow
class TestProductLowerBounds:
    COUNT = 1000

    def test_santalo_centred(self):
        for seed in range(self.COUNT):
            K = random_body(seed, 3 + seed % 8)
            product = volume_product(CenteredBody(K, santalo_point(K).point)).product
            assert product >= 27 / 4 - 1e-9, seed

    def test_symmetric(self):
        for seed in range(self.COUNT):
            K = random_body(seed, 3 + seed % 5, Symmetry.CENTRAL)
            assert volume_product(CenteredBody.at_origin(K)).product >= 8 - 1e-9, seed

    @pytest.mark.parametrize("k", [3, 5, 6, 8])
    def test_nfold(self, k):
        for seed in range(self.COUNT):
            K = random_body(seed, 3, Symmetry.NFOLD, fold=k)
            assert volume_product(CenteredBody.at_origin(K)).product >= ngon_product(k) - 1e-9, seed

    def test_eggleston(self):
        for seed in range(self.COUNT):
            assert eggleston_product(random_body(seed, 3 + seed % 8)) >= 6 - 1e-9, seed
