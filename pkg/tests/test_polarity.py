import numpy as np
import pytest

from canonical import Symmetry, random_body, regular_ngon
from errors import CentreNotInterior, InvalidParameter
from geometry_core import area, centroid, contains_polygon, make_polygon, scale, translate
from polarity import (
    CenteredBody, eggleston_product, polar, polar_area_at, polar_area_gradient_quadrature,
    polar_area_quadrature, volume_product,
)
from santalo import gradient_scale, polar_area_gradient


class TestCenteredBody:
    @pytest.mark.parametrize("centre", [(0.0, 0.0), (1.0, 0.5), (2.0, 2.0)])
    def test_centre_must_be_interior(self, unit_square, centre):
        with pytest.raises(CentreNotInterior) as info:
            CenteredBody(unit_square, centre)
        assert info.value.edge is not None

    def test_heights(self, unit_square):
        B = CenteredBody(unit_square, (0.25, 0.5))
        assert B.heights() == pytest.approx([0.5, 0.75, 0.5, 0.25])

    def test_translated(self, unit_square):
        B = CenteredBody(unit_square, (0.5, 0.5))
        assert B.translated().allclose(make_polygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]))


class TestPolar:
    def test_square_polar_is_diamond(self, square):
        dual = polar(CenteredBody.at_origin(square))
        assert dual.allclose(make_polygon([(1, 0), (0, 1), (-1, 0), (0, -1)]))

    def test_triangle_polar(self):
        dual = polar(CenteredBody.at_origin(regular_ngon(3)))
        assert len(dual) == 3
        assert np.linalg.norm(dual.vertices, axis=1) == pytest.approx([2.0, 2.0, 2.0])

    @pytest.mark.parametrize("centre", [(0.0, 0.0), (0.2, -0.1), (-0.3, 0.25)])
    def test_biduality(self, hexagon, centre):
        B = CenteredBody(hexagon, centre)
        twice = polar(CenteredBody.at_origin(polar(B)))
        assert twice.allclose(B.translated())

    def test_closed_form_polar_area(self, quadrilateral):
        z = (1.0, 1.0)
        assert polar_area_at(quadrilateral, z) == pytest.approx(area(polar(CenteredBody(quadrilateral, z))))

    def test_closed_form_outside_is_infinite(self, unit_square):
        assert polar_area_at(unit_square, (2.0, 0.5)) == float("inf")


class TestQuadrature:
    def test_square(self, square):
        assert polar_area_quadrature(CenteredBody.at_origin(square)) == pytest.approx(2.0, rel=1e-10)

    def test_hexagon(self, hexagon):
        assert polar_area_quadrature(CenteredBody.at_origin(hexagon)) == pytest.approx(2 * np.sqrt(3), rel=1e-10)

    def test_agrees_with_exact_polar_off_centre(self, quadrilateral):
        B = CenteredBody(quadrilateral, (0.8, 0.9))
        assert polar_area_quadrature(B, m=512) == pytest.approx(area(polar(B)), rel=1e-8)

    def test_gradient(self, square):
        B = CenteredBody(square, (0.1, 0.05))
        assert polar_area_gradient_quadrature(B) == pytest.approx(polar_area_gradient(B), rel=1e-8, abs=1e-10)

    def test_too_few_nodes(self, square):
        with pytest.raises(InvalidParameter):
            polar_area_quadrature(CenteredBody.at_origin(square), m=4)

    def test_sliver_with_centre_near_an_edge(self):
        B = CenteredBody(make_polygon([(0, 0), (1, 0), (0.5, 0.01)]), (0.5, 1e-3))
        assert polar_area_quadrature(B) == pytest.approx(area(polar(B)), rel=1e-8)

    @pytest.mark.slow
    def test_random_bodies(self):
        for seed in range(1, 101):
            K = random_body(seed, 3 + seed % 8, Symmetry.CENTRAL if seed % 5 == 0 else Symmetry.NONE)
            B = CenteredBody(K, 0.7 * centroid(K) + 0.3 * K.vertices[0])
            assert polar_area_quadrature(B) == pytest.approx(area(polar(B)), rel=1e-8), seed
            diff = polar_area_gradient_quadrature(B) - polar_area_gradient(B)
            assert np.linalg.norm(diff) <= 1e-8 * gradient_scale(K, B.centre), seed


class TestVolumeProduct:
    def test_square(self, square):
        report = volume_product(CenteredBody.at_origin(square))
        assert report.body_area == pytest.approx(4.0)
        assert report.polar_area == pytest.approx(2.0)
        assert report.product == pytest.approx(8.0)
        assert report.centre == (0.0, 0.0)

    def test_triangle_at_centroid(self, scalene):
        assert volume_product(CenteredBody(scalene, (1.0, 2.0 / 3.0))).product == pytest.approx(27 / 4)

    def test_regular_hexagon(self, hexagon):
        assert volume_product(CenteredBody.at_origin(hexagon)).product == pytest.approx(9.0)

    def test_affine_invariance(self, quadrilateral):
        B = CenteredBody(quadrilateral, (1.0, 1.0))
        stretched = make_polygon(quadrilateral.vertices * np.array([3.0, 0.5]))
        C = CenteredBody(stretched, (3.0, 0.5))
        assert volume_product(C).product == pytest.approx(volume_product(B).product)


class TestEggleston:
    @pytest.mark.parametrize("points", [
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (3, 0), (0, 2)],
        [(-1, 4), (2, 1), (5, 7)],
    ])
    def test_triangles(self, points):
        assert eggleston_product(make_polygon(points)) == pytest.approx(6.0)

    def test_square(self, unit_square, square):
        assert eggleston_product(unit_square) == pytest.approx(8.0)
        assert eggleston_product(square) == pytest.approx(8.0)


class TestPolarityProperties:
    @pytest.mark.parametrize("seed", range(30))
    def test_reverses_inclusion(self, seed, rng):
        K = random_body(seed, 3 + seed % 8)
        L = make_polygon(np.vstack((K.vertices, rng.uniform(-1.5, 1.5, size=(4, 2)))))
        z = centroid(K)
        assert contains_polygon(polar(CenteredBody(K, z)), polar(CenteredBody(L, z)), 1e-9)

    @pytest.mark.parametrize("seed", range(30))
    def test_dilation_divides_polar(self, seed):
        K = random_body(seed, 3 + seed % 8)
        K0 = translate(K, -centroid(K))
        dual = polar(CenteredBody.at_origin(K0))
        for lam in (0.3, 2.0, 7.5):
            scaled = polar(CenteredBody.at_origin(scale(K0, lam)))
            assert scaled.allclose(scale(dual, 1.0 / lam), atol=1e-9)
