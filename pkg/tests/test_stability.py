import numpy as np
import pytest

from canonical import (
    Model, Symmetry, bumped_eggleston_closed_form, bumped_ngon, canonical_model,
    incidence_pair, ngon_product, random_between, random_body, regular_ngon,
)
from config import TheoremId
from errors import HypothesisViolated, InvalidParameter, NotSymmetric
from geometry_core import HalfPlane, area, clip_all, diameter, make_polygon, scale, translate
from polarity import polar_area_at
from stability import (
    agm_stability_check, bumped_excess_slope, centre_constants, example2_centre_lower,
    example2_exponent, lemma6_check, lemma7_check, theorem6_alpha_bound, verify_theorem1,
    verify_theorem2, verify_theorem3, verify_theorem5, verify_theorem6,
)


def _outer_triangle():
    """Regular triangle of side 2 centred at o, apex up."""
    return regular_ngon(3, 2 / np.sqrt(3), np.pi / 2)


def _midpoint_triangle():
    return regular_ngon(3, 1 / np.sqrt(3), -np.pi / 2)


class TestAgm:
    def test_equal_values(self):
        assert agm_stability_check([1.0, 1.0, 1.0], 0.0)

    def test_spread_values(self):
        values = [1.0, 1.0, 4.0]
        am = np.mean(values)
        gm = np.prod(values) ** (1 / 3)
        assert agm_stability_check(values, am / gm - 1)

    def test_close_values(self):
        values = [1.0, 1.001, 0.999, 1.0005]
        am = np.mean(values)
        gm = np.exp(np.mean(np.log(values)))
        eps = am / gm - 1
        assert agm_stability_check(values, eps)
        assert min(values) / max(values) >= 1 - 2 * np.sqrt(len(values) * eps)

    def test_hypothesis_must_hold(self):
        with pytest.raises(InvalidParameter):
            agm_stability_check([1.0, 1.0, 4.0], 0.01)

    @pytest.mark.slow
    def test_random_tuples(self):
        rng = np.random.default_rng(6)
        for i in range(10_000):
            size = 2 + i % 5
            if i % 3:
                values = rng.uniform(0.1, 10.0, size)
            else:
                values = 1.0 + rng.uniform(-1e-3, 1e-3, size)
            am = np.mean(values)
            gm = np.exp(np.mean(np.log(values)))
            assert agm_stability_check(values, am / gm - 1.0 + 1e-12), values

    @pytest.mark.parametrize("values,eps", [([1.0], 0.1), ([1.0, 0.0], 0.1), ([1.0, 2.0], -0.1)])
    def test_invalid(self, values, eps):
        with pytest.raises(InvalidParameter):
            agm_stability_check(values, eps)


class TestCentreConstants:
    def test_unit_diameter_square(self):
        K = make_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        K = scale(K, 1 / np.sqrt(2))
        consts = centre_constants(K)
        assert consts.eps1 == pytest.approx(1 / (64 * np.pi ** 2))
        assert consts.c1 == pytest.approx(32 * np.pi ** 4)
        assert consts.c2 == pytest.approx(8 / np.sqrt(3 * np.pi))

    def test_unit_side_triangle(self):
        K = regular_ngon(3, 1 / np.sqrt(3))
        consts = centre_constants(K)
        assert consts.eps1 == pytest.approx(np.sqrt(3) / (128 * np.pi ** 2))
        assert consts.c1 == pytest.approx(512 * np.pi ** 4 / 9)
        assert consts.c2 == pytest.approx(4 * np.sqrt(2 / (3 * np.pi)) * 2 / 3 ** 0.25)


class TestLemma6:
    def test_identical_bodies(self, hexagon):
        report = lemma6_check(hexagon, hexagon, 1e-3, c=(0.0, 0.0), eps2=0.0)
        assert report.santalo_gap == pytest.approx(0.0, abs=1e-9)
        assert report.centre_gap == pytest.approx(0.0, abs=1e-9)
        assert report.passed

    def test_translated_copy(self, hexagon):
        K = translate(hexagon, (0.3, -0.1))
        report = lemma6_check(hexagon, K, 1e-3)
        # the shift may absorb up to eps1 of slack on each side
        assert report.shift == pytest.approx((0.3, -0.1), abs=2e-3)
        assert report.santalo_gap <= 2e-3
        assert report.passed

    def test_perturbed_hexagon(self, hexagon):
        delta = 5e-4
        radii = np.where(np.arange(6) % 2 == 0, 1 + delta, 1 - delta)
        K = make_polygon(radii[:, None] * hexagon.vertices)
        report = lemma6_check(hexagon, K, 2 * delta)
        assert report.santalo_gap <= report.santalo_bound
        assert report.passed

    def test_near_minimal_centre(self, hexagon):
        c = (0.01, 0.0)
        eps2 = 1e-2
        report = lemma6_check(hexagon, hexagon, 1e-3, c=c, eps2=eps2)
        assert report.centre_gap == pytest.approx(0.01, abs=1e-9)
        assert report.centre_gap <= report.centre_bound
        assert report.passed

    def test_eps1_range(self, hexagon):
        with pytest.raises(InvalidParameter):
            lemma6_check(hexagon, hexagon, 0.1)

    def test_not_homothetic(self, hexagon):
        square = canonical_model(Model.parallelogram())
        with pytest.raises(HypothesisViolated) as info:
            lemma6_check(hexagon, square, 1e-3)
        assert info.value.hypothesis == "homothety"

    def test_centre_outside(self, hexagon):
        with pytest.raises(HypothesisViolated) as info:
            lemma6_check(hexagon, hexagon, 1e-3, c=(5.0, 5.0), eps2=0.1)
        assert info.value.hypothesis == "centre"

    def test_centre_not_near_minimal(self, hexagon):
        with pytest.raises(HypothesisViolated) as info:
            lemma6_check(hexagon, hexagon, 1e-3, c=(0.3, 0.0), eps2=0.0)
        assert info.value.hypothesis == "near_minimal"

    def test_centre_needs_eps2(self, hexagon):
        with pytest.raises(InvalidParameter):
            lemma6_check(hexagon, hexagon, 1e-3, c=(0.0, 0.0))


class TestTheorem1:
    def test_square(self):
        verdict = verify_theorem1(canonical_model(Model.parallelogram()))
        assert verdict.theorem is TheoremId.T1
        assert verdict.eps == pytest.approx(0.0, abs=1e-12)
        assert verdict.bm_upper == pytest.approx(1.0, abs=1e-9)
        assert verdict.centre_distance is not None
        assert verdict.passed

    def test_affine_square(self):
        P = make_polygon([(2, 1), (1, 3), (-2, -1), (-1, -3)])
        verdict = verify_theorem1(P)
        assert verdict.bm_upper == pytest.approx(1.0, abs=1e-9)
        assert verdict.passed

    @pytest.mark.parametrize("eps", [1e-3, 0.05])
    def test_bumped_square(self, eps):
        verdict = verify_theorem1(bumped_ngon(4, eps))
        assert verdict.eps > 0
        assert verdict.bm_upper <= verdict.claimed
        assert verdict.passed

    def test_random_symmetric(self):
        for seed in range(1, 6):
            verdict = verify_theorem1(random_body(seed, 4, Symmetry.CENTRAL))
            assert verdict.eps >= -1e-9
            assert verdict.passed

    def test_needs_symmetry(self, scalene):
        with pytest.raises(NotSymmetric):
            verify_theorem1(scalene)


class TestTheorem2:
    def test_triangle(self, scalene):
        verdict = verify_theorem2(scalene)
        assert verdict.eps == pytest.approx(0.0, abs=1e-9)
        assert verdict.bm_upper == pytest.approx(1.0, abs=1e-9)
        assert verdict.passed

    def test_pentagon(self):
        verdict = verify_theorem2(regular_ngon(5))
        assert verdict.eps == pytest.approx(25 * np.sin(np.pi / 5) ** 2 / 6.75 - 1, abs=1e-9)
        assert verdict.passed

    def test_explicit_centre(self, scalene):
        verdict = verify_theorem2(scalene, centre=(0.8, 0.7))
        assert verdict.eps > 0
        assert verdict.diagnostics["product"] > 27 / 4

    def test_non_unique_flag(self, square):
        verdict = verify_theorem2(square)
        assert verdict.diagnostics["non_unique"] == 1.0

    def test_random(self):
        for seed in range(1, 6):
            verdict = verify_theorem2(random_body(seed, 6))
            assert verdict.eps >= -1e-9
            assert verdict.passed


class TestTheorem3:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    @pytest.mark.parametrize("t", [0.25, 0.5])
    def test_equality_cases(self, n, t):
        inner, outer = incidence_pair(n, t)
        for K in (inner, outer):
            verdict = verify_theorem3(K, inner, outer, (0.0, 0.0))
            assert verdict.eps == pytest.approx(0.0, abs=1e-9)
            assert verdict.passed

    def test_shifted_centre(self):
        z = (0.3, -0.2)
        inner, outer = incidence_pair(5, 0.4, centre=z)
        verdict = verify_theorem3(inner, inner, outer, z)
        assert verdict.eps == pytest.approx(0.0, abs=1e-9)
        assert verdict.passed

    def test_chain_is_reported(self):
        inner, outer = incidence_pair(4, 0.5)
        K = random_between(3, inner, outer)
        verdict = verify_theorem3(K, inner, outer, (0.0, 0.0))
        chain = [verdict.diagnostics[f"chain_{i}"] for i in range(5)]
        assert all(hi >= lo * (1 - 1e-9) for hi, lo in zip(chain, chain[1:]))
        assert verdict.diagnostics["sector_margin"] >= 1 - 1e-9
        assert verdict.passed

    @pytest.mark.parametrize("seed", range(1, 6))
    def test_between(self, seed):
        inner, outer = incidence_pair(6, 0.3)
        K = random_between(seed, inner, outer)
        verdict = verify_theorem3(K, inner, outer, (0.0, 0.0))
        assert verdict.eps >= -1e-9
        assert verdict.passed

    def test_not_regular(self):
        inner, outer = incidence_pair(4, 0.5)
        skewed = make_polygon([(0.5, 0.5), (-0.5, 0.5), (-0.5, -0.5), (0.6, -0.5)])
        with pytest.raises(HypothesisViolated) as info:
            verify_theorem3(outer, skewed, outer, (0.0, 0.0))
        assert info.value.hypothesis == "regular"

    def test_not_inside_outer(self):
        inner, outer = incidence_pair(4, 0.5)
        with pytest.raises(HypothesisViolated) as info:
            verify_theorem3(scale(outer, 1.1), inner, outer, (0.0, 0.0))
        assert info.value.hypothesis == "outer"

    def test_centre_outside(self):
        inner, outer = incidence_pair(4, 0.5)
        with pytest.raises(HypothesisViolated) as info:
            verify_theorem3(inner, inner, outer, (3.0, 0.0))
        assert info.value.hypothesis == "centre"


class TestTheorem5:
    @pytest.mark.parametrize("n", [3, 5, 6, 8])
    def test_regular(self, n):
        verdict = verify_theorem5(regular_ngon(n), n)
        assert verdict.eps == pytest.approx(0.0, abs=1e-9)
        assert verdict.bm_upper == pytest.approx(1.0, abs=1e-9)
        assert verdict.passed

    @pytest.mark.parametrize("n", [3, 5, 6])
    def test_bumped(self, n):
        verdict = verify_theorem5(bumped_ngon(n, 1e-3), n)
        assert verdict.eps > 0
        assert verdict.passed

    def test_random(self):
        for seed in range(1, 4):
            verdict = verify_theorem5(random_body(seed, 3, Symmetry.NFOLD, fold=5), 5)
            assert verdict.eps >= -1e-9
            assert verdict.passed

    def test_needs_symmetry(self, scalene):
        with pytest.raises(NotSymmetric):
            verify_theorem5(scalene, 3)
        with pytest.raises(InvalidParameter):
            verify_theorem5(regular_ngon(4), 2)


class TestTheorem6:
    def test_alpha_bound(self):
        assert theorem6_alpha_bound(0.0) == 0.0
        assert theorem6_alpha_bound(1 / 16) == pytest.approx(0.5)
        a = theorem6_alpha_bound(0.01)
        assert a * (1 - a) == pytest.approx(0.04)
        with pytest.raises(InvalidParameter):
            theorem6_alpha_bound(0.1)

    def test_triangle(self, scalene):
        verdict = verify_theorem6(scalene)
        assert verdict.eps == pytest.approx(0.0, abs=1e-9)
        assert verdict.diagnostics["alpha_bound"] == pytest.approx(0.0, abs=1e-4)
        assert verdict.centre_distance is None
        assert verdict.passed

    @pytest.mark.parametrize("eps", [1e-3, 1e-2, 0.1])
    def test_bumped_triangle(self, eps):
        verdict = verify_theorem6(bumped_ngon(3, eps))
        assert verdict.eps == pytest.approx(bumped_eggleston_closed_form(eps) / 6 - 1, abs=1e-9)
        assert verdict.passed

    def test_square_has_no_alpha_diagnostics(self, square):
        verdict = verify_theorem6(square)
        assert verdict.eps == pytest.approx(1 / 3)
        assert "alpha_bound" not in verdict.diagnostics


class TestLemma7:
    def test_triangle(self, scalene):
        report = lemma7_check(scalene)
        assert report.alphas == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
        assert report.product == pytest.approx(6.0)
        assert report.bound == pytest.approx(6.0)
        assert report.passed

    def test_outer_triangle_with_midpoint_triangle(self):
        report = lemma7_check(_outer_triangle(), inner=_midpoint_triangle())
        assert report.alphas == pytest.approx((1.0, 1.0, 1.0))
        assert report.product == pytest.approx(6.0)
        assert report.chain == pytest.approx((6.0,) * 5)
        assert report.inner_area == pytest.approx(report.inner_area_formula)
        assert report.outer_polar_area == pytest.approx(report.outer_polar_area_formula)
        assert report.passed

    def test_truncated_triangle(self):
        outer = _outer_triangle()
        # halfway between the midpoint triangle side (R/4) and the apex (R), R = 2/sqrt(3)
        level = 5 / (4 * np.sqrt(3))
        cuts = [HalfPlane.from_normal(v, level * np.linalg.norm(v)) for v in outer.vertices]
        K = clip_all(outer, cuts)
        report = lemma7_check(K, inner=_midpoint_triangle())
        assert report.alphas == pytest.approx((0.5, 0.5, 0.5))
        assert report.bound == pytest.approx(6.375)
        assert report.inner_area == pytest.approx(report.inner_area_formula)
        assert report.outer_polar_area == pytest.approx(report.outer_polar_area_formula)
        assert report.product >= report.bound
        assert report.passed

    @pytest.mark.parametrize("seed", range(1, 9))
    def test_random(self, seed):
        report = lemma7_check(random_body(seed, 3 + seed))
        assert report.inner_area == pytest.approx(report.inner_area_formula)
        assert report.outer_polar_area == pytest.approx(report.outer_polar_area_formula)
        assert report.passed
        assert report.verdict().theorem is TheoremId.L7

    def test_inner_must_be_inscribed(self, square):
        with pytest.raises(HypothesisViolated):
            lemma7_check(square, inner=scale(_midpoint_triangle(), 3.0))


class TestExample2:
    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_offset_reaches_lower_bound(self, n):
        result = example2_centre_lower(n, 1e-6)
        assert result.offset >= result.lower
        assert result.passed

    def test_offset_solves_equation(self):
        result = example2_centre_lower(4, 1e-4, rtol=1e-10)
        K = regular_ngon(4)
        K = scale(K, 1 / diameter(K))
        P = area(K) * polar_area_at(K, (0.0, result.offset))
        assert P == pytest.approx(1.0001 * ngon_product(4), rel=1e-8)

    def test_large_eps_uses_second_disjunct(self):
        assert example2_centre_lower(6, 0.5).passed

    def test_exponent(self):
        exponent = example2_exponent(4, [1e-8, 1e-7, 1e-6, 1e-5])
        assert exponent == pytest.approx(0.5, abs=0.05)

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            example2_centre_lower(4, 0.0)
        with pytest.raises(InvalidParameter):
            example2_centre_lower(4, 1e-4, direction=(0.0, 0.0))


def test_bumped_excess_slope():
    assert bumped_excess_slope(4, [1e-5, 2e-5, 5e-5, 1e-4]) == pytest.approx(1.0, abs=0.05)
