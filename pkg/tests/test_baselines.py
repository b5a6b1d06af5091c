"""Classical rule tests: frozen worked-example values, orders, identities."""

import math
import random

import pytest

from nrquad.baselines import (
    DepthLimitError,
    NonfiniteSampleError,
    error_stats,
    left_riemann,
    midpoint,
    reference_integral,
    right_riemann,
    simpson,
    trapezoid,
)
from nrquad.expressions import parse
from nrquad.quadrature import Interval
from support import poly_value, random_polynomial

QUAD = parse("2*x^2+3*x+1")
QUAD_INTERVAL = Interval(-0.5, 1.0)
UNIT = Interval(0.0, 1.0)
EXP = parse("exp(x)")


class TestFixedRules:
    def test_left_riemann_worked_example(self):
        # 0.5 * (f(-0.5) + f(0) + f(0.5)) = 0.5 * (0 + 1 + 3)
        value = left_riemann(QUAD, QUAD_INTERVAL, 3)
        assert value == 2.0
        assert error_stats(value, 3.375).rel_error_pct == pytest.approx(40.7407, abs=1e-4)

    def test_right_riemann_worked_example(self):
        value = right_riemann(QUAD, QUAD_INTERVAL, 3)
        assert value == 5.0
        assert error_stats(value, 3.375).rel_error_pct == pytest.approx(48.1481, abs=1e-4)

    def test_midpoint_worked_example(self):
        value = midpoint(QUAD, QUAD_INTERVAL, 3)
        assert value == 3.3125
        assert error_stats(value, 3.375).rel_error_pct == pytest.approx(1.8518, abs=1e-4)

    def test_trapezoid_worked_example(self):
        value = trapezoid(QUAD, QUAD_INTERVAL, 3)
        assert value == 3.5
        assert error_stats(value, 3.375).rel_error_pct == pytest.approx(3.7037, abs=1e-4)

    def test_constants_are_exact(self):
        one = parse("0*x+1")
        assert left_riemann(one, UNIT, 4) == 1.0
        assert right_riemann(one, UNIT, 4) == 1.0
        assert midpoint(one, UNIT, 7) == 1.0
        assert trapezoid(one, UNIT, 2) == 1.0

    def test_identity_endpoints(self):
        x = parse("x")
        assert left_riemann(x, UNIT, 1) == 0.0
        assert right_riemann(x, UNIT, 1) == 1.0
        assert midpoint(x, UNIT, 1) == 0.5
        assert trapezoid(x, UNIT, 1) == 0.5

    def test_simpson_exact_on_quadratic(self):
        assert simpson(QUAD, QUAD_INTERVAL, 2) == 3.375

    def test_simpson_exact_on_cubic(self):
        assert simpson(parse("x^3"), UNIT, 2) == 0.25

    def test_simpson_rejects_odd_counts(self):
        with pytest.raises(ValueError, match="even"):
            simpson(QUAD, QUAD_INTERVAL, 3)

    @pytest.mark.parametrize("rule", [left_riemann, right_riemann, midpoint, trapezoid, simpson])
    def test_rejects_nonpositive_counts(self, rule):
        with pytest.raises(ValueError):
            rule(QUAD, QUAD_INTERVAL, 0)

    def test_nonfinite_sample_names_the_point(self):
        with pytest.raises(NonfiniteSampleError) as err:
            trapezoid(parse("ln(x)"), Interval(-1.0, 1.0), 2)
        assert err.value.x == -1.0


class TestOrderingInvariants:
    @pytest.mark.parametrize("f, interval", [(QUAD, QUAD_INTERVAL), (EXP, UNIT)])
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 17])
    def test_riemann_brackets_on_increasing_f(self, f, interval, n):
        lo = left_riemann(f, interval, n)
        hi = right_riemann(f, interval, n)
        assert lo <= midpoint(f, interval, n) <= hi
        assert lo <= trapezoid(f, interval, n) <= hi

    @pytest.mark.parametrize("f, interval", [(parse("x^2"), Interval(0.0, 2.0)), (EXP, UNIT)])
    @pytest.mark.parametrize("n", [1, 2, 4, 9])
    def test_midpoint_trapezoid_sandwich_on_convex_f(self, f, interval, n):
        exact = reference_integral(f, interval)
        assert midpoint(f, interval, n) <= exact <= trapezoid(f, interval, n)


class TestConvergenceOrders:
    def test_second_order_rules_quarter_their_error(self):
        exact = math.e - 1.0
        for rule in (midpoint, trapezoid):
            e8 = abs(rule(EXP, UNIT, 8) - exact)
            e16 = abs(rule(EXP, UNIT, 16) - exact)
            assert 3.8 <= e8 / e16 <= 4.2

    def test_simpson_is_fourth_order(self):
        exact = math.e - 1.0
        e4 = abs(simpson(EXP, UNIT, 4) - exact)
        e8 = abs(simpson(EXP, UNIT, 8) - exact)
        assert 14.0 <= e4 / e8 <= 18.0


class TestRefinementIdentity:
    def test_trapezoid_refines_through_midpoint(self):
        rng = random.Random(424242)
        smooth = [parse("exp(x)"), parse("sin(x)+2*x"), parse("x^3-x+2")]
        for _ in range(20):
            f, _ = random_polynomial(rng, max_degree=4)
            smooth.append(f)
        for f in smooth:
            interval = Interval(-1.0, 1.5)
            for n in (1, 2, 3, 7):
                refined = trapezoid(f, interval, 2 * n)
                mean = 0.5 * (trapezoid(f, interval, n) + midpoint(f, interval, n))
                assert refined == pytest.approx(mean, rel=1e-12, abs=1e-12)


class TestReferenceIntegral:
    def test_worked_example(self):
        assert reference_integral(QUAD, QUAD_INTERVAL) == pytest.approx(3.375, abs=1e-10)

    def test_identity(self):
        assert reference_integral(parse("x"), UNIT) == pytest.approx(0.5, abs=1e-12)

    def test_exponential(self):
        assert reference_integral(EXP, UNIT) == pytest.approx(math.e - 1.0, abs=1e-10)

    def test_polynomials_against_analytic_antiderivative(self):
        rng = random.Random(11)
        for _ in range(25):
            f, coeffs = random_polynomial(rng, max_degree=6)
            a = rng.uniform(-2.0, 0.0)
            b = a + rng.uniform(0.5, 3.0)
            anti = [0.0] + [c / (i + 1) for i, c in enumerate(coeffs)]
            exact = poly_value(anti, b) - poly_value(anti, a)
            value = reference_integral(f, Interval(a, b))
            assert value == pytest.approx(exact, rel=1e-9, abs=1e-9)

    def test_undefined_region_hits_depth_cap(self):
        with pytest.raises(DepthLimitError):
            reference_integral(parse("ln(x)"), Interval(-1.0, 1.0))

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            reference_integral(QUAD, QUAD_INTERVAL, tol=0.0)


class TestErrorStats:
    def test_midpoint_stats_of_worked_example(self):
        stats = error_stats(3.3125, 3.375)
        assert stats.abs_error == 0.0625
        assert stats.rel_error_pct == pytest.approx(1.8518, abs=1e-4)

    def test_exact_match_is_zero(self):
        stats = error_stats(2.5, 2.5)
        assert stats.abs_error == 0.0
        assert stats.rel_error_pct == 0.0

    def test_printed_term_sum_of_worked_example(self):
        # the honest relative error of the four-panel chain's printed terms
        stats = error_stats(3.6142, 3.375)
        assert stats.rel_error_pct == pytest.approx(7.088, abs=1e-3)

    def test_zero_reference_is_undefined(self):
        assert math.isnan(error_stats(1.0, 0.0).rel_error_pct)
        assert error_stats(1.0, 0.0).abs_error == 1.0
