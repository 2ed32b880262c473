import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import disk_points, midpoint_rule
from diskmetric.exceptions import DomainError
from diskmetric.metric import (
    ORIGIN,
    STANDARD,
    DiskPoint,
    Generator,
    directional_distance,
    distance,
    distance_closed_form,
    distance_numeric,
    distance_origin_bound,
    generator_eval,
    interval_distance,
    power_generator,
    project,
    radial_distance,
    reflect,
    rotate,
    validate_generator,
)

HALF_RADIUS_D = (8 * math.sqrt(3) - 9) * math.pi / 9
IDEAL_HEIGHT_D = (3 * math.sqrt(2) - 2) * math.pi / 2


class TestDiskPoint:
    def test_rejects_boundary_and_outside(self):
        for xy in [(1.0, 0.0), (0.8, 0.8), (1 - 1e-13, 0.0), (math.nan, 0.0)]:
            with pytest.raises(DomainError):
                DiskPoint(*xy)

    def test_accepts_interior(self):
        p = DiskPoint(0.3, 0.4)
        assert p.norm == pytest.approx(0.5)
        assert tuple(p) == (0.3, 0.4)

    def test_tuple_points_are_accepted(self):
        assert distance_closed_form((0, 0), (0.5, 0)) == distance_closed_form(ORIGIN, DiskPoint(0.5, 0))


class TestGenerator:
    @pytest.mark.parametrize("t, expected", [(0.0, 0.0), (0.5, 1.0), (-0.75, -3.0)])
    def test_standard_values(self, t, expected):
        assert generator_eval(STANDARD, t) == expected

    @pytest.mark.parametrize("t", [1.0, -1.0, 1.5])
    def test_domain(self, t):
        with pytest.raises(DomainError):
            STANDARD(t)

    def test_standard_is_odd_and_increasing(self):
        t = np.linspace(-0.999, 0.999, 2001)
        v = STANDARD(t)
        assert np.all(np.diff(v) > 0)
        np.testing.assert_array_equal(v, -STANDARD(-t))

    def test_power_one_is_standard(self):
        t = np.linspace(-0.99, 0.99, 101)
        np.testing.assert_allclose(power_generator(1.0)(t), STANDARD(t), rtol=1e-12, atol=1e-14)


class TestIntervalDistance:
    @pytest.mark.parametrize("s, t, expected", [(0.0, 0.5, 1.0), (-0.5, 0.5, 2.0), (0.25, 0.25, 0.0)])
    def test_examples(self, s, t, expected):
        assert interval_distance(STANDARD, s, t) == expected

    @given(st.floats(-0.99, 0.99), st.floats(-0.99, 0.99))
    def test_opposite_signs(self, s, t):
        assume(s * t < 0)
        expected = STANDARD(abs(s)) + STANDARD(abs(t))
        assert interval_distance(STANDARD, s, t) == pytest.approx(expected, rel=1e-14)

    @given(st.lists(st.floats(-0.99, 0.99), min_size=3, max_size=3, unique=True))
    def test_additivity(self, xs):
        q, s, t = sorted(xs)
        lhs = interval_distance(STANDARD, q, s) + interval_distance(STANDARD, s, t)
        # Exact up to one rounding of the sum.
        assert lhs == pytest.approx(interval_distance(STANDARD, q, t), rel=4e-16, abs=1e-300)


class TestProjection:
    def test_examples(self):
        p = DiskPoint(0.3, 0.4)
        assert project(p, 0.0).value == 0.3
        assert project(p, math.pi / 2).value == pytest.approx(0.4, abs=1e-16)
        for theta in np.linspace(0, 2 * math.pi, 7, endpoint=False):
            assert project(ORIGIN, theta).value == 0.0

    @given(disk_points(), st.floats(0, 2 * math.pi))
    def test_bounded_by_norm(self, p, theta):
        assert abs(project(p, theta).value) <= p.norm + 1e-15


class TestDirectionalDistance:
    def test_same_point(self):
        p = DiskPoint(0.2, -0.3)
        assert np.all(directional_distance(p, p, np.linspace(0, 6, 13)) == 0)

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
    def test_radial_formula(self, r):
        theta = np.linspace(0, 2 * math.pi, 37)
        expected = 1.0 / (1.0 - r * np.abs(np.cos(theta))) - 1.0
        np.testing.assert_allclose(directional_distance(ORIGIN, (r, 0.0), theta), expected, rtol=1e-13, atol=1e-15)

    def test_collinear_on_axis(self):
        assert directional_distance((0.2, 0.0), (0.6, 0.0), 0.0) == pytest.approx(1.25, abs=1e-15)

    @given(disk_points(), disk_points(), st.floats(0, math.pi))
    def test_pi_periodic(self, p, q, theta):
        a = directional_distance(p, q, theta)
        b = directional_distance(p, q, theta + math.pi)
        assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


class TestDistanceEvaluators:
    def test_same_point(self):
        p = DiskPoint(0.1, 0.7)
        assert distance_closed_form(p, p) == 0.0
        assert distance_numeric(p, p).value == 0.0

    @pytest.mark.parametrize("r, expected", [(0.5, HALF_RADIUS_D), (math.sqrt(2) / 2, IDEAL_HEIGHT_D)])
    def test_radial_constants(self, r, expected):
        assert distance_closed_form(ORIGIN, (r, 0.0)) == pytest.approx(expected, abs=1e-12)
        assert distance_numeric(ORIGIN, (r, 0.0)).value == pytest.approx(expected, abs=1e-10)
        assert radial_distance(r) == pytest.approx(expected, abs=1e-12)

    def test_displayed_decimals(self):
        assert distance_closed_form(ORIGIN, (0.5, 0.0)) == pytest.approx(1.695205651, abs=1e-9)
        assert distance_closed_form(ORIGIN, (math.sqrt(2) / 2, 0.0)) == pytest.approx(3.522731754, abs=1e-9)

    def test_general_pair_against_riemann_oracle(self):
        p, q = (0.3, 0.1), (-0.2, 0.4)
        # 2e6-panel midpoint rule of |f(p.u) - f(q.u)| over [0, pi]
        oracle = 1.821908080924691
        assert distance_closed_form(p, q) == pytest.approx(oracle, abs=1e-10)
        assert distance_numeric(p, q).value == pytest.approx(distance_closed_form(p, q), abs=1e-8)

    def test_riemann_oracle_live(self):
        p, q = DiskPoint(-0.6, 0.35), DiskPoint(0.7, -0.1)

        def integrand(theta):
            c, s = np.cos(theta), np.sin(theta)
            return np.abs(STANDARD.func(p.x * c + p.y * s) - STANDARD.func(q.x * c + q.y * s))

        assert distance_closed_form(p, q) == pytest.approx(midpoint_rule(integrand, 0, math.pi), abs=1e-8)

    @settings(max_examples=200, deadline=None)
    @given(disk_points(0.999), disk_points(0.999))
    def test_closed_form_matches_quadrature(self, p, q):
        assert distance_closed_form(p, q) == pytest.approx(distance_numeric(p, q).value, abs=1e-8)

    @given(disk_points(), disk_points())
    def test_closed_form_symmetry_exact(self, p, q):
        assert distance_closed_form(p, q) == distance_closed_form(q, p)

    @given(disk_points(), disk_points())
    def test_numeric_symmetry(self, p, q):
        assert distance_numeric(p, q).value == pytest.approx(distance_numeric(q, p).value, abs=1e-9)

    @given(disk_points(), disk_points(), st.floats(0, 2 * math.pi))
    def test_rotation_and_reflection(self, p, q, phi):
        d = distance_closed_form(p, q)
        assert distance_closed_form(rotate(p, phi), rotate(q, phi)) == pytest.approx(d, abs=1e-9)
        assert distance_closed_form(reflect(p, phi), reflect(q, phi)) == pytest.approx(d, abs=1e-9)

    @given(disk_points(), disk_points(), disk_points())
    def test_triangle_inequality(self, p, q, r):
        assert distance_closed_form(p, q) + distance_closed_form(q, r) >= distance_closed_form(p, r) - 1e-9

    @given(disk_points(), disk_points(), st.floats(0, 1))
    def test_collinear_additivity(self, x, z, t):
        y = DiskPoint(x.x + t * (z.x - x.x), x.y + t * (z.y - x.y))
        total = distance_closed_form(x, y) + distance_closed_form(y, z)
        assert total == pytest.approx(distance_closed_form(x, z), abs=1e-8)

    def test_dispatching_distance(self):
        ident = Generator.custom(lambda t: t, "identity")
        p, q = DiskPoint(0.3, 0.0), DiskPoint(-0.2, 0.0)
        # identity generator: integral of |(p - q).u| over [0, pi] = 2 |p - q|
        assert distance(p, q, ident) == pytest.approx(2 * 0.5, abs=1e-10)
        assert distance(p, q) == distance_closed_form(p, q)


class TestOriginBound:
    def test_examples(self):
        assert distance_origin_bound(ORIGIN) == 0.0
        assert distance_origin_bound((0.5, 0.0)) == pytest.approx(math.pi)

    @given(disk_points(0.999))
    def test_bound_holds(self, p):
        assume(p != ORIGIN)
        # the closed form carries an absolute error of a few ulps of pi
        assert distance_closed_form(ORIGIN, p) < distance_origin_bound(p) + 1e-15


class TestValidateGenerator:
    def test_standard(self):
        rep = validate_generator(STANDARD, 101)
        assert rep.monotone and rep.divergent and rep.admissible

    def test_identity_bounded(self):
        rep = validate_generator(Generator.custom(lambda t: t), 101)
        assert rep.monotone and not rep.divergent
        assert max(rep.integrals) <= 4.0
        np.testing.assert_allclose(rep.integrals, [4 * t for t in rep.t_values], rtol=1e-9)

    def test_negated(self):
        assert not validate_generator(Generator.custom(lambda t: -t), 101).monotone

    def test_power_family_threshold(self):
        assert validate_generator(power_generator(0.25), 101).divergent is False
        assert validate_generator(power_generator(0.75), 101).divergent is True

    def test_scalar_generator(self):
        rep = validate_generator(Generator.custom(lambda t: t / (1 - abs(t)), vectorized=False), 11)
        assert rep.admissible

    def test_bad_generator(self):
        def broken(t):
            raise RuntimeError("nope")

        with pytest.raises(DomainError):
            validate_generator(Generator.custom(broken), 11)
        with pytest.raises(DomainError):
            validate_generator(STANDARD, 1)

    def test_custom_numeric_distance(self):
        g = power_generator(1.0)
        assert distance_numeric(ORIGIN, (0.5, 0.0), g).value == pytest.approx(HALF_RADIUS_D, abs=1e-10)
