"""
Tests for upper half-plane geometry.
"""

import math

import pytest

from app.errors import DomainError
from app.geometry import (
    GeodesicLine,
    Isometry,
    PointH,
    Tangent,
    act,
    axis_frame,
    axis_tangent,
    dist,
    foot_and_offset,
    geodesic_flow,
    geodesic_through,
    isometry_to_tangent,
    mobius_apply,
    tangent_to_isometry,
    u_invariant,
)


def random_point(rng):
    return PointH(rng.uniform(-3.0, 3.0), math.exp(rng.uniform(-2.0, 2.0)))


def random_tangent(rng):
    return Tangent(random_point(rng), rng.uniform(0.0, 2.0 * math.pi))


def random_isometry(rng):
    return tangent_to_isometry(random_tangent(rng))


def same_angle(a, b, tol=1e-9):
    gap = (a - b) % (2.0 * math.pi)
    return min(gap, 2.0 * math.pi - gap) <= tol


def same_tangent(s, t, tol=1e-9):
    return (
        s.base.x == pytest.approx(t.base.x, abs=tol)
        and s.base.y == pytest.approx(t.base.y, rel=tol)
        and same_angle(s.angle, t.angle, tol)
    )


class TestPointsAndLines:
    """Test validation of the basic geometric records."""

    def test_point_requires_upper_half_plane(self):
        """Test that y <= 0 is rejected."""
        with pytest.raises(DomainError, match="upper half-plane"):
            PointH(0.0, 0.0)
        with pytest.raises(ValueError):
            PointH(1.0, -2.0)

    def test_tangent_angle_reduced(self):
        """Test that angles are stored modulo 2 pi."""
        t = Tangent(PointH(0.0, 1.0), 2.0 * math.pi + 0.25)
        assert t.angle == pytest.approx(0.25)
        assert 0.0 <= Tangent(PointH(0.0, 1.0), -0.5).angle < 2.0 * math.pi

    def test_geodesic_endpoints_distinct(self):
        """Test that degenerate geodesics are rejected."""
        with pytest.raises(DomainError, match="distinct"):
            GeodesicLine(1.0, 1.0)

    def test_isometry_normalised(self):
        """Test that Isometry.of rescales to determinant one with canonical sign."""
        g = Isometry.of(-2.0, 0.0, 0.0, -2.0)
        assert (g.a, g.b, g.c, g.d) == pytest.approx((1.0, 0.0, 0.0, 1.0))
        with pytest.raises(DomainError, match="positive determinant"):
            Isometry.of(0.0, 1.0, 1.0, 0.0)


class TestMobius:
    """Test fractional linear transformations."""

    def test_identity(self):
        """Test the identity fixes points."""
        z = mobius_apply(Isometry.identity(), PointH(0.3, 2.0))
        assert (z.x, z.y) == pytest.approx((0.3, 2.0))

    def test_inversion(self):
        """Test S sends i/2 to 2i."""
        z = mobius_apply(Isometry(0.0, -1.0, 1.0, 0.0), PointH(0.0, 0.5))
        assert (z.x, z.y) == pytest.approx((0.0, 2.0))

    def test_translation(self):
        """Test T sends i to 1 + i."""
        z = mobius_apply(Isometry(1.0, 1.0, 0.0, 1.0), PointH(0.0, 1.0))
        assert (z.x, z.y) == pytest.approx((1.0, 1.0))

    def test_composition(self, rng):
        """Test (g h) z = g (h z)."""
        for _ in range(20):
            g, h, z = random_isometry(rng), random_isometry(rng), random_point(rng)
            left = mobius_apply(g @ h, z)
            right = mobius_apply(g, mobius_apply(h, z))
            assert left.x == pytest.approx(right.x, rel=1e-9, abs=1e-9)
            assert left.y == pytest.approx(right.y, rel=1e-9)

    def test_boundary_action(self):
        """Test the action on the boundary, including infinity."""
        g = Isometry.of(1.0, 1.0, 1.0, 2.0)
        assert g.apply_boundary(math.inf) == pytest.approx(1.0)
        assert g.apply_boundary(-2.0) == math.inf
        assert g.apply_boundary(0.0) == pytest.approx(0.5)


class TestDistance:
    """Test the distance and the u-invariant."""

    def test_vertical(self):
        """Test dist(i, 2i) = log 2 and u = 1/8."""
        assert dist(PointH(0, 1), PointH(0, 2)) == pytest.approx(math.log(2.0), rel=1e-12)
        assert u_invariant(PointH(0, 1), PointH(0, 2)) == pytest.approx(0.125)

    def test_horizontal(self):
        """Test dist(i, 1 + i) = 2 asinh(1/2) and u = 1/4."""
        assert dist(PointH(0, 1), PointH(1, 1)) == pytest.approx(0.962424, abs=1e-6)
        assert u_invariant(PointH(0, 1), PointH(1, 1)) == pytest.approx(0.25)

    def test_zero_and_symmetry(self, rng):
        """Test dist(z, z) = 0 and symmetry."""
        for _ in range(20):
            z, w = random_point(rng), random_point(rng)
            assert dist(z, z) == 0.0
            assert dist(z, w) == pytest.approx(dist(w, z), rel=1e-12)

    def test_log_formula(self, rng):
        """Test agreement with log((|z - conj w| + |z - w|) / (|z - conj w| - |z - w|))."""
        for _ in range(20):
            z, w = random_point(rng), random_point(rng)
            near = abs(z.z - w.z)
            far = abs(z.z - w.z.conjugate())
            assert dist(z, w) == pytest.approx(math.log((far + near) / (far - near)), rel=1e-9)

    def test_u_is_sinh_squared(self, rng):
        """Test u = sinh^2(rho / 2)."""
        for _ in range(50):
            z, w = random_point(rng), random_point(rng)
            assert u_invariant(z, w) == pytest.approx(math.sinh(0.5 * dist(z, w)) ** 2, rel=1e-10)

    def test_isometry_invariance(self, rng):
        """Test dist(gz, gw) = dist(z, w) and the same for u."""
        for _ in range(50):
            g, z, w = random_isometry(rng), random_point(rng), random_point(rng)
            gz, gw = mobius_apply(g, z), mobius_apply(g, w)
            assert dist(gz, gw) == pytest.approx(dist(z, w), rel=1e-8)
            assert u_invariant(gz, gw) == pytest.approx(u_invariant(z, w), rel=1e-8)


class TestTangents:
    """Test the identification of unit tangents with isometries."""

    def test_base_tangent_is_identity(self):
        """Test (i, 0) corresponds to the identity."""
        g = tangent_to_isometry(Tangent(PointH(0.0, 1.0), 0.0))
        assert g.close_to(Isometry.identity())

    def test_pure_scaling(self):
        """Test (4i, 0) corresponds to diag(2, 1/2)."""
        g = tangent_to_isometry(Tangent(PointH(0.0, 4.0), 0.0))
        assert g.close_to(Isometry(2.0, 0.0, 0.0, 0.5))

    def test_round_trip(self):
        """Test isometry_to_tangent inverts tangent_to_isometry."""
        t = Tangent(PointH(0.37, 1.9), 2.1)
        assert same_tangent(isometry_to_tangent(tangent_to_isometry(t)), t, 1e-12)

    def test_round_trip_random(self, rng):
        """Test the round trip on random tangents."""
        for _ in range(50):
            t = random_tangent(rng)
            assert same_tangent(isometry_to_tangent(tangent_to_isometry(t)), t)

    def test_angle_measured_from_vertical(self):
        """Test that angle pi/2 at i flows toward negative x."""
        t = Tangent(PointH(0.0, 1.0), 0.5 * math.pi)
        moved = geodesic_flow(t, 0.1)
        assert moved.base.x < 0.0


class TestGeodesicFlow:
    """Test the geodesic flow."""

    def test_vertical_flow(self):
        """Test flowing up from i for time 1 reaches e i."""
        moved = geodesic_flow(Tangent(PointH(0.0, 1.0), 0.0), 1.0)
        assert same_tangent(moved, Tangent(PointH(0.0, math.e), 0.0))

    def test_zero_time(self, rng):
        """Test flow for time 0 is the identity."""
        t = random_tangent(rng)
        assert geodesic_flow(t, 0.0) == t

    def test_group_law(self, rng):
        """Test flow(flow(t, 0.3), -0.8) = flow(t, -0.5)."""
        t = random_tangent(rng)
        assert same_tangent(geodesic_flow(geodesic_flow(t, 0.3), -0.8), geodesic_flow(t, -0.5), 1e-12)

    def test_unit_speed(self, rng):
        """Test the base point moves at unit speed."""
        for _ in range(20):
            t = random_tangent(rng)
            s = rng.uniform(-3.0, 3.0)
            assert dist(t.base, geodesic_flow(t, s).base) == pytest.approx(abs(s), rel=1e-9)

    def test_equivariance(self, rng):
        """Test flow(g t, s) = g flow(t, s)."""
        for _ in range(20):
            g, t = random_isometry(rng), random_tangent(rng)
            s = rng.uniform(-2.0, 2.0)
            assert same_tangent(geodesic_flow(act(g, t), s), act(g, geodesic_flow(t, s)), 1e-8)

    def test_geodesic_through(self):
        """Test the line through (i, 0) is the imaginary axis."""
        line = geodesic_through(Tangent(PointH(0.0, 1.0), 0.0))
        assert line.endpoint_minus == pytest.approx(0.0)
        assert math.isinf(line.endpoint_plus)


class TestAxisFrames:
    """Test frames adapted to a geodesic."""

    def test_imaginary_axis(self):
        """Test the frame of (0, inf) fixes the axis."""
        g = axis_frame(GeodesicLine(0.0, math.inf))
        assert g.apply_boundary(0.0) == pytest.approx(0.0)
        assert math.isinf(g.apply_boundary(math.inf))

    def test_unit_semicircle(self):
        """Test the frame of (-1, 1) sends -1 to 0 and 1 to infinity."""
        g = axis_frame(GeodesicLine(-1.0, 1.0))
        assert g.apply_boundary(-1.0) == pytest.approx(0.0, abs=1e-12)
        assert math.isinf(g.apply_boundary(1.0))

    def test_form_axis(self):
        """Test the frame of the golden-ratio axis."""
        root = math.sqrt(5.0)
        line = GeodesicLine((-1.0 - root) / 2.0, (-1.0 + root) / 2.0)
        g = axis_frame(line)
        assert g.apply_boundary(line.endpoint_minus) == pytest.approx(0.0, abs=1e-12)
        assert abs(g.apply_boundary(line.endpoint_plus)) > 1e12

    def test_infinite_minus_endpoint(self):
        """Test a line coming from infinity."""
        g = axis_frame(GeodesicLine(math.inf, 2.0))
        assert g.apply_boundary(math.inf) == pytest.approx(0.0)
        assert math.isinf(g.apply_boundary(2.0))

    def test_axis_tangent_flows_along_line(self, rng):
        """Test axis_tangent lies on the line and points to endpoint_plus."""
        line = GeodesicLine(-0.7, 2.3)
        t = axis_tangent(line)
        through = geodesic_through(t)
        assert through.endpoint_minus == pytest.approx(-0.7)
        assert through.endpoint_plus == pytest.approx(2.3)


class TestFootAndOffset:
    """Test positions relative to the imaginary axis."""

    def test_on_axis(self):
        """Test a point on the axis has offset 0."""
        assert foot_and_offset(PointH(0.0, 3.0)) == pytest.approx((math.log(3.0), 0.0))

    def test_off_axis(self):
        """Test (1, 1) has foot log sqrt 2 and offset asinh 1."""
        s, d = foot_and_offset(PointH(1.0, 1.0))
        assert s == pytest.approx(0.5 * math.log(2.0))
        assert d == pytest.approx(0.881374, abs=1e-6)
        assert foot_and_offset(PointH(-1.0, 1.0))[1] == pytest.approx(d)

    def test_foot_is_nearest(self, rng):
        """Test the foot point realises the offset and is a local minimum."""
        for _ in range(20):
            z = random_point(rng)
            s, d = foot_and_offset(z)
            assert dist(z, PointH(0.0, math.exp(s))) == pytest.approx(d, rel=1e-9, abs=1e-12)
            for h in (-1e-3, 1e-3):
                assert dist(z, PointH(0.0, math.exp(s + h))) >= d
