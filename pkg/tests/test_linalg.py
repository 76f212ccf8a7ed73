import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import rand_rotation3
from isometry_lab import (
    IdentityRotation,
    Mat2,
    Mat3,
    NotARotation,
    Rotation3,
    SingularMatrix,
    UnitVector3,
    Vec2,
    Vec3,
    cross,
    eig3_rotation,
    rotation_matrix,
    solve2,
    wrap_angle,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
vec3s = st.builds(Vec3, finite, finite, finite)


class TestWrapAngle:
    @given(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False))
    def test_range_and_congruence(self, theta):
        a = wrap_angle(theta)
        assert -math.pi < a <= math.pi
        assert math.isclose(
            math.cos(a), math.cos(theta), abs_tol=1e-9
        ) and math.isclose(math.sin(a), math.sin(theta), abs_tol=1e-9)

    def test_negative_pi_maps_to_pi(self):
        assert wrap_angle(-math.pi) == math.pi


class TestCross:
    def test_right_handed_basis(self):
        assert cross(Vec3(1, 0, 0), Vec3(0, 1, 0)) == Vec3(0, 0, 1)

    def test_self_cross_vanishes(self):
        x = Vec3(2.5, -1.0, 0.25)
        assert cross(x, x) == Vec3(0, 0, 0)

    def test_componentwise_example(self):
        # (1,2,3) x (4,5,6), evaluated by hand from the definition
        assert cross(Vec3(1, 2, 3), Vec3(4, 5, 6)) == Vec3(-3, 6, -3)

    @given(vec3s, vec3s)
    def test_orthogonal_to_both_factors(self, x, y):
        c = cross(x, y)
        scale = max(1.0, x.norm() * y.norm())
        assert abs(c.dot(x)) <= 1e-12 * scale * max(1.0, x.norm())
        assert abs(c.dot(y)) <= 1e-12 * scale * max(1.0, y.norm())

    @given(vec3s, vec3s)
    def test_lagrange_identity(self, x, y):
        # |x cross y|^2 + (x.y)^2 = |x|^2 |y|^2, a rounding-stable form of
        # the magnitude law
        lhs = cross(x, y).dot(cross(x, y)) + x.dot(y) ** 2
        rhs = x.dot(x) * y.dot(y)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)

    def test_magnitude_is_sine_law(self):
        rng = random.Random(7)
        for _ in range(300):
            x = Vec3(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
            y = Vec3(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
            nx, ny = x.norm(), y.norm()
            if nx < 0.1 or ny < 0.1:
                continue
            theta = math.acos(max(-1.0, min(1.0, x.dot(y) / (nx * ny))))
            if not 0.1 < theta < math.pi - 0.1:
                continue
            assert math.isclose(
                cross(x, y).norm(), nx * ny * math.sin(theta), rel_tol=1e-12, abs_tol=1e-12
            )


class TestSolve2:
    def test_identity_solve(self):
        assert solve2(Mat2.identity(), Vec2(3, 4)) == Vec2(3, 4)

    def test_diagonal_scaling(self):
        assert solve2(Mat2(2, 0, 0, 2), Vec2(2, 4)) == Vec2(1, 2)

    def test_published_four_digit_instance(self):
        # four-decimal inputs reproduce the four-decimal answer
        x = solve2(Mat2(1.7071, 0.7071, -0.7071, 1.7071), Vec2(1.4142, 0.0))
        assert abs(x.x - 0.7071) <= 1e-4
        assert abs(x.y - 0.2929) <= 1e-4

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            solve2(Mat2(1, 2, 2, 4), Vec2(1, 1))

    def test_singularity_test_is_scale_invariant(self):
        m = Mat2.rotation(0.3)
        tiny = Mat2(m.m00 * 1e-8, m.m01 * 1e-8, m.m10 * 1e-8, m.m11 * 1e-8)
        x = solve2(tiny, tiny.mv(Vec2(2.0, -3.0)))
        assert math.isclose(x.x, 2.0, rel_tol=1e-9)
        assert math.isclose(x.y, -3.0, rel_tol=1e-9)

    @given(
        st.floats(min_value=-math.pi, max_value=math.pi),
        st.floats(min_value=0.1, max_value=10.0),
        st.builds(Vec2, finite, finite),
    )
    def test_round_trip_on_conformal_matrices(self, theta, s, x):
        r = Mat2.rotation(theta)
        m = Mat2(r.m00 * s, r.m01 * s, r.m10 * s, r.m11 * s)
        got = solve2(m, m.mv(x))
        assert (got - x).norm() <= 1e-10 * max(1.0, x.norm())


def _mat3_to_np(m: Mat3) -> np.ndarray:
    return np.array(m.rows)


class TestEig3Rotation:
    def test_coordinate_axis_rotation(self):
        m = rotation_matrix(_rot_z(math.pi / 6)).m
        eig = eig3_rotation(m)
        assert eig.lambda_real == 1.0
        a, b = eig.complex_pair
        assert math.isclose(a, math.cos(math.pi / 6), abs_tol=1e-12)
        assert math.isclose(b, math.sin(math.pi / 6), abs_tol=1e-12)
        assert (eig.axis - Vec3(0, 0, 1)).norm() <= 1e-12

    def test_two_axis_composite(self):
        # frozen from an independent dense eigensolver run on the same product
        m = (
            rotation_matrix(_rot_y(math.pi / 4)).m
            @ rotation_matrix(_rot_z(math.pi / 6)).m
        )
        eig = eig3_rotation(m)
        a, b = eig.complex_pair
        assert math.isclose(a, 0.5927523103333905, abs_tol=1e-9)
        assert math.isclose(b, 0.8053848139829978, abs_tol=1e-9)
        expected_axis = Vec3(0.21949345483979876, 0.8191607253909539, 0.5299040755263686)
        assert (eig.axis - expected_axis).norm() <= 1e-9

    def test_identity_raises_signal(self):
        with pytest.raises(IdentityRotation):
            eig3_rotation(Mat3.identity())

    def test_reflection_rejected(self):
        m = Mat3(((1, 0, 0), (0, 1, 0), (0, 0, -1)))
        with pytest.raises(NotARotation):
            eig3_rotation(m)

    def test_scaled_matrix_rejected(self):
        m = Mat3(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
        with pytest.raises(NotARotation):
            eig3_rotation(m)

    def test_against_dense_eigensolver(self):
        rng = random.Random(42)
        for _ in range(300):
            m = rotation_matrix(rand_rotation3(rng, min_angle=1e-3)).m
            eig = eig3_rotation(m)
            w, v = np.linalg.eig(_mat3_to_np(m))
            i = int(np.argmin(np.abs(w - 1.0)))
            ref_axis = np.real(v[:, i])
            ref_axis /= np.linalg.norm(ref_axis)
            got = np.array([eig.axis.x, eig.axis.y, eig.axis.z])
            assert min(
                np.linalg.norm(got - ref_axis), np.linalg.norm(got + ref_axis)
            ) <= 1e-9
            ref_complex = w[np.argmax(np.imag(w))]
            a, b = eig.complex_pair
            assert abs(a - ref_complex.real) <= 1e-9
            assert abs(b - ref_complex.imag) <= 1e-9

    def test_eigen_invariants(self):
        rng = random.Random(99)
        for _ in range(300):
            m = rotation_matrix(rand_rotation3(rng, min_angle=1e-3)).m
            eig = eig3_rotation(m)
            a, b = eig.complex_pair
            # eigenvalue product equals det = +1
            assert abs(eig.lambda_real * (a * a + b * b) - m.det()) <= 1e-9
            # the +1 eigenvector direction is preserved
            assert (m.mv(eig.axis) - eig.axis).norm() <= 1e-9
            assert abs(eig.axis.norm() - 1.0) <= 1e-12


def _rot_z(theta):
    return Rotation3(UnitVector3(0, 0, 1), theta)


def _rot_y(theta):
    return Rotation3(UnitVector3(0, 1, 0), theta)
