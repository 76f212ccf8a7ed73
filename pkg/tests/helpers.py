"""Seeded random-instance generators shared by the test modules."""

import math
import random

from isometry_lab import (
    Rotation2,
    Rotation3,
    Segment2,
    UnitVector3,
    Vec2,
    Vec3,
)


def rand_vec2(rng: random.Random, span: float = 5.0) -> Vec2:
    return Vec2(rng.uniform(-span, span), rng.uniform(-span, span))


def rand_rotation2(rng: random.Random, min_angle: float = 1e-6) -> Rotation2:
    while True:
        angle = rng.uniform(-math.pi, math.pi)
        if abs(angle) >= min_angle:
            return Rotation2(rand_vec2(rng), angle)


def rand_segment2(rng: random.Random, min_len: float = 0.1) -> Segment2:
    while True:
        a, b = rand_vec2(rng), rand_vec2(rng)
        if (a - b).norm() >= min_len:
            return Segment2(a, b)


def rand_unit3(rng: random.Random) -> UnitVector3:
    while True:
        v = Vec3(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        if v.norm() > 1e-3:
            return UnitVector3.from_vec(v.normalized())


def rand_rotation3(rng: random.Random, min_angle: float = 1e-6) -> Rotation3:
    return Rotation3(rand_unit3(rng), rng.uniform(min_angle, math.pi - min_angle))


def rand_sphere_pair(
    rng: random.Random, min_sep: float = 0.1, max_sep: float = math.pi - 0.1
) -> tuple[UnitVector3, UnitVector3]:
    """Two sphere points neither too close nor too nearly antipodal."""
    x = rand_unit3(rng)
    while True:
        y = rand_unit3(rng)
        sep = math.acos(max(-1.0, min(1.0, x.dot(y))))
        if min_sep <= sep <= max_sep:
            return x, y
