"""Orientation-preserving isometries of the plane.

Rotations carry a pivot point and a counterclockwise angle in (-pi, pi].
Recovery from a segment correspondence is implemented twice: as a linear
solve for (cos t, sin t) followed by a pivot solve, and as a
straightedge-style construction intersecting perpendicular bisectors. The
two routes check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DegenerateBisector,
    DegenerateSegment,
    LengthMismatch,
    ParallelBisectors,
    SingularMatrix,
    ZeroAngle,
)
from .linalg import Mat2, Vec2, cross2, solve2, wrap_angle

# Solved angles below this are classified as translations: the pivot
# system (I - R) p = c degenerates as the angle goes to zero and the pivot
# runs off to infinity.
ANGLE_MIN = 1e-9

# Relative tolerance for coincidence tests (fixed points, zero vectors).
_COINCIDENT_RTOL = 1e-12


def _finite2(v: Vec2) -> bool:
    return math.isfinite(v.x) and math.isfinite(v.y)


@dataclass(frozen=True)
class Rotation2:
    """Rotation by `angle` radians (counterclockwise) about `pivot`."""

    pivot: Vec2
    angle: float

    def __post_init__(self):
        if not (_finite2(self.pivot) and math.isfinite(self.angle)):
            raise ValueError("rotation parameters must be finite")
        object.__setattr__(self, "angle", wrap_angle(self.angle))


@dataclass(frozen=True)
class Translation2:
    """Translation by the vector `v`."""

    v: Vec2

    def __post_init__(self):
        if not _finite2(self.v):
            raise ValueError("translation vector must be finite")


@dataclass(frozen=True)
class Line2:
    """Line through `point` along the unit vector `direction`."""

    point: Vec2
    direction: Vec2

    def __post_init__(self):
        if not (_finite2(self.point) and _finite2(self.direction)):
            raise ValueError("line parameters must be finite")
        n = self.direction.norm()
        if n == 0.0:
            raise ValueError("line direction must be nonzero")
        if n != 1.0:
            object.__setattr__(self, "direction", Vec2(self.direction.x / n, self.direction.y / n))


@dataclass(frozen=True)
class Reflection2:
    """Mirror across a line."""

    line: Line2


@dataclass(frozen=True)
class Identity2:
    """The do-nothing isometry."""


PlanarIsometry = Rotation2 | Translation2 | Reflection2 | Identity2


@dataclass(frozen=True)
class Segment2:
    """Directed segment with distinct endpoints."""

    a: Vec2
    b: Vec2

    def __post_init__(self):
        if not (_finite2(self.a) and _finite2(self.b)):
            raise ValueError("segment endpoints must be finite")
        scale = max(1.0, self.a.norm(), self.b.norm())
        if (self.a - self.b).norm() <= _COINCIDENT_RTOL * scale:
            raise DegenerateSegment("segment endpoints coincide")

    def length(self) -> float:
        return (self.a - self.b).norm()


def signed_angle(u: Vec2, v: Vec2) -> float:
    """Counterclockwise angle from u to v, in (-pi, pi]."""
    return math.atan2(cross2(u, v), u.dot(v))


def apply_planar(iso: PlanarIsometry, p: Vec2) -> Vec2:
    """Evaluate an isometry at a point."""
    if isinstance(iso, Rotation2):
        return iso.pivot + Mat2.rotation(iso.angle).mv(p - iso.pivot)
    if isinstance(iso, Translation2):
        return p + iso.v
    if isinstance(iso, Reflection2):
        return reflect(iso.line, p)
    if isinstance(iso, Identity2):
        return p
    raise TypeError(f"not a planar isometry: {iso!r}")


def reflect(line: Line2, p: Vec2) -> Vec2:
    """Mirror image of p across the line."""
    w = p - line.point
    foot = line.point + line.direction * w.dot(line.direction)
    return foot * 2.0 - p


def orientation_sign(a: Vec2, b: Vec2, c: Vec2) -> int:
    """+1 when a, b, c wind counterclockwise, -1 clockwise, 0 collinear."""
    area2 = cross2(b - a, c - a)
    if area2 > 0.0:
        return 1
    if area2 < 0.0:
        return -1
    return 0


def perpendicular_bisector(a: Vec2, b: Vec2) -> Line2:
    """Locus of points equidistant from a and b."""
    chord = b - a
    if chord.norm() == 0.0:
        raise DegenerateBisector("coincident points have no perpendicular bisector")
    return Line2((a + b) * 0.5, chord.perp())


def _intersect_lines(l1: Line2, l2: Line2) -> Vec2 | None:
    """Intersection point, or None when the lines are parallel."""
    m = Mat2(l1.direction.x, -l2.direction.x, l1.direction.y, -l2.direction.y)
    try:
        ts = solve2(m, l2.point - l1.point)
    except SingularMatrix:
        return None
    return l1.point + l1.direction * ts.x


def _point_scale(*points: Vec2) -> float:
    return max(1.0, *(p.norm() for p in points))


def _check_lengths(src: Segment2, dst: Segment2, tol: float) -> None:
    ls, ld = src.length(), dst.length()
    if abs(ls - ld) > tol * max(ls, ld):
        raise LengthMismatch(
            f"segment lengths differ: {ls:.12g} vs {ld:.12g}; no isometry maps one to the other"
        )


def recover_planar(src: Segment2, dst: Segment2, *, tol: float = 1e-9) -> PlanarIsometry:
    """Find the orientation-preserving isometry taking src onto dst.

    The chord equation R(src.a - src.b) = dst.a - dst.b is solved for
    (cos t, sin t); segments of equal length make that solution land on
    the unit circle automatically. Angles below ANGLE_MIN yield a
    translation (the identity when the translation vector is negligible),
    anything else a rotation with pivot solved from
    (I - R) p = dst.a - R src.a.
    """
    _check_lengths(src, dst, tol)
    d = src.a - src.b
    try:
        cs = solve2(Mat2(d.x, -d.y, d.y, d.x), dst.a - dst.b)
    except SingularMatrix as exc:
        raise DegenerateSegment("source segment endpoints coincide") from exc
    theta = math.atan2(cs.y, cs.x)
    if abs(theta) < ANGLE_MIN:
        v = dst.a - src.a
        if v.norm() <= _COINCIDENT_RTOL * _point_scale(src.a, src.b, dst.a, dst.b):
            return Identity2()
        return Translation2(v)
    r = Mat2.rotation(theta)
    lhs = Mat2(1.0 - r.m00, -r.m01, -r.m10, 1.0 - r.m11)
    pivot = solve2(lhs, dst.a - r.mv(src.a))
    return Rotation2(pivot, theta)


def recover_pivot_geometric(src: Segment2, dst: Segment2) -> Vec2:
    """Pivot of the rotation taking src onto dst, by construction.

    The pivot is equidistant from every point and its image, so it lies on
    the perpendicular bisector of (src.a, dst.a) and on that of
    (src.b, dst.b); their intersection is returned. A fixed endpoint is
    its own pivot. When the two bisectors are the same line (the segment
    is collinear with the pivot, including symmetric half turns) the
    construction cannot isolate a point and the algebraic pivot is used
    instead; genuinely parallel bisectors mean a translation and raise
    ParallelBisectors.
    """
    scale = _point_scale(src.a, src.b, dst.a, dst.b)
    fixed_a = (dst.a - src.a).norm() <= _COINCIDENT_RTOL * scale
    fixed_b = (dst.b - src.b).norm() <= _COINCIDENT_RTOL * scale
    if fixed_a and fixed_b:
        raise DegenerateBisector("both endpoints are fixed; any point is a candidate pivot")
    if fixed_a:
        return src.a
    if fixed_b:
        return src.b

    la = perpendicular_bisector(src.a, dst.a)
    lb = perpendicular_bisector(src.b, dst.b)
    point = None
    if abs(cross2(la.direction, lb.direction)) > 1e-12:
        point = _intersect_lines(la, lb)
    if point is None:
        offset = abs(cross2(la.direction, lb.point - la.point))
        if offset <= 1e-9 * scale:
            alg = recover_planar(src, dst)
            if isinstance(alg, Rotation2):
                return alg.pivot
            raise ParallelBisectors("correspondence is a translation; no pivot exists")
        raise ParallelBisectors("bisectors are parallel; the correspondence is a translation")
    return point


def recover_planar_geometric(src: Segment2, dst: Segment2, *, tol: float = 1e-9) -> PlanarIsometry:
    """Geometric sibling of recover_planar.

    Equal displacement chords identify a translation; otherwise the pivot
    comes from recover_pivot_geometric and the angle is read at the pivot
    from an endpoint and its image.
    """
    _check_lengths(src, dst, tol)
    da = dst.a - src.a
    db = dst.b - src.b
    scale = _point_scale(src.a, src.b, dst.a, dst.b)
    if (da - db).norm() <= ANGLE_MIN * src.length():
        if da.norm() <= _COINCIDENT_RTOL * scale:
            return Identity2()
        return Translation2(da)
    pivot = recover_pivot_geometric(src, dst)
    if (src.a - pivot).norm() > 1e-9 * scale:
        theta = signed_angle(src.a - pivot, dst.a - pivot)
    else:
        theta = signed_angle(src.b - pivot, dst.b - pivot)
    return Rotation2(pivot, theta)


def compose_rotations_planar(outer: Rotation2, inner: Rotation2) -> PlanarIsometry:
    """Compose two pivoted rotations, inner first.

    The linear part of the composite is R_alpha R_beta = R_{alpha+beta},
    so the composite angle is always the angle sum and only the pivot
    needs solving. When the angles cancel (alpha + beta = 0 mod 2 pi) the
    composite is the translation x -> x + (I - R_alpha)(G - H), obtained by
    expanding G + R_alpha(H + R_{-alpha}(x - H) - G); note G = H gives the
    identity, as it must. The tempting shortcut G + H is not a valid
    translation vector for this case.
    """
    alpha = outer.angle
    g, h = outer.pivot, inner.pivot
    gamma = wrap_angle(alpha + inner.angle)
    ra = Mat2.rotation(alpha)
    if abs(gamma) < ANGLE_MIN:
        gh = g - h
        v = gh - ra.mv(gh)
        if v.norm() <= _COINCIDENT_RTOL * _point_scale(g, h):
            return Identity2()
        return Translation2(v)
    rg = Mat2.rotation(gamma)
    rhs = g + ra.mv(h) - rg.mv(h) - ra.mv(g)
    lhs = Mat2(1.0 - rg.m00, -rg.m01, -rg.m10, 1.0 - rg.m11)
    return Rotation2(solve2(lhs, rhs), gamma)


def _linear_form(iso: PlanarIsometry) -> tuple[float, Vec2]:
    """Write an orientation-preserving isometry as x -> R_theta x + c."""
    if isinstance(iso, Rotation2):
        r = Mat2.rotation(iso.angle)
        return iso.angle, iso.pivot - r.mv(iso.pivot)
    if isinstance(iso, Translation2):
        return 0.0, iso.v
    if isinstance(iso, Identity2):
        return 0.0, Vec2(0.0, 0.0)
    raise ValueError("reflections are orientation-reversing and have no rotation form")


def compose_planar(outer: PlanarIsometry, inner: PlanarIsometry) -> PlanarIsometry:
    """Compose two isometries (inner first) within the orientation-preserving
    subgroup; two reflections are also accepted since their composite is
    orientation-preserving again."""
    if isinstance(outer, Reflection2) and isinstance(inner, Reflection2):
        return compose_reflections(inner, outer)
    if isinstance(outer, Reflection2) or isinstance(inner, Reflection2):
        raise ValueError("mixed reflection composites are orientation-reversing")
    if isinstance(outer, Rotation2) and isinstance(inner, Rotation2):
        return compose_rotations_planar(outer, inner)
    t1, c1 = _linear_form(outer)
    t2, c2 = _linear_form(inner)
    theta = wrap_angle(t1 + t2)
    c = Mat2.rotation(t1).mv(c2) + c1
    if abs(theta) < ANGLE_MIN:
        if c.norm() <= _COINCIDENT_RTOL:
            return Identity2()
        return Translation2(c)
    r = Mat2.rotation(theta)
    lhs = Mat2(1.0 - r.m00, -r.m01, -r.m10, 1.0 - r.m11)
    return Rotation2(solve2(lhs, c), theta)


def compose_reflections(first: Reflection2, second: Reflection2) -> PlanarIsometry:
    """Reflect across `first`, then across `second`.

    Intersecting lines give a rotation about the crossing by twice the
    signed angle from the first line to the second; parallel lines give a
    translation perpendicular to them by twice their separation; the same
    line twice gives the identity.
    """
    d1 = first.line.direction
    d2 = second.line.direction
    crossing = None
    if abs(cross2(d1, d2)) > 1e-12:
        crossing = _intersect_lines(first.line, second.line)
    if crossing is None:
        n = d1.perp()
        offset = (second.line.point - first.line.point).dot(n)
        scale = _point_scale(first.line.point, second.line.point)
        if abs(offset) <= _COINCIDENT_RTOL * scale:
            return Identity2()
        return Translation2(n * (2.0 * offset))
    return Rotation2(crossing, wrap_angle(2.0 * signed_angle(d1, d2)))


def reflections_for_rotation(rot: Rotation2) -> tuple[Reflection2, Reflection2]:
    """Split a rotation into two line reflections through its pivot.

    Any two lines through the pivot separated by half the angle work; for
    a deterministic answer the first is taken parallel to the x axis and
    the second at angle/2, so composing first-then-second restores rot.
    """
    if rot.angle == 0.0:
        raise ZeroAngle("a zero rotation has no meaningful reflection pair")
    half = rot.angle / 2.0
    first = Reflection2(Line2(rot.pivot, Vec2(1.0, 0.0)))
    second = Reflection2(Line2(rot.pivot, Vec2(math.cos(half), math.sin(half))))
    return first, second
