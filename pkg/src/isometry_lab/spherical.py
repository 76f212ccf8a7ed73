"""Orientation-preserving isometries of the unit sphere.

Every such isometry is a rotation about an axis through the origin, held
here as a unit axis plus an angle in [0, pi] (the axis sign carries the
turn direction, since a turn of -t about p equals +t about -p). Axis
recovery from a two-point correspondence runs either through the cross
product of the displacement chords or through intersecting two
perpendicular-bisector great circles; composition goes through the matrix
product with the axis read back from the +1 eigenvector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    AntipodalPoints,
    CoincidentPoints,
    DegenerateAxis,
    IdenticalCircles,
    IdentityCorrespondence,
    IdentityRotation,
    InternalCheckError,
    NonUnitVector,
    NotIsometric,
    PointOnAxis,
)
from .linalg import Mat3, Vec3, clamp, cross, eig3_rotation, require_rotation, wrap_angle

# Vectors within this of unit length are silently renormalized; anything
# further off (e.g. mistyped coordinates) is rejected.
UNIT_TOL = 1e-6

# Chord length below this counts as "the same point".
_COINCIDENT_TOL = 1e-12


@dataclass(frozen=True)
class UnitVector3(Vec3):
    """Point on the unit sphere; renormalized on construction."""

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise NonUnitVector("components must be finite")
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(n - 1.0) > UNIT_TOL:
            raise NonUnitVector(f"|v| = {n:.9g} is not within {UNIT_TOL:g} of 1")
        if n != 1.0:
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @classmethod
    def from_vec(cls, v: Vec3) -> "UnitVector3":
        return cls(v.x, v.y, v.z)


def _as_unit(v: Vec3) -> UnitVector3:
    return v if isinstance(v, UnitVector3) else UnitVector3(v.x, v.y, v.z)


@dataclass(frozen=True)
class Rotation3:
    """Rotation about `axis` by `angle` radians (right-hand rule).

    Construction folds the angle into [0, pi], flipping the axis when the
    given angle reduces to a negative value.
    """

    axis: UnitVector3
    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ValueError("rotation angle must be finite")
        object.__setattr__(self, "axis", _as_unit(self.axis))
        a = wrap_angle(self.angle)
        if a < 0.0:
            object.__setattr__(self, "axis", -self.axis)
            a = -a
        object.__setattr__(self, "angle", a)


@dataclass(frozen=True)
class RotationMatrix3:
    """Orthogonal matrix with determinant +1; validated on construction."""

    m: Mat3

    def __post_init__(self):
        require_rotation(self.m, 1e-9)


@dataclass(frozen=True)
class GreatCircle:
    """Intersection of the sphere with the plane through the origin whose
    unit normal is `normal`."""

    normal: UnitVector3

    def __post_init__(self):
        object.__setattr__(self, "normal", _as_unit(self.normal))


@dataclass(frozen=True)
class SphereSegment:
    """Geodesic segment between two sphere points.

    The endpoints must be neither coincident nor antipodal, so exactly one
    great circle passes through both.
    """

    a: UnitVector3
    b: UnitVector3

    def __post_init__(self):
        object.__setattr__(self, "a", _as_unit(self.a))
        object.__setattr__(self, "b", _as_unit(self.b))
        if (self.a - self.b).norm() <= 1e-9:
            raise CoincidentPoints("segment endpoints coincide")
        if (self.a + self.b).norm() <= 1e-9:
            raise AntipodalPoints("antipodal endpoints lie on infinitely many great circles")

    def length(self) -> float:
        return angular_distance(self.a, self.b)


def angular_distance(p: Vec3, q: Vec3) -> float:
    """Great-circle distance between two unit vectors, in [0, pi]."""
    return math.acos(clamp(p.dot(q), -1.0, 1.0))


def rotation_matrix(rot: Rotation3) -> RotationMatrix3:
    """Matrix form: cos t I + sin t [axis]_x + (1 - cos t) axis axis^T."""
    a = rot.axis
    c = math.cos(rot.angle)
    s = math.sin(rot.angle)
    k = 1.0 - c
    return RotationMatrix3(
        Mat3(
            (
                (c + k * a.x * a.x, k * a.x * a.y - s * a.z, k * a.x * a.z + s * a.y),
                (k * a.y * a.x + s * a.z, c + k * a.y * a.y, k * a.y * a.z - s * a.x),
                (k * a.z * a.x - s * a.y, k * a.z * a.y + s * a.x, c + k * a.z * a.z),
            )
        )
    )


def apply_sphere(rot: Rotation3, p: Vec3) -> UnitVector3:
    """Rotate a sphere point. Both poles +/- axis stay fixed."""
    p = _as_unit(p)
    a = rot.axis
    c = math.cos(rot.angle)
    s = math.sin(rot.angle)
    q = p * c + cross(a, p) * s + a * (a.dot(p) * (1.0 - c))
    return UnitVector3(q.x, q.y, q.z)


def _require_isometric(x: Vec3, xp: Vec3, y: Vec3, yp: Vec3, tol: float) -> None:
    before = angular_distance(x, y)
    after = angular_distance(xp, yp)
    if abs(before - after) > tol:
        raise NotIsometric(
            f"angular distances differ: {before:.12g} vs {after:.12g}; "
            "the correspondence preserves no isometry"
        )


def recover_axis_cross(
    x: Vec3, xp: Vec3, y: Vec3, yp: Vec3, *, tol: float = 1e-9
) -> UnitVector3:
    """Rotation axis from the two displacement chords.

    Each chord x - xp is normal to the plane of the perpendicular-bisector
    great circle of (x, xp); the axis lies in both planes, hence along the
    cross product of the chords.
    """
    x, xp, y, yp = _as_unit(x), _as_unit(xp), _as_unit(y), _as_unit(yp)
    _require_isometric(x, xp, y, yp, tol)
    u = cross(x - xp, y - yp)
    n = u.norm()
    if n < 1e-12:
        raise DegenerateAxis(
            "displacement chords are parallel or zero; no unique axis from the cross product"
        )
    return UnitVector3(u.x / n, u.y / n, u.z / n)


def recover_axis_geometric(
    x: Vec3, xp: Vec3, y: Vec3, yp: Vec3, *, tol: float = 1e-9
) -> UnitVector3:
    """Rotation axis by construction: intersect the two perpendicular
    bisector great circles.

    A point that does not move is itself a pole of the rotation and is
    returned directly; if both points are fixed the correspondence is the
    identity and no axis exists.
    """
    x, xp, y, yp = _as_unit(x), _as_unit(xp), _as_unit(y), _as_unit(yp)
    _require_isometric(x, xp, y, yp, tol)
    fixed_x = (x - xp).norm() <= _COINCIDENT_TOL
    fixed_y = (y - yp).norm() <= _COINCIDENT_TOL
    if fixed_x and fixed_y:
        raise IdentityCorrespondence("both points are fixed; every axis works")
    if fixed_x:
        return x
    if fixed_y:
        return y
    cx = bisector_great_circle(x, xp)
    cy = bisector_great_circle(y, yp)
    try:
        pole, _ = intersect_great_circles(cx, cy)
    except IdenticalCircles as exc:
        raise DegenerateAxis(
            "bisector circles coincide; pick a second point off the shared bisector"
        ) from exc
    return pole


def rotation_angle_about_axis(axis: Vec3, x: Vec3, xp: Vec3) -> float:
    """Signed angle (right-hand rule about axis) turning x to xp.

    Both points are projected onto the plane orthogonal to the axis first,
    so the result is the turn angle even when the points sit off the
    rotation's equator.
    """
    axis = _as_unit(axis)
    u = x - axis * x.dot(axis)
    v = xp - axis * xp.dot(axis)
    if u.norm() < 1e-9 or v.norm() < 1e-9:
        raise PointOnAxis("point lies on the rotation axis; its turn angle is undefined")
    angle = math.atan2(axis.dot(cross(u, v)), u.dot(v))
    return math.pi if angle <= -math.pi else angle


def chord_arcsin_angle(x: Vec3, xp: Vec3) -> float:
    """Arcsine of the normalized cross product of a point and its image.

    This measures the separation of x and xp themselves, not the turn
    about the axis: the two agree only when x lies on the rotation's
    equator and the turn is at most a quarter circle. Kept as the
    restricted shortcut; use rotation_angle_about_axis for the general
    case (a half turn on the equator comes out as 0 here instead of pi).
    """
    s = cross(x, xp).norm() / (x.norm() * xp.norm())
    return math.asin(clamp(s, 0.0, 1.0))


def bisector_great_circle(a: Vec3, b: Vec3) -> GreatCircle:
    """Great circle of points angularly equidistant from a and b.

    Its plane is normal to the chord a - b: a point z has z . a = z . b
    exactly when z . (a - b) = 0.
    """
    a, b = _as_unit(a), _as_unit(b)
    chord = a - b
    n = chord.norm()
    if n <= 1e-9:
        raise CoincidentPoints("coincident points have no unique bisector circle")
    if (a + b).norm() <= 1e-9:
        raise AntipodalPoints("antipodal points are equidistant from every great circle "
                              "through their polar plane")
    return GreatCircle(UnitVector3(chord.x / n, chord.y / n, chord.z / n))


def intersect_great_circles(
    c1: GreatCircle, c2: GreatCircle
) -> tuple[UnitVector3, UnitVector3]:
    """The two (antipodal) intersection points of distinct great circles."""
    u = cross(c1.normal, c2.normal)
    n = u.norm()
    if n < 1e-12:
        raise IdenticalCircles("great circles coincide")
    p = UnitVector3(u.x / n, u.y / n, u.z / n)
    return p, -p


def recover_sphere_rotation(
    x: Vec3,
    xp: Vec3,
    y: Vec3,
    yp: Vec3,
    *,
    method: str = "algebraic",
    tol: float = 1e-9,
) -> Rotation3:
    """Recover the rotation mapping x to xp and y to yp.

    method picks the axis construction: "algebraic" crosses the
    displacement chords (falling back to the bisector construction when a
    point is fixed or the chords degenerate), "geometric" intersects the
    bisector great circles. The angle then comes from the signed
    projection about the axis, and the result is verified against both
    point pairs to within tol.
    """
    x, xp, y, yp = _as_unit(x), _as_unit(xp), _as_unit(y), _as_unit(yp)
    if (x - xp).norm() <= _COINCIDENT_TOL and (y - yp).norm() <= _COINCIDENT_TOL:
        raise IdentityCorrespondence("both points are fixed; the map is the identity")
    if method == "algebraic":
        try:
            axis = recover_axis_cross(x, xp, y, yp, tol=tol)
        except DegenerateAxis:
            axis = recover_axis_geometric(x, xp, y, yp, tol=tol)
    elif method == "geometric":
        axis = recover_axis_geometric(x, xp, y, yp, tol=tol)
    else:
        raise ValueError(f"unknown method {method!r}; use 'algebraic' or 'geometric'")
    try:
        angle = rotation_angle_about_axis(axis, x, xp)
    except PointOnAxis:
        angle = rotation_angle_about_axis(axis, y, yp)
    rot = Rotation3(axis, angle)
    residual = max(
        (apply_sphere(rot, x) - xp).norm(),
        (apply_sphere(rot, y) - yp).norm(),
    )
    if residual > tol:
        raise NotIsometric(
            f"no single rotation maps both points (residual {residual:.3g} > {tol:g})"
        )
    return rot


def compose_sphere_rotations(outer: Rotation3, inner: Rotation3) -> Rotation3:
    """Compose two rotations, inner first, via the matrix product."""
    m = rotation_matrix(outer).m @ rotation_matrix(inner).m
    return axis_angle_from_matrix(RotationMatrix3(m))


def axis_angle_from_matrix(rm: RotationMatrix3) -> Rotation3:
    """Axis and angle of a rotation matrix.

    The axis is the +1 eigenvector; its sign is oriented so the
    skew-symmetric part equals sin(angle) [axis]_x with sin(angle) >= 0,
    which pins the angle into [0, pi]. For a half turn the skew part
    vanishes and the eigenvector's canonical sign is kept. The identity
    reports angle 0 about the conventional axis (0, 0, 1).
    """
    m = rm.m
    try:
        eig = eig3_rotation(m)
    except IdentityRotation:
        return Rotation3(UnitVector3(0.0, 0.0, 1.0), 0.0)
    a, _ = eig.complex_pair
    angle = math.acos(clamp(a, -1.0, 1.0))
    r = m.rows
    skew = Vec3(
        (r[2][1] - r[1][2]) / 2.0,
        (r[0][2] - r[2][0]) / 2.0,
        (r[1][0] - r[0][1]) / 2.0,
    )
    sn = skew.norm()
    if abs(sn - math.sin(angle)) > 1e-9:
        raise InternalCheckError(
            f"skew magnitude {sn:.12g} disagrees with sin(angle) {math.sin(angle):.12g}"
        )
    axis = eig.axis
    if sn > 1e-12 and axis.dot(skew) < 0.0:
        axis = -axis
    return Rotation3(UnitVector3(axis.x, axis.y, axis.z), angle)
