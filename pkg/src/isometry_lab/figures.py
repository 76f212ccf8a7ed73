"""Scene descriptions and SVG rendering for solver diagrams.

A FigureSpec is a flat list of geometric elements plus a projection mode.
Planar scenes map world coordinates straight to pixels (y up). Sphere
scenes are projected orthographically along a view direction; elements on
the far hemisphere are drawn dashed. Rendering is deterministic: the same
spec always yields the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import AntipodalPoints, CoincidentPoints
from .linalg import Vec2, Vec3, cross
from .planar import Line2, Rotation2, perpendicular_bisector
from .spherical import UnitVector3, bisector_great_circle

_STROKES = {
    "solid": "",
    "dashed": ' stroke-dasharray="6 4"',
    "faint": ' stroke-dasharray="2 3"',
}


@dataclass(frozen=True)
class Marker:
    """Labeled point; style 'dot' or 'pivot' (drawn as a crosshair)."""

    at: Vec2 | Vec3
    label: str = ""
    style: str = "dot"


@dataclass(frozen=True)
class SegmentElement:
    """Straight segment in the plane, geodesic arc on the sphere."""

    a: Vec2 | Vec3
    b: Vec2 | Vec3
    style: str = "solid"
    label: str = ""


@dataclass(frozen=True)
class LineElement:
    """Infinite planar line, clipped to the drawing window."""

    line: Line2
    style: str = "dashed"
    label: str = ""


@dataclass(frozen=True)
class CircleElement:
    """Planar circle."""

    center: Vec2
    radius: float
    style: str = "solid"


@dataclass(frozen=True)
class ArcElement:
    """Planar angle arc around a center, from angle start to end (ccw)."""

    center: Vec2
    radius: float
    start: float
    end: float
    label: str = ""


@dataclass(frozen=True)
class GreatCircleElement:
    """Great circle on the unit sphere, identified by its plane normal."""

    normal: Vec3
    label: str = ""


FigureElement = (
    Marker | SegmentElement | LineElement | CircleElement | ArcElement | GreatCircleElement
)

_PLANAR_ONLY = (LineElement, CircleElement, ArcElement)


@dataclass(frozen=True)
class FigureSpec:
    """Drawable scene; projection is 'planar' or 'orthographic_sphere'."""

    projection: str
    elements: tuple[FigureElement, ...]
    width: int = 480
    height: int = 480
    view: Vec3 = field(default_factory=lambda: Vec3(0.0, 0.0, 1.0))

    def __post_init__(self):
        if self.projection not in ("planar", "orthographic_sphere"):
            raise ValueError(f"unknown projection {self.projection!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("viewport must be positive")
        if self.projection == "planar":
            for el in self.elements:
                if isinstance(el, GreatCircleElement):
                    raise ValueError("great circles need the sphere projection")
        else:
            for el in self.elements:
                if isinstance(el, _PLANAR_ONLY):
                    raise ValueError(f"{type(el).__name__} is planar-only")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _PlanarMapper:
    """World-to-pixel transform with uniform scale and a y flip."""

    def __init__(self, spec: FigureSpec):
        pts: list[Vec2] = []
        for el in spec.elements:
            if isinstance(el, Marker):
                pts.append(el.at)
            elif isinstance(el, SegmentElement):
                pts.extend((el.a, el.b))
            # infinite lines do not influence the window; they are clipped
            elif isinstance(el, CircleElement):
                r = el.radius
                pts.extend(
                    (el.center + Vec2(r, r), el.center - Vec2(r, r))
                )
            elif isinstance(el, ArcElement):
                r = el.radius
                pts.extend(
                    (el.center + Vec2(r, r), el.center - Vec2(r, r))
                )
        if not pts:
            pts = [Vec2(-1.0, -1.0), Vec2(1.0, 1.0)]
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        cx, cy = (min(xs) + max(xs)) / 2.0, (min(ys) + max(ys)) / 2.0
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-6) * 1.25
        self.cx, self.cy = cx, cy
        self.scale = min(spec.width, spec.height) / span
        self.w, self.h = spec.width, spec.height
        half = span / 2.0
        self.window = (cx - half, cx + half, cy - half, cy + half)

    def to_px(self, p: Vec2) -> tuple[float, float]:
        return (
            self.w / 2.0 + (p.x - self.cx) * self.scale,
            self.h / 2.0 - (p.y - self.cy) * self.scale,
        )

    def clip_line(self, line: Line2) -> tuple[Vec2, Vec2] | None:
        """Portion of an infinite line inside the window, if any."""
        xmin, xmax, ymin, ymax = self.window
        p, d = line.point, line.direction
        tmin, tmax = -math.inf, math.inf
        for origin, direction, lo, hi in (
            (p.x, d.x, xmin, xmax),
            (p.y, d.y, ymin, ymax),
        ):
            if abs(direction) < 1e-15:
                if origin < lo or origin > hi:
                    return None
                continue
            t1 = (lo - origin) / direction
            t2 = (hi - origin) / direction
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = min(tmax, t2)
        if tmin >= tmax or not math.isfinite(tmin) or not math.isfinite(tmax):
            return None
        return p + d * tmin, p + d * tmax


def _sphere_basis(view: Vec3) -> tuple[Vec3, Vec3, Vec3]:
    w = view.normalized()
    ref = Vec3(0.0, 0.0, 1.0) if abs(w.z) < 0.9 else Vec3(1.0, 0.0, 0.0)
    u = cross(ref, w).normalized()
    return u, cross(w, u), w


def _polyline(points: list[tuple[float, float]], stroke: str, cls: str) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polyline class="{cls}" points="{coords}" fill="none"{stroke}/>'


def render_svg(spec: FigureSpec) -> bytes:
    """Render a FigureSpec to a standalone SVG 1.1 document."""
    if spec.projection == "planar":
        body = _render_planar(spec)
    else:
        body = _render_sphere(spec)
    doc = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">\n'
        '<g stroke="black" stroke-width="1.2" font-family="sans-serif" font-size="13">\n'
        + "\n".join(body)
        + "\n</g>\n</svg>\n"
    )
    return doc.encode("utf-8")


def _marker_svg(px: float, py: float, el: Marker, hidden: bool = False) -> list[str]:
    out = []
    stroke = _STROKES["dashed"] if hidden else ""
    fill = "none" if hidden else "black"
    if el.style == "pivot":
        s = 5.0
        out.append(
            f'<path class="pivot" d="M {_fmt(px - s)} {_fmt(py)} H {_fmt(px + s)} '
            f'M {_fmt(px)} {_fmt(py - s)} V {_fmt(py + s)}"{stroke}/>'
        )
        out.append(f'<circle class="pivot" cx="{_fmt(px)}" cy="{_fmt(py)}" r="2.2" fill="{fill}"/>')
    else:
        out.append(f'<circle class="point" cx="{_fmt(px)}" cy="{_fmt(py)}" r="3" fill="{fill}"{stroke}/>')
    if el.label:
        out.append(f'<text class="label" x="{_fmt(px + 6)}" y="{_fmt(py - 6)}" stroke="none">{el.label}</text>')
    return out


def _render_planar(spec: FigureSpec) -> list[str]:
    mapper = _PlanarMapper(spec)
    out: list[str] = []
    for el in spec.elements:
        if isinstance(el, Marker):
            px, py = mapper.to_px(el.at)
            out.extend(_marker_svg(px, py, el))
        elif isinstance(el, SegmentElement):
            (x1, y1), (x2, y2) = mapper.to_px(el.a), mapper.to_px(el.b)
            out.append(
                f'<line class="segment" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"{_STROKES[el.style]}/>'
            )
            if el.label:
                out.append(
                    f'<text class="label" x="{_fmt((x1 + x2) / 2 + 5)}" '
                    f'y="{_fmt((y1 + y2) / 2 - 5)}" stroke="none">{el.label}</text>'
                )
        elif isinstance(el, LineElement):
            clipped = mapper.clip_line(el.line)
            if clipped is None:
                continue
            (x1, y1), (x2, y2) = mapper.to_px(clipped[0]), mapper.to_px(clipped[1])
            out.append(
                f'<line class="line" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"{_STROKES[el.style]}/>'
            )
            if el.label:
                out.append(
                    f'<text class="label" x="{_fmt(x2 - 20)}" y="{_fmt(y2 - 6)}" stroke="none">{el.label}</text>'
                )
        elif isinstance(el, CircleElement):
            cx, cy = mapper.to_px(el.center)
            out.append(
                f'<circle class="circle" cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                f'r="{_fmt(el.radius * mapper.scale)}" fill="none"{_STROKES[el.style]}/>'
            )
        elif isinstance(el, ArcElement):
            a0, a1 = el.start, el.end
            if a1 < a0:
                a0, a1 = a1, a0
            p0 = el.center + Vec2(math.cos(a0), math.sin(a0)) * el.radius
            p1 = el.center + Vec2(math.cos(a1), math.sin(a1)) * el.radius
            (x0, y0), (x1, y1) = mapper.to_px(p0), mapper.to_px(p1)
            r = el.radius * mapper.scale
            large = 1 if (a1 - a0) > math.pi else 0
            out.append(
                f'<path class="arc" d="M {_fmt(x0)} {_fmt(y0)} '
                f'A {_fmt(r)} {_fmt(r)} 0 {large} 0 {_fmt(x1)} {_fmt(y1)}" fill="none"/>'
            )
            if el.label:
                mid = el.center + Vec2(math.cos((a0 + a1) / 2), math.sin((a0 + a1) / 2)) * (
                    el.radius * 1.25
                )
                mx, my = mapper.to_px(mid)
                out.append(f'<text class="label" x="{_fmt(mx)}" y="{_fmt(my)}" stroke="none">{el.label}</text>')
    return out


_CIRCLE_SAMPLES = 96


def _render_sphere(spec: FigureSpec) -> list[str]:
    u, v, w = _sphere_basis(spec.view)
    half = 1.18
    scale = min(spec.width, spec.height) / (2.0 * half)

    def to_px(p: Vec3) -> tuple[float, float, float]:
        return (
            spec.width / 2.0 + p.dot(u) * scale,
            spec.height / 2.0 - p.dot(v) * scale,
            p.dot(w),
        )

    out: list[str] = [
        f'<circle class="sphere-outline" cx="{_fmt(spec.width / 2)}" '
        f'cy="{_fmt(spec.height / 2)}" r="{_fmt(scale)}" fill="none"/>'
    ]

    def emit_sampled(points: list[Vec3], cls: str) -> None:
        """Split a sampled curve into visible and hidden runs."""
        runs: list[tuple[bool, list[tuple[float, float]]]] = []
        for p in points:
            x, y, depth = to_px(p)
            front = depth >= 0.0
            if runs and runs[-1][0] == front:
                runs[-1][1].append((x, y))
            else:
                runs.append((front, [(x, y)]))
        for front, pts in runs:
            if len(pts) < 2:
                continue
            stroke = _STROKES["solid" if front else "dashed"]
            out.append(_polyline(pts, stroke, cls))

    for el in spec.elements:
        if isinstance(el, Marker):
            x, y, depth = to_px(el.at)
            out.extend(_marker_svg(x, y, el, hidden=depth < 0.0))
        elif isinstance(el, SegmentElement):
            samples = _geodesic_samples(el.a, el.b)
            emit_sampled(samples, "arc-segment")
            if el.label:
                mx, my, _ = to_px(samples[len(samples) // 2])
                out.append(
                    f'<text class="label" x="{_fmt(mx + 5)}" y="{_fmt(my - 5)}" stroke="none">{el.label}</text>'
                )
        elif isinstance(el, GreatCircleElement):
            n = el.normal.normalized()
            e1 = cross(n, Vec3(0.0, 0.0, 1.0) if abs(n.z) < 0.9 else Vec3(1.0, 0.0, 0.0))
            e1 = e1.normalized()
            e2 = cross(n, e1)
            pts = [
                e1 * math.cos(2.0 * math.pi * k / _CIRCLE_SAMPLES)
                + e2 * math.sin(2.0 * math.pi * k / _CIRCLE_SAMPLES)
                for k in range(_CIRCLE_SAMPLES + 1)
            ]
            if el.label:
                x, y, _ = to_px(pts[0])
                out.append(f'<text class="label" x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" stroke="none">{el.label}</text>')
            emit_sampled(pts, "great-circle")
    return out


def _geodesic_samples(a: Vec3, b: Vec3, n: int = 32) -> list[Vec3]:
    a = a.normalized()
    b = b.normalized()
    omega = math.acos(max(-1.0, min(1.0, a.dot(b))))
    if omega < 1e-9:
        return [a, b]
    so = math.sin(omega)
    return [
        (a * math.sin((1.0 - t) * omega) + b * math.sin(t * omega)) * (1.0 / so)
        for t in (k / n for k in range(n + 1))
    ]


def planar_recovery_figure(src, dst, iso) -> FigureSpec:
    """Two corresponding segments, their bisectors, and the pivot."""
    elements: list[FigureElement] = [
        SegmentElement(src.a, src.b, label="XY"),
        SegmentElement(dst.a, dst.b, label="X'Y'"),
        Marker(src.a, "X"),
        Marker(src.b, "Y"),
        Marker(dst.a, "X'"),
        Marker(dst.b, "Y'"),
    ]
    if isinstance(iso, Rotation2):
        if (dst.a - src.a).norm() > 1e-12:
            elements.append(LineElement(perpendicular_bisector(src.a, dst.a)))
        if (dst.b - src.b).norm() > 1e-12:
            elements.append(LineElement(perpendicular_bisector(src.b, dst.b)))
        elements.append(Marker(iso.pivot, "P", style="pivot"))
    else:
        elements.append(SegmentElement(src.a, dst.a, style="faint"))
        elements.append(SegmentElement(src.b, dst.b, style="faint"))
    return FigureSpec("planar", tuple(elements))


def planar_compose_figure(g: Vec2, h: Vec2, iso, probe, mid, final) -> FigureSpec:
    """Pivots of both factors, a probe segment, and its two images."""
    elements: list[FigureElement] = [
        Marker(g, "G"),
        Marker(h, "H"),
        SegmentElement(probe.a, probe.b, label="XY"),
        SegmentElement(mid.a, mid.b, style="faint", label="X'Y'"),
        SegmentElement(final.a, final.b, label="X''Y''"),
    ]
    if isinstance(iso, Rotation2):
        elements.append(Marker(iso.pivot, "P", style="pivot"))
    return FigureSpec("planar", tuple(elements))


def reflection_pair_figure(rot, first, second) -> FigureSpec:
    """The two mirror lines through the pivot with the half-angle arc."""
    span = max(1.0, abs(rot.pivot.x), abs(rot.pivot.y)) * 0.35
    elements: tuple[FigureElement, ...] = (
        LineElement(first.line, style="solid", label="l1"),
        LineElement(second.line, style="solid", label="l2"),
        ArcElement(rot.pivot, span, 0.0, rot.angle / 2.0, label="t/2"),
        Marker(rot.pivot, "P", style="pivot"),
    )
    return FigureSpec("planar", elements)


def sphere_recovery_figure(x, xp, y, yp, rot) -> FigureSpec:
    """Moved points, their bisector great circles, and the two poles.

    Bisectors that do not exist (a fixed point, or an antipodal pair) are
    simply left out of the scene.
    """
    elements: list[FigureElement] = [
        Marker(x, "X"),
        Marker(xp, "X'"),
        Marker(y, "Y"),
        Marker(yp, "Y'"),
    ]
    for a, b in ((x, xp), (y, yp)):
        if (a - b).norm() > 1e-9 and (a + b).norm() > 1e-9:
            elements.append(SegmentElement(a, b, style="solid"))
    for a, b, label in ((x, xp, "lX"), (y, yp, "lY")):
        try:
            circle = bisector_great_circle(a, b)
        except (CoincidentPoints, AntipodalPoints):
            continue
        elements.append(GreatCircleElement(circle.normal, label))
    if rot is not None:
        elements.append(Marker(rot.axis, "P", style="pivot"))
        elements.append(Marker(-rot.axis, "P'", style="pivot"))
    return FigureSpec("orthographic_sphere", tuple(elements))


def sphere_compose_figure(g: UnitVector3, h: UnitVector3, rot) -> FigureSpec:
    """Axis poles of both factors and of the composite, with its equator."""
    elements: list[FigureElement] = [
        Marker(g, "G"),
        Marker(h, "H"),
        GreatCircleElement(rot.axis, "equator"),
        Marker(rot.axis, "P", style="pivot"),
        Marker(-rot.axis, "P'", style="pivot"),
    ]
    return FigureSpec("orthographic_sphere", tuple(elements))
