import math
import xml.etree.ElementTree as ET

import pytest

from isometry_lab import Line2, Rotation2, Rotation3, Segment2, UnitVector3, Vec2, Vec3
from isometry_lab.figures import (
    FigureSpec,
    GreatCircleElement,
    LineElement,
    Marker,
    SegmentElement,
    planar_recovery_figure,
    reflection_pair_figure,
    render_svg,
    sphere_recovery_figure,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def _root(data: bytes) -> ET.Element:
    return ET.fromstring(data.decode("utf-8"))


def _all(root, tag):
    return root.findall(f".//{SVG_NS}{tag}")


class TestRenderSvg:
    def test_empty_scene_is_valid_minimal_svg(self):
        data = render_svg(FigureSpec("planar", ()))
        root = _root(data)
        assert root.tag == f"{SVG_NS}svg"
        assert root.get("width") == "480"

    def test_deterministic_bytes(self):
        spec = FigureSpec(
            "planar",
            (
                Marker(Vec2(0, 0), "A"),
                SegmentElement(Vec2(0, 0), Vec2(1, 1)),
                LineElement(Line2(Vec2(0, 0), Vec2(1, 0))),
            ),
        )
        assert render_svg(spec) == render_svg(spec)

    def test_planar_elements_rendered(self):
        spec = FigureSpec(
            "planar",
            (
                Marker(Vec2(0, 0), "A"),
                Marker(Vec2(1, 0), "B", style="pivot"),
                SegmentElement(Vec2(0, 0), Vec2(1, 0)),
                LineElement(Line2(Vec2(0.5, 0), Vec2(0, 1))),
            ),
        )
        root = _root(render_svg(spec))
        texts = [t.text for t in _all(root, "text")]
        assert "A" in texts and "B" in texts
        assert len(_all(root, "line")) == 2  # segment + clipped line
        assert len(_all(root, "path")) == 1  # pivot crosshair

    def test_line_outside_window_is_clipped_away(self):
        spec = FigureSpec(
            "planar",
            (
                SegmentElement(Vec2(0, 0), Vec2(1, 0)),
                LineElement(Line2(Vec2(0, 50.0), Vec2(1, 0))),
            ),
        )
        root = _root(render_svg(spec))
        assert len(_all(root, "line")) == 1

    def test_segment_coordinates_map_linearly(self):
        spec = FigureSpec("planar", (SegmentElement(Vec2(-1, 0), Vec2(1, 0)),))
        root = _root(render_svg(spec))
        (line,) = _all(root, "line")
        x1, x2 = float(line.get("x1")), float(line.get("x2"))
        y1, y2 = float(line.get("y1")), float(line.get("y2"))
        assert math.isclose((x1 + x2) / 2, 240.0, abs_tol=0.5)
        assert y1 == y2

    def test_rejects_mixed_projection_elements(self):
        with pytest.raises(ValueError):
            FigureSpec("planar", (GreatCircleElement(Vec3(0, 0, 1)),))
        with pytest.raises(ValueError):
            FigureSpec(
                "orthographic_sphere",
                (LineElement(Line2(Vec2(0, 0), Vec2(1, 0))),),
            )

    def test_rejects_empty_viewport(self):
        with pytest.raises(ValueError):
            FigureSpec("planar", (), width=0)

    def test_sphere_scene_has_outline_and_split_circle(self):
        # a great circle tilted against the view spans both hemispheres, so
        # rendering splits it into solid (front) and dashed (back) runs
        spec = FigureSpec(
            "orthographic_sphere",
            (GreatCircleElement(Vec3(1, 0, 0)), Marker(UnitVector3(0, 0, -1), "B")),
        )
        root = _root(render_svg(spec))
        assert len(_all(root, "circle")) >= 2  # outline + marker
        polys = _all(root, "polyline")
        assert len(polys) >= 2
        dashes = {p.get("stroke-dasharray") for p in polys}
        assert None in dashes and "6 4" in dashes

    def test_hidden_marker_is_dashed_and_hollow(self):
        spec = FigureSpec(
            "orthographic_sphere", (Marker(UnitVector3(0, 0, -1), "B"),)
        )
        root = _root(render_svg(spec))
        markers = [c for c in _all(root, "circle") if c.get("class") == "point"]
        assert markers[0].get("fill") == "none"
        assert markers[0].get("stroke-dasharray") == "6 4"


class TestFigureBuilders:
    def test_planar_recovery_figure_rotation(self):
        src = Segment2(Vec2(1, 0), Vec2(2, 0))
        dst = Segment2(Vec2(0, 1), Vec2(0, 2))
        fig = planar_recovery_figure(src, dst, Rotation2(Vec2(0, 0), math.pi / 2))
        assert fig.projection == "planar"
        kinds = [type(el).__name__ for el in fig.elements]
        assert kinds.count("SegmentElement") == 2
        assert kinds.count("LineElement") == 2
        assert kinds.count("Marker") == 5  # four endpoints + pivot
        render_svg(fig)

    def test_reflection_pair_figure(self):
        rot = Rotation2(Vec2(2, 5), math.pi / 2)
        from isometry_lab import reflections_for_rotation

        first, second = reflections_for_rotation(rot)
        fig = reflection_pair_figure(rot, first, second)
        root = _root(render_svg(fig))
        assert len(_all(root, "line")) == 2
        assert len(_all(root, "path")) >= 2  # arc + pivot crosshair

    def test_sphere_recovery_figure(self):
        rot = Rotation3(UnitVector3(0, 0, 1), math.pi / 2)
        from isometry_lab import apply_sphere

        x = UnitVector3(1, 0, 0)
        y = UnitVector3(0.6, 0.8, 0.0)
        fig = sphere_recovery_figure(x, apply_sphere(rot, x), y, apply_sphere(rot, y), rot)
        assert fig.projection == "orthographic_sphere"
        root = _root(render_svg(fig))
        texts = {t.text for t in _all(root, "text")}
        assert {"X", "X'", "Y", "Y'", "P", "P'"} <= texts
        assert len(_all(root, "polyline")) >= 3  # two arcs + circles
