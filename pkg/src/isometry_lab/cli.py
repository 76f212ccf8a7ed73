"""Batch command line interface.

Problem instances are JSON objects (or a JSON array of them); results go
to standard output as a single JSON document and warnings to standard
error. Exit codes: 0 success, 2 parse or schema problem, 3 inadmissible
values, 4 solver degeneracy, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    AntipodalPoints,
    CoincidentPoints,
    DegenerateSegment,
    GeometryError,
    IdentityCorrespondence,
    IdentityRotation,
    InternalCheckError,
    LengthMismatch,
    NonUnitVector,
    ParseError,
    SchemaError,
    ValidationError,
)
from .figures import (
    planar_compose_figure,
    planar_recovery_figure,
    reflection_pair_figure,
    render_svg,
    sphere_compose_figure,
    sphere_recovery_figure,
)
from .linalg import Vec2, Vec3, eig3_rotation, wrap_angle
from .planar import (
    ANGLE_MIN,
    Identity2,
    Rotation2,
    Segment2,
    Translation2,
    apply_planar,
    compose_reflections,
    compose_rotations_planar,
    recover_planar,
    recover_planar_geometric,
    reflections_for_rotation,
)
from .spherical import (
    Rotation3,
    RotationMatrix3,
    SphereSegment,
    UnitVector3,
    apply_sphere,
    axis_angle_from_matrix,
    chord_arcsin_angle,
    recover_sphere_rotation,
    rotation_matrix,
)

KINDS = (
    "plane_recover",
    "plane_compose",
    "plane_reflections",
    "sphere_recover",
    "sphere_compose",
    "baseball",
)

_NOTE_CANCELLED_ANGLES = (
    "angle sum is 0 mod 2pi: the composite is the translation by "
    "(I - R_alpha)(G - H); the shortcut G + H is not a valid translation vector"
)


def _note_arcsin(naive: float, angle: float) -> str:
    return (
        f"chord arcsin gives {naive:.6g} rad but the rotation angle is {angle:.6g} rad; "
        "the arcsin shortcut only holds for points on the rotation's equator "
        "turned by at most pi/2"
    )


@dataclass(frozen=True)
class ProblemInstance:
    """A validated problem: its kind plus typed payload values."""

    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown kind {self.kind!r}")


@dataclass
class SolutionRecord:
    """Solver outcome: the primary result, how it was obtained, the
    recomputed mapping residual, and any warnings."""

    result: dict
    method: str
    residual: float
    diagnostics: list[str] = field(default_factory=list)
    result_geometric: dict | None = None
    discrepancy: float | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "result": self.result,
            "method": self.method,
            "residual": self.residual,
        }
        if self.result_geometric is not None:
            out["result_geometric"] = self.result_geometric
        if self.discrepancy is not None:
            out["discrepancy"] = self.discrepancy
        out["diagnostics"] = list(self.diagnostics)
        return out


# ---------------------------------------------------------------------------
# parsing


def _loads(text: bytes | str):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not valid JSON: {exc}") from exc


def _num(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"field {name!r} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"field {name!r} must be finite")
    return value


def _coords(name: str, value, dim: int) -> list[float]:
    if not isinstance(value, list) or len(value) != dim:
        raise SchemaError(f"field {name!r} must be an array of {dim} numbers")
    return [_num(f"{name}[{i}]", c) for i, c in enumerate(value)]


def _vec2(name: str, value) -> Vec2:
    return Vec2(*_coords(name, value, 2))


def _unit3(name: str, value) -> UnitVector3:
    c = _coords(name, value, 3)
    try:
        return UnitVector3(c[0], c[1], c[2])
    except NonUnitVector as exc:
        raise ValidationError(f"field {name!r}: {exc}") from exc


_SCHEMAS: dict[str, dict[str, str]] = {
    "plane_recover": {"X": "vec2", "Y": "vec2", "Xp": "vec2", "Yp": "vec2"},
    "plane_compose": {"G": "vec2", "alpha": "num", "H": "vec2", "beta": "num"},
    "plane_reflections": {"P": "vec2", "theta": "num"},
    "sphere_recover": {"X": "vec3", "Y": "vec3", "Xp": "vec3", "Yp": "vec3"},
    "sphere_compose": {"G": "vec3", "alpha": "num", "H": "vec3", "beta": "num"},
    "baseball": {"X": "vec3", "Y": "vec3", "Xp": "vec3", "Yp": "vec3"},
}

_READERS = {"num": _num, "vec2": _vec2, "vec3": _unit3}


def instance_from_obj(obj) -> ProblemInstance:
    """Validate one decoded JSON object into a ProblemInstance."""
    if not isinstance(obj, dict):
        raise SchemaError("an instance must be a JSON object")
    kind = obj.get("kind")
    if kind is None:
        raise SchemaError("missing field 'kind'")
    if not isinstance(kind, str) or kind not in _SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}")
    schema = _SCHEMAS[kind]
    extra = sorted(set(obj) - set(schema) - {"kind"})
    if extra:
        raise SchemaError(f"unexpected fields for kind {kind!r}: {extra}")
    missing = sorted(set(schema) - set(obj))
    if missing:
        raise SchemaError(f"missing fields for kind {kind!r}: {missing}")
    values = {name: _READERS[t](name, obj[name]) for name, t in schema.items()}

    try:
        if kind == "plane_recover":
            payload = {
                "src": Segment2(values["X"], values["Y"]),
                "dst": Segment2(values["Xp"], values["Yp"]),
            }
        elif kind == "plane_compose":
            payload = {
                "g": values["G"],
                "alpha": values["alpha"],
                "h": values["H"],
                "beta": values["beta"],
            }
        elif kind == "plane_reflections":
            payload = {"pivot": values["P"], "theta": values["theta"]}
        elif kind in ("sphere_recover", "baseball"):
            payload = {
                "before": SphereSegment(values["X"], values["Y"]),
                "after": SphereSegment(values["Xp"], values["Yp"]),
            }
        else:  # sphere_compose
            payload = {
                "g": values["G"],
                "alpha": values["alpha"],
                "h": values["H"],
                "beta": values["beta"],
            }
    except (DegenerateSegment, CoincidentPoints, AntipodalPoints) as exc:
        raise ValidationError(str(exc)) from exc
    return ProblemInstance(kind, payload)


def parse_instance(text: bytes | str) -> ProblemInstance:
    """Parse and validate a single instance from JSON text."""
    obj = _loads(text)
    if isinstance(obj, list):
        raise SchemaError("expected a single instance, got an array")
    return instance_from_obj(obj)


# ---------------------------------------------------------------------------
# solving

_PLANE_PROBE = (Vec2(0.31, 0.17), Vec2(-0.42, 0.93))


def _unit(x: float, y: float, z: float) -> UnitVector3:
    return UnitVector3.from_vec(Vec3(x, y, z).normalized())


_SPHERE_PROBE = (_unit(0.31, 0.17, 0.93), _unit(-0.42, 0.83, 0.36))
_SPHERE_RESIDUAL_PROBES = (
    UnitVector3(1.0, 0.0, 0.0),
    UnitVector3(0.0, 1.0, 0.0),
    UnitVector3(0.0, 0.0, 1.0),
)


def _planar_iso_dict(iso) -> dict:
    if isinstance(iso, Rotation2):
        return {"type": "rotation", "pivot": [iso.pivot.x, iso.pivot.y], "angle": iso.angle}
    if isinstance(iso, Translation2):
        return {"type": "translation", "v": [iso.v.x, iso.v.y]}
    if isinstance(iso, Identity2):
        return {"type": "identity"}
    raise TypeError(f"unexpected isometry {iso!r}")


def _sphere_rot_dict(rot: Rotation3) -> dict:
    return {
        "type": "rotation",
        "axis": [rot.axis.x, rot.axis.y, rot.axis.z],
        "angle": rot.angle,
    }


def _note_discrepancy(diags: list[str], disc: float, tol: float) -> None:
    if disc > tol:
        diags.append(
            f"algebraic and geometric results disagree by {disc:.6g} "
            f"(tolerance {tol:g}); both are reported unreconciled"
        )


def _run_plane_recover(payload, method, tol):
    src: Segment2 = payload["src"]
    dst: Segment2 = payload["dst"]
    diags: list[str] = []
    iso_a = iso_g = None
    if method in ("algebraic", "both"):
        iso_a = recover_planar(src, dst, tol=tol)
    if method in ("geometric", "both"):
        iso_g = recover_planar_geometric(src, dst, tol=tol)
    primary = iso_a if iso_a is not None else iso_g
    residual = max(
        (apply_planar(primary, src.a) - dst.a).norm(),
        (apply_planar(primary, src.b) - dst.b).norm(),
    )
    record = SolutionRecord(_planar_iso_dict(primary), method, residual, diags)
    if method == "both":
        disc = max(
            (apply_planar(iso_a, p) - apply_planar(iso_g, p)).norm()
            for p in (src.a, src.b)
        )
        record.result_geometric = _planar_iso_dict(iso_g)
        record.discrepancy = disc
        _note_discrepancy(diags, disc, tol)
    return record, planar_recovery_figure(src, dst, primary)


def _run_plane_compose(payload, method, tol):
    outer = Rotation2(payload["g"], payload["alpha"])
    inner = Rotation2(payload["h"], payload["beta"])
    diags: list[str] = []
    if abs(wrap_angle(payload["alpha"] + payload["beta"])) < ANGLE_MIN:
        diags.append(_NOTE_CANCELLED_ANGLES)

    probe = Segment2(*_PLANE_PROBE)
    mid = Segment2(apply_planar(inner, probe.a), apply_planar(inner, probe.b))
    final = Segment2(apply_planar(outer, mid.a), apply_planar(outer, mid.b))

    iso_a = iso_g = None
    if method in ("algebraic", "both"):
        iso_a = compose_rotations_planar(outer, inner)
    if method in ("geometric", "both"):
        iso_g = recover_planar_geometric(probe, final, tol=tol)
    primary = iso_a if iso_a is not None else iso_g

    probes = (payload["g"], payload["h"], probe.a, probe.b)
    residual = max(
        (apply_planar(primary, p) - apply_planar(outer, apply_planar(inner, p))).norm()
        for p in probes
    )
    record = SolutionRecord(_planar_iso_dict(primary), method, residual, diags)
    if method == "both":
        disc = max(
            (apply_planar(iso_a, p) - apply_planar(iso_g, p)).norm() for p in probes
        )
        record.result_geometric = _planar_iso_dict(iso_g)
        record.discrepancy = disc
        _note_discrepancy(diags, disc, tol)
    figure = planar_compose_figure(payload["g"], payload["h"], primary, probe, mid, final)
    return record, figure


def _run_plane_reflections(payload, method, tol):
    rot = Rotation2(payload["pivot"], payload["theta"])
    first, second = reflections_for_rotation(rot)
    recomposed = compose_reflections(first, second)
    probes = tuple(rot.pivot + d for d in (Vec2(1.0, 0.0), *_PLANE_PROBE))
    residual = max(
        (apply_planar(recomposed, p) - apply_planar(rot, p)).norm() for p in probes
    )
    result = {
        "type": "reflection_pair",
        "pivot": [rot.pivot.x, rot.pivot.y],
        "angle": rot.angle,
        "angle_between_lines": rot.angle / 2.0,
        "lines": [
            {
                "point": [r.line.point.x, r.line.point.y],
                "direction": [r.line.direction.x, r.line.direction.y],
            }
            for r in (first, second)
        ],
    }
    record = SolutionRecord(result, "algebraic", residual, [])
    return record, reflection_pair_figure(rot, first, second)


def _sphere_recovery(before: SphereSegment, after: SphereSegment, method, tol, diags):
    """Shared by sphere_recover and baseball; returns (rot | None, record bits)."""
    x, y, xp, yp = before.a, before.b, after.a, after.b
    try:
        if method == "geometric":
            primary = recover_sphere_rotation(x, xp, y, yp, method="geometric", tol=tol)
        else:
            primary = recover_sphere_rotation(x, xp, y, yp, method="algebraic", tol=tol)
    except IdentityCorrespondence:
        return None, 0.0, None, None

    residual = max(
        (apply_sphere(primary, x) - xp).norm(),
        (apply_sphere(primary, y) - yp).norm(),
    )
    naive = chord_arcsin_angle(x, xp)
    if abs(naive - primary.angle) > 1e-9:
        diags.append(_note_arcsin(naive, primary.angle))

    geo_dict = disc = None
    if method == "both":
        rot_g = recover_sphere_rotation(x, xp, y, yp, method="geometric", tol=tol)
        disc = max(
            (apply_sphere(primary, p) - apply_sphere(rot_g, p)).norm() for p in (x, y)
        )
        geo_dict = _sphere_rot_dict(rot_g)
        _note_discrepancy(diags, disc, tol)
    return primary, residual, geo_dict, disc


def _run_sphere_recover(payload, method, tol):
    before: SphereSegment = payload["before"]
    after: SphereSegment = payload["after"]
    diags: list[str] = []
    rot, residual, geo_dict, disc = _sphere_recovery(before, after, method, tol, diags)
    result = {"type": "identity"} if rot is None else _sphere_rot_dict(rot)
    record = SolutionRecord(result, method, residual, diags, geo_dict, disc)
    figure = sphere_recovery_figure(before.a, after.a, before.b, after.b, rot)
    return record, figure


def run_baseball(
    before: SphereSegment,
    after: SphereSegment,
    *,
    method: str = "both",
    svg_path: str | None = None,
    tolerance: float = 1e-9,
) -> SolutionRecord:
    """Recover the ball's net rotation from two marked points photographed
    before and after its travels.

    The marked segment must have the same angular length in both
    observations; a mismatch beyond tolerance means a measurement error
    and raises LengthMismatch. The result reports the two surface points
    that ended up exactly where they started.
    """
    dl = abs(before.length() - after.length())
    if dl > tolerance:
        raise LengthMismatch(
            f"marked segments have angular lengths {before.length():.9g} and "
            f"{after.length():.9g}; a rigid motion cannot change them "
            f"(difference {dl:.3g} > tolerance {tolerance:g})"
        )
    diags: list[str] = []
    rot, residual, geo_dict, disc = _sphere_recovery(before, after, method, tolerance, diags)
    if rot is None:
        result: dict = {"type": "identity", "fixed_points": "all"}
    else:
        result = _sphere_rot_dict(rot)
        result["fixed_points"] = [
            [rot.axis.x, rot.axis.y, rot.axis.z],
            [-rot.axis.x, -rot.axis.y, -rot.axis.z],
        ]
    record = SolutionRecord(result, method, residual, diags, geo_dict, disc)
    if svg_path:
        figure = sphere_recovery_figure(before.a, after.a, before.b, after.b, rot)
        Path(svg_path).write_bytes(render_svg(figure))
    return record


def _run_baseball(payload, method, tol):
    record = run_baseball(payload["before"], payload["after"], method=method, tolerance=tol)
    rot = None
    if record.result["type"] == "rotation":
        a = record.result["axis"]
        rot = Rotation3(UnitVector3(a[0], a[1], a[2]), record.result["angle"])
    figure = sphere_recovery_figure(
        payload["before"].a, payload["after"].a, payload["before"].b, payload["after"].b, rot
    )
    return record, figure


def _run_sphere_compose(payload, method, tol):
    outer = Rotation3(payload["g"], payload["alpha"])
    inner = Rotation3(payload["h"], payload["beta"])
    diags: list[str] = []
    m = rotation_matrix(outer).m @ rotation_matrix(inner).m
    try:
        pair = eig3_rotation(m).complex_pair
    except IdentityRotation:
        pair = (1.0, 0.0)

    iso_a = iso_g = None
    if method in ("algebraic", "both"):
        iso_a = axis_angle_from_matrix(RotationMatrix3(m))
    if method in ("geometric", "both"):
        sx, sy = _SPHERE_PROBE
        sxp = apply_sphere(outer, apply_sphere(inner, sx))
        syp = apply_sphere(outer, apply_sphere(inner, sy))
        try:
            iso_g = recover_sphere_rotation(sx, sxp, sy, syp, method="geometric", tol=tol)
        except IdentityCorrespondence:
            iso_g = Rotation3(UnitVector3(0.0, 0.0, 1.0), 0.0)
    primary = iso_a if iso_a is not None else iso_g

    residual = max(
        (apply_sphere(primary, p) - apply_sphere(outer, apply_sphere(inner, p))).norm()
        for p in _SPHERE_RESIDUAL_PROBES
    )
    result = _sphere_rot_dict(primary)
    result["complex_pair"] = [pair[0], pair[1]]
    record = SolutionRecord(result, method, residual, diags)
    if method == "both":
        disc = max(
            (apply_sphere(iso_a, p) - apply_sphere(iso_g, p)).norm()
            for p in _SPHERE_RESIDUAL_PROBES
        )
        record.result_geometric = _sphere_rot_dict(iso_g)
        record.discrepancy = disc
        _note_discrepancy(diags, disc, tol)
    return record, sphere_compose_figure(payload["g"], payload["h"], primary)


_HANDLERS = {
    "plane_recover": _run_plane_recover,
    "plane_compose": _run_plane_compose,
    "plane_reflections": _run_plane_reflections,
    "sphere_recover": _run_sphere_recover,
    "baseball": _run_baseball,
    "sphere_compose": _run_sphere_compose,
}


def run(
    instance: ProblemInstance,
    *,
    method: str = "both",
    svg_path: str | None = None,
    tolerance: float = 1e-9,
) -> SolutionRecord:
    """Solve one instance and, if asked, write its diagram."""
    if method not in ("algebraic", "geometric", "both"):
        raise ValueError(f"unknown method {method!r}")
    record, figure = _HANDLERS[instance.kind](instance.payload, method, tolerance)
    if svg_path and figure is not None:
        Path(svg_path).write_bytes(render_svg(figure))
    return record


# ---------------------------------------------------------------------------
# output formatting and the entry point


def _round_floats(obj):
    """Round floats to 10 significant digits for stable, readable output."""
    if isinstance(obj, float):
        return float(f"{obj:.10g}")
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    return obj


_ANGLE_KEYS = ("angle", "angle_between_lines")


def _to_degrees_record(d: dict) -> dict:
    out = dict(d)
    for section in ("result", "result_geometric"):
        block = out.get(section)
        if isinstance(block, dict):
            block = dict(block)
            for key in _ANGLE_KEYS:
                if key in block:
                    block[key] = math.degrees(block[key])
            out[section] = block
    return out


_ANGLE_FIELDS_IN = {"plane_compose": ("alpha", "beta"), "plane_reflections": ("theta",),
                    "sphere_compose": ("alpha", "beta")}


def _degrees_to_radians_obj(obj):
    if not isinstance(obj, dict):
        return obj
    fields = _ANGLE_FIELDS_IN.get(obj.get("kind"), ())
    converted = dict(obj)
    for name in fields:
        v = converted.get(name)
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            converted[name] = math.radians(v)
    return converted


def exit_code_for(exc: BaseException) -> int:
    """Map an error to the CLI exit-code contract."""
    if isinstance(exc, (ParseError, SchemaError)):
        return 2
    if isinstance(exc, (ValidationError, LengthMismatch)):
        return 3
    if isinstance(exc, InternalCheckError):
        return 5
    if isinstance(exc, GeometryError):
        return 4
    return 1


_CATCHABLE = (ParseError, SchemaError, ValidationError, GeometryError, InternalCheckError)


def _error_payload(exc: BaseException) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _svg_path_for(svg: str | None, index: int, batch: bool) -> str | None:
    if not svg:
        return None
    if not batch:
        return svg
    p = Path(svg)
    return str(p.with_name(f"{p.stem}.{index}{p.suffix}"))


_SUBCOMMAND_KINDS = {
    "plane-recover": "plane_recover",
    "plane-compose": "plane_compose",
    "plane-reflections": "plane_reflections",
    "sphere-recover": "sphere_recover",
    "sphere-compose": "sphere_compose",
    "baseball": "baseball",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isometry-lab",
        description="Solve plane and sphere rigid-motion problems from JSON instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, metavar="FILE",
                        help="instance JSON file, or - for stdin")
    common.add_argument("--method", choices=("algebraic", "geometric", "both"),
                        default="both", help="solution route (default: both)")
    common.add_argument("--svg", metavar="FILE", default=None,
                        help="also write an SVG diagram of the solution")
    common.add_argument("--degrees", action="store_true",
                        help="angles in the input and output are degrees")
    common.add_argument("--tolerance", type=float, default=1e-9, metavar="REAL",
                        help="admissibility and agreement tolerance (default 1e-9)")
    helps = {
        "plane-recover": "isometry taking one plane segment onto another",
        "plane-compose": "composite of two pivoted plane rotations",
        "plane-reflections": "split a plane rotation into two mirror lines",
        "sphere-recover": "rotation taking one sphere segment onto another",
        "sphere-compose": "composite of two sphere rotations",
        "baseball": "net rotation of a marked ball from two observations",
    }
    for name, kind_help in helps.items():
        sub.add_parser(name, parents=[common], help=kind_help)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    expected = _SUBCOMMAND_KINDS[args.command]

    try:
        if args.input == "-":
            text = sys.stdin.buffer.read()
        else:
            text = Path(args.input).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        print(json.dumps(_error_payload(ParseError(str(exc)))))
        return 2

    try:
        obj = _loads(text)
        batch = isinstance(obj, list)
        raw_items = obj if batch else [obj]
        if args.degrees:
            raw_items = [_degrees_to_radians_obj(o) for o in raw_items]
        instances = [instance_from_obj(o) for o in raw_items]
        for inst in instances:
            if inst.kind != expected:
                raise SchemaError(
                    f"instance kind {inst.kind!r} does not match subcommand "
                    f"{args.command!r} (expected {expected!r})"
                )
    except _CATCHABLE as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(_error_payload(exc)))
        return exit_code_for(exc)

    outputs = []
    code = 0
    for i, inst in enumerate(instances):
        svg = _svg_path_for(args.svg, i, batch)
        try:
            record = run(inst, method=args.method, svg_path=svg, tolerance=args.tolerance)
        except _CATCHABLE as exc:
            print(f"error: {exc}", file=sys.stderr)
            outputs.append(_error_payload(exc))
            if code == 0:
                code = exit_code_for(exc)
            continue
        for note in record.diagnostics:
            print(f"warning: {note}", file=sys.stderr)
        payload = record.to_dict()
        if args.degrees:
            payload = _to_degrees_record(payload)
        outputs.append(_round_floats(payload))

    print(json.dumps(outputs if batch else outputs[0], indent=2))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
