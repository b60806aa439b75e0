"""Scene and sweep documents (JSON on disk, validated dataclasses here).

A scene document looks like

    {
      "spinray_scene": 1,
      "media": [
        {"region": {"type": "half_space", "normal": [0, 0, 1], "offset": 0.0},
         "field": {"type": "constant", "n0": 1.0}},
        {"region": {"type": "box", "min": [-5, -5, 0], "max": [5, 5, 5]},
         "field": {"type": "linear_gradient", "n0": 1.5, "gradient": [0, 0, 0.1]}}
      ],
      "interfaces": [
        {"normal": [0, 0, 1], "anchor": [0, 0, 0], "n1": 1.0, "n2": 1.5}
      ],
      "sources": [
        {"origin": [0, 0, -1], "direction": [0.5, 0, 0.866], "p": 1.0, "s": 1.0}
      ],
      "limits": {"max_path_length": 10.0, "max_interface_events": 8}
    }

Field variants: constant {n0}, linear_gradient {n0, gradient},
gaussian_bump {n0, amplitude, center, width}, grid {path} where path
points at a grid text file resolved against the scene file location.
Region variants: half_space {normal, offset} (inside means
<normal, x> < offset) and box {min, max}.

Angles never appear in scene documents (directions are vectors); sweep
documents carry angles in degrees, converted to radians on parse.  All
numbers must be finite and unknown keys are rejected, with errors naming
the JSON path of the offender.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import OutOfDomainError, SceneError
from .fields import (
    ConstantIndex,
    GaussianBumpIndex,
    GridIndex,
    IndexField,
    LinearGradientIndex,
    load_index_grid,
)
from .scattering import Interface
from .vectors import vec3

SCENE_VERSION = 1
SWEEP_VERSION = 1
SWEEP_PARAMETERS = ("incidence_angle", "index_ratio", "spin", "color")


@dataclass(frozen=True)
class HalfSpace:
    """Points with <normal, x> < offset."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", vec3(self.normal))

    def inside_distance(self, x) -> float:
        return self.offset - float(self.normal @ vec3(x))


@dataclass(frozen=True)
class Box:
    """Axis-aligned box [lo, hi]."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lo", vec3(self.lo))
        object.__setattr__(self, "hi", vec3(self.hi))
        if not np.all(self.hi > self.lo):
            raise ValueError("box max must exceed min on every axis")

    def inside_distance(self, x) -> float:
        x = vec3(x)
        return float(min(np.min(x - self.lo), np.min(self.hi - x)))


@dataclass(frozen=True)
class Medium:
    region: HalfSpace | Box
    field: IndexField
    grid_path: str | None = None

    def contains(self, x) -> bool:
        return self.region.inside_distance(x) > 0.0


@dataclass(frozen=True)
class Source:
    origin: np.ndarray
    direction: np.ndarray
    p: float
    s: float

    def __post_init__(self):
        object.__setattr__(self, "origin", vec3(self.origin))
        object.__setattr__(self, "direction", vec3(self.direction))


@dataclass(frozen=True)
class Limits:
    max_path_length: float
    max_interface_events: int


@dataclass(frozen=True)
class Scene:
    media: tuple[Medium, ...]
    interfaces: tuple[Interface, ...]
    sources: tuple[Source, ...]
    limits: Limits

    def medium_at(self, x) -> int | None:
        """Index of the single medium containing x, None if not covered."""
        hits = [i for i, m in enumerate(self.media) if m.contains(x)]
        if len(hits) == 1:
            return hits[0]
        return None


@dataclass(frozen=True)
class SweepSpec:
    """One-interface parameter sweep.

    The swept parameter replaces the matching entry of the base template
    (n1, n2, theta1 in radians, p, s) at count points from start to stop
    inclusive.  incidence_angle start/stop are degrees in the document.
    """

    parameter: str
    start: float
    stop: float
    count: int
    n1: float
    n2: float
    theta1: float
    p: float
    s: float


def _require_keys(obj, allowed: dict, path: str) -> None:
    if not isinstance(obj, dict):
        raise SceneError(f"{path}: expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in allowed:
            raise SceneError(f"{path}: unknown key {key!r}")
    for key, required in allowed.items():
        if required and key not in obj:
            raise SceneError(f"{path}: missing required key {key!r}")


def _number(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise SceneError(f"{path}: expected a number")
    val = float(obj)
    if not math.isfinite(val):
        raise SceneError(f"{path}: number must be finite")
    return val


def _integer(obj, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise SceneError(f"{path}: expected an integer")
    return obj


def _vector(obj, path: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != 3:
        raise SceneError(f"{path}: expected a 3-element array")
    return np.array([_number(c, f"{path}[{i}]") for i, c in enumerate(obj)])


def _parse_region(obj, path: str) -> HalfSpace | Box:
    _require_keys(obj, {"type": True, "normal": False, "offset": False,
                        "min": False, "max": False}, path)
    kind = obj.get("type")
    try:
        if kind == "half_space":
            _require_keys(obj, {"type": True, "normal": True, "offset": True}, path)
            return HalfSpace(normal=_vector(obj["normal"], f"{path}.normal"),
                             offset=_number(obj["offset"], f"{path}.offset"))
        if kind == "box":
            _require_keys(obj, {"type": True, "min": True, "max": True}, path)
            return Box(lo=_vector(obj["min"], f"{path}.min"),
                       hi=_vector(obj["max"], f"{path}.max"))
    except ValueError as exc:
        raise SceneError(f"{path}: {exc}") from exc
    raise SceneError(f"{path}.type: unknown region type {kind!r}")


def _parse_field(obj, path: str, base_dir: Path) -> tuple[IndexField, str | None]:
    if not isinstance(obj, dict) or "type" not in obj:
        raise SceneError(f"{path}: expected an object with a 'type' key")
    kind = obj["type"]
    try:
        if kind == "constant":
            _require_keys(obj, {"type": True, "n0": True}, path)
            return ConstantIndex(n0=_number(obj["n0"], f"{path}.n0")), None
        if kind == "linear_gradient":
            _require_keys(obj, {"type": True, "n0": True, "gradient": True}, path)
            return (
                LinearGradientIndex(
                    n0=_number(obj["n0"], f"{path}.n0"),
                    k=_vector(obj["gradient"], f"{path}.gradient"),
                ),
                None,
            )
        if kind == "gaussian_bump":
            _require_keys(
                obj, {"type": True, "n0": True, "amplitude": True, "center": True, "width": True},
                path,
            )
            return (
                GaussianBumpIndex(
                    n0=_number(obj["n0"], f"{path}.n0"),
                    amplitude=_number(obj["amplitude"], f"{path}.amplitude"),
                    center=_vector(obj["center"], f"{path}.center"),
                    width=_number(obj["width"], f"{path}.width"),
                ),
                None,
            )
        if kind == "grid":
            _require_keys(obj, {"type": True, "path": True}, path)
            rel = obj["path"]
            if not isinstance(rel, str):
                raise SceneError(f"{path}.path: expected a string")
            full = base_dir / rel
            try:
                return load_index_grid(full), rel
            except OSError as exc:
                raise SceneError(f"{path}.path: cannot read grid file {full}: {exc}") from exc
    except ValueError as exc:
        raise SceneError(f"{path}: {exc}") from exc
    raise SceneError(f"{path}.type: unknown field type {kind!r}")


def _validate_scene(scene: Scene) -> None:
    for i, src in enumerate(scene.sources):
        hits = [j for j, m in enumerate(scene.media) if m.contains(src.origin)]
        if len(hits) != 1:
            raise SceneError(
                f"sources[{i}]: origin must lie inside exactly one medium region, "
                f"found {len(hits)}"
            )
        if float(np.linalg.norm(src.direction)) < 1e-9:
            raise SceneError(f"sources[{i}].direction: must be nonzero")
        if src.p <= 0.0:
            raise SceneError(f"sources[{i}].p: color must be positive")
    for k, iface in enumerate(scene.interfaces):
        eps = 1e-6 * (1.0 + float(np.linalg.norm(iface.anchor)))
        for side, n_expect in ((-1.0, iface.n1), (+1.0, iface.n2)):
            probe = iface.anchor + side * eps * iface.normal
            idx = scene.medium_at(probe)
            label = "n1" if side < 0 else "n2"
            if idx is None:
                raise SceneError(
                    f"interfaces[{k}]: no single medium covers the {label} side "
                    f"(probe {probe.tolist()})"
                )
            try:
                n_found = scene.media[idx].field.value(probe)
            except OutOfDomainError as exc:
                raise SceneError(f"interfaces[{k}]: {label} side probe failed: {exc}") from exc
            if abs(n_found - n_expect) > 1e-5 * max(1.0, abs(n_expect)):
                raise SceneError(
                    f"interfaces[{k}].{label} = {n_expect} disagrees with the adjacent "
                    f"medium index {n_found:.8g}; the normal must point from the n1 "
                    "medium into the n2 medium"
                )


def parse_scene(text: str, base_dir: str | Path | None = None) -> Scene:
    """Parse and validate a scene document.

    base_dir resolves grid file references (defaults to the working
    directory).  Raises SceneError on malformed JSON, unknown or missing
    keys, non-finite numbers, or inconsistent geometry (source origins
    must lie in exactly one medium; interface index labels must match the
    adjacent media).
    """
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene is not valid JSON: {exc}") from exc
    _require_keys(
        doc,
        {"spinray_scene": True, "media": True, "interfaces": False,
         "sources": True, "limits": True},
        "scene",
    )
    if doc["spinray_scene"] != SCENE_VERSION:
        raise SceneError(
            f"spinray_scene: unsupported version {doc['spinray_scene']!r} "
            f"(this build reads version {SCENE_VERSION})"
        )
    media = []
    if not isinstance(doc["media"], list) or not doc["media"]:
        raise SceneError("media: expected a non-empty array")
    for i, entry in enumerate(doc["media"]):
        path = f"media[{i}]"
        _require_keys(entry, {"region": True, "field": True}, path)
        region = _parse_region(entry["region"], f"{path}.region")
        fld, grid_path = _parse_field(entry["field"], f"{path}.field", base)
        media.append(Medium(region=region, field=fld, grid_path=grid_path))
    interfaces = []
    for k, entry in enumerate(doc.get("interfaces", [])):
        path = f"interfaces[{k}]"
        _require_keys(entry, {"normal": True, "anchor": True, "n1": True, "n2": True}, path)
        try:
            interfaces.append(
                Interface(
                    normal=_vector(entry["normal"], f"{path}.normal"),
                    anchor=_vector(entry["anchor"], f"{path}.anchor"),
                    n1=_number(entry["n1"], f"{path}.n1"),
                    n2=_number(entry["n2"], f"{path}.n2"),
                )
            )
        except ValueError as exc:
            raise SceneError(f"{path}: {exc}") from exc
    sources = []
    if not isinstance(doc["sources"], list):
        raise SceneError("sources: expected an array")
    for i, entry in enumerate(doc["sources"]):
        path = f"sources[{i}]"
        _require_keys(entry, {"origin": True, "direction": True, "p": True, "s": True}, path)
        sources.append(
            Source(
                origin=_vector(entry["origin"], f"{path}.origin"),
                direction=_vector(entry["direction"], f"{path}.direction"),
                p=_number(entry["p"], f"{path}.p"),
                s=_number(entry["s"], f"{path}.s"),
            )
        )
    _require_keys(doc["limits"], {"max_path_length": True, "max_interface_events": True}, "limits")
    limits = Limits(
        max_path_length=_number(doc["limits"]["max_path_length"], "limits.max_path_length"),
        max_interface_events=_integer(
            doc["limits"]["max_interface_events"], "limits.max_interface_events"
        ),
    )
    if limits.max_path_length <= 0.0:
        raise SceneError("limits.max_path_length: must be positive")
    if limits.max_interface_events < 0:
        raise SceneError("limits.max_interface_events: must be non-negative")
    scene = Scene(
        media=tuple(media), interfaces=tuple(interfaces), sources=tuple(sources), limits=limits
    )
    _validate_scene(scene)
    return scene


def _field_doc(medium: Medium) -> dict:
    f = medium.field
    if isinstance(f, ConstantIndex):
        return {"type": "constant", "n0": f.n0}
    if isinstance(f, LinearGradientIndex):
        return {"type": "linear_gradient", "n0": f.n0, "gradient": f.k.tolist()}
    if isinstance(f, GaussianBumpIndex):
        return {
            "type": "gaussian_bump",
            "n0": f.n0,
            "amplitude": f.amplitude,
            "center": f.center.tolist(),
            "width": f.width,
        }
    if isinstance(f, GridIndex):
        if medium.grid_path is None:
            raise SceneError("grid fields can only be emitted when loaded from a path")
        return {"type": "grid", "path": medium.grid_path}
    raise SceneError(f"cannot serialize field type {type(f).__name__}")


def emit_scene(scene: Scene) -> str:
    """Serialize a scene back to canonical JSON (parse(emit(s)) == s)."""
    doc = {
        "spinray_scene": SCENE_VERSION,
        "media": [
            {
                "region": (
                    {
                        "type": "half_space",
                        "normal": m.region.normal.tolist(),
                        "offset": m.region.offset,
                    }
                    if isinstance(m.region, HalfSpace)
                    else {"type": "box", "min": m.region.lo.tolist(), "max": m.region.hi.tolist()}
                ),
                "field": _field_doc(m),
            }
            for m in scene.media
        ],
        "interfaces": [
            {
                "normal": i.normal.tolist(),
                "anchor": i.anchor.tolist(),
                "n1": i.n1,
                "n2": i.n2,
            }
            for i in scene.interfaces
        ],
        "sources": [
            {
                "origin": s.origin.tolist(),
                "direction": s.direction.tolist(),
                "p": s.p,
                "s": s.s,
            }
            for s in scene.sources
        ],
        "limits": {
            "max_path_length": scene.limits.max_path_length,
            "max_interface_events": scene.limits.max_interface_events,
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_sweep(text: str) -> SweepSpec:
    """Parse and validate a sweep document.

    Document shape:

        {"spinray_sweep": 1, "parameter": "incidence_angle",
         "start": 5.0, "stop": 85.0, "count": 9,
         "base": {"n1": 1.0, "n2": 1.5, "theta1_deg": 30.0, "p": 1.0, "s": 1.0}}

    parameter is one of incidence_angle (degrees), index_ratio (n2/n1),
    spin or color; base entries are optional with the defaults above.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"sweep is not valid JSON: {exc}") from exc
    _require_keys(
        doc,
        {"spinray_sweep": True, "parameter": True, "start": True, "stop": True,
         "count": True, "base": False},
        "sweep",
    )
    if doc["spinray_sweep"] != SWEEP_VERSION:
        raise SceneError(f"spinray_sweep: unsupported version {doc['spinray_sweep']!r}")
    parameter = doc["parameter"]
    if parameter not in SWEEP_PARAMETERS:
        raise SceneError(
            f"parameter: must be one of {', '.join(SWEEP_PARAMETERS)}, got {parameter!r}"
        )
    start = _number(doc["start"], "start")
    stop = _number(doc["stop"], "stop")
    count = _integer(doc["count"], "count")
    if count < 2:
        raise SceneError("count: a sweep needs at least 2 samples")
    base = doc.get("base", {})
    _require_keys(
        base, {"n1": False, "n2": False, "theta1_deg": False, "p": False, "s": False}, "base"
    )
    n1 = _number(base.get("n1", 1.0), "base.n1")
    n2 = _number(base.get("n2", 1.5), "base.n2")
    theta1_deg = _number(base.get("theta1_deg", 30.0), "base.theta1_deg")
    p = _number(base.get("p", 1.0), "base.p")
    s = _number(base.get("s", 1.0), "base.s")
    if parameter == "incidence_angle":
        lo, hi = min(start, stop), max(start, stop)
        if lo < 0.0 or hi >= 90.0:
            raise SceneError("start/stop: incidence angles must lie in [0, 90) degrees")
    if parameter == "color" and (start <= 0.0 or stop <= 0.0):
        raise SceneError("start/stop: colors must be positive")
    if parameter == "index_ratio" and (start == 0.0 or stop == 0.0):
        raise SceneError("start/stop: index ratio must be nonzero")
    if not 0.0 <= theta1_deg < 90.0:
        raise SceneError("base.theta1_deg: must lie in [0, 90)")
    if p <= 0.0:
        raise SceneError("base.p: must be positive")
    if abs(n1) < 1e-9 or abs(n2) < 1e-9:
        raise SceneError("base.n1/n2: must be nonzero")
    return SweepSpec(
        parameter=parameter,
        start=start,
        stop=stop,
        count=count,
        n1=n1,
        n2=n2,
        theta1=math.radians(theta1_deg),
        p=p,
        s=s,
    )
