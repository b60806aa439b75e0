import json

import numpy as np
import pytest

from spinray.errors import SceneError
from spinray.fields import GridIndex, dump_index_grid
from spinray.scene import (
    Box,
    HalfSpace,
    Scene,
    emit_scene,
    parse_scene,
    parse_sweep,
)

from conftest import two_media_doc


def test_parse_two_media_scene(scene_doc):
    scene = parse_scene(json.dumps(scene_doc))
    assert len(scene.media) == 2
    assert len(scene.interfaces) == 1
    assert len(scene.sources) == 1
    assert scene.limits.max_path_length == 6.0
    assert scene.limits.max_interface_events == 4
    assert scene.medium_at([0, 0, -0.5]) == 0
    assert scene.medium_at([0, 0, 0.5]) == 1
    assert scene.medium_at([0, 0, 0.0]) is None  # on the boundary of both


def test_half_space_and_box_regions():
    hs = HalfSpace(normal=[0, 0, 1], offset=2.0)
    assert hs.inside_distance([0, 0, 0]) == 2.0
    assert hs.inside_distance([0, 0, 3]) == -1.0
    box = Box(lo=[0, 0, 0], hi=[2, 4, 6])
    assert box.inside_distance([1, 2, 3]) == 1.0
    assert box.inside_distance([1, 2, 7]) == -1.0
    with pytest.raises(ValueError):
        Box(lo=[0, 0, 0], hi=[2, 0, 6])


def test_parse_rejects_wrong_version(scene_doc):
    scene_doc["spinray_scene"] = 2
    with pytest.raises(SceneError, match="version"):
        parse_scene(json.dumps(scene_doc))


def test_parse_rejects_bad_json():
    with pytest.raises(SceneError, match="JSON"):
        parse_scene("{not json")


def test_parse_rejects_unknown_keys(scene_doc):
    scene_doc["extra"] = 1
    with pytest.raises(SceneError, match="unknown key 'extra'"):
        parse_scene(json.dumps(scene_doc))


def test_parse_rejects_missing_keys(scene_doc):
    del scene_doc["limits"]
    with pytest.raises(SceneError, match="missing required key 'limits'"):
        parse_scene(json.dumps(scene_doc))


def test_parse_error_messages_carry_json_paths(scene_doc):
    scene_doc["media"][0]["region"]["normal"] = [0, 0]
    with pytest.raises(SceneError, match=r"media\[0\].region.normal"):
        parse_scene(json.dumps(scene_doc))
    doc = two_media_doc()
    doc["sources"][0]["p"] = "red"
    with pytest.raises(SceneError, match=r"sources\[0\].p"):
        parse_scene(json.dumps(doc))
    doc = two_media_doc()
    doc["interfaces"][0]["n1"] = float("nan")
    with pytest.raises(SceneError):
        parse_scene(json.dumps(doc).replace("NaN", "1e999"))


def test_source_must_lie_in_exactly_one_medium(scene_doc):
    scene_doc["sources"][0]["origin"] = [0, 0, 0]  # on the seam: in neither
    with pytest.raises(SceneError, match="exactly one medium"):
        parse_scene(json.dumps(scene_doc))


def test_source_validation(scene_doc):
    scene_doc["sources"][0]["direction"] = [0, 0, 0]
    with pytest.raises(SceneError, match="direction"):
        parse_scene(json.dumps(scene_doc))
    doc = two_media_doc()
    doc["sources"][0]["p"] = -1.0
    with pytest.raises(SceneError, match="color must be positive"):
        parse_scene(json.dumps(doc))


def test_interface_labels_must_match_adjacent_media(scene_doc):
    scene_doc["interfaces"][0]["n2"] = 1.4  # medium says 1.5
    with pytest.raises(SceneError, match="disagrees"):
        parse_scene(json.dumps(scene_doc))
    doc = two_media_doc()
    doc["interfaces"][0]["anchor"] = [0, 0, 3.0]  # plane off the seam
    with pytest.raises(SceneError):
        parse_scene(json.dumps(doc))


def test_limits_validation(scene_doc):
    scene_doc["limits"]["max_path_length"] = 0.0
    with pytest.raises(SceneError, match="max_path_length"):
        parse_scene(json.dumps(scene_doc))
    doc = two_media_doc()
    doc["limits"]["max_interface_events"] = -1
    with pytest.raises(SceneError, match="max_interface_events"):
        parse_scene(json.dumps(doc))
    doc = two_media_doc()
    doc["limits"]["max_interface_events"] = 2.5
    with pytest.raises(SceneError, match="integer"):
        parse_scene(json.dumps(doc))


def test_all_field_types_parse(tmp_path):
    vals = np.full((6, 6, 6), 1.25)
    (tmp_path / "n.grid").write_text(
        dump_index_grid(GridIndex(values=vals, origin=(-3, -3, -3), spacing=(1, 1, 1)))
    )
    doc = {
        "spinray_scene": 1,
        "media": [
            {"region": {"type": "box", "min": [-2, -2, -2], "max": [2, 2, 2]},
             "field": {"type": "grid", "path": "n.grid"}},
            {"region": {"type": "half_space", "normal": [0, 0, -1], "offset": -2.0},
             "field": {"type": "gaussian_bump", "n0": 1.0, "amplitude": 0.2,
                       "center": [0, 0, 4], "width": 1.0}},
        ],
        "sources": [
            {"origin": [0, 0, 0], "direction": [0, 0, 1], "p": 1.0, "s": 0.0}
        ],
        "limits": {"max_path_length": 4.0, "max_interface_events": 2},
    }
    scene = parse_scene(json.dumps(doc), base_dir=tmp_path)
    assert isinstance(scene.media[0].field, GridIndex)
    assert scene.media[0].grid_path == "n.grid"
    assert scene.interfaces == ()


def test_grid_field_requires_readable_path(tmp_path):
    doc = two_media_doc()
    doc["media"][0]["field"] = {"type": "grid", "path": "missing.grid"}
    with pytest.raises(SceneError, match="cannot read grid file"):
        parse_scene(json.dumps(doc), base_dir=tmp_path)


def test_unknown_field_and_region_types(scene_doc):
    scene_doc["media"][0]["field"] = {"type": "quadratic", "n0": 1.0}
    with pytest.raises(SceneError, match="unknown field type"):
        parse_scene(json.dumps(scene_doc))
    doc = two_media_doc()
    doc["media"][0]["region"] = {"type": "sphere", "normal": [0, 0, 1], "offset": 0.0}
    with pytest.raises(SceneError, match="unknown region type"):
        parse_scene(json.dumps(doc))


def test_emit_scene_round_trips(scene_doc, tmp_path):
    text = json.dumps(scene_doc)
    scene = parse_scene(text)
    emitted = emit_scene(scene)
    again = parse_scene(emitted)
    assert emit_scene(again) == emitted  # canonical fixed point
    assert emitted.endswith("\n")
    # the emitted document is plain sorted-key JSON
    doc = json.loads(emitted)
    assert doc["spinray_scene"] == 1


def test_emit_scene_covers_all_field_types(tmp_path):
    vals = np.full((6, 6, 6), 1.25)
    (tmp_path / "n.grid").write_text(
        dump_index_grid(GridIndex(values=vals, origin=(-3, -3, -3), spacing=(1, 1, 1)))
    )
    doc = {
        "spinray_scene": 1,
        "media": [
            {"region": {"type": "box", "min": [-2, -2, -2], "max": [2, 2, 2]},
             "field": {"type": "grid", "path": "n.grid"}},
            {"region": {"type": "half_space", "normal": [0, 0, -1], "offset": -2.0},
             "field": {"type": "linear_gradient", "n0": 1.0, "gradient": [0, 0, 0.01]}},
        ],
        "sources": [{"origin": [0, 0, 0], "direction": [0, 0, 1], "p": 2.0, "s": -1.0}],
        "limits": {"max_path_length": 4.0, "max_interface_events": 2},
    }
    scene = parse_scene(json.dumps(doc), base_dir=tmp_path)
    emitted = emit_scene(scene)
    again = parse_scene(emitted, base_dir=tmp_path)
    assert emit_scene(again) == emitted


def test_emitted_grid_scene_needs_the_path():
    vals = np.full((6, 6, 6), 1.25)
    grid = GridIndex(values=vals, origin=(-3, -3, -3), spacing=(1, 1, 1))
    from spinray.scene import Limits, Medium, Source

    scene = Scene(
        media=(Medium(region=Box(lo=[-2, -2, -2], hi=[2, 2, 2]), field=grid),),
        interfaces=(),
        sources=(Source(origin=[0, 0, 0], direction=[0, 0, 1], p=1.0, s=0.0),),
        limits=Limits(max_path_length=1.0, max_interface_events=0),
    )
    with pytest.raises(SceneError, match="path"):
        emit_scene(scene)


def test_parse_sweep_defaults_and_conversion():
    spec = parse_sweep(json.dumps({
        "spinray_sweep": 1, "parameter": "incidence_angle",
        "start": 5.0, "stop": 85.0, "count": 9,
    }))
    assert spec.parameter == "incidence_angle"
    assert spec.count == 9
    assert spec.n1 == 1.0 and spec.n2 == 1.5
    assert spec.p == 1.0 and spec.s == 1.0
    assert spec.theta1 == pytest.approx(np.radians(30.0))


def test_parse_sweep_validation():
    base = {"spinray_sweep": 1, "parameter": "color", "start": 0.5, "stop": 5.0, "count": 4}
    parse_sweep(json.dumps(base))
    bad = dict(base, parameter="wavelength")
    with pytest.raises(SceneError, match="parameter"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, count=1)
    with pytest.raises(SceneError, match="count"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, start=-1.0)
    with pytest.raises(SceneError, match="positive"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, parameter="incidence_angle", start=0.0, stop=90.0)
    with pytest.raises(SceneError, match=r"\[0, 90\)"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, parameter="index_ratio", start=0.0, stop=2.0)
    with pytest.raises(SceneError, match="nonzero"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, spinray_sweep=3)
    with pytest.raises(SceneError, match="version"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, base={"theta1_deg": 95.0})
    with pytest.raises(SceneError, match="theta1_deg"):
        parse_sweep(json.dumps(bad))
    bad = dict(base, base={"p": 0.0})
    with pytest.raises(SceneError, match="base.p"):
        parse_sweep(json.dumps(bad))
