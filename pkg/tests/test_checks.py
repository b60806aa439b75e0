import json

from spinray.checks import (
    CheckResult,
    builtin_checks,
    report_from_results,
    scene_checks,
)
from spinray.scene import parse_scene

from conftest import two_media_doc

EXPECTED_NAMES = [
    "orbit-casimirs",
    "wave-plane-bracket",
    "kernel-residual",
    "model-tower",
    "curvature-trace-identity",
    "interface-conservation",
    "symplectomorphism",
    "equivariance",
    "reversibility",
    "snell-spin-rules",
    "rk4-order",
    "straight-lines",
]


def test_builtin_suite_passes():
    results = builtin_checks(seed=0)
    assert [r.name for r in results] == EXPECTED_NAMES
    for r in results:
        assert r.passed, f"{r.name}: residual {r.max_residual} vs {r.tolerance}"


def test_builtin_suite_is_seed_deterministic():
    a = builtin_checks(seed=7)
    b = builtin_checks(seed=7)
    assert [(r.name, r.max_residual) for r in a] == [(r.name, r.max_residual) for r in b]


def test_corrupt_rho_fails_only_the_symplectomorphism_check():
    results = builtin_checks(seed=0, corrupt_rho=True)
    failed = [r.name for r in results if not r.passed]
    assert failed == ["symplectomorphism"]
    broken = next(r for r in results if r.name == "symplectomorphism")
    assert broken.max_residual > 1e-3
    assert "negative control" in broken.detail


def test_report_document_layout():
    results = builtin_checks(seed=3)
    doc = report_from_results("builtin", 3, results)
    assert doc["spinray_check"] == 1
    assert doc["suite"] == "builtin"
    assert doc["seed"] == 3
    assert doc["n_checks"] == len(results)
    assert doc["passed"] is True
    assert doc["checks"][0] == results[0].to_doc()
    assert "warning" not in doc
    json.dumps(doc)


def test_report_flags_empty_result_lists():
    doc = report_from_results("scene", 0, [])
    assert doc["n_checks"] == 0
    assert doc["passed"] is True
    assert "no checks executed" in doc["warning"]


def test_report_overall_fail():
    good = CheckResult("a", True, 0.0, 1.0)
    bad = CheckResult("b", False, 2.0, 1.0)
    assert report_from_results("builtin", 0, [good, bad])["passed"] is False


def test_scene_checks_cover_every_source():
    doc = two_media_doc()
    doc["sources"].append(dict(doc["sources"][0], s=-1.0))
    scene = parse_scene(json.dumps(doc))
    results = scene_checks(scene)
    assert [r.name for r in results] == [
        "trace-conservation[source=0]",
        "trace-conservation[source=1]",
    ]
    for r in results:
        assert r.passed
        assert "1 scatter events" in r.detail
        assert "path-length-limit" in r.detail


def test_scene_checks_on_an_empty_scene():
    doc = two_media_doc()
    doc["sources"] = []
    scene = parse_scene(json.dumps(doc))
    assert scene_checks(scene) == []
