from __future__ import annotations

import json

import pytest

from weblab.catalog import (
    PROVENANCE,
    catalog,
    catalog_names,
    catalog_verify,
    monomial_web,
    theoremE_iii,
    theoremE_iv,
)
from weblab.errors import MapError
from weblab.expr import parse
from weblab.planemaps import PlaneMap


def test_catalog_manifest():
    assert catalog_names() == list("abcdefghij")
    for entry in catalog():
        assert entry.checks
        for check in entry.checks:
            assert check.provenance in PROVENANCE


def test_unknown_entry():
    with pytest.raises(KeyError):
        catalog(["z"])
    with pytest.raises(KeyError):
        catalog_verify(["a", "zz"])


def test_constructor_iii():
    phi, w = theoremE_iii(3, 1, 1, [1])
    assert phi == parse("map(x^3/(1+x*y), y^3/(1+x*y))")
    assert w == parse("(y*dx - x*dy)*(y*dx + x*dy)")
    phi, w = theoremE_iii(6, 1, 2, [1, -2])
    assert phi.degree == 6


@pytest.mark.parametrize(
    "args",
    [(2, 1, 1, [1, 1]), (3, 2, 2, [1]), (3, 1, 1, []), (3, 1, 1, [0])],
)
def test_constructor_iii_validation(args):
    with pytest.raises(MapError):
        theoremE_iii(*args)


def test_constructor_iv():
    phi, w = theoremE_iv(4, [1])
    assert phi == parse("map(y^4/(1+x*y), x^4/(1+x*y))")
    with pytest.raises(MapError):
        theoremE_iv(3, [1, 2])


def test_monomial_web():
    assert monomial_web([1]) == parse("y*dx + x*dy")
    assert monomial_web([2, 3]).k == 2


def test_empty_selection_gives_empty_report():
    report = catalog_verify([])
    assert report.entries == {}
    assert report.passed
    assert json.loads(report.to_json())["entries"] == {}


def test_negative_control_entry():
    report = catalog_verify(["e"])
    checks = {c["name"]: c for c in report.entries["e"]["checks"]}
    assert checks["invariance"]["passed"]
    assert checks["invariance"]["value"]["constant"] is None
    assert checks["invariance"]["value"]["verdict"] == "not invariant"
    assert checks["invariance"]["value"]["sampled"] is False


def test_reports_are_byte_identical_per_seed():
    names = ["a", "d", "j"]
    assert catalog_verify(names, seed=5).to_json() == catalog_verify(names, seed=5).to_json()


def test_concurrent_verification_matches_sequential():
    names = ["a", "b", "e", "f"]
    assert catalog_verify(names, workers=4).to_json() == catalog_verify(names).to_json()


def test_timings_are_opt_in():
    timed = catalog_verify(["f"], timings=True).entries["f"]["checks"]
    assert all("seconds" in c for c in timed)
    assert all("seconds" not in c for c in catalog_verify(["f"]).entries["f"]["checks"])


def test_check_errors_are_captured():
    from weblab.catalog import Check, _run_check

    def boom(seed):
        raise ValueError("broken")

    result = _run_check(Check("boom", "invariance", True, "DERIVED", boom), 1, False)
    assert not result["passed"]
    assert "broken" in result["error"]


def test_provenance_is_validated():
    from weblab.catalog import Check

    with pytest.raises(ValueError):
        Check("x", "invariance", True, "GUESS", lambda seed: (True, None))


@pytest.mark.parametrize("name", list("abcdefhj"))
def test_entry_passes(name):
    assert catalog_verify([name]).passed


def test_stated_quotient_map_of_the_lattes_example():
    # the displayed first coordinate differs from f(u) + f(v); the second agrees
    report = catalog_verify(["i"])
    checks = {c["name"]: c for c in report.entries["i"]["checks"]}
    assert checks["semiconjugacy"]["value"] == {"first": False, "second": True}
    assert checks["semiconjugacy[symmetrized]"]["passed"]


def test_case_vi_image_web():
    report = catalog_verify(["g"])
    checks = {c["name"]: c for c in report.entries["g"]["checks"]}
    assert not checks["image-web"]["passed"]
    assert checks["image-web[eliminated]"]["passed"]


def test_catalog_maps_are_plane_maps():
    for entry in catalog():
        assert entry.map is None or isinstance(entry.map, PlaneMap)
